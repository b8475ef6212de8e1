"""Tests for qswitch.switch evaluators."""
