"""qswitch evaluators for switches of N channels."""
