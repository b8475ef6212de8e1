"""qswitch input document schemas."""

from __future__ import annotations

from qswitch import constants as const
from qswitch.utils import NAMED_STATES

COMMONS_SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {
        "complex": {
            "$$target": "py-obj:qswitch.schema.COMMONS_SCHEMA#/$defs/complex",
            "title": "Complex Number Schema",
            "description": "A complex number as [re, im], or a plain real number",
            "oneOf": [
                {
                    "type": "array",
                    "items": {"type": "number"},
                    "minItems": 2,
                    "maxItems": 2,
                },
                {"type": "number"},
            ],
        },
        "matrix": {
            "$$target": "py-obj:qswitch.schema.COMMONS_SCHEMA#/$defs/matrix",
            "title": "Complex Matrix Schema",
            "description": "A complex matrix as a list of rows",
            "type": "array",
            "items": {
                "type": "array",
                "items": {"$ref": "py-obj:qswitch.schema.COMMONS_SCHEMA#/$defs/complex"},
                "minItems": 1,
            },
            "minItems": 1,
        },
        "permutation": {
            "$$target": "py-obj:qswitch.schema.COMMONS_SCHEMA#/$defs/permutation",
            "title": "Ordering Schema",
            "description": "An ordering of the channel labels 1..N in one-line notation",
            "type": "array",
            "items": {"type": "integer", "minimum": 1},
            "minItems": 1,
            "uniqueItems": True,
        },
        "state": {
            "$$target": "py-obj:qswitch.schema.COMMONS_SCHEMA#/$defs/state",
            "title": "State Schema",
            "description": "A named state or a density matrix",
            "oneOf": [
                {"type": "string", "enum": list(NAMED_STATES)},
                {"$ref": "py-obj:qswitch.schema.COMMONS_SCHEMA#/$defs/matrix"},
            ],
        },
        "channel": {
            "$$target": "py-obj:qswitch.schema.COMMONS_SCHEMA#/$defs/channel",
            "title": "Channel Schema",
            "description": "A named channel, or a channel given by its Kraus operators",
            "oneOf": [
                {
                    "type": "object",
                    "properties": {
                        "kind": {"type": "string", "enum": [const.CDPC, const.IDENTITY]}
                    },
                    "required": ["kind"],
                    "additionalProperties": False,
                },
                {
                    "type": "object",
                    "properties": {
                        "d": {"type": "integer", "minimum": 1},
                        "kraus": {
                            "type": "array",
                            "items": {
                                "$ref": "py-obj:qswitch.schema.COMMONS_SCHEMA#/$defs/matrix"
                            },
                            "minItems": 1,
                        }
                    },
                    "required": ["kraus"],
                    "additionalProperties": False,
                },
            ],
        },
    },
}

SWITCH_SPEC_SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Quantum Switch Specification Schema",
    "type": "object",
    "properties": {
        "d": {
            "description": "Dimension of the system sent through the channels",
            "type": "integer",
            "minimum": 1,
        },
        "channels": {
            "description": "The N channels; the i-th channel carries label i",
            "type": "array",
            "items": {"$ref": "py-obj:qswitch.schema.COMMONS_SCHEMA#/$defs/channel"},
            "minItems": 1,
        },
        "perms": {
            "description": "The M distinct orderings placed in superposition",
            "type": "array",
            "items": {"$ref": "py-obj:qswitch.schema.COMMONS_SCHEMA#/$defs/permutation"},
            "minItems": 1,
        },
        "control": {
            "description": "The control state, 'fourier' or an M×M density matrix",
            "oneOf": [
                {"type": "string", "enum": [const.FOURIER]},
                {"$ref": "py-obj:qswitch.schema.COMMONS_SCHEMA#/$defs/matrix"},
            ],
            "default": const.FOURIER,
        },
    },
    "required": ["d", "channels", "perms"],
    "additionalProperties": False,
}

ENSEMBLE_SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Ensemble Schema",
    "type": "object",
    "properties": {
        "states": {
            "description": "Input states with their probabilities",
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "p": {"type": "number", "minimum": 0, "maximum": 1},
                    "rho": {"$ref": "py-obj:qswitch.schema.COMMONS_SCHEMA#/$defs/state"},
                },
                "required": ["p", "rho"],
                "additionalProperties": False,
            },
            "minItems": 1,
        },
    },
    "required": ["states"],
    "additionalProperties": False,
}
