"""JSON schemas for CLI inputs."""

_int_matrix = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}
_rational = {"oneOf": [{"type": "integer"},
                       {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*-?\d+)?\s*$"}]}

DATUM = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "n": {"type": "integer", "minimum": 1},
        "kbasis": _int_matrix,
        "a": _int_matrix,
        "characters": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"name": {"type": "string"},
                               "lift": {"type": "array", "items": {"type": "integer"}}},
                "required": ["name", "lift"],
            },
        },
        "example": {
            "type": "object",
            "properties": {"name": {"enum": ["am", "tpn", "ex23", "index2"]},
                           "params": {"type": "object",
                                      "additionalProperties": {"type": "integer"}}},
            "required": ["name"],
        },
    },
    "anyOf": [{"required": ["n", "kbasis"]}, {"required": ["a"]}, {"required": ["example"]}],
}

ARRANGEMENT = {
    "type": "object",
    "properties": {
        "dim": {"type": "integer", "minimum": 0},
        "hyperplanes": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"normal": {"type": "array", "items": {"type": "integer"}},
                               "offset": {"type": "integer"}},
                "required": ["normal"],
            },
        },
    },
    "required": ["hyperplanes"],
}

REPRESENTATION = {
    "type": "object",
    "properties": {
        "dimension": {"type": "integer", "minimum": 1},
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "tail": {"type": "integer", "minimum": 0},
                    "head": {"type": "integer", "minimum": 0},
                    "matrix": {"type": "array", "items": {"type": "array", "items": _rational}},
                },
                "required": ["tail", "head", "matrix"],
            },
        },
    },
    "required": ["dimension", "edges"],
}

POINT = {
    "type": "object",
    "properties": {"z": {"type": "array", "items": _rational},
                   "w": {"type": "array", "items": _rational}},
    "required": ["z", "w"],
}
