"""JSON Schemas (draft 2020-12) for every CLI result and the error object."""

from __future__ import annotations

RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+(/[1-9][0-9]*)?$"}
RVEC = {"type": "array", "items": RATIONAL}
IVEC = {"type": "array", "items": {"type": "integer"}}
INDEX_SET = {"type": "array", "items": {"type": "integer", "minimum": 1}, "uniqueItems": True}
RAT_BY_VERTEX = {"type": "object", "patternProperties": {"^[1-9][0-9]*$": RATIONAL}, "additionalProperties": False}


def _obj(props: dict, required: list | None = None) -> dict:
    return {
        "type": "object",
        "properties": props,
        "required": sorted(props) if required is None else required,
        "additionalProperties": False,
    }


ERROR = _obj(
    {
        "code": {"enum": ["validation", "domain", "hypothesis", "precondition", "ambiguity", "resource", "internal"]},
        "message": {"type": "string"},
        "location": {"type": ["string", "null"]},
    }
)

ROOTSYS = _obj(
    {
        "label": {"type": "string"},
        "rank": {"type": "integer", "minimum": 1},
        "cartan_matrix": {"type": "array", "items": IVEC},
        "gram": {"type": "array", "items": RVEC},
        "positive_roots": {"type": "array", "items": IVEC},
        "fundamental_weights": {"type": "array", "items": RVEC},
        "fundamental_coweights": {"type": "array", "items": RVEC},
        "dim_g": {"type": "integer"},
        "weyl_order": {"type": "integer"},
    }
)

SHAPE = _obj(
    {
        "level": {"type": "integer", "minimum": 1},
        "shape": IVEC,
        "rank": {"type": "integer", "minimum": 1},
        "roots": {"type": "array", "items": IVEC},
    }
)

FACET = _obj(
    {
        "I": INDEX_SET,
        "chamber": IVEC,
        "vertices": {"type": "object", "additionalProperties": RVEC},
        "psi_sizes": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 1}},
        "u_set": {"type": "array", "items": IVEC},
        "shapes": {"type": "array", "items": SHAPE},
        "dim_g": {"type": "integer"},
        "dim_p": {"type": "integer"},
        "dim_l": {"type": "integer"},
        "dim_u": {"type": "integer"},
        "degree": RATIONAL,
        "invariants": RAT_BY_VERTEX,
    },
    required=["I", "chamber", "vertices", "psi_sizes", "u_set", "shapes", "dim_g", "dim_p", "dim_l", "dim_u"],
)

CANONICAL = _obj({"facet": INDEX_SET, "degree": RATIONAL, "invariants": RAT_BY_VERTEX})

B_OF_G = _obj({"b_of_G": RATIONAL, "argmax_facet": INDEX_SET})

INSTABILITY = _obj(
    {
        "facet": INDEX_SET,
        "weight_sum": RATIONAL,
        "deg_hn_infinity_bound": RATIONAL,
        "adjoint_deg_hn_bound": RATIONAL,
    }
)

LMAX = _obj({"lmax_bound": RATIONAL, "lmin_bound": RATIONAL}, required=["lmax_bound"])

REP = _obj({"rep_bound": RATIONAL, "jh_degree": {"type": "integer", "minimum": 0}})

THRESHOLD = _obj({"b_of_G": RATIONAL, "threshold": RATIONAL, "p_exceeds_threshold": {"type": "boolean"}})

S0 = _obj(
    {
        "sign": {"enum": [-1, 0, 1]},
        "square": RATIONAL,
        "value": {"oneOf": [RATIONAL, {"type": "null"}]},
        "exact": {"type": "boolean"},
        "witness": _obj({"P": INDEX_SET, "Q": INDEX_SET, "Q_chamber": IVEC}),
    }
)

DEG_HN = _obj({"deg_hn": RATIONAL, "bounds_ok": {"type": "boolean"}})

FROBENIUS = _obj({"normalized": RVEC, "monotone": {"type": "boolean"}})

HILBERT = _obj(
    {"a": RVEC, "integral": {"type": "boolean"}, "warnings": {"type": "array", "items": {"type": "string"}}}
)

CERTIFY = _obj(
    {
        "verdict": {"enum": ["accept", "reject"]},
        "reason": {"type": "string"},
        "sigma": IVEC,
        "epsilon": RATIONAL,
        "s0": S0,
        "norm_P": RATIONAL,
        "norm_Q": RATIONAL,
        "same_facet": {"type": "boolean"},
        "star2_holds": {"type": "boolean"},
        "warnings": {"type": "array", "items": {"type": "string"}},
    }
)
# witness is only present for computed s0 values
CERTIFY["properties"]["s0"] = {**S0, "required": ["sign", "square", "value", "exact"]}

STABILIZE = _obj({"pair": {"oneOf": [{"type": "null"}, {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}]}})

EXTEND = _obj({"extension": RVEC, "index": {"type": "integer", "minimum": 1}, "values": RVEC})

SCHEMAS = {
    "error": ERROR,
    "rootsys": ROOTSYS,
    "facet": FACET,
    "canonical": CANONICAL,
    "bounds b-of-g": B_OF_G,
    "bounds instability": INSTABILITY,
    "bounds lmax": LMAX,
    "bounds rep": REP,
    "bounds threshold": THRESHOLD,
    "bounds s0": S0,
    "polygon deg-hn": DEG_HN,
    "polygon frobenius": FROBENIUS,
    "polygon hilbert": HILBERT,
    "certify": CERTIFY,
    "stabilize": STABILIZE,
    "extend": EXTEND,
}
