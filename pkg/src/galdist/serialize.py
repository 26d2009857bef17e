"""JSON wire formats.

Rationals travel as ``"p/q"`` strings. Segment labels are integer ids into
the family's inline universe. ``order`` in pairing certificates is 0-based.
"""
from __future__ import annotations

from fractions import Fraction

from .classifier import GenericFamily, PairingCertificate, WitnessCertificate
from .cosets import CosetIndex
from .exact import QuadMatrix, QuadScalar, as_rational, format_rational
from .roots import Composition
from .segments import DistFlags, LabelUniverse, Segment

_RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}

COSET_INDEX_SCHEMA = {
    "type": "object",
    "required": ["base", "entries"],
    "properties": {
        "base": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "entries": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
    },
}

MATRIX_SCHEMA = {
    "type": "array",
    "items": {
        "type": "array",
        "items": {
            "type": "object",
            "required": ["a", "b"],
            "properties": {"a": _RATIONAL, "b": _RATIONAL},
        },
    },
}

SEGMENT_SCHEMA = {
    "type": "object",
    "required": ["base", "twist", "length"],
    "properties": {
        "base": {"type": "integer", "minimum": 0},
        "twist": _RATIONAL,
        "length": {"type": "integer", "minimum": 1},
    },
}

UNIVERSE_SCHEMA = {
    "type": "object",
    "required": ["labels", "sigma", "dual"],
    "properties": {
        "labels": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "degree"],
                "properties": {"id": {"type": "integer"}, "degree": {"type": "integer", "minimum": 1}},
            },
        },
        "sigma": {"type": "array", "items": {"type": "integer"}},
        "dual": {"type": "array", "items": {"type": "integer"}},
        "dist_table": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "length", "distinguished", "eta"],
                "properties": {
                    "label": {"type": "integer"},
                    "length": {"type": "integer", "minimum": 1},
                    "distinguished": {"type": "boolean"},
                    "eta": {"type": "boolean"},
                },
            },
        },
    },
}

FAMILY_SCHEMA = {
    "type": "object",
    "required": ["universe", "segments"],
    "properties": {
        "universe": UNIVERSE_SCHEMA,
        "segments": {"type": "array", "items": SEGMENT_SCHEMA, "minItems": 1},
    },
}

PAIRING_SCHEMA = {
    "type": "object",
    "required": ["order", "r"],
    "properties": {
        "order": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "r": {"type": "integer", "minimum": 0},
    },
}

WITNESS_SCHEMA = {
    "type": "object",
    "required": ["s", "splits"],
    "properties": {
        "s": COSET_INDEX_SCHEMA,
        "splits": {
            "type": "array",
            "items": {"type": "array", "items": {"oneOf": [SEGMENT_SCHEMA, {"type": "null"}]}},
        },
    },
}

COSETS_REPORT_SCHEMA = {
    "type": "object",
    "required": ["composition", "d", "count", "entries"],
    "properties": {
        "composition": {"type": "array", "items": {"type": "integer"}},
        "d": _RATIONAL,
        "count": {"type": "integer"},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["s", "representative", "involution", "levi", "checks", "flag_invariants"],
                "properties": {
                    "s": COSET_INDEX_SCHEMA,
                    "representative": MATRIX_SCHEMA,
                    "involution": {"type": "string"},
                    "levi": {"type": "array", "items": {"type": "integer"}},
                    "checks": {"type": "object", "additionalProperties": {"type": "boolean"}},
                    "flag_invariants": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
                },
            },
        },
    },
}


class FormatError(ValueError):
    """Malformed JSON payload."""


# --------------------------------------------------------------------------


def rational_to_json(x: Fraction) -> str:
    return format_rational(x)


def rational_from_json(text: str) -> Fraction:
    if not isinstance(text, str):
        raise FormatError(f"rational must be a 'p/q' string, got {text!r}")
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {text!r}") from exc


def coset_index_to_json(s: CosetIndex) -> dict:
    return {"base": list(s.base), "entries": [list(r) for r in s.entries]}


def coset_index_from_json(obj: dict) -> CosetIndex:
    return CosetIndex(Composition(obj["base"]), tuple(tuple(r) for r in obj["entries"]))


def matrix_to_json(m: QuadMatrix) -> list:
    return [[{"a": rational_to_json(e.a), "b": rational_to_json(e.b)} for e in row] for row in m.entries]


def matrix_from_json(rows: list, d) -> QuadMatrix:
    return QuadMatrix(
        [[QuadScalar(rational_from_json(e["a"]), rational_from_json(e["b"]), d) for e in row] for row in rows],
        d,
    )


def segment_to_json(seg: Segment) -> dict:
    return {"base": seg.base, "twist": rational_to_json(seg.twist), "length": seg.length}


def segment_from_json(obj: dict) -> Segment:
    return Segment(int(obj["base"]), rational_from_json(obj["twist"]), int(obj["length"]))


def universe_to_json(u: LabelUniverse) -> dict:
    return {
        "labels": [{"id": b, "degree": u.degree[b]} for b in u.labels],
        "sigma": list(u.sigma),
        "dual": list(u.dual),
        "dist_table": [
            {"label": b, "length": length, "distinguished": f.distinguished, "eta": f.eta}
            for (b, length), f in sorted(u.dist_table.items())
        ],
    }


def universe_from_json(obj: dict) -> LabelUniverse:
    labels = sorted(obj["labels"], key=lambda x: x["id"])
    if [x["id"] for x in labels] != list(range(len(labels))):
        raise FormatError("label ids must be 0..L-1")
    table = {
        (int(e["label"]), int(e["length"])): DistFlags(bool(e["distinguished"]), bool(e["eta"]))
        for e in obj.get("dist_table", [])
    }
    return LabelUniverse(
        tuple(int(x["degree"]) for x in labels),
        tuple(obj["sigma"]),
        tuple(obj["dual"]),
        table,
    )


def family_to_json(f: GenericFamily) -> dict:
    return {"universe": universe_to_json(f.universe), "segments": [segment_to_json(s) for s in f.segments]}


def family_from_json(obj: dict) -> GenericFamily:
    """Raises FormatError on malformed input; PreconditionViolated if the
    segments are well-formed but linked."""
    try:
        universe = universe_from_json(obj["universe"])
        segments = tuple(segment_from_json(s) for s in obj["segments"])
        if any(not 0 <= seg.base < len(universe.degree) for seg in segments):
            raise FormatError("segment refers to an unknown label")
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed family: {exc}") from exc
    return GenericFamily(segments, universe)


def pairing_to_json(c: PairingCertificate) -> dict:
    return {"order": list(c.order), "r": c.r}


def pairing_from_json(obj: dict) -> PairingCertificate:
    return PairingCertificate(tuple(obj["order"]), int(obj["r"]))


def witness_to_json(c: WitnessCertificate) -> dict:
    return {
        "s": coset_index_to_json(c.s),
        "splits": [[None if p is None else segment_to_json(p) for p in row] for row in c.splits],
    }


def witness_from_json(obj: dict) -> WitnessCertificate:
    return WitnessCertificate(
        coset_index_from_json(obj["s"]),
        tuple(tuple(None if p is None else segment_from_json(p) for p in row) for row in obj["splits"]),
    )
