"""Result records shared by the predicate and spectral modules."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


def scalar_to_json(x):
    """Fractions as ``{"num", "den"}``, reals as numbers, complex as ``[re, im]``."""
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        z = complex(x)
        if z.imag == 0:
            return z.real
        return [z.real, z.imag]
    if isinstance(x, (float, np.floating)):
        v = float(x)
        if v == float("inf"):
            return "inf"
        return v
    return x


def scalar_from_json(obj):
    if isinstance(obj, dict):
        return Fraction(obj["num"], obj["den"])
    if isinstance(obj, list):
        return complex(obj[0], obj[1])
    if obj == "inf":
        return float("inf")
    return obj


@dataclass(frozen=True)
class Witness:
    """Index sets and values that reproduce a violation."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    values: tuple

    def to_json(self) -> dict:
        return {
            "rows": list(self.rows),
            "cols": list(self.cols),
            "values": [scalar_to_json(v) for v in self.values],
        }


@dataclass(frozen=True)
class ClassReport:
    """Verdict of a class-membership test.

    ``witness`` is ``None`` exactly when ``holds`` is true. ``detail`` carries
    optional diagnostics (margins, which sub-test failed).
    """

    class_name: str
    holds: bool
    witness: Witness | None = None
    tolerance_used: float = 0.0
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a witness must be present exactly when the class test fails")

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        out = {
            "class": self.class_name,
            "holds": self.holds,
            "witness": self.witness.to_json() if self.witness else None,
            "tolerance": self.tolerance_used,
        }
        if self.detail:
            out["detail"] = {k: _detail_value(v) for k, v in self.detail.items()}
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj) -> "ClassReport":
        if isinstance(obj, str):
            obj = json.loads(obj)
        w = obj.get("witness")
        witness = None
        if w is not None:
            witness = Witness(tuple(w["rows"]), tuple(w["cols"]),
                              tuple(scalar_from_json(v) for v in w["values"]))
        return cls(obj["class"], bool(obj["holds"]), witness, float(obj["tolerance"]),
                   dict(obj.get("detail", {})))


def _detail_value(v):
    if isinstance(v, (list, tuple)):
        return [_detail_value(x) for x in v]
    if isinstance(v, dict):
        return {k: _detail_value(x) for k, x in v.items()}
    return scalar_to_json(v)


def passed(name: str, tol: float = 0.0, **detail) -> ClassReport:
    return ClassReport(name, True, None, tol, detail)


def failed(name: str, rows, cols, values, tol: float = 0.0, **detail) -> ClassReport:
    return ClassReport(name, False, Witness(tuple(int(i) for i in rows), tuple(int(j) for j in cols),
                                            tuple(values)), tol, detail)
