"""Problem documents: JSON in, library objects out (and back).

Rationals are strings such as ``"3"`` or ``"-2/5"``; JSON integers are also
accepted. Tensors are sparse entry lists with 0-based indices. For brackets
and 2-cochains the mirrored entry ``[j, i, k, l, -v]`` is implied.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .cochains import Cochain
from .core import CompatibleHomLts, CompatibleRepresentation, HomSpace, TriBracket, adjoint_representation
from .deformations import LinearDeformation
from .linalg import format_rational, rational, zeros

__all__ = [
    "DocumentError",
    "Problem",
    "parse_document",
    "load_document",
    "canonical_bytes",
    "digest",
    "matrix_to_doc",
    "antisym_entries",
    "bracket_to_doc",
    "cochain_to_doc",
    "deformation_to_doc",
    "algebra_to_doc",
    "representation_to_doc",
]


class DocumentError(ValueError):
    """Malformed input; the message starts with the offending location."""

    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


@dataclass
class Problem:
    algebra: CompatibleHomLts
    rep: CompatibleRepresentation | None = None
    rep_is_adjoint: bool = False
    deformation: LinearDeformation | None = None
    deformation_prime: LinearDeformation | None = None
    n: np.ndarray | None = None
    mu: tuple[Cochain, Cochain] | None = None
    nu: tuple[Cochain, Cochain] | None = None
    xi: np.ndarray | None = None
    phi: np.ndarray | None = None
    twist: tuple[TriBracket, TriBracket] | None = None
    meta: dict = field(default_factory=dict)


def _scalar(x, where: str):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise DocumentError(where, f"expected a rational string or integer, got {x!r}")
    try:
        return rational(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise DocumentError(where, str(exc)) from None


def _index(x, bound: int, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(where, f"index must be an integer, got {x!r}")
    if not 0 <= x < bound:
        raise DocumentError(where, f"index {x} out of range 0..{bound - 1}")
    return x


def _dense(doc, rows: int, cols: int, where: str) -> np.ndarray:
    if not isinstance(doc, list) or len(doc) != rows:
        raise DocumentError(where, f"expected {rows} rows")
    out = zeros(rows, cols)
    for i, row in enumerate(doc):
        if not isinstance(row, list) or len(row) != cols:
            raise DocumentError(f"{where}[{i}]", f"expected {cols} entries")
        for j, x in enumerate(row):
            out[i, j] = _scalar(x, f"{where}[{i}][{j}]")
    return out


def _entries(doc, where: str) -> list:
    if not isinstance(doc, list):
        raise DocumentError(where, "expected a list of sparse entries")
    return doc


def _antisym_tensor(doc, dims: tuple[int, int, int, int], where: str) -> np.ndarray:
    """Sparse [i, j, k, l, v] list, antisymmetric in (i, j)."""
    out = zeros(*dims)
    seen: dict[tuple, object] = {}
    for n, e in enumerate(_entries(doc, where)):
        loc = f"{where}[{n}]"
        if not isinstance(e, list) or len(e) != 5:
            raise DocumentError(loc, "expected [i, j, k, l, value]")
        idx = tuple(_index(x, b, loc) for x, b in zip(e[:4], dims))
        val = _scalar(e[4], loc)
        if idx in seen:
            raise DocumentError(loc, f"duplicate entry {list(idx)}")
        i, j, k, l = idx
        if i == j and val != 0:
            raise DocumentError(loc, "entries with i == j must be zero (antisymmetry)")
        mirror = (j, i, k, l)
        if mirror in seen and seen[mirror] != -val:
            raise DocumentError(loc, f"violates antisymmetry with the entry {list(mirror)}")
        seen[idx] = val
        out[i, j, k, l] = val
        out[j, i, k, l] = -val
    return out


def _theta(doc, d: int, dv: int, where: str) -> np.ndarray:
    out = zeros(d, d, dv, dv)
    seen = set()
    for n, e in enumerate(_entries(doc, where)):
        loc = f"{where}[{n}]"
        if not isinstance(e, list) or len(e) != 5:
            raise DocumentError(loc, "expected [i, j, row, col, value]")
        idx = tuple(_index(x, b, loc) for x, b in zip(e[:4], (d, d, dv, dv)))
        if idx in seen:
            raise DocumentError(loc, f"duplicate entry {list(idx)}")
        seen.add(idx)
        out[idx] = _scalar(e[4], loc)
    return out


def _require_dict(x, where: str) -> dict:
    if not isinstance(x, dict):
        raise DocumentError(where, "expected an object")
    return x


def parse_document(doc: Any) -> Problem:
    """Validate a decoded JSON document and build the library objects."""
    doc = _require_dict(doc, "document")
    if "dim" not in doc:
        raise DocumentError("dim", "missing")
    d = doc["dim"]
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise DocumentError("dim", f"must be a positive integer, got {d!r}")
    alpha = _dense(doc["alpha"], d, d, "alpha") if "alpha" in doc else _identity(d)
    space = HomSpace(d, alpha)
    brackets = []
    for key in ("bracket1", "bracket2"):
        if key not in doc:
            raise DocumentError(key, "missing")
        brackets.append(TriBracket(_antisym_tensor(doc[key], (d,) * 4, key)))
    algebra = CompatibleHomLts(space, brackets[0], brackets[1])
    prob = Problem(algebra)

    rep = doc.get("rep")
    if rep == "adjoint":
        prob.rep = adjoint_representation(algebra)
        prob.rep_is_adjoint = True
    elif rep is not None:
        rep = _require_dict(rep, "rep")
        dv = rep.get("dimV")
        if isinstance(dv, bool) or not isinstance(dv, int) or dv < 1:
            raise DocumentError("rep.dimV", f"must be a positive integer, got {dv!r}")
        beta = _dense(rep["beta"], dv, dv, "rep.beta") if "beta" in rep else _identity(dv)
        t1 = _theta(rep.get("theta1", []), d, dv, "rep.theta1")
        t2 = _theta(rep.get("theta2", []), d, dv, "rep.theta2")
        prob.rep = CompatibleRepresentation(space, HomSpace(dv, beta), t1, t2)

    for key, attr in (("deformation", "deformation"), ("deformation_prime", "deformation_prime")):
        if key in doc:
            sec = _require_dict(doc[key], key)
            parts = [
                TriBracket(_antisym_tensor(sec.get(name, []), (d,) * 4, f"{key}.{name}"))
                for name in ("mu1", "mu2", "omega1", "omega2")
            ]
            setattr(prob, attr, LinearDeformation(*parts))

    if "N" in doc:
        prob.n = _dense(doc["N"], d, d, "N")
    if "phi" in doc:
        prob.phi = _dense(doc["phi"], d, d, "phi")
    if "twist" in doc:
        sec = _require_dict(doc["twist"], "twist")
        prob.twist = tuple(
            TriBracket(_antisym_tensor(sec.get(name, []), (d,) * 4, f"twist.{name}")) for name in ("t1", "t2")
        )

    for key in ("mu", "nu", "xi"):
        if key in doc and prob.rep is None:
            raise DocumentError(key, "needs a 'rep' section")
    if prob.rep is not None:
        dv = prob.rep.v.dim
        for key in ("mu", "nu"):
            if key in doc:
                sec = _require_dict(doc[key], key)
                prob_parts = tuple(
                    Cochain(
                        space,
                        prob.rep.v,
                        2,
                        _antisym_tensor(sec.get(name, []), (d, d, d, dv), f"{key}.{name}"),
                    )
                    for name in ("mu1", "mu2")
                )
                setattr(prob, key, prob_parts)
        if "xi" in doc:
            prob.xi = _dense(doc["xi"], dv, d, "xi")
    meta = doc.get("meta", {})
    prob.meta = _require_dict(meta, "meta")
    return prob


def _identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def load_document(text: str | bytes) -> tuple[Any, Problem]:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}", f"invalid JSON: {exc.msg}") from None
    return raw, parse_document(raw)


def canonical_bytes(doc: Any) -> bytes:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode()


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


# ---------------------------------------------------------------------------
# serialization


def matrix_to_doc(m: np.ndarray) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in np.asarray(m, dtype=object)]


def antisym_entries(t: np.ndarray) -> list:
    out = []
    for idx in np.argwhere(np.asarray(t, dtype=object) != 0):
        i, j, k, l = (int(x) for x in idx)
        if i < j:
            out.append([i, j, k, l, format_rational(t[i, j, k, l])])
    return out


def bracket_to_doc(b: TriBracket) -> list:
    return antisym_entries(b.c)


def cochain_to_doc(f: Cochain) -> list:
    if f.n != 2:
        raise ValueError("only 2-cochains have a sparse document form")
    return antisym_entries(f.coeffs)


def deformation_to_doc(d: LinearDeformation) -> dict:
    return {
        "mu1": bracket_to_doc(d.mu1),
        "mu2": bracket_to_doc(d.mu2),
        "omega1": bracket_to_doc(d.omega1),
        "omega2": bracket_to_doc(d.omega2),
    }


def _theta_to_doc(theta: np.ndarray) -> list:
    return [[*(int(x) for x in idx), format_rational(theta[tuple(idx)])] for idx in np.argwhere(theta != 0)]


def representation_to_doc(r: CompatibleRepresentation) -> dict:
    return {
        "dimV": r.v.dim,
        "beta": matrix_to_doc(r.v.twist),
        "theta1": _theta_to_doc(r.theta1),
        "theta2": _theta_to_doc(r.theta2),
    }


def algebra_to_doc(c: CompatibleHomLts) -> dict:
    return {
        "dim": c.dim,
        "alpha": matrix_to_doc(c.alpha),
        "bracket1": bracket_to_doc(c.b1),
        "bracket2": bracket_to_doc(c.b2),
    }
