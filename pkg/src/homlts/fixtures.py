"""Built-in problem documents.

Each fixture is a JSON-ready document (see :mod:`homlts.io`). Documents are
built on demand and returned as fresh objects.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .cochains import coboundary
from .core import (
    CompatibleHomLts,
    HomSpace,
    TriBracket,
    adjoint_representation,
    from_compatible_hom_lie,
    semidirect_product,
)
from .deformations import trivial_deformation_from_nijenhuis
from .io import algebra_to_doc, antisym_entries, deformation_to_doc, matrix_to_doc
from .linalg import identity, matrix, zeros

__all__ = ["FIXTURES", "fixture_names", "fixture", "describe"]

_DIAG = [["1", "0"], ["0", "-1"]]
_ID2 = [["1", "0"], ["0", "1"]]


def _lie(d: int, entries) -> np.ndarray:
    b = zeros(d, d, d)
    for i, j, k, v in entries:
        b[i, j, k] = v
        b[j, i, k] = -v
    return b


def _example_210(alpha) -> dict:
    return {
        "dim": 2,
        "alpha": alpha,
        "bracket1": [[0, 1, 1, 0, "1"]],
        "bracket2": [[0, 1, 1, 1, "1"]],
    }


def _as_printed() -> dict:
    doc = _example_210(_DIAG)
    doc["meta"] = {
        "name": "example-2.10-as-printed",
        "notes": "[e0, e1, e1] = e0 and [e0, e1, e1] = e1 with alpha = diag(1, -1); bracket 2 is not multiplicative.",
    }
    return doc


def _corrected() -> dict:
    doc = _example_210(_ID2)
    doc["meta"] = {
        "name": "example-2.10-corrected",
        "notes": "alpha = id variant; multiplicativity holds but bracket 2 still fails Eq-2.3 and the pair fails Eq-2.7.",
    }
    return doc


def _abelian_d2() -> dict:
    return {
        "dim": 2,
        "alpha": _ID2,
        "bracket1": [],
        "bracket2": [],
        "rep": "adjoint",
        "N": [["1", "2"], ["3", "4"]],
        "phi": [["1", "2"], ["3", "4"]],
        "mu": {"mu1": [[0, 1, 0, 0, "1"]], "mu2": []},
        "nu": {"mu1": [], "mu2": []},
        "meta": {"name": "abelian-d2", "notes": "zero brackets, alpha = id; mu is a nonzero class, nu is zero."},
    }


def _abelian_d3() -> dict:
    return {
        "dim": 3,
        "alpha": matrix_to_doc(identity(3)),
        "bracket1": [],
        "bracket2": [],
        "rep": {"dimV": 1, "beta": [["1"]], "theta1": [], "theta2": []},
        "mu": {"mu1": [[0, 1, 2, 0, "1"], [1, 2, 0, 0, "-1"]], "mu2": []},
        "nu": {"mu1": [], "mu2": []},
        "meta": {"name": "abelian-d3", "notes": "zero brackets on a 3-dim space, trivial 1-dim representation."},
    }


def _bracket1() -> TriBracket:
    return TriBracket.from_entries(2, [(0, 1, 1, 0, 1)])


def _delta_pair(c: CompatibleHomLts, r, xi: np.ndarray) -> dict:
    f = xi.T
    parts = [coboundary(f, 1, b.c, t, c.alpha) for b, t in zip(c.brackets, r.thetas)]
    return {f"mu{k + 1}": antisym_entries(p) for k, p in enumerate(parts)}


def _nijenhuis_lambda() -> dict:
    lam = 2
    space = HomSpace.diagonal([1, -1])
    b = _bracket1()
    c = CompatibleHomLts(space, b, b.scale(lam * lam))
    n = identity(2) * lam
    dfm = trivial_deformation_from_nijenhuis(c, n)
    r = adjoint_representation(c)
    xi = matrix([[1, 0], [0, 2]])
    doc = algebra_to_doc(c)
    doc.update(
        {
            "rep": "adjoint",
            "N": matrix_to_doc(n),
            "deformation": deformation_to_doc(dfm),
            "twist": {
                "t1": antisym_entries(dfm.mu1.c + dfm.omega1.c),
                "t2": antisym_entries(dfm.mu2.c + dfm.omega2.c),
            },
            "mu": _delta_pair(c, r, xi),
            "nu": {"mu1": [], "mu2": []},
            "xi": matrix_to_doc(xi),
            "meta": {
                "name": "nijenhuis-lambda-id",
                "notes": "pair (b, b_N) for N = 2 id, b: [e0, e1, e1] = e0 with alpha = diag(1, -1); the deformation is the one N generates.",
            },
        }
    )
    return doc


def _base_pair() -> CompatibleHomLts:
    b = _bracket1()
    return CompatibleHomLts(HomSpace.diagonal([1, -1]), b, b)


def _semidirect_4d() -> dict:
    c = _base_pair()
    total = semidirect_product(c, adjoint_representation(c))
    doc = algebra_to_doc(total)
    doc["rep"] = "adjoint"
    doc["meta"] = {
        "name": "semidirect-4d",
        "notes": "semidirect product of (b, b) with its adjoint representation, b: [e0, e1, e1] = e0 with alpha = diag(1, -1).",
    }
    return doc


def _twisted_d2() -> dict:
    return {
        "dim": 2,
        "alpha": _DIAG,
        "bracket1": [[0, 1, 0, 1, "1"]],
        "bracket2": [[0, 1, 1, 0, "1"]],
        "rep": "adjoint",
        "meta": {"name": "twisted-pair-d2", "notes": "two brackets with alpha = diag(1, -1)."},
    }


def _untwisted_d2() -> dict:
    return {
        "dim": 2,
        "alpha": _ID2,
        "bracket1": [[0, 1, 0, 0, "1"], [0, 1, 1, 1, "-1"]],
        "bracket2": [[0, 1, 1, 0, "1"]],
        "rep": "adjoint",
        "meta": {"name": "untwisted-pair-d2", "notes": "alpha = id; both brackets satisfy c[0,1,1,1] = -c[0,1,0,0]."},
    }


def _lie_induced_d2() -> dict:
    b1 = _lie(2, [(0, 1, 0, 1)])
    b2 = _lie(2, [(0, 1, 1, 1)])
    c = from_compatible_hom_lie(b1, b2, identity(2))
    doc = algebra_to_doc(c)
    doc["rep"] = "adjoint"
    doc["meta"] = {
        "name": "lie-induced-d2",
        "notes": "triple brackets [[x, y], z] induced by [e0, e1] = e0 and [e0, e1] = e1.",
    }
    return doc


def _incompatible_d3() -> dict:
    so3 = _lie(3, [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)])
    aff = _lie(3, [(0, 1, 0, 1)])
    c = from_compatible_hom_lie(so3, aff, identity(3))
    doc = algebra_to_doc(c)
    doc["meta"] = {
        "name": "incompatible-d3",
        "notes": "two valid Lie triple systems (from so(3) and [e0, e1] = e0) whose sum is not one; fails Eq-2.7.",
    }
    return doc


FIXTURES: dict[str, Callable[[], dict]] = {
    "example-2.10-as-printed": _as_printed,
    "example-2.10-corrected": _corrected,
    "abelian-d2": _abelian_d2,
    "abelian-d3": _abelian_d3,
    "nijenhuis-lambda-id": _nijenhuis_lambda,
    "semidirect-4d": _semidirect_4d,
    "twisted-pair-d2": _twisted_d2,
    "untwisted-pair-d2": _untwisted_d2,
    "lie-induced-d2": _lie_induced_d2,
    "incompatible-d3": _incompatible_d3,
}


def fixture_names() -> list[str]:
    return list(FIXTURES)


def fixture(name: str) -> dict:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    return FIXTURES[name]()


def describe(name: str) -> str:
    return fixture(name).get("meta", {}).get("notes", "")
