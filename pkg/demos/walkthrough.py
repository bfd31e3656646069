"""A tour of the library on small examples.

Run with ``python demos/walkthrough.py``.
"""

from fractions import Fraction

from homlts import (
    CompatibleHomLts,
    HomSpace,
    LinearDeformation,
    TriBracket,
    adjoint_representation,
    are_cohomologous,
    build_extension,
    check_deformation,
    classify_extension,
    cohomology,
    equivalence_from_xi,
    identity,
    is_nijenhuis,
    printed_equation_report,
    trivial_deformation_from_nijenhuis,
    verify_compatible,
)
from homlts.fixtures import fixture
from homlts.io import parse_document


def show(title, rep):
    print(f"{title}: {'PASS' if rep else 'FAIL'}")
    for f in rep.failures[:3]:
        print(f"  {f.axiom} at {f.witness}: {list(f.lhs.reshape(-1))} vs {list(f.rhs.reshape(-1))}")


# a pair on a 2-dimensional space whose second bracket is not multiplicative
b1 = TriBracket.from_entries(2, [(0, 1, 1, 0, 1)])
b2 = TriBracket.from_entries(2, [(0, 1, 1, 1, 1)])
show("twist diag(1,-1)", verify_compatible(CompatibleHomLts(HomSpace.diagonal([1, -1]), b1, b2), 1))

# a valid twisted pair and its adjoint cohomology
c = parse_document(fixture("twisted-pair-d2")).algebra
r = adjoint_representation(c)
for n in (1, 2):
    h = cohomology(c, r, n)
    print(f"H^{n}: cochains {h.dim_cochains}, cocycles {h.dim_cocycles}, coboundaries {h.dim_coboundaries}, H {h.dim_H}")

# Nijenhuis operators generate trivial deformations
lam = Fraction(3, 5)
n = identity(2) * lam
assert is_nijenhuis(c, n)
d = trivial_deformation_from_nijenhuis(c, n)
print("mu1 == 2*lam*b1:", d.mu1 == c.b1.scale(2 * lam))
show("generated deformation", check_deformation(c, d))

# where the commonly printed t^2 equation and the expansion part ways
big = parse_document(fixture("semidirect-4d")).algebra
n4 = identity(4) * 0
n4[0, 2] = 1
d4 = trivial_deformation_from_nijenhuis(big, n4)
show("semidirect deformation", check_deformation(big, d4))
show("printed list, read verbatim", printed_equation_report(big, d4, 1))

# a non-deformation: [e0,e1,e0] = e0 breaks the fundamental identity already at t^1
z = TriBracket.zero(2)
u = parse_document(fixture("untwisted-pair-d2")).algebra
mu = TriBracket.from_entries(2, [(0, 1, 0, 0, 1)])
show("non-deformation", check_deformation(u, LinearDeformation(mu, z, z, z), 1))

# extensions: cohomologous cocycles give equivalent extensions
p = parse_document(fixture("nijenhuis-lambda-id"))
xi = are_cohomologous(p.algebra, p.rep, p.mu, p.nu)
e1, e2 = build_extension(p.algebra, p.rep, p.mu), build_extension(p.algebra, p.rep, p.nu)
eq = equivalence_from_xi(e1, e2, xi)
print("xi =", xi.as_map().tolist())
show("zeta_xi", eq.report)
print("classes:", classify_extension(e1).tolist(), classify_extension(e2).tolist())
