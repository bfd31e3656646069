import random
import zlib
from fractions import Fraction

import numpy as np
import pytest

from homlts.core import TriBracket, adjoint_representation, is_nijenhuis
from homlts.deformations import (
    EQUATIONS,
    PRINTED_EQUATIONS,
    LinearDeformation,
    check_deformation,
    check_equivalence,
    deformation_class,
    infinitesimal_is_cocycle,
    is_trivial_deformation,
    printed_equation_report,
    trivial_deformation_from_nijenhuis,
)
from homlts.cochains import cohomology
from homlts.linalg import identity, matrix, zeros

from conftest import (
    SMALL,
    VERIFIED,
    adversarial_deformations,
    double_oracle,
    load,
    pointwise_deformation_check,
)


def test_equation_list_shape():
    assert len(EQUATIONS) == 15
    assert len(PRINTED_EQUATIONS) == 12
    labels = [e[0] for e in EQUATIONS]
    assert "t^2:[pi1,omega1]+2[mu1,mu1]" not in labels
    # [π,ω] appears twice and [μ,μ] once in the t^2 coefficient, merged by symmetry
    assert "t^2:2[pi1,omega1]+[mu1,mu1]" in labels
    assert "t^1:[pi1,mu2]+[pi2,mu1]" in labels


@pytest.mark.parametrize("name", VERIFIED)
@pytest.mark.parametrize("lam", [1, -2, Fraction(3, 5)])
def test_scalar_nijenhuis_closed_form(name, lam):
    c = load(name).algebra
    d = trivial_deformation_from_nijenhuis(c, identity(c.dim) * lam)
    for b, mu, om in zip(c.brackets, d.mu, d.omega):
        assert mu == b.scale(2 * lam)
        assert om == b.scale(lam * lam)
    assert check_deformation(c, d)
    assert is_trivial_deformation(c, d, identity(c.dim) * lam)


def test_nijenhuis_fixture_generates_its_deformation():
    p = load("nijenhuis-lambda-id")
    assert trivial_deformation_from_nijenhuis(p.algebra, p.n) == p.deformation
    assert check_deformation(p.algebra, p.deformation)


def test_non_nijenhuis_rejected():
    p = load("twisted-pair-d2")
    n = matrix([[1, 1], [0, 1]])
    assert not is_nijenhuis(p.algebra, n)
    with pytest.raises(ValueError, match="Nijenhuis"):
        trivial_deformation_from_nijenhuis(p.algebra, n)


def test_triviality_report_ids():
    p = load("nijenhuis-lambda-id")
    from homlts.deformations import triviality_report

    rep = triviality_report(p.algebra, p.deformation, p.n)
    assert rep.checked == [
        "Eq-4.9",
        "bracket1:Eq-4.10",
        "bracket1:Eq-4.11",
        "bracket1:Eq-4.12",
        "bracket2:Eq-4.10",
        "bracket2:Eq-4.11",
        "bracket2:Eq-4.12",
    ]
    assert rep
    # the wrong operator fails Eq-4.10 with a witness
    bad = triviality_report(p.algebra, p.deformation, identity(2))
    assert "bracket1:Eq-4.10" in bad.failed_axioms()
    assert bad.failures[0].witness is not None


# with α = diag(1,-1) at d = 2 every element of 𝒞² is itself a valid bracket
ALL_VALID = {"twisted-pair-d2", "nijenhuis-lambda-id"}


@pytest.mark.parametrize("name", SMALL + ["incompatible-d3"])
def test_double_oracle_on_adversarial_inputs(name):
    c = load(name).algebra
    rng = random.Random(zlib.crc32(name.encode()))
    verdicts = []
    for label, d in adversarial_deformations(c, rng):
        bad, ok = double_oracle(c, d)
        assert bad == [], label
        assert ok == pointwise_deformation_check(c, d), label
        verdicts.append(ok)
    if name == "incompatible-d3":
        assert not any(verdicts)
    else:
        # (1 + t)π and the swapped pencil are always deformations
        assert verdicts[0] and verdicts[1] and verdicts[2]
    if name not in ALL_VALID:
        assert not all(verdicts)


def test_incompatible_base_fails_at_t0_only_on_mixed_row():
    c = load("incompatible-d3").algebra
    rep = check_deformation(c, LinearDeformation.zero(3))
    failed = [a for a in rep.failed_axioms() if a.startswith("bracket:")]
    assert failed == ["bracket:t^0:[pi1,pi2]"]
    assert "poly:Eq-2.7:t^0" in rep.failed_axioms()


def test_failing_basis_element_witness():
    from homlts.cochains import cochain_space_basis

    c = load("untwisted-pair-d2").algebra
    z = TriBracket.zero(2)
    basis = cochain_space_basis(c.space, c.space, 2)
    for t in basis.basis_tensors():
        rep = check_deformation(c, LinearDeformation(TriBracket(t), z, z, z))
        if not rep:
            break
    else:
        pytest.fail("every basis element deforms the pair")
    failed = rep.failed_axioms()
    bracket = [a.split(":")[1] for a in failed if a.startswith("bracket:")]
    poly = [a.split(":")[-1] for a in failed if a.startswith("poly:")]
    assert bracket and sorted(set(bracket)) == sorted(set(poly))
    assert all(f.witness for f in rep.failures)


def test_printed_t2_equation_disagrees_when_mu_mu_nonzero():
    p = load("semidirect-4d")
    c = p.algebra
    n = zeros(4, 4)
    n[0, 2] = 1
    d = trivial_deformation_from_nijenhuis(c, n)
    assert check_deformation(c, d)
    printed = printed_equation_report(c, d)
    assert printed.failed_axioms() == ["printed:[pi1,omega1]+[mu1,mu1]", "printed:[pi2,omega2]+[mu2,mu2]"]


def test_validate_rejects_non_cochains():
    c = load("twisted-pair-d2").algebra
    z = TriBracket.zero(2)
    # [e0,e1,e0] = e0 is not equivariant for α = diag(1,-1)
    bad = TriBracket.from_entries(2, [(0, 1, 0, 0, 1)])
    with pytest.raises(ValueError, match="mu2"):
        check_deformation(c, LinearDeformation(z, bad, z, z))
    with pytest.raises(ValueError, match="dimension"):
        check_deformation(c, LinearDeformation(TriBracket.zero(3), z, z, z))


def test_infinitesimal_cocycle_and_class():
    p = load("nijenhuis-lambda-id")
    c = p.algebra
    r = adjoint_representation(c)
    assert infinitesimal_is_cocycle(c, r, p.deformation.mu)
    assert not np.any(deformation_class(c, p.deformation.mu) != 0)


def test_nonzero_class_is_not_trivial():
    c = load("abelian-d2").algebra
    # on abelian brackets every 2-cochain is a cocycle and B² = 0; μ must be a bracket itself
    m = TriBracket.from_entries(2, [(0, 1, 1, 0, 1)])
    d = LinearDeformation(m, TriBracket.zero(2), TriBracket.zero(2), TriBracket.zero(2))
    assert check_deformation(c, d)
    rep = cohomology(c, adjoint_representation(c), 2)
    cls = deformation_class(c, d.mu, rep)
    assert np.any(cls != 0)
    rng = random.Random(5)
    for _ in range(30):
        n = matrix([[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)])
        assert not is_trivial_deformation(c, d, n)


def test_non_cocycle_infinitesimal_raises_in_class():
    c = load("lie-induced-d2").algebra
    from homlts.cochains import cochain_space_basis

    r = adjoint_representation(c)
    basis = cochain_space_basis(c.space, c.space, 2)
    found = None
    for k in range(basis.dim):
        t = basis.basis_tensors()[k]
        mu = (TriBracket(t), TriBracket.zero(2))
        if not infinitesimal_is_cocycle(c, r, mu):
            found = mu
            break
    assert found is not None
    with pytest.raises(ValueError, match="cocycle"):
        deformation_class(c, found)


def test_equivalence_generated_vs_undeformed():
    p = load("nijenhuis-lambda-id")
    c = p.algebra
    zero = LinearDeformation.zero(2)
    rep = check_equivalence(c, p.deformation, zero, p.n)
    assert rep
    assert "bracket2:packaged:t^5" in rep.checked
    assert "bracket1:Eq-4.8" in rep.checked


def test_equivalence_fails_with_witness():
    rng = random.Random(11)
    c = load("twisted-pair-d2").algebra
    z = TriBracket.zero(2)
    d = LinearDeformation(c.b1, c.b2, z, z)
    for _ in range(10):
        n = matrix([[rng.randint(-3, 3), 0], [0, rng.randint(-3, 3)]])
        rep = check_equivalence(c, d, LinearDeformation.zero(2), n)
        assert not rep
        assert rep.failures[0].witness != ()


def test_equivalence_explicit_matches_packaged():
    # the explicit items hold exactly when every packaged coefficient does
    rng = random.Random(3)
    p = load("nijenhuis-lambda-id")
    c = p.algebra
    for _ in range(15):
        n = matrix([[rng.randint(-2, 2), 0], [0, rng.randint(-2, 2)]])
        dp = trivial_deformation_from_nijenhuis(c, n) if is_nijenhuis(c, n) else LinearDeformation.zero(2)
        rep = check_equivalence(c, p.deformation, dp, n)
        for i in (1, 2):
            explicit = all(not rep.counts[f"bracket{i}:Eq-4.{k}"] for k in range(4, 9))
            packaged = all(not rep.counts[f"bracket{i}:packaged:t^{k}"] for k in range(6))
            assert explicit == packaged


@pytest.mark.parametrize("name", SMALL)
def test_generated_infinitesimal_has_zero_class(name):
    c = load(name).algebra
    rep = cohomology(c, adjoint_representation(c), 2)
    for lam in (1, Fraction(3, 5)):
        d = trivial_deformation_from_nijenhuis(c, identity(c.dim) * lam)
        assert not np.any(deformation_class(c, d.mu, rep) != 0)
