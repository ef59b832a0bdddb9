from __future__ import annotations

import pytest
import sympy

import support
from hopfribbon.catalog import catalog_ids, load, sweedler
from hopfribbon.hopf import (
    HopfAlgebra,
    antipode_power,
    character_inverse,
    characters,
    convolution,
    dual,
    grouplikes,
)
from hopfribbon.linalg import Field, einsum
from hopfribbon.radford import (
    IntegralError,
    compute_integrals,
    distinguished_grouplikes,
    dual_unimodular,
    radford_data,
    radford_rhs_matrix,
    radford_s4_check,
    unimodular,
)

Q = Field.rational()


def sympy_left_integrals(h: HopfAlgebra) -> sympy.Matrix:
    """Null space of the stacked system e_i Λ = ε(e_i) Λ, computed by sympy."""
    n = h.dim
    rows = []
    for i in range(n):
        for k in range(n):
            rows.append([sympy.Rational(str(h.mult[i, j, k])) - (sympy.Rational(str(h.counit[i])) if j == k else 0)
                         for j in range(n)])
    return sympy.Matrix(rows).nullspace()


@pytest.mark.parametrize("cid", [c for c in catalog_ids() if load(c).field.kind == "rational"])
def test_left_integral_matches_sympy_nullspace(cid):
    h = load(cid)
    ns = sympy_left_integrals(h)
    assert len(ns) == 1
    Lam, _ = compute_integrals(h)
    v = ns[0]
    piv = next(i for i in range(h.dim) if v[i] != 0)
    v = v / v[piv]
    assert [sympy.Rational(str(x)) for x in Lam.tolist()] == list(v)


def test_integral_examples():
    h = support.algebra("trivial-Q")
    Lam, lam = compute_integrals(h)
    assert Lam.tolist_str() == ["1"] and lam.tolist_str() == ["1"]
    Lam, _ = compute_integrals(support.algebra("group-C2-Q"))
    assert Lam.tolist_str() == ["1", "1"]
    Lam, _ = compute_integrals(sweedler(Q))
    assert Lam.tolist_str() == ["0", "0", "1", "1"]


@pytest.mark.parametrize("cid", catalog_ids())
def test_integral_properties(cid):
    h = load(cid)
    rad = support.radford(cid)
    Lam, lam = rad.left_integral, rad.right_integral_dual
    for i in range(h.dim):
        e = h.basis_element(i)
        assert h.product(e, Lam).equals(Lam * h.epsilon(e))
        assert h.product(Lam, e).equals(Lam * rad.alpha.item(i))
    for i in range(h.dim):
        f = h.field.basis_vector(h.dim, i)
        assert convolution(h, f, lam).equals(lam * (f @ rad.a).item())
        assert convolution(h, lam, f).equals(lam * (f @ h.unit).item())


def test_sweedler_distinguished_pair():
    rad = radford_data(sweedler(Q))
    assert rad.alpha.tolist_str() == ["1", "-1", "0", "0"]
    assert rad.a.tolist_str() == ["0", "1", "0", "0"]
    assert not rad.unimodular and not rad.dual_unimodular


@pytest.mark.parametrize("cid", support.GROUP_IDS + ["trivial-Q"])
def test_group_algebras_are_unimodular_both_ways(cid):
    h = load(cid)
    assert unimodular(h) and dual_unimodular(h)
    rad = support.radford(cid)
    assert rad.a.equals(h.unit) and rad.alpha.equals(h.counit)


@pytest.mark.parametrize("cid", catalog_ids())
def test_s4_formula_and_element_orders(cid):
    h = load(cid)
    rad = support.radford(cid)
    assert rad.s4.ok and rad.s4.witnesses == []
    G, X = grouplikes(h), characters(h)
    assert h.power(rad.a, len(G)).equals(h.unit)
    power = h.counit
    for _ in range(len(X)):
        power = convolution(h, power, rad.alpha)
    assert power.equals(h.counit)


def test_s4_is_nontrivial_on_taft_and_the_check_has_teeth():
    h = load("taft-n3-F7-q2")
    rad = support.radford("taft-n3-F7-q2")
    S4 = antipode_power(h, 4)
    assert not S4.equals(h.field.eye(h.dim))
    assert radford_rhs_matrix(h, rad.a, rad.alpha).equals(S4)
    # wrong orientations must be rejected
    assert not radford_s4_check(h, h.S(rad.a), rad.alpha).ok
    assert not radford_s4_check(h, rad.a, character_inverse(h, rad.alpha)).ok
    bad = radford_s4_check(h, h.unit, h.counit)
    assert not bad.ok and bad.witnesses


@pytest.mark.parametrize("cid", catalog_ids())
def test_dual_distinguished_pair_is_inverted(cid):
    h = load(cid)
    rad = support.radford(cid)
    rad_d = radford_data(dual(h))
    assert rad_d.a.equals(character_inverse(h, rad.alpha))
    assert rad_d.alpha.equals(h.S(rad.a))


def test_json_fragment():
    doc = radford_data(sweedler(Q)).to_json()
    assert doc["left_integral"] == ["0", "0", "1", "1"]
    assert doc["s4_formula"] == "verified"
    assert doc["unimodular"] is False


def test_non_hopf_input_is_rejected():
    h = sweedler(Q)
    # the zero multiplication has every vector as a left integral
    broken = HopfAlgebra("broken", Q, h.basis, Q.zeros((4, 4, 4)), h.unit, h.comult, h.counit, h.antipode)
    with pytest.raises(IntegralError):
        compute_integrals(broken)


def test_distinguished_pair_from_explicit_integrals():
    h = load("taft-n4-F5-q2")
    Lam, lam = compute_integrals(h)
    a, alpha = distinguished_grouplikes(h, Lam, lam)
    assert h.is_grouplike(a) and h.is_character(alpha)
    # a^2 is the element the square-root pairs must hit; it is not 1 here
    assert not h.product(a, a).equals(h.unit)
    assert einsum("i,i->", alpha, h.unit).item() == 1
