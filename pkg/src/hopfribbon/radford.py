"""Integrals, distinguished grouplikes and the S^4 conjugation formula."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .hopf import (
    HopfAlgebra,
    antipode_power,
    character_inverse,
    hit_left_matrix,
    hit_right_matrix,
)
from .linalg import ExactArray, common_kernel, einsum


class IntegralError(ValueError):
    """The integral space is not one-dimensional (input is not a Hopf algebra)."""


class ConventionError(RuntimeError):
    """An extracted distinguished element failed its re-verification."""


def _normalize(v: ExactArray) -> ExactArray:
    nz = v.nonzero()[0]
    return v * v.field.inv(v.item(int(nz[0])))


def left_integral(h: HopfAlgebra) -> ExactArray:
    """Λ with ``e_i Λ = ε(e_i) Λ`` for all i, first nonzero coordinate 1."""
    fld, n = h.field, h.dim
    L = h.left_regular
    eye = fld.eye(n)
    blocks = (L[i] - eye * h.counit.item(i) for i in range(n))
    K = common_kernel(blocks, n, fld)
    if K.shape[0] != 1:
        raise IntegralError(f"left integrals of {h.name} span {K.shape[0]} dimensions, expected 1")
    return _normalize(K[0])


def right_integral_dual(h: HopfAlgebra) -> ExactArray:
    """λ ∈ H* with ``λ f = f(1) λ`` for every f ∈ H*."""
    fld, n = h.field, h.dim
    d = h.comult
    eye = fld.eye(n)
    # right multiplication by f_j in H*: (λ f_j)_k = Σ_i λ_i Δ(e_k)[i, j]
    blocks = (d[:, :, j] - eye * h.unit.item(j) for j in range(n))
    K = common_kernel(blocks, n, fld)
    if K.shape[0] != 1:
        raise IntegralError(f"right integrals of dual({h.name}) span {K.shape[0]} dimensions, expected 1")
    return _normalize(K[0])


def compute_integrals(h: HopfAlgebra) -> tuple[ExactArray, ExactArray]:
    return left_integral(h), right_integral_dual(h)


def _proportionality(rows: ExactArray, base: ExactArray) -> ExactArray | None:
    """Scalars c_i with rows[i] = c_i * base, or None."""
    piv = int(base.nonzero()[0][0])
    c = rows[:, piv] * base.field.inv(base.item(piv))
    if not einsum("i,k->ik", c, base).equals(rows):
        return None
    return c


def distinguished_grouplikes(h: HopfAlgebra, Lam: ExactArray, lam: ExactArray) -> tuple[ExactArray, ExactArray]:
    """The pair (a, α): ``f λ = f(a) λ`` and ``Λ h = α(h) Λ``."""
    right_mult = einsum("j,jik->ik", Lam, h.mult)  # row i: Λ e_i
    alpha = _proportionality(right_mult, Lam)
    if alpha is None or not h.is_character(alpha):
        raise ConventionError("modular function extracted from Λ is not a character")
    left_conv = einsum("j,kij->ik", lam, h.comult)  # row i: f_i λ
    a = _proportionality(left_conv, lam)
    if a is None or not h.is_grouplike(a):
        raise ConventionError("distinguished element extracted from λ is not grouplike")
    return a, alpha


@dataclass
class S4Check:
    ok: bool
    witnesses: list[int] = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok


def radford_rhs_matrix(h: HopfAlgebra, a: ExactArray, alpha: ExactArray) -> ExactArray:
    """Matrix of ``x -> a (α ⇀ x ↼ α^{-1}) a^{-1}``."""
    a_inv = h.S(a)
    hits = hit_left_matrix(h, alpha) @ hit_right_matrix(h, character_inverse(h, alpha))
    return h.left_mult_matrix(a) @ h.right_mult_matrix(a_inv) @ hits


def radford_s4_check(h: HopfAlgebra, a: ExactArray, alpha: ExactArray) -> S4Check:
    """Compare S^4 with the conjugation formula on every basis element."""
    lhs = antipode_power(h, 4)
    rhs = radford_rhs_matrix(h, a, alpha)
    diff = (lhs - rhs).num
    bad = [j for j in range(h.dim) if diff[:, j].any()]
    return S4Check(not bad, bad)


@dataclass
class RadfordData:
    algebra: str
    left_integral: ExactArray
    right_integral_dual: ExactArray
    alpha: ExactArray
    a: ExactArray
    s4: S4Check
    unit: ExactArray
    counit: ExactArray

    @property
    def s4_verified(self) -> bool:
        return self.s4.ok

    @property
    def unimodular(self) -> bool:
        return self.alpha.equals(self.counit)

    @property
    def dual_unimodular(self) -> bool:
        return self.a.equals(self.unit)

    def to_json(self) -> dict:
        return {
            "left_integral": self.left_integral.tolist_str(),
            "right_integral_dual": self.right_integral_dual.tolist_str(),
            "alpha": self.alpha.tolist_str(),
            "a": self.a.tolist_str(),
            "unimodular": self.unimodular,
            "dual_unimodular": self.dual_unimodular,
            "s4_formula": "verified" if self.s4.ok else {"witnesses": self.s4.witnesses},
        }


def radford_data(h: HopfAlgebra) -> RadfordData:
    Lam, lam = compute_integrals(h)
    a, alpha = distinguished_grouplikes(h, Lam, lam)
    return RadfordData(h.name, Lam, lam, alpha, a, radford_s4_check(h, a, alpha), h.unit, h.counit)


def unimodular(h: HopfAlgebra, rad: RadfordData | None = None) -> bool:
    return (rad or radford_data(h)).unimodular


def dual_unimodular(h: HopfAlgebra, rad: RadfordData | None = None) -> bool:
    return (rad or radford_data(h)).dual_unimodular
