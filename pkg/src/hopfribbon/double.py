"""The Drinfeld double ``D(H) = H*^cop ⊗ H`` and quasitriangular data.

Basis of ``D(H)``: ``f_a ⊗ e_b`` at index ``a * n + b`` where ``f_a`` is the
coordinate dual basis of ``H*``.  Elements of ``D ⊗ D`` are ``N x N``
coefficient arrays with ``N = n^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .hopf import (
    AxiomFailure,
    GrouplikeSet,
    HopfAlgebra,
    StructureError,
    _group_from,
    antipode_power,
    characters,
    grouplikes,
    validate_axioms,
)
from .linalg import ExactArray, einsum, kernel, kronecker, rank, rref, stack

# full axiom validation of a double is dense in dim(D)^5; above this
# dimension only the quasitriangular identities are checked by default
VALIDATE_MAX_DIM = 81


class QuasitriangularError(ArithmeticError):
    """A quasitriangular identity failed; ``failures`` lists the witnesses."""

    def __init__(self, failures: list[AxiomFailure]):
        self.failures = failures
        super().__init__("; ".join(str(f) for f in failures))


# ---------------------------------------------------------------------------
# construction


def _double_structure(h: HopfAlgebra):
    n = h.dim
    m, d, S, Si = h.mult, h.comult, h.antipode, h.antipode_inverse
    N = n * n
    d3 = einsum("bps,sqr->bpqr", d, d)
    # T[r, x, p, c] = coefficient of e_c in S^{-1}(e_r) e_x e_p
    t1 = einsum("sr,sxy->rxy", Si, m)
    T = einsum("rxy,ypc->rxpc", t1, m)
    # Z[b, c, x, q]: (ε ⊗ e_b)(f_c ⊗ 1) = Σ Z[b,c,x,q] f_x ⊗ e_q
    Z = einsum("bpqr,rxpc->bcxq", d3, T)
    # (f_a ⊗ e_b)(f_c ⊗ e_d) = f_a·(...) ⊗ (...)e_d
    A = einsum("bcxq,kax->bcqka", Z, d)
    MD = einsum("bcqka,qdj->abcdkj", A, m).reshape(N, N, N)
    CD = einsum("ija,bpq->abjpiq", m, d).reshape(N, N, N)
    unit = kronecker(h.counit, h.unit)
    counit = kronecker(h.unit, h.counit)
    # S_D(f_a ⊗ e_b) = (ε ⊗ S e_b)(f_a∘S^{-1} ⊗ 1)
    SD = einsum("yb,ac,ycxq->xqab", S, Si, Z).reshape(N, N)
    return MD, unit, CD, counit, SD


def double_algebra(h: HopfAlgebra) -> HopfAlgebra:
    MD, unit, CD, counit, SD = _double_structure(h)
    basis = tuple(f"{a}*|{b}" for a in h.basis for b in h.basis)
    return HopfAlgebra(f"D({h.name})", h.field, basis, MD, unit, CD, counit, SD)


def canonical_r_matrix(h: HopfAlgebra) -> ExactArray:
    """``R = Σ_i (ε ⊗ e_i) ⊗ (f_i ⊗ 1)`` as an ``N x N`` array."""
    n = h.dim
    eye = h.field.eye(n)
    return einsum("a,bc,d->abcd", h.counit, eye, h.unit).reshape(n * n, n * n)


# ---------------------------------------------------------------------------
# products in A ⊗ A through low-rank factorisations


@dataclass(frozen=True)
class Factorisation:
    """``X = Σ_k left[k] ⊗ right[k]`` with independent rows."""

    left: ExactArray
    right: ExactArray

    @classmethod
    def of(cls, X: ExactArray) -> Factorisation:
        fld = X.field
        if X.is_zero():
            n = X.shape[0]
            return cls(fld.zeros((0, n)), fld.zeros((0, X.shape[1])))
        R, piv = rref(X)
        right = R[: len(piv)]
        left = X[:, piv].T
        return cls(left, right)

    @property
    def rank(self) -> int:
        return self.left.shape[0]

    def swap(self) -> Factorisation:
        return Factorisation(self.right, self.left)


def _left_mats(a: HopfAlgebra, V: ExactArray) -> ExactArray:
    """Stacked matrices of ``x -> v x`` for the rows v of V."""
    return einsum("ti,ijk->tkj", V, a.mult)


def _right_mats(a: HopfAlgebra, V: ExactArray) -> ExactArray:
    return einsum("tj,ijk->tki", V, a.mult)


class FactorOperators:
    """Multiplication matrices of the legs of a factorised ``X ∈ A ⊗ A``."""

    def __init__(self, a: HopfAlgebra, F: Factorisation):
        self.algebra = a
        self.factors = F

    @cached_property
    def left(self) -> tuple[ExactArray, ExactArray]:
        return _left_mats(self.algebra, self.factors.left), _left_mats(self.algebra, self.factors.right)

    @cached_property
    def right(self) -> tuple[ExactArray, ExactArray]:
        return _right_mats(self.algebra, self.factors.left), _right_mats(self.algebra, self.factors.right)

    def times(self, Y: ExactArray) -> ExactArray:
        """``X Y``."""
        La, Lb = self.left
        W = einsum("tpu,uv->tpv", La, Y)
        return einsum("tpv,tqv->pq", W, Lb)

    def rtimes(self, Y: ExactArray) -> ExactArray:
        """``Y X``."""
        Ra, Rb = self.right
        W = einsum("tpu,uv->tpv", Ra, Y)
        return einsum("tpv,tqv->pq", W, Rb)


def left_multiply(a: HopfAlgebra, F: Factorisation, Y: ExactArray) -> ExactArray:
    """``X Y`` in ``A ⊗ A`` for ``X`` given by its factorisation."""
    return FactorOperators(a, F).times(Y)


def right_multiply(a: HopfAlgebra, Y: ExactArray, F: Factorisation) -> ExactArray:
    """``Y X`` in ``A ⊗ A``."""
    return FactorOperators(a, F).rtimes(Y)


# ---------------------------------------------------------------------------
# quasitriangular data


@dataclass
class QuasiTriangularData:
    algebra: HopfAlgebra
    r_matrix: ExactArray
    provenance: str = "user-supplied"
    base: HopfAlgebra | None = None
    validation: object | None = None
    notes: list[str] = dc_field(default_factory=list)

    def __post_init__(self):
        N = self.algebra.dim
        if self.r_matrix.shape != (N, N):
            raise StructureError(f"r_matrix has shape {self.r_matrix.shape}, expected {(N, N)}")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @cached_property
    def r_factors(self) -> Factorisation:
        return Factorisation.of(self.r_matrix)

    @cached_property
    def r21_factors(self) -> Factorisation:
        return self.r_factors.swap()

    @cached_property
    def r_ops(self) -> FactorOperators:
        return FactorOperators(self.algebra, self.r_factors)

    @cached_property
    def r21_ops(self) -> FactorOperators:
        return FactorOperators(self.algebra, self.r21_factors)

    @cached_property
    def u(self) -> ExactArray:
        return drinfeld_element(self)

    @cached_property
    def u_inverse(self) -> ExactArray:
        inv = self.algebra.inverse_element(self.u)
        if inv is None:
            raise QuasitriangularError([AxiomFailure("drinfeld_element_invertible", None, "u is not invertible")])
        return inv

    @cached_property
    def monodromy(self) -> ExactArray:
        return monodromy(self)

    def monodromy_times(self, Y: ExactArray) -> ExactArray:
        """``Q Y = R21 (R Y)`` without forming Q as an operator."""
        return self.r21_ops.times(self.r_ops.times(Y))

    @cached_property
    def grouplikes(self) -> GrouplikeSet:
        return grouplikes(self.algebra)

    def to_json(self) -> dict:
        doc = self.algebra.to_json()
        doc["r_matrix"] = self.r_matrix.tolist_str()
        doc["u"] = self.u.tolist_str()
        doc["monodromy"] = self.monodromy.tolist_str()
        return doc


def drinfeld_element(qt: QuasiTriangularData) -> ExactArray:
    """``u = Σ S(b_i) a_i`` for ``R = Σ a_i ⊗ b_i``."""
    a = qt.algebra
    return einsum("uv,sv,suk->k", qt.r_matrix, a.antipode, a.mult)


def monodromy(qt: QuasiTriangularData) -> ExactArray:
    """``Q = R21 R`` as an ``N x N`` array."""
    return qt.r21_ops.times(qt.r_matrix)


def double(h: HopfAlgebra, validate: bool | None = None) -> QuasiTriangularData:
    """Drinfeld double of ``h`` with its canonical R-matrix.

    Args:
        h: a validated Hopf algebra.
        validate: run the full axiom suite on ``D(h)``. ``None`` means
            only when ``dim D(h) <= VALIDATE_MAX_DIM``.

    Raises:
        QuasitriangularError: the construction failed an axiom.
    """
    D = double_algebra(h)
    qt = QuasiTriangularData(D, canonical_r_matrix(h), provenance=f"double-of({h.name})", base=h)
    if validate is None:
        validate = D.dim <= VALIDATE_MAX_DIM
    if validate:
        report = validate_axioms(D)
        qt.validation = report
        if not report.ok:
            raise QuasitriangularError(report.failures)
    else:
        qt.notes.append(f"full axiom validation skipped at dim {D.dim}")
    return qt


# ---------------------------------------------------------------------------
# verification


@dataclass
class QuasitriangularReport:
    failures: list[AxiomFailure]
    checked: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked": self.checked,
            "failures": [{"identity": f.axiom, "witness": f.witness, "detail": f.detail} for f in self.failures],
        }


def _first_nonzero(diff: ExactArray):
    nz = diff.nonzero()
    if len(nz[0]) == 0:
        return None
    return tuple(int(ax[0]) for ax in nz)


def verify_quasitriangular(qt: QuasiTriangularData, naturality: bool = True) -> QuasitriangularReport:
    """Evaluate every quasitriangular identity exactly.

    Checks the two hexagon identities, ``R Δ(x) = Δ^op(x) R`` on every
    basis element, invertibility of R with inverse ``(S ⊗ id)R``,
    ``S^2 = Ad(u)``, ``ε(u) = 1`` and ``Δ(u) = Q^{-1}(u ⊗ u)``.
    """
    a = qt.algebra
    fld, N = a.field, a.dim
    F = qt.r_factors
    A, B = F.left, F.right
    failures: list[AxiomFailure] = []
    checked: list[str] = []

    def check(name, lhs, rhs, detail=""):
        checked.append(name)
        w = _first_nonzero(lhs - rhs)
        if w is not None:
            failures.append(AxiomFailure(name, w, detail))

    # (Δ ⊗ id)R = R13 R23
    dA = einsum("ku,uvw->kvw", A, a.comult)
    lhs = einsum("kvw,kz->vwz", dA, B)
    BB = einsum("ku,luz->klz", B, einsum("lv,uvz->luz", B, a.mult))
    rhs = einsum("kv,klz->vlz", A, BB)
    rhs = einsum("lw,vlz->vwz", A, rhs)
    check("hexagon_left", lhs, rhs, "(Δ⊗id)R vs R13 R23")

    # (id ⊗ Δ)R = R13 R12
    dB = einsum("ku,uvw->kvw", B, a.comult)
    lhs = einsum("kz,kvw->zvw", A, dB)
    AA = einsum("ku,luz->klz", A, einsum("lv,uvz->luz", A, a.mult))
    rhs = einsum("klz,lv->zvk", AA, B)
    rhs = einsum("zvk,kw->zvw", rhs, B)
    check("hexagon_right", lhs, rhs, "(id⊗Δ)R vs R13 R12")

    if naturality:
        checked.append("braiding_naturality")
        for x in range(N):
            dx = a.comult[x]
            lhs = qt.r_ops.times(dx)
            rhs = qt.r_ops.rtimes(dx.T)
            w = _first_nonzero(lhs - rhs)
            if w is not None:
                failures.append(AxiomFailure("braiding_naturality", (x,) + w, "R Δ(x) vs Δ^op(x) R"))
                break

    one2 = einsum("i,j->ij", a.unit, a.unit)
    R_inv = a.antipode @ qt.r_matrix
    check("r_invertible_left", qt.r_ops.times(R_inv), one2, "R (S⊗id)R")
    check("r_invertible_right", qt.r_ops.rtimes(R_inv), one2, "(S⊗id)R R")

    u = qt.u
    uinv = a.inverse_element(u)
    checked.append("u_invertible")
    if uinv is None:
        failures.append(AxiomFailure("u_invertible", None, "u has no inverse"))
    else:
        S2 = antipode_power(a, 2)
        conj = a.left_mult_matrix(u) @ a.right_mult_matrix(uinv)
        check("s2_conjugation_by_u", S2, conj, "S^2(x) vs u x u^{-1}")
    checked.append("u_counit")
    if a.epsilon(u) != 1:
        failures.append(AxiomFailure("u_counit", None, f"ε(u) = {fld.format(a.epsilon(u))}"))
    check("u_coproduct", qt.monodromy_times(a.coproduct(u)), einsum("i,j->ij", u, u), "Q Δ(u) vs u⊗u")
    su = a.S(u)
    usu = a.product(u, su)
    check("u_su_commute", usu, a.product(su, u), "u S(u) vs S(u) u")
    check("u_su_central", a.left_mult_matrix(usu), a.right_mult_matrix(usu), "u S(u) central")
    return QuasitriangularReport(failures, checked)


# ---------------------------------------------------------------------------
# factorisability, centre, grouplikes


def drinfeld_map_matrix(qt: QuasiTriangularData) -> ExactArray:
    """``M[j, i]``: coordinate along ``e_j`` of ``(f_i ⊗ id)(Q)``."""
    return qt.monodromy.T


def factorizable(qt: QuasiTriangularData) -> bool:
    return rank(drinfeld_map_matrix(qt)) == qt.dim


def central_elements(a: HopfAlgebra) -> ExactArray:
    """Row basis of the centre: kernel of ``x -> e_i x - x e_i`` for all i."""
    from .linalg import common_kernel

    comm = a.left_regular - a.right_regular
    Z = common_kernel((comm[i] for i in range(a.dim)), a.dim, a.field)
    for z in Z:
        if not a.left_mult_matrix(z).equals(a.right_mult_matrix(z)):
            raise ArithmeticError("central element failed re-verification")
    return Z


def is_central(a: HopfAlgebra, x: ExactArray) -> bool:
    return a.left_mult_matrix(x).equals(a.right_mult_matrix(x))


def embed_pair(h: HopfAlgebra, beta: ExactArray, ell: ExactArray) -> ExactArray:
    """``β ⊗ ℓ`` as an element of ``D(h)``."""
    return kronecker(beta, ell)


def product_grouplikes(qt: QuasiTriangularData) -> GrouplikeSet:
    """``G(D(H)) = {β ⊗ ℓ}`` from ``G(H*) × G(H)``."""
    h = qt.base
    if h is None:
        raise ValueError("product shortcut needs the base algebra of the double")
    D = qt.algebra
    els = [embed_pair(h, b, l) for b in characters(h).elements for l in grouplikes(h).elements]
    for x in els:
        if not D.is_grouplike(x):
            raise ArithmeticError("β ⊗ ℓ failed the grouplike check in the double")
    return _group_from(D, els, [], D.product)


def double_grouplikes(qt: QuasiTriangularData, generic: bool = True) -> GrouplikeSet:
    """Grouplikes of the double, cross-checking the product shortcut."""
    fast = product_grouplikes(qt) if qt.base is not None else None
    if not generic and fast is not None:
        return fast
    slow = qt.grouplikes
    if fast is not None:
        if {x.key() for x in fast.elements} != {x.key() for x in slow.elements}:
            raise ArithmeticError(
                f"grouplikes of the double: generic {len(slow)} vs product {len(fast)}")
    return slow


def from_quasitriangular_json(doc: dict) -> QuasiTriangularData:
    from .hopf import _array, from_json

    a = from_json(doc)
    N = a.dim
    R = _array(a.field, doc["r_matrix"], (N, N), "$.r_matrix")
    return QuasiTriangularData(a, R, provenance="user-supplied")
