"""Finite-dimensional Hopf algebras given by structure constants.

Conventions for a basis ``e_0 .. e_{n-1}``:

* ``mult[i, j, k]``   coefficient of ``e_k`` in ``e_i e_j``
* ``comult[i, j, k]`` coefficient of ``e_j ⊗ e_k`` in ``Δ(e_i)``
* ``antipode[:, j]``  coordinates of ``S(e_j)`` (matrices act on columns)

Elements of ``H ⊗ H`` are ``n x n`` coefficient arrays, elements of the
dual ``H*`` are covectors in the coordinate dual basis ``f_i(e_j) = δ_ij``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .linalg import (
    ExactArray,
    Field,
    common_kernel,
    einsum,
    inverse,
    kernel,
    linear_characters,
    rank,
    rref,
    stack,
)


class StructureError(ValueError):
    """Structure-constant tensors with the wrong shape or content."""


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    name: str
    field: Field
    basis: tuple[str, ...]
    mult: ExactArray
    unit: ExactArray
    comult: ExactArray
    counit: ExactArray
    antipode: ExactArray

    def __post_init__(self):
        n = len(self.basis)
        expected = {
            "mult": (n, n, n),
            "unit": (n,),
            "comult": (n, n, n),
            "counit": (n,),
            "antipode": (n, n),
        }
        for attr, shape in expected.items():
            arr = getattr(self, attr)
            if not isinstance(arr, ExactArray):
                raise StructureError(f"{attr} must be an ExactArray")
            if arr.field != self.field:
                raise StructureError(f"{attr} is over {arr.field}, expected {self.field}")
            if arr.shape != shape:
                raise StructureError(f"{attr} has shape {arr.shape}, expected {shape}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"HopfAlgebra({self.name!r}, dim={self.dim}, field={self.field})"

    # -- elements --------------------------------------------------------
    def element(self, coords) -> ExactArray:
        v = self.field.array(coords)
        if v.shape != (self.dim,):
            raise ValueError(f"element needs {self.dim} coordinates")
        return v

    def basis_element(self, i: int) -> ExactArray:
        return self.field.basis_vector(self.dim, i)

    @property
    def one(self) -> ExactArray:
        return self.unit

    def product(self, x: ExactArray, y: ExactArray) -> ExactArray:
        return einsum("i,j,ijk->k", x, y, self.mult)

    def coproduct(self, x: ExactArray) -> ExactArray:
        return einsum("i,ijk->jk", x, self.comult)

    def epsilon(self, x: ExactArray):
        return (x @ self.counit).item()

    def S(self, x: ExactArray) -> ExactArray:
        return self.antipode @ x

    def S_inv(self, x: ExactArray) -> ExactArray:
        return self.antipode_inverse @ x

    @cached_property
    def antipode_inverse(self) -> ExactArray:
        inv = inverse(self.antipode)
        if inv is None:
            raise StructureError(f"antipode of {self.name} is not invertible")
        return inv

    @cached_property
    def left_regular(self) -> ExactArray:
        """``L[i]`` is the matrix of ``x -> e_i x``."""
        return self.mult.transpose(0, 2, 1)

    @cached_property
    def right_regular(self) -> ExactArray:
        """``R[i]`` is the matrix of ``x -> x e_i``."""
        return self.mult.transpose(1, 2, 0)

    def left_mult_matrix(self, x: ExactArray) -> ExactArray:
        return einsum("i,ijk->kj", x, self.mult)

    def right_mult_matrix(self, x: ExactArray) -> ExactArray:
        return einsum("j,ijk->ki", x, self.mult)

    def inverse_element(self, x: ExactArray) -> ExactArray | None:
        inv = inverse(self.left_mult_matrix(x))
        if inv is None:
            return None
        y = inv @ self.unit
        return y if self.product(y, x).equals(self.unit) else None

    def power(self, x: ExactArray, k: int) -> ExactArray:
        out = self.unit
        for _ in range(k):
            out = self.product(out, x)
        return out

    def tensor_product(self, X: ExactArray, Y: ExactArray) -> ExactArray:
        """Product in ``H ⊗ H`` of two ``n x n`` coefficient arrays."""
        return tensor2_product(self.mult, X, Y)

    def is_grouplike(self, x: ExactArray) -> bool:
        return self.coproduct(x).equals(einsum("i,j->ij", x, x)) and self.epsilon(x) == 1

    def is_character(self, f: ExactArray) -> bool:
        """``f`` is an algebra map ``H -> k`` (checked on all basis pairs)."""
        lhs = einsum("ijk,k->ij", self.mult, f)
        return lhs.equals(einsum("i,j->ij", f, f)) and (f @ self.unit).item() == 1

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "field": self.field.to_json(),
            "dim": self.dim,
            "basis": list(self.basis),
            "mult": self.mult.tolist_str(),
            "unit": self.unit.tolist_str(),
            "comult": self.comult.tolist_str(),
            "counit": self.counit.tolist_str(),
            "antipode": self.antipode.tolist_str(),
        }


def tensor2_product(mult: ExactArray, X: ExactArray, Y: ExactArray) -> ExactArray:
    """Product in ``A ⊗ A`` given the structure constants of ``A``.

    Uses the sparse outer-product route when the operands are sparse
    enough, otherwise a staged dense contraction (3 n^4).
    """
    n = mult.shape[0]
    xi, xj = X.nonzero()
    yi, yj = Y.nonzero()
    terms = len(xi) * len(yi)
    if terms == 0:
        return X.field.zeros((n, n))
    if terms * n * n <= 3 * n**4:
        ia = np.repeat(xi, len(yi))
        ja = np.repeat(xj, len(yi))
        ib = np.tile(yi, len(xi))
        jb = np.tile(yj, len(xi))
        coef = X[xi, xj].reshape(-1, 1) * Y[yi, yj].reshape(1, -1)
        left = mult[ia, ib, :] * coef.reshape(-1, 1)
        right = mult[ja, jb, :]
        return einsum("tk,tl->kl", left, right)
    W = einsum("ij,iak->jak", X, mult)
    V = einsum("jak,ab->jbk", W, Y)
    return einsum("jbk,jbl->kl", V, mult)


def tensor3_product(mult: ExactArray, X: ExactArray, Y: ExactArray) -> ExactArray:
    """Product in ``A ⊗ A ⊗ A`` (used on sparse operands only)."""
    xs = X.nonzero()
    ys = Y.nonzero()
    fld = X.field
    n = mult.shape[0]
    out = fld.zeros((n, n, n))
    if len(xs[0]) == 0 or len(ys[0]) == 0:
        return out
    rep = len(ys[0])
    idx = [np.repeat(a, rep) for a in xs]
    idy = [np.tile(b, len(xs[0])) for b in ys]
    coef = (X[xs].reshape(-1, 1) * Y[ys].reshape(1, -1)).reshape(-1)
    a = mult[idx[0], idy[0], :] * coef.reshape(-1, 1)
    b = mult[idx[1], idy[1], :]
    c = mult[idx[2], idy[2], :]
    return einsum("tp,tq,tr->pqr", a, b, c)


# ---------------------------------------------------------------------------
# axioms


@dataclass
class AxiomFailure:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        return f"{self.axiom} fails at {self.witness}" + (f": {self.detail}" if self.detail else "")


@dataclass
class ValidationReport:
    name: str
    failures: list[AxiomFailure] = dc_field(default_factory=list)
    checked: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {
            "algebra": self.name,
            "valid": self.ok,
            "checked": list(self.checked),
            "failures": [{"axiom": f.axiom, "witness": list(f.witness), "detail": f.detail}
                         for f in self.failures],
        }


def _first_mismatch(a: ExactArray, b: ExactArray) -> tuple | None:
    if a.equals(b):
        return None
    aa, bb = a.num, b.num
    if a.den != b.den:
        diff = (a - b).num
        idx = np.argwhere(diff != 0)
    else:
        idx = np.argwhere(aa != bb)
    return tuple(int(i) for i in idx[0])


def _chunks(n: int, per_row: int, budget: int = 2_000_000):
    step = max(1, budget // max(per_row, 1))
    for start in range(0, n, step):
        yield start, min(n, start + step)


def validate_axioms(h: HopfAlgebra) -> ValidationReport:
    """Check every Hopf algebra axiom on all basis elements.

    Each identity is evaluated by exact contraction; a failure records the
    first basis indices where the two sides differ.
    """
    rep = ValidationReport(h.name)
    n = h.dim
    m, d, u, eps, S = h.mult, h.comult, h.unit, h.counit, h.antipode
    fld = h.field
    I = fld.eye(n)

    def record(name, witness, detail=""):
        if witness is not None:
            rep.failures.append(AxiomFailure(name, witness, detail))

    # associativity: (e_i e_j) e_l = e_i (e_j e_l)
    rep.checked.append("associativity")
    for lo, hi in _chunks(n, n**3):
        lhs = einsum("ijk,klm->ijlm", m[lo:hi], m)
        rhs = einsum("jlk,ikm->ijlm", m, m[lo:hi])
        w = _first_mismatch(lhs, rhs)
        if w is not None:
            record("associativity", (w[0] + lo,) + w[1:3])
            break

    rep.checked.append("unit")
    record("left unit", _first_mismatch(einsum("i,ijk->jk", u, m), I))
    record("right unit", _first_mismatch(einsum("j,ijk->ik", u, m), I))

    # coassociativity: (Δ ⊗ id) Δ = (id ⊗ Δ) Δ
    rep.checked.append("coassociativity")
    for lo, hi in _chunks(n, n**3):
        lhs = einsum("isc,sab->iabc", d[lo:hi], d)
        rhs = einsum("ias,sbc->iabc", d[lo:hi], d)
        w = _first_mismatch(lhs, rhs)
        if w is not None:
            record("coassociativity", (w[0] + lo,) + w[1:])
            break

    rep.checked.append("counit")
    record("left counit", _first_mismatch(einsum("j,ijk->ik", eps, d), I))
    record("right counit", _first_mismatch(einsum("k,ijk->ij", eps, d), I))

    # bialgebra: Δ and ε are algebra maps
    rep.checked.append("bialgebra")
    record("counit multiplicative",
           _first_mismatch(einsum("ijk,k->ij", m, eps), einsum("i,j->ij", eps, eps)))
    record("counit unital", None if (u @ eps).item() == 1 else (0,), "ε(1) != 1")
    record("comult unital", _first_mismatch(h.coproduct(u), einsum("i,j->ij", u, u)))
    failed = False
    for i in range(n):
        delta_prod = einsum("js,sab->jab", m[i], d)
        for j in range(n):
            rhs = tensor2_product(m, d[i], d[j])
            w = _first_mismatch(delta_prod[j], rhs)
            if w is not None:
                record("comult multiplicative", (i, j) + w)
                failed = True
                break
        if failed:
            break

    # antipode: m (S ⊗ id) Δ = u ε = m (id ⊗ S) Δ
    rep.checked.append("antipode")
    target = einsum("k,i->ik", u, eps)
    left = einsum("iab,ca,cbk->ik", d, S, m)
    right = einsum("iab,cb,ack->ik", d, S, m)
    record("antipode left", _first_mismatch(left, target))
    record("antipode right", _first_mismatch(right, target))
    if inverse(S) is None:
        record("antipode invertible", (0,), "singular antipode matrix")
    return rep


# ---------------------------------------------------------------------------
# derived algebras


def dual(h: HopfAlgebra) -> HopfAlgebra:
    """The dual Hopf algebra on the coordinate dual basis."""
    return HopfAlgebra(
        name=f"dual({h.name})",
        field=h.field,
        basis=tuple(f"{b}*" for b in h.basis),
        mult=h.comult.transpose(1, 2, 0),
        unit=h.counit,
        comult=h.mult.transpose(2, 0, 1),
        counit=h.unit,
        antipode=h.antipode.T,
    )


def op(h: HopfAlgebra) -> HopfAlgebra:
    """Opposite multiplication, antipode S^{-1}."""
    return HopfAlgebra(f"op({h.name})", h.field, h.basis, h.mult.transpose(1, 0, 2),
                       h.unit, h.comult, h.counit, h.antipode_inverse)


def cop(h: HopfAlgebra) -> HopfAlgebra:
    """Co-opposite comultiplication, antipode S^{-1}."""
    return HopfAlgebra(f"cop({h.name})", h.field, h.basis, h.mult, h.unit,
                       h.comult.transpose(0, 2, 1), h.counit, h.antipode_inverse)


def op_and_cop(h: HopfAlgebra) -> tuple[HopfAlgebra, HopfAlgebra]:
    return op(h), cop(h)


# ---------------------------------------------------------------------------
# grouplikes and characters


@dataclass
class GrouplikeSet:
    elements: list[ExactArray]
    group_table: list[list[int]]
    warnings: list[str] = dc_field(default_factory=list)

    def __len__(self):
        return len(self.elements)

    def index(self, x: ExactArray) -> int:
        for i, g in enumerate(self.elements):
            if g.equals(x):
                return i
        raise KeyError("element is not in the grouplike set")

    @property
    def identity(self) -> int:
        return 0

    def inverse_index(self, i: int) -> int:
        return next(j for j, k in enumerate(self.group_table[i]) if k == 0)

    def square_index(self, i: int) -> int:
        return self.group_table[i][i]


def _invariant_annihilator(mult: ExactArray) -> ExactArray:
    """Row basis of the annihilator of the commutator ideal of an algebra."""
    n = mult.shape[0]
    fld = mult.field
    L = mult.transpose(0, 2, 1)
    R = mult.transpose(1, 2, 0)
    comm = L - R
    V = common_kernel((comm[i].T for i in range(n)), n, fld)
    while 0 < V.shape[0] < n:
        Y = kernel(V)
        blocks = []
        # φ -> φ∘L_i and φ -> φ∘R_i must stay inside span(V)
        imgL = einsum("ijk,ck->icj", L.transpose(0, 2, 1), V)  # (L_i^T V^T)^T rows
        imgR = einsum("ijk,ck->icj", R.transpose(0, 2, 1), V)
        for img in (imgL, imgR):
            for i in range(n):
                blocks.append(Y @ img[i].T)
        C = common_kernel(iter(blocks), V.shape[0], fld)
        if C.shape[0] == V.shape[0]:
            break
        V = C @ V if C.shape[0] else fld.zeros((0, n))
        if V.shape[0]:
            V, _ = rref(V)
    return V


def algebra_characters(mult: ExactArray, unit: ExactArray) -> tuple[list[ExactArray], list[str]]:
    """All algebra maps ``A -> k`` with values in the base field.

    The character problem lives on the annihilator of the commutator
    ideal, where the transposed left multiplications commute; their joint
    eigenvectors, normalised at the unit, are exactly the characters.
    """
    n = mult.shape[0]
    fld = mult.field
    V = _invariant_annihilator(mult)
    k = V.shape[0]
    if k == 0:
        return [], []
    V, piv = rref(V)
    # operator φ -> φ∘L_i in V-coordinates (as a column operator)
    T = einsum("ijk,ck->ijc", mult, V)  # T[i, j, c] = (φ_c ∘ L_i)(e_j)
    ops = [T[i][piv, :] for i in range(n)]
    systems = linear_characters(ops, check_commuting=False)
    chars = []
    warnings = list(systems.warnings)
    for values, basis in systems.systems:
        for row in range(basis.shape[0]):
            phi = basis[row] @ V
            val = (phi @ unit).item()
            if val == 0:
                warnings.append("joint eigenvector vanishing at the unit")
                continue
            chars.append(phi * fld.inv(val))
        if basis.shape[0] > 1:
            warnings.append(f"joint eigenspace of dimension {basis.shape[0]}")
    return chars, warnings


def _sort_key(v: ExactArray):
    return tuple(v.tolist())


def _group_from(h: HopfAlgebra, elements: list[ExactArray], warnings: list[str],
                product) -> GrouplikeSet:
    uniq: dict = {}
    for x in elements:
        uniq.setdefault(x.key(), x)
    one_key = h.unit.key()
    els = sorted(uniq.values(), key=lambda v: (v.key() != one_key, _sort_key(v)))
    index = {x.key(): i for i, x in enumerate(els)}
    table = []
    for x in els:
        row = []
        for y in els:
            k = product(x, y).key()
            if k not in index:
                raise ArithmeticError("grouplike set is not closed under multiplication")
            row.append(index[k])
        table.append(row)
    return GrouplikeSet(els, table, warnings)


def grouplikes(h: HopfAlgebra) -> GrouplikeSet:
    """Grouplike elements ``{x : Δx = x ⊗ x, ε(x) = 1}``.

    Computed as the characters of the dual algebra, then re-verified by
    direct substitution.
    """
    dual_mult = h.comult.transpose(1, 2, 0)
    cands, warnings = algebra_characters(dual_mult, h.counit)
    found = []
    for x in cands:
        if not h.is_grouplike(x):
            raise ArithmeticError("character of the dual failed the grouplike check")
        found.append(x)
    if found and rank(stack(found)) != len(found):
        raise ArithmeticError("grouplikes are not linearly independent")
    gs = _group_from(h, found, warnings, h.product)
    for i, x in enumerate(gs.elements):
        if not h.S(x).equals(gs.elements[gs.inverse_index(i)]):
            raise ArithmeticError("antipode does not invert a grouplike")
    return gs


def characters(h: HopfAlgebra) -> GrouplikeSet:
    """Algebra maps ``H -> k`` (the grouplikes of the dual), as covectors."""
    hd = dual(h)
    gs = grouplikes(hd)
    for f in gs.elements:
        if not h.is_character(f):
            raise ArithmeticError("grouplike of the dual is not multiplicative")
    return gs


def convolution(h: HopfAlgebra, f: ExactArray, g: ExactArray) -> ExactArray:
    """Product in ``H*``: ``(f*g)(x) = f(x_(1)) g(x_(2))``."""
    return einsum("ijk,j,k->i", h.comult, f, g)


def hit_left(h: HopfAlgebra, f: ExactArray, x: ExactArray) -> ExactArray:
    """``f ⇀ x = x_(1) f(x_(2))``."""
    return einsum("i,ijk,k->j", x, h.comult, f)


def hit_right(h: HopfAlgebra, x: ExactArray, f: ExactArray) -> ExactArray:
    """``x ↼ f = f(x_(1)) x_(2)``."""
    return einsum("i,ijk,j->k", x, h.comult, f)


def hit_actions(h: HopfAlgebra, f: ExactArray, x: ExactArray) -> tuple[ExactArray, ExactArray]:
    return hit_left(h, f, x), hit_right(h, x, f)


def hit_left_matrix(h: HopfAlgebra, f: ExactArray) -> ExactArray:
    return einsum("ijk,k->ji", h.comult, f)


def hit_right_matrix(h: HopfAlgebra, f: ExactArray) -> ExactArray:
    return einsum("ijk,j->ki", h.comult, f)


def character_inverse(h: HopfAlgebra, f: ExactArray) -> ExactArray:
    """Convolution inverse of a character: ``f ∘ S``."""
    return h.antipode.T @ f


def antipode_power(h: HopfAlgebra, k: int) -> ExactArray:
    out = h.field.eye(h.dim)
    for _ in range(k):
        out = h.antipode @ out
    return out


def antipode_order(h: HopfAlgebra, limit: int = 1000) -> int | None:
    P = h.antipode
    I = h.field.eye(h.dim)
    for k in range(1, limit + 1):
        if P.equals(I):
            return k
        P = h.antipode @ P
    return None


# ---------------------------------------------------------------------------
# JSON


SCHEMA = {
    "type": "object",
    "required": ["name", "field", "dim", "basis", "mult", "unit", "comult", "counit", "antipode"],
    "properties": {
        "name": {"type": "string"},
        "field": {
            "oneOf": [
                {"type": "object", "required": ["kind"],
                 "properties": {"kind": {"const": "rational"}}},
                {"type": "object", "required": ["kind", "p"],
                 "properties": {"kind": {"const": "prime"}, "p": {"type": "integer", "minimum": 2}}},
            ]
        },
        "dim": {"type": "integer", "minimum": 1},
        "basis": {"type": "array", "items": {"type": "string"}},
        "mult": {"$ref": "#/$defs/tensor3"},
        "unit": {"$ref": "#/$defs/vector"},
        "comult": {"$ref": "#/$defs/tensor3"},
        "counit": {"$ref": "#/$defs/vector"},
        "antipode": {"$ref": "#/$defs/matrix"},
        "r_matrix": {"$ref": "#/$defs/matrix"},
        "u": {"$ref": "#/$defs/vector"},
        "monodromy": {"$ref": "#/$defs/matrix"},
    },
    "$defs": {
        "scalar": {"type": "string", "pattern": r"^\s*-?[0-9]+(/[0-9]+)?\s*$"},
        "vector": {"type": "array", "items": {"$ref": "#/$defs/scalar"}},
        "matrix": {"type": "array", "items": {"$ref": "#/$defs/vector"}},
        "tensor3": {"type": "array", "items": {"$ref": "#/$defs/matrix"}},
    },
}


class SchemaError(ValueError):
    """Input document does not match the structure-constant format."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _path(parts) -> str:
    return "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in parts)


def check_schema(doc) -> None:
    import jsonschema

    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(_path(err.absolute_path), err.message)


def field_from_json(doc: dict) -> Field:
    if doc["kind"] == "rational":
        return Field.rational()
    return Field.prime(doc["p"])


def _array(fld: Field, doc, shape, path: str) -> ExactArray:
    try:
        arr = fld.array(doc)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(path, str(exc)) from exc
    if arr.shape != shape:
        raise SchemaError(path, f"expected shape {shape}, got {arr.shape}")
    return arr


def from_json(doc: dict) -> HopfAlgebra:
    """Parse a HopfAlgebraData document (no axiom checks)."""
    check_schema(doc)
    try:
        fld = field_from_json(doc["field"])
    except ValueError as exc:
        raise SchemaError("$.field", str(exc)) from exc
    n = doc["dim"]
    if len(doc["basis"]) != n:
        raise SchemaError("$.basis", f"expected {n} basis names, got {len(doc['basis'])}")
    return HopfAlgebra(
        name=doc["name"],
        field=fld,
        basis=tuple(doc["basis"]),
        mult=_array(fld, doc["mult"], (n, n, n), "$.mult"),
        unit=_array(fld, doc["unit"], (n,), "$.unit"),
        comult=_array(fld, doc["comult"], (n, n, n), "$.comult"),
        counit=_array(fld, doc["counit"], (n,), "$.counit"),
        antipode=_array(fld, doc["antipode"], (n, n), "$.antipode"),
    )


def dumps(h: HopfAlgebra, **extra) -> str:
    doc = h.to_json()
    doc.update(extra)
    return json.dumps(doc, indent=1)
