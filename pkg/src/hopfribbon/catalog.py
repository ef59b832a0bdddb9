"""Deterministic constructors for the test corpus of Hopf algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from .hopf import HopfAlgebra, dual, tensor2_product
from .linalg import ExactArray, Field


# ---------------------------------------------------------------------------
# finite groups as multiplication tables


def check_group_table(table) -> int:
    """Validate a group multiplication table; return the identity index."""
    t = np.asarray(table, dtype=np.int64)
    n = len(t)
    if t.shape != (n, n) or n == 0:
        raise ValueError("group table must be a non-empty square array")
    if t.min() < 0 or t.max() >= n:
        raise ValueError("group table entries out of range")
    ids = [e for e in range(n) if np.array_equal(t[e], np.arange(n)) and np.array_equal(t[:, e], np.arange(n))]
    if not ids:
        raise ValueError("group table has no identity")
    e = ids[0]
    for a in range(n):
        if e not in t[a]:
            raise ValueError(f"element {a} has no inverse")
    lhs = t[t[:, :, None], np.arange(n)[None, None, :]]  # (ab)c
    rhs = t[np.arange(n)[:, None, None], t[None, :, :]]  # a(bc)
    if not np.array_equal(lhs, rhs):
        raise ValueError("group table is not associative")
    return e


def cyclic_group(n: int) -> tuple[list[list[int]], list[str]]:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    names = ["1" if i == 0 else ("g" if i == 1 else f"g^{i}") for i in range(n)]
    return table, names


def _closure(gens: list[tuple], compose) -> list[tuple]:
    ident = tuple(range(len(gens[0])))
    elems = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose(a, g)
                if b not in elems:
                    elems.append(b)
                    nxt.append(b)
        frontier = nxt
    return elems


def permutation_group(gens: list[tuple], names: dict | None = None) -> tuple[list[list[int]], list[str]]:
    compose = lambda a, b: tuple(a[b[i]] for i in range(len(a)))
    elems = _closure(gens, compose)
    index = {g: i for i, g in enumerate(elems)}
    table = [[index[compose(a, b)] for b in elems] for a in elems]
    labels = ["1" if i == 0 else "(" + "".join(str(x) for x in g) + ")" for i, g in enumerate(elems)]
    return table, labels


def symmetric_group_3():
    return permutation_group([(1, 0, 2), (1, 2, 0)])


def dihedral_group_4():
    # symmetries of a square: rotation and a reflection
    return permutation_group([(1, 2, 3, 0), (0, 3, 2, 1)])


def quaternion_group():
    units = []
    for sign in (1, -1):
        for k in range(4):
            q = [0, 0, 0, 0]
            q[k] = sign
            units.append(tuple(q))

    def qmul(a, b):
        a0, a1, a2, a3 = a
        b0, b1, b2, b3 = b
        return (
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    index = {q: i for i, q in enumerate(units)}
    table = [[index[qmul(a, b)] for b in units] for a in units]
    names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    return table, names


# ---------------------------------------------------------------------------
# Hopf algebras


def group_algebra(table, field: Field | None = None, name: str = "kG",
                  labels: list[str] | None = None) -> HopfAlgebra:
    """Group algebra with ``Δg = g ⊗ g``, ``ε(g) = 1``, ``S(g) = g^{-1}``."""
    field = field or Field.rational()
    e = check_group_table(table)
    t = np.asarray(table, dtype=np.int64)
    n = len(t)
    if e != 0:
        raise ValueError("the identity must be listed first")
    mult = np.zeros((n, n, n), dtype=np.int64)
    comult = np.zeros((n, n, n), dtype=np.int64)
    anti = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        comult[a, a, a] = 1
        anti[int(np.flatnonzero(t[a] == e)[0]), a] = 1
        for b in range(n):
            mult[a, b, t[a, b]] = 1
    unit = np.zeros(n, dtype=np.int64)
    unit[e] = 1
    labels = labels or [str(i) for i in range(n)]
    return HopfAlgebra(
        name=name,
        field=field,
        basis=tuple(labels),
        mult=ExactArray(field, mult),
        unit=ExactArray(field, unit),
        comult=ExactArray(field, comult),
        counit=ExactArray(field, np.ones(n, dtype=np.int64)),
        antipode=ExactArray(field, anti),
    )


def _power_basis_algebra(n: int, q: int, field: Field, name: str, labels) -> HopfAlgebra:
    """Algebra with basis g^i x^j (index j*n + i), g^n = 1, x^n = 0, xg = q gx."""
    dim = n * n
    p = field.p
    idx = lambda i, j: j * n + i
    mult = np.zeros((dim, dim, dim), dtype=np.int64)
    for (i, j, k, l) in itertools.product(range(n), repeat=4):
        # (g^i x^j)(g^k x^l) = q^{jk} g^{i+k} x^{j+l}
        if j + l < n:
            coef = pow(q, j * k, p) if p else q ** (j * k)
            mult[idx(i, j), idx(k, l), idx((i + k) % n, j + l)] = coef
    unit = np.zeros(dim, dtype=np.int64)
    unit[idx(0, 0)] = 1
    M = ExactArray(field, mult)
    g = field.basis_vector(dim, idx(1, 0))
    x = field.basis_vector(dim, idx(0, 1))
    one = ExactArray(field, unit)
    outer = lambda a, b: np.einsum("i,j->ij", a.num, b.num)
    dg = ExactArray(field, outer(g, g))
    dx = ExactArray(field, outer(x, one) + outer(g, x))
    prod = lambda a, b: ExactArray(field, np.einsum("i,j,ijk->k", a.num, b.num, M.num))
    g_inv = field.basis_vector(dim, idx(n - 1, 0))
    s_g = g_inv
    s_x = prod(g_inv, x) * field.scalar(-1)
    comult = np.zeros((dim, dim, dim), dtype=np.int64)
    anti = np.zeros((dim, dim), dtype=np.int64)
    one2 = ExactArray(field, outer(one, one))
    for i in range(n):
        for j in range(n):
            D = one2
            S = one
            for _ in range(i):
                D = tensor2_product(M, D, dg)
            for _ in range(j):
                D = tensor2_product(M, D, dx)
            # S(g^i x^j) = S(x)^j S(g)^i
            for _ in range(j):
                S = prod(S, s_x)
            for _ in range(i):
                S = prod(S, s_g)
            comult[idx(i, j)] = D.num
            anti[:, idx(i, j)] = S.num
    counit = np.zeros(dim, dtype=np.int64)
    for i in range(n):
        counit[idx(i, 0)] = 1
    return HopfAlgebra(name, field, tuple(labels), M, one, ExactArray(field, comult),
                       ExactArray(field, counit), ExactArray(field, anti))


def _taft_labels(n: int) -> list[str]:
    def mono(i, j):
        parts = []
        if i:
            parts.append("g" if i == 1 else f"g^{i}")
        if j:
            parts.append("x" if j == 1 else f"x^{j}")
        return "".join(parts) or "1"
    return [mono(i, j) for j in range(n) for i in range(n)]


def sweedler(field: Field | None = None) -> HopfAlgebra:
    """Sweedler's 4-dimensional algebra on the basis 1, g, x, gx."""
    field = field or Field.rational()
    if field.characteristic == 2:
        raise ValueError("the Sweedler algebra needs characteristic != 2")
    name = "sweedler-Q" if not field.is_prime else f"sweedler-F{field.p}"
    # rows: e_i e_j for basis (1, g, x, gx); xg = -gx
    one, g, x, gx = range(4)
    table = {
        (g, g): (1, one), (g, x): (1, gx), (g, gx): (1, x),
        (x, g): (-1, gx), (x, x): (0, one), (x, gx): (0, one),
        (gx, g): (-1, x), (gx, x): (0, one), (gx, gx): (0, one),
    }
    mult = np.zeros((4, 4, 4), dtype=np.int64)
    for b in range(4):
        mult[one, b, b] = 1
        mult[b, one, b] = 1
    for (a, b), (c, k) in table.items():
        if c:
            mult[a, b, k] = c
    comult = np.zeros((4, 4, 4), dtype=np.int64)
    comult[one, one, one] = 1
    comult[g, g, g] = 1
    comult[x, x, one] = 1      # Δx = x⊗1 + g⊗x
    comult[x, g, x] = 1
    comult[gx, gx, g] = 1      # Δ(gx) = gx⊗g + 1⊗gx
    comult[gx, one, gx] = 1
    anti = np.zeros((4, 4), dtype=np.int64)
    anti[one, one] = 1
    anti[g, g] = 1
    anti[gx, x] = -1           # S(x) = -gx
    anti[x, gx] = 1            # S(gx) = S(x)S(g) = -gxg = x
    return HopfAlgebra(
        name, field, ("1", "g", "x", "gx"),
        ExactArray(field, mult), ExactArray(field, np.array([1, 0, 0, 0])),
        ExactArray(field, comult), ExactArray(field, np.array([1, 1, 0, 0])),
        ExactArray(field, anti),
    )


def taft(n: int, field: Field, q: int) -> HopfAlgebra:
    """Taft algebra of dimension n^2 over F_p with primitive n-th root q."""
    if n < 2:
        raise ValueError("Taft algebras need n >= 2")
    if not field.is_prime:
        raise ValueError("Taft algebras are built over prime fields")
    p = field.p
    if (p - 1) % n:
        raise ValueError(f"n = {n} does not divide p - 1 = {p - 1}")
    q %= p
    order = next((k for k in range(1, p) if pow(q, k, p) == 1), None)
    if order != n:
        raise ValueError(f"q = {q} has multiplicative order {order} in F_{p}, not {n}")
    return _power_basis_algebra(n, q, field, f"taft-n{n}-F{p}-q{q}", _taft_labels(n))


# ---------------------------------------------------------------------------
# catalog


@dataclass
class CatalogEntry:
    id: str
    build: Callable[[], HopfAlgebra]
    params: dict = dc_field(default_factory=dict)
    expected: dict = dc_field(default_factory=dict)

    def algebra(self) -> HopfAlgebra:
        return self.build()


def trivial(field: Field | None = None) -> HopfAlgebra:
    """The one-dimensional Hopf algebra k."""
    field = field or Field.rational()
    one = ExactArray(field, np.ones((1, 1, 1), dtype=np.int64))
    v = ExactArray(field, np.ones(1, dtype=np.int64))
    name = "trivial-Q" if not field.is_prime else f"trivial-F{field.p}"
    return HopfAlgebra(name, field, ("1",), one, v, one, v, ExactArray(field, np.ones((1, 1), dtype=np.int64)))


GROUPS = {
    "C1": lambda: cyclic_group(1),
    "C2": lambda: cyclic_group(2),
    "C3": lambda: cyclic_group(3),
    "C4": lambda: cyclic_group(4),
    "C5": lambda: cyclic_group(5),
    "C6": lambda: cyclic_group(6),
    "S3": symmetric_group_3,
    "D4": dihedral_group_4,
    "Q8": quaternion_group,
}


def _group_entry(label: str) -> HopfAlgebra:
    table, names = GROUPS[label]()
    return group_algebra(table, Field.rational(), name=f"group-{label}-Q", labels=names)


def _dual_group_entry(label: str) -> HopfAlgebra:
    h = dual(_group_entry(label))
    return HopfAlgebra(f"dual-group-{label}-Q", h.field, h.basis, h.mult, h.unit,
                       h.comult, h.counit, h.antipode)


# Known verdicts, each confirmed by the direct ribbon certifier before being
# frozen here (see tests/test_catalog.py and tests/test_ribbon.py).
_GROUP_RIBBON = {"C1": 1, "C2": 4, "C3": 1, "C4": 4, "C5": 1, "C6": 4, "S3": 2, "D4": 8, "Q8": 8}


def catalog() -> list[CatalogEntry]:
    """The catalog in its fixed order."""
    entries = [CatalogEntry("trivial-Q", lambda: trivial(Field.rational()), {},
                            {"ribbon_count": 1, "spherical_dsps": True, "modular": True})]
    for label in GROUPS:
        entries.append(CatalogEntry(
            f"group-{label}-Q", (lambda l=label: _group_entry(l)), {"group": label},
            {"ribbon_count": _GROUP_RIBBON[label], "spherical_dsps": True, "modular": True}))
    for label in ("C2", "C3", "C4", "C5", "C6"):
        entries.append(CatalogEntry(
            f"dual-group-{label}-Q", (lambda l=label: _dual_group_entry(l)), {"group": label, "dual": True},
            {"ribbon_count": _GROUP_RIBBON[label], "spherical_dsps": True, "modular": True}))
    entries.append(CatalogEntry("sweedler-Q", lambda: sweedler(Field.rational()), {},
                                {"ribbon_count": 0, "spherical_dsps": False, "modular": False}))
    entries.append(CatalogEntry("sweedler-F5", lambda: sweedler(Field.prime(5)), {"p": 5},
                                {"ribbon_count": 0, "spherical_dsps": False, "modular": False}))
    entries.append(CatalogEntry("taft-n3-F7-q2", lambda: taft(3, Field.prime(7), 2),
                                {"n": 3, "p": 7, "q": 2},
                                {"ribbon_count": 1, "spherical_dsps": False, "modular": True}))
    entries.append(CatalogEntry("taft-n4-F5-q2", lambda: taft(4, Field.prime(5), 2),
                                {"n": 4, "p": 5, "q": 2},
                                {"ribbon_count": 0, "spherical_dsps": False, "modular": False}))
    return entries


def catalog_ids() -> list[str]:
    return [e.id for e in catalog()]


def get_entry(entry_id: str) -> CatalogEntry:
    for e in catalog():
        if e.id == entry_id:
            return e
    raise KeyError(entry_id)


def load(entry_id: str) -> HopfAlgebra:
    return get_entry(entry_id).algebra()
