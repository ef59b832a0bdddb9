"""Exact scalar arithmetic and dense linear algebra over Q and F_p.

Arrays are stored as an integer numerator array plus a single positive
denominator (always 1 over a prime field).  Numerators live in ``int64``
while they are small and are promoted to Python integers (``object`` dtype)
when a bound check says an operation could overflow.  Contractions are
routed through float64 BLAS whenever every partial sum is provably an
integer below 2**53, so the fast path is still exact.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Field",
    "ExactArray",
    "EigenSystems",
    "einsum",
    "stack",
    "rref",
    "rank",
    "kernel",
    "common_kernel",
    "solve",
    "inverse",
    "kronecker",
    "charpoly",
    "poly_roots",
    "linear_characters",
]

_FLOAT_EXACT = 2**53
_INT64_SAFE = 2**62
MAX_PRIME = 2**16


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Either the rationals or a prime field F_p."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                raise ValueError("the rational field has no characteristic")
        elif self.kind == "prime":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"characteristic must be a prime, got {self.p!r}")
            if self.p >= MAX_PRIME:
                raise ValueError(f"prime fields are limited to p < {MAX_PRIME}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> Field:
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> Field:
        return cls("prime", int(p))

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def characteristic(self) -> int:
        return self.p if self.is_prime else 0

    def __str__(self):
        return f"F_{self.p}" if self.is_prime else "Q"

    def to_json(self) -> dict:
        if self.is_prime:
            return {"kind": "prime", "p": self.p}
        return {"kind": "rational"}

    # -- scalars -------------------------------------------------------
    def scalar(self, x) -> int | Fraction:
        """Canonical field element from an int, Fraction or string."""
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (np.integer,)):
            x = int(x)
        if self.is_prime:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        return Fraction(x)

    def parse(self, s: str) -> int | Fraction:
        s = s.strip()
        if self.is_prime:
            if "/" in s:
                return self.scalar(Fraction(s))
            return int(s) % self.p
        num, _, den = s.partition("/")
        if den and int(den) <= 0:
            raise ValueError(f"denominator must be positive in {s!r}")
        return Fraction(int(num), int(den) if den else 1)

    def format(self, x) -> str:
        x = self.scalar(x)
        if self.is_prime:
            return str(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    @property
    def zero(self):
        return self.scalar(0)

    @property
    def one(self):
        return self.scalar(1)

    def add(self, a, b):
        return (a + b) % self.p if self.is_prime else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.is_prime else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.is_prime else a * b

    def neg(self, a):
        return (-a) % self.p if self.is_prime else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(int(a), -1, self.p) if self.is_prime else 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- arrays --------------------------------------------------------
    def array(self, data) -> ExactArray:
        """Build an exact array from nested lists of ints, Fractions or strings."""
        if isinstance(data, ExactArray):
            return data
        raw = np.array(data, dtype=object)
        flat = [self.scalar(x) for x in raw.ravel()]
        if self.is_prime:
            num = np.array(flat, dtype=np.int64).reshape(raw.shape)
            return ExactArray(self, num)
        dens = [x.denominator for x in flat]
        den = reduce(math.lcm, dens, 1)
        num = np.empty(len(flat), dtype=object)
        num[:] = [x.numerator * (den // x.denominator) for x in flat]
        return ExactArray(self, num.reshape(raw.shape), den)

    def zeros(self, shape) -> ExactArray:
        return ExactArray(self, np.zeros(shape, dtype=np.int64))

    def eye(self, n: int) -> ExactArray:
        return ExactArray(self, np.eye(n, dtype=np.int64))

    def basis_vector(self, n: int, i: int) -> ExactArray:
        v = np.zeros(n, dtype=np.int64)
        v[i] = 1
        return ExactArray(self, v)

    def from_int_array(self, a) -> ExactArray:
        return ExactArray(self, np.asarray(a))


def _max_abs(num: np.ndarray) -> int:
    if num.size == 0:
        return 0
    if num.dtype == object:
        return max(abs(int(x)) for x in num.ravel())
    return int(np.abs(num).max())


def _to_object(num: np.ndarray) -> np.ndarray:
    if num.dtype == object:
        return num
    out = np.empty(num.size, dtype=object)
    out[:] = [int(x) for x in num.ravel()]
    return out.reshape(num.shape)


class ExactArray:
    """Immutable exact array over a :class:`Field`."""

    __slots__ = ("field", "num", "den", "_maxabs")

    def __init__(self, field: Field, num: np.ndarray, den: int = 1):
        self.field = field
        num = np.asarray(num)
        if field.is_prime:
            if num.dtype == object:
                num = np.array([int(x) % field.p for x in num.ravel()], dtype=np.int64).reshape(num.shape)
            else:
                num = np.mod(num.astype(np.int64, copy=False), field.p)
            if den != 1:
                num = (num * pow(int(den), -1, field.p)) % field.p
            den = 1
        else:
            den = int(den)
            if den <= 0:
                raise ValueError("denominator must be positive")
            if num.dtype != object and num.dtype != np.int64:
                num = num.astype(np.int64)
            mx = _max_abs(num)
            if num.dtype == object and mx < _INT64_SAFE:
                num = num.astype(np.int64)
            if mx == 0:
                den = 1
            elif den != 1:
                g = int(np.gcd.reduce(num.ravel())) if num.size else 0
                g = math.gcd(abs(g), den)
                if g > 1:
                    num = num // g
                    den //= g
                    mx //= g
        self.num = num
        self.den = den
        self._maxabs = None if field.is_prime else mx

    # -- basic protocol ------------------------------------------------
    @property
    def shape(self):
        return self.num.shape

    @property
    def ndim(self):
        return self.num.ndim

    @property
    def size(self):
        return self.num.size

    def __len__(self):
        return len(self.num)

    def __repr__(self):
        return f"ExactArray({self.tolist_str()!r}, field={self.field})"

    def max_abs(self) -> int:
        if self._maxabs is None:
            self._maxabs = _max_abs(self.num)
        return self._maxabs

    def _wrap(self, num, den=None) -> ExactArray:
        return ExactArray(self.field, num, self.den if den is None else den)

    def __getitem__(self, key):
        sub = self.num[key]
        if isinstance(sub, np.ndarray):
            return self._wrap(sub)
        return self._scalar(sub)

    def _scalar(self, v):
        if self.field.is_prime:
            return int(v)
        return Fraction(int(v), self.den)

    def item(self, *idx):
        return self._scalar(self.num[idx] if idx else self.num.item())

    def reshape(self, *shape) -> ExactArray:
        return self._wrap(self.num.reshape(*shape))

    def transpose(self, *axes) -> ExactArray:
        return self._wrap(self.num.transpose(*axes))

    @property
    def T(self) -> ExactArray:
        return self._wrap(self.num.T)

    def ravel(self) -> ExactArray:
        return self._wrap(self.num.ravel())

    def copy(self) -> ExactArray:
        return self._wrap(self.num.copy())

    def tolist(self):
        flat = [self._scalar(v) for v in self.num.ravel()]
        return np.array(flat, dtype=object).reshape(self.shape).tolist() if self.ndim else flat[0]

    def tolist_str(self):
        fmt = self.field.format
        flat = [fmt(self._scalar(v)) for v in self.num.ravel()]
        if self.ndim == 0:
            return flat[0]
        return np.array(flat, dtype=object).reshape(self.shape).tolist()

    def nonzero(self):
        return np.nonzero(self.num)

    def is_zero(self) -> bool:
        return not np.any(self.num)

    def equals(self, other) -> bool:
        other = _coerce(self.field, other)
        if self.shape != other.shape:
            return False
        if self.den != other.den:
            return False
        return bool(np.array_equal(self.num, other.num))

    __eq__ = equals
    __hash__ = None

    def key(self) -> tuple:
        """Hashable canonical form, used to deduplicate elements."""
        return (self.shape, self.den, tuple(int(x) for x in self.num.ravel()))

    # -- arithmetic ----------------------------------------------------
    def _aligned(self, other: ExactArray):
        """Numerators over a common denominator."""
        if self.field.is_prime or self.den == other.den:
            return self.num, other.num, self.den
        den = math.lcm(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        bound = self.max_abs() * fa + other.max_abs() * fb
        a, b = self.num, other.num
        if bound >= _INT64_SAFE:
            a, b = _to_object(a), _to_object(b)
        return a * fa, b * fb, den

    def __add__(self, other):
        other = _coerce(self.field, other)
        a, b, den = self._aligned(other)
        if not self.field.is_prime and a.dtype != object and b.dtype != object:
            if _max_abs(a) + _max_abs(b) >= _INT64_SAFE:
                a, b = _to_object(a), _to_object(b)
        return ExactArray(self.field, a + b, den)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.num)

    def __sub__(self, other):
        return self + (-_coerce(self.field, other))

    def __rsub__(self, other):
        return _coerce(self.field, other) - self

    def __mul__(self, other):
        other = _coerce(self.field, other)
        a, b = self.num, other.num
        if self.field.is_prime:
            return ExactArray(self.field, a * b)
        if a.dtype != object and b.dtype != object and self.max_abs() * other.max_abs() >= _INT64_SAFE:
            a, b = _to_object(a), _to_object(b)
        return ExactArray(self.field, a * b, self.den * other.den)

    __rmul__ = __mul__

    def __matmul__(self, other):
        other = _coerce(self.field, other)
        if self.ndim == 1 and other.ndim == 1:
            return einsum("i,i->", self, other)
        if self.ndim == 1:
            return einsum("i,ij->j", self, other)
        if other.ndim == 1:
            return einsum("ij,j->i", self, other)
        return einsum("ij,jk->ik", self, other)

    def sum(self, axis=None) -> ExactArray:
        num = self.num
        if not self.field.is_prime and num.dtype != object:
            count = num.size if axis is None else num.shape[axis]
            if self.max_abs() * max(count, 1) >= _INT64_SAFE:
                num = _to_object(num)
        out = num.sum(axis=axis)
        return ExactArray(self.field, np.asarray(out), self.den)


def _coerce(field: Field, x) -> ExactArray:
    if isinstance(x, ExactArray):
        if x.field != field:
            raise ValueError(f"field mismatch: {x.field} vs {field}")
        return x
    if isinstance(x, (int, Fraction, np.integer, str)):
        return field.array(field.scalar(x))
    return field.array(x)


def _common_field(arrays: list[ExactArray]) -> Field:
    if not arrays:
        raise ValueError("need at least one array")
    fld = arrays[0].field
    if any(a.field != fld for a in arrays):
        raise ValueError("field mismatch")
    return fld


def stack(arrays: Sequence[ExactArray], axis: int = 0) -> ExactArray:
    """Stack equally shaped exact arrays along a new axis."""
    arrays = list(arrays)
    fld = _common_field(arrays)
    if fld.is_prime:
        return ExactArray(fld, np.stack([a.num for a in arrays], axis=axis))
    den = reduce(math.lcm, (a.den for a in arrays), 1)
    bound = max(a.max_abs() * (den // a.den) for a in arrays)
    nums = [a.num * (den // a.den) if bound < _INT64_SAFE else _to_object(a.num) * (den // a.den)
            for a in arrays]
    return ExactArray(fld, np.stack(nums, axis=axis), den)


def concatenate(arrays: Sequence[ExactArray], axis: int = 0) -> ExactArray:
    arrays = list(arrays)
    fld = _common_field(arrays)
    if fld.is_prime:
        return ExactArray(fld, np.concatenate([a.num for a in arrays], axis=axis))
    den = reduce(math.lcm, (a.den for a in arrays), 1)
    bound = max(a.max_abs() * (den // a.den) for a in arrays)
    nums = [a.num * (den // a.den) if bound < _INT64_SAFE else _to_object(a.num) * (den // a.den)
            for a in arrays]
    return ExactArray(fld, np.concatenate(nums, axis=axis), den)


# ---------------------------------------------------------------------------
# contractions


def _parse_subscripts(subscripts: str, n_ops: int):
    if "->" not in subscripts:
        raise ValueError("einsum subscripts must name the output explicitly")
    lhs, out = subscripts.replace(" ", "").split("->")
    inputs = lhs.split(",")
    if len(inputs) != n_ops:
        raise ValueError(f"{len(inputs)} subscripts for {n_ops} operands")
    return inputs, out


def _raw_einsum(subscripts, nums, bound, prime):
    if bound < _FLOAT_EXACT and all(n.dtype != object for n in nums):
        res = np.einsum(subscripts, *[n.astype(np.float64) for n in nums], optimize="greedy")
        return np.rint(res).astype(np.int64)
    if bound < _INT64_SAFE and all(n.dtype != object for n in nums):
        return np.einsum(subscripts, *nums, optimize="greedy")
    return np.einsum(subscripts, *[_to_object(n) for n in nums], optimize="greedy")


def einsum(subscripts: str, *ops: ExactArray) -> ExactArray:
    """Exact ``numpy.einsum`` (explicit ``->`` output required)."""
    fld = ops[0].field
    for op in ops:
        if op.field != fld:
            raise ValueError("field mismatch in einsum")
    inputs, out = _parse_subscripts(subscripts, len(ops))
    sizes: dict[str, int] = {}
    for spec, op in zip(inputs, ops):
        if len(spec) != op.ndim:
            raise ValueError(f"subscript {spec!r} does not match shape {op.shape}")
        for ch, s in zip(spec, op.shape):
            if sizes.setdefault(ch, s) != s:
                raise ValueError(f"inconsistent size for index {ch!r}")
    summed = set("".join(inputs)) - set(out)
    count = math.prod(sizes[c] for c in summed) if summed else 1
    bound = count * math.prod(op.max_abs() if not fld.is_prime else fld.p - 1 for op in ops)
    if fld.is_prime and bound >= _INT64_SAFE and len(ops) > 2:
        # contract the first pair, reduce mod p, continue
        keep = set(out).union(*inputs[2:])
        mid = "".join(c for c in dict.fromkeys(inputs[0] + inputs[1]) if c in keep)
        first = einsum(f"{inputs[0]},{inputs[1]}->{mid}", ops[0], ops[1])
        rest = ",".join([mid] + inputs[2:])
        return einsum(f"{rest}->{out}", first, *ops[2:])
    res = _raw_einsum(subscripts, [op.num for op in ops], bound, fld.is_prime)
    den = math.prod(op.den for op in ops)
    return ExactArray(fld, np.asarray(res), den)


def kronecker(a: ExactArray, b: ExactArray) -> ExactArray:
    """Kronecker product: (a⊗b)[i*rb + k, j*cb + l] = a[i, j] * b[k, l]."""
    if a.ndim == 1 and b.ndim == 1:
        return einsum("i,k->ik", a, b).reshape(-1)
    ra, ca = a.shape
    rb, cb = b.shape
    return einsum("ij,kl->ikjl", a, b).reshape(ra * rb, ca * cb)


# ---------------------------------------------------------------------------
# elimination


def _rref_prime(num: np.ndarray, p: int):
    A = num.astype(np.int64, copy=True) % p
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def _bareiss(num: np.ndarray):
    """Fraction-free forward elimination on an integer matrix.

    Returns the echelon form (Python ints) and the pivot columns.
    """
    A = _to_object(num).copy()
    rows, cols = A.shape
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = [i for i in range(r, rows) if A[i, c] != 0]
        if not nz:
            continue
        piv = nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        pv = A[r, c]
        if r + 1 < rows:
            below = A[r + 1:]
            A[r + 1:] = (pv * below - np.outer(below[:, c], A[r])) // prev
        prev = pv
        pivots.append(c)
        r += 1
    return A, pivots


def _rref_rational(num: np.ndarray):
    U, pivots = _bareiss(num)
    rk = len(pivots)
    R = np.empty((rk, U.shape[1]), dtype=object)
    for i in range(rk):
        pv = U[i, pivots[i]]
        R[i] = [Fraction(int(x), int(pv)) for x in U[i]]
    for i in range(rk - 1, -1, -1):
        c = pivots[i]
        for j in range(i):
            f = R[j, c]
            if f != 0:
                R[j] = R[j] - f * R[i]
    return R, pivots


def _fraction_array(field: Field, R: np.ndarray, shape) -> ExactArray:
    if R.size == 0:
        return field.zeros(shape)
    den = reduce(math.lcm, (x.denominator for x in R.ravel()), 1)
    num = np.empty(R.shape, dtype=object)
    num[...] = np.array([x.numerator * (den // x.denominator) for x in R.ravel()], dtype=object).reshape(R.shape)
    return ExactArray(field, num, den)


def rref(m: ExactArray) -> tuple[ExactArray, list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    if m.ndim != 2:
        raise ValueError("rref expects a matrix")
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return m.field.zeros((0, cols)), []
    if m.field.is_prime:
        A, piv = _rref_prime(m.num, m.field.p)
        return ExactArray(m.field, A[: len(piv)]), piv
    R, piv = _rref_rational(m.num)
    return _fraction_array(m.field, R, (0, cols)), piv


def rank(m: ExactArray) -> int:
    if m.ndim != 2:
        raise ValueError("rank expects a matrix")
    if m.size == 0:
        return 0
    if m.field.is_prime:
        return len(_rref_prime(m.num, m.field.p)[1])
    return len(_bareiss(m.num)[1])


def _kernel_from_rref(field: Field, R: ExactArray, pivots: list[int], cols: int) -> ExactArray:
    free = [c for c in range(cols) if c not in set(pivots)]
    if not free:
        return field.zeros((0, cols))
    basis = []
    for f in free:
        v = [field.zero] * cols
        v[f] = field.one
        for i, c in enumerate(pivots):
            v[c] = field.neg(R.item(i, f))
        basis.append(v)
    return field.array(basis)


def kernel(m: ExactArray) -> ExactArray:
    """Basis of the right null space, one vector per row.

    Each basis vector has a 1 in its own free column and 0 in every other
    free column, so the result is deterministic.
    """
    if m.ndim != 2:
        raise ValueError("kernel expects a matrix")
    rows, cols = m.shape
    if rows == 0:
        return m.field.eye(cols)
    if m.field.is_prime:
        A, piv = _rref_prime(m.num, m.field.p)
        free = np.array([c for c in range(cols) if c not in set(piv)], dtype=np.int64)
        K = np.zeros((len(free), cols), dtype=np.int64)
        if len(free):
            K[np.arange(len(free)), free] = 1
            if piv:
                K[:, piv] = (-A[: len(piv)][:, free]).T % m.field.p
        return ExactArray(m.field, K)
    R, piv = rref(m)
    return _kernel_from_rref(m.field, R, piv, cols)


def common_kernel(blocks: Iterable[ExactArray], n: int, field: Field) -> ExactArray:
    """Joint null space of a stream of ``r_i x n`` matrices.

    The current basis ``K`` is refined block by block (``K <- C K`` with
    ``C = kernel(B K^T)``), so no tall stacked matrix is ever formed.
    """
    K = field.eye(n)
    for B in blocks:
        if K.shape[0] == 0:
            break
        img = B @ K.T
        if img.is_zero():
            continue
        C = kernel(img)
        K = C @ K if C.shape[0] else field.zeros((0, n))
    if K.shape[0] and K.shape[0] < n:
        K, _ = rref(K)
    return K


def solve(m: ExactArray, b: ExactArray) -> ExactArray | None:
    """One solution of ``m x = b`` (free variables set to 0), or None."""
    rows, cols = m.shape
    if b.shape[0] != rows:
        raise ValueError(f"dimension mismatch: {m.shape} vs {b.shape}")
    bm = b.reshape(rows, 1) if b.ndim == 1 else b
    R, piv = rref(concatenate([m, bm], axis=1))
    if any(c >= cols for c in piv):
        return None
    fld = m.field
    k = bm.shape[1]
    sol = [[fld.zero] * k for _ in range(cols)]
    for i, c in enumerate(piv):
        for j in range(k):
            sol[c][j] = R.item(i, cols + j)
    x = fld.array(sol)
    return x.reshape(cols) if b.ndim == 1 else x


def inverse(m: ExactArray) -> ExactArray | None:
    """Inverse of a square matrix, or None when singular."""
    n, c = m.shape
    if n != c:
        raise ValueError("inverse expects a square matrix")
    R, piv = rref(concatenate([m, m.field.eye(n)], axis=1))
    if piv[:n] != list(range(n)) or len(piv) < n:
        return None
    return R[:, n:]


# ---------------------------------------------------------------------------
# polynomials and eigenvalues


def charpoly(m: ExactArray) -> list:
    """Characteristic polynomial det(xI - m), coefficients low to high.

    Hessenberg reduction followed by the standard recurrence, so it works
    unchanged over Q and F_p.
    """
    fld = m.field
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("charpoly expects a square matrix")
    H = [[m.item(i, j) for j in range(n)] for i in range(n)]
    add, sub, mul = fld.add, fld.sub, fld.mul
    for k in range(1, n - 1):
        piv = next((i for i in range(k, n) if H[i][k - 1] != 0), None)
        if piv is None:
            continue
        if piv != k:
            H[k], H[piv] = H[piv], H[k]
            for row in H:
                row[k], row[piv] = row[piv], row[k]
        inv = fld.inv(H[k][k - 1])
        for i in range(k + 1, n):
            t = mul(H[i][k - 1], inv)
            if t == 0:
                continue
            H[i] = [sub(a, mul(t, b)) for a, b in zip(H[i], H[k])]
            for row in H:
                row[k] = add(row[k], mul(t, row[i]))
    # p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik * prod(h_{j,j-1}) p_{i-1}
    polys = [[fld.one]]
    for k in range(n):
        pk = [fld.zero] + polys[k]
        for d, c in enumerate(polys[k]):
            pk[d] = sub(pk[d], mul(H[k][k], c))
        prod = fld.one
        for i in range(k - 1, -1, -1):
            prod = mul(prod, H[i + 1][i])
            if prod == 0:
                break
            coef = mul(H[i][k], prod)
            if coef == 0:
                continue
            for d, c in enumerate(polys[i]):
                pk[d] = sub(pk[d], mul(coef, c))
        polys.append(pk)
    return polys[n]


def _poly_trim(f):
    f = list(f)
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def _poly_divmod(fld: Field, f, g):
    f, g = _poly_trim(f), _poly_trim(g)
    if len(f) < len(g):
        return [fld.zero], f
    q = [fld.zero] * (len(f) - len(g) + 1)
    r = list(f)
    inv = fld.inv(g[-1])
    for d in range(len(f) - len(g), -1, -1):
        c = fld.mul(r[d + len(g) - 1], inv)
        q[d] = c
        if c != 0:
            for i, gc in enumerate(g):
                r[d + i] = fld.sub(r[d + i], fld.mul(c, gc))
    return q, _poly_trim(r[: len(g) - 1] or [fld.zero])


def _poly_gcd(fld: Field, f, g):
    f, g = _poly_trim(f), _poly_trim(g)
    while not (len(g) == 1 and g[0] == 0):
        _, r = _poly_divmod(fld, f, g)
        f, g = g, r
    inv = fld.inv(f[-1])
    return [fld.mul(c, inv) for c in f]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_roots(f) -> list[Fraction]:
    """Rational roots of a polynomial with rational coefficients."""
    den = reduce(math.lcm, (Fraction(c).denominator for c in f), 1)
    ints = [int(Fraction(c) * den) for c in f]
    roots: list[Fraction] = []
    while len(ints) > 1 and ints[0] == 0:
        ints = ints[1:]
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(ints) == 1:
        return roots
    lead, const = ints[-1], ints[0]
    for p in _divisors(const):
        for q in _divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in roots:
                    continue
                val = Fraction(0)
                for c in reversed(ints):
                    val = val * cand + c
                if val == 0:
                    roots.append(cand)
    return sorted(roots)


def poly_roots(fld: Field, f) -> tuple[list, int]:
    """Distinct roots of ``f`` in the base field plus the leftover degree.

    Over Q candidates come from the rational-root test on the square-free
    part; over F_p every residue is evaluated.  The leftover degree is what
    remains after dividing out every linear factor (0 when ``f`` splits).
    """
    f = _poly_trim(f)
    if len(f) == 1:
        return [], 0
    if fld.is_prime:
        p = fld.p
        xs = np.arange(p, dtype=np.int64)
        val = np.zeros(p, dtype=np.int64)
        for c in reversed(f):
            val = (val * xs + int(c)) % p
        roots = [int(x) for x in np.flatnonzero(val == 0)]
    else:
        deriv = [fld.mul(fld.scalar(i), c) for i, c in enumerate(f)][1:]
        g = _poly_gcd(fld, f, deriv)
        sqfree, _ = _poly_divmod(fld, f, g)
        roots = _rational_roots(sqfree)
    rest = f
    for r in roots:
        while len(rest) > 1:
            q, rem = _poly_divmod(fld, rest, [fld.neg(r), fld.one])
            if not (len(rem) == 1 and rem[0] == 0):
                break
            rest = q
    return roots, len(_poly_trim(rest)) - 1


@dataclass
class EigenSystems:
    """Common eigenvector systems of a commuting family of matrices.

    ``systems`` holds ``(eigenvalues, basis)`` pairs where ``basis`` rows
    span the joint eigenspace.  ``warnings`` records every branch dropped
    because its eigenvalues are not in the base field.
    """

    systems: list[tuple[tuple, ExactArray]] = dc_field(default_factory=list)
    warnings: list[str] = dc_field(default_factory=list)


def _is_scalar_matrix(T: ExactArray):
    n = T.shape[0]
    d = T.num.diagonal()
    off = T.num - np.diag(d)
    if np.any(off) or not np.all(d == d[0]):
        return None
    return T.item(0, 0)


def _restrict(T: ExactArray, basis_rref: ExactArray, pivots: list[int]) -> ExactArray:
    """Matrix of ``T`` on the invariant subspace spanned by rref rows."""
    return (T @ basis_rref.T)[pivots, :]


def linear_characters(generators: Sequence[ExactArray], check_commuting: bool = True) -> EigenSystems:
    """Joint eigenspaces of commuting matrices with eigenvalues in the field.

    Recursive eigenspace splitting: characteristic polynomial of the first
    operator, its linear factors, kernel of ``T - λ``, restriction of the
    remaining operators.  Non-linear leftovers are reported as warnings.
    """
    gens = list(generators)
    out = EigenSystems()
    if not gens:
        return out
    fld = gens[0].field
    n = gens[0].shape[0]
    if check_commuting:
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if not (gens[i] @ gens[j]).equals(gens[j] @ gens[i]):
                    raise ValueError(f"generators {i} and {j} do not commute")

    def split(ops, basis, values):
        if not ops:
            out.systems.append((tuple(values), basis))
            return
        T, rest = ops[0], ops[1:]
        lam = _is_scalar_matrix(T)
        if lam is not None:
            split(rest, basis, values + [lam])
            return
        roots, leftover = poly_roots(fld, charpoly(T))
        if leftover:
            out.warnings.append(f"degree-{leftover} factor without roots in {fld}")
        e = T.shape[0]
        for lam in roots:
            K = kernel(T - fld.eye(e) * lam)
            R, piv = rref(K)
            sub = [_restrict(S, R, piv) for S in rest]
            split(sub, R @ basis, values + [lam])

    split(gens, fld.eye(n), [])
    return out


def letters(k: int) -> str:
    return string.ascii_letters[:k]
