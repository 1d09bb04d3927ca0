"""Exact deterministic linear algebra over the rationals and prime fields.

Scalars are `fractions.Fraction` values (always lowest terms, positive
denominator) in rational mode and plain int residues in [0, p) in prime-field
mode.  Every operation is a pure function of its inputs; reduced row-echelon
form is the canonical representation throughout, so subspace equality is
literal matrix equality.

Rational elimination runs on primitive integer rows (denominators cleared,
content divided out after every update), which keeps entries small on the
structured matrices this library produces; prime-field elimination is
vectorised with numpy when the modulus fits in int64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AmbientMismatchError,
    CharacteristicError,
    PreconditionError,
    invariant,
)

MASK64 = (1 << 64) - 1
_MIX = 0x9E3779B97F4A7C15
DEFAULT_PRIME = 10007

# largest modulus for the numpy backend: products must fit in int64
_NUMPY_MOD_LIMIT = 1 << 31


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all 64-bit integers."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldConfig:
    """Coefficient field: exact rationals, or F_p for a prime p."""

    kind: str = "rational"
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.modulus is not None:
                raise PreconditionError("rational field takes no modulus")
        elif self.kind == "fp":
            if self.modulus is None or not is_prime(self.modulus):
                raise PreconditionError(
                    f"prime-field modulus must be prime, got {self.modulus}"
                )
        else:
            raise PreconditionError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldConfig":
        return cls("rational")

    @classmethod
    def prime_field(cls, p: int) -> "FieldConfig":
        return cls("fp", p)

    @classmethod
    def parse(cls, text: str) -> "FieldConfig":
        """Parse a CLI field descriptor: "rational" or "fp:<p>"."""
        if text == "rational":
            return cls.rationals()
        if text.startswith("fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise PreconditionError(f"bad field descriptor {text!r}") from None
            return cls.prime_field(p)
        raise PreconditionError(f"bad field descriptor {text!r}")

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    def descriptor(self) -> str:
        return "rational" if self.is_rational else f"fp:{self.modulus}"

    # -- scalar arithmetic -------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.is_rational else 0

    @property
    def one(self):
        return Fraction(1) if self.is_rational else 1

    def coerce(self, value):
        """Coerce an int or Fraction into this field."""
        if self.is_rational:
            return Fraction(value)
        p = self.modulus
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise CharacteristicError(
                    f"denominator {value.denominator} vanishes mod {p}"
                )
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def add(self, a, b):
        return a + b if self.is_rational else (a + b) % self.modulus

    def sub(self, a, b):
        return a - b if self.is_rational else (a - b) % self.modulus

    def mul(self, a, b):
        return a * b if self.is_rational else a * b % self.modulus

    def neg(self, a):
        return -a if self.is_rational else (-a) % self.modulus

    def inv(self, a):
        if self.is_rational:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(a)
        return pow(a, -1, self.modulus)

    def pow(self, a, e: int):
        if self.is_rational:
            return Fraction(a) ** e
        return pow(a, e, self.modulus)


def format_scalar(x) -> str:
    """Fixed textual form: "p/q" for non-integers, plain digits otherwise."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return str(x)


# ---------------------------------------------------------------------------
# deterministic pseudo-randomness (splitmix64)


def _mix64(z: int) -> int:
    z &= MASK64
    z ^= z >> 30
    z = z * 0xBF58476D1CE4E5B9 & MASK64
    z ^= z >> 27
    z = z * 0x94D049BB133111EB & MASK64
    z ^= z >> 31
    return z


class SeedStream:
    """Splitmix64 stream; bit-identical across platforms and runs."""

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _MIX) & MASK64
        return _mix64(self._state)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] (modulo bias < 2^-50 at desk sizes)."""
        if hi < lo:
            raise PreconditionError("empty range")
        return lo + self.next_u64() % (hi - lo + 1)


def child_seed(seed: int, index: int) -> int:
    """Derive the sub-seed for trial `index`: mix64(seed XOR (index+1)*GOLDEN)."""
    return _mix64((seed ^ ((index + 1) * _MIX & MASK64)) & MASK64)


def random_scalar(field: FieldConfig, stream: SeedStream, bound: int):
    """Rational mode: uniform integer in [-bound, bound]; F_p: uniform residue."""
    if bound < 1:
        raise PreconditionError("bound must be >= 1")
    if field.is_rational:
        return Fraction(stream.randint(-bound, bound))
    return stream.randint(0, field.modulus - 1)


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Immutable dense matrix with rows as tuples of field scalars."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: FieldConfig, rows: Sequence[Sequence], ncols: int):
        rows = tuple(tuple(r) for r in rows)
        for r in rows:
            if len(r) != ncols:
                raise PreconditionError("ragged matrix rows")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.ncols, self.rows))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field.descriptor()})"

    @classmethod
    def identity(cls, field: FieldConfig, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def zero(cls, field: FieldConfig, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            [tuple(self.rows[i][j] for i in range(self.nrows)) for j in range(self.ncols)],
            self.nrows,
        )

    def stack(self, other: "Matrix") -> "Matrix":
        if other.ncols != self.ncols or other.field != self.field:
            raise AmbientMismatchError("cannot stack matrices of mismatched shape/field")
        return Matrix(self.field, self.rows + other.rows, self.ncols)

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for row in self.rows for x in row)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.ncols != b.nrows or a.field != b.field:
        raise AmbientMismatchError("matrix product shape mismatch")
    f = a.field
    bt = b.transpose().rows
    out = []
    for row in a.rows:
        out.append(
            tuple(
                _dot(f, row, col)
                for col in bt
            )
        )
    return Matrix(f, out, b.ncols)


def _dot(field: FieldConfig, u, v):
    if field.is_rational:
        return sum((x * y for x, y in zip(u, v)), Fraction(0))
    p = field.modulus
    return sum(x * y for x, y in zip(u, v)) % p


def mat_apply(m: Matrix, vec: Sequence) -> list:
    """m @ vec for a coordinate vector."""
    if len(vec) != m.ncols:
        raise AmbientMismatchError("vector length mismatch")
    return [_dot(m.field, row, vec) for row in m.rows]


# -- rational elimination on primitive integer rows -------------------------


def _row_to_primitive(row) -> dict:
    """Sparse primitive integer form of a rational row (leading entry > 0)."""
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = den * x.denominator // math.gcd(den, x.denominator)
    ints = {}
    for j, x in enumerate(row):
        if x == 0:
            continue
        if isinstance(x, Fraction):
            ints[j] = x.numerator * (den // x.denominator)
        else:
            ints[j] = int(x) * den
    return _make_primitive(ints)


def _make_primitive(r: dict) -> dict:
    if not r:
        return r
    g = 0
    for v in r.values():
        g = math.gcd(g, v)
    lead = min(r)
    if r[lead] < 0:
        g = -g
    if g != 1:
        r = {c: v // g for c, v in r.items()}
    return r


def _combine(r: dict, cr: int, p: dict, cp: int) -> dict:
    """cr*r - cp*p with zero entries dropped."""
    out = {c: cr * v for c, v in r.items()}
    for c, v in p.items():
        w = out.get(c, 0) - cp * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return out


def _rref_rational(rows: Iterable[Sequence], ncols: int):
    pivrows: dict[int, dict] = {}
    for row in rows:
        r = _row_to_primitive(row)
        while r:
            lead = min(r)
            piv = pivrows.get(lead)
            if piv is None:
                pivrows[lead] = r
                break
            a, b = r[lead], piv[lead]
            g = math.gcd(a, b)
            r = _make_primitive(_combine(r, b // g, piv, a // g))
    pivots = sorted(pivrows)
    # eliminate above pivots (entries right of each row's own pivot only)
    for i in range(len(pivots) - 1, 0, -1):
        pc = pivots[i]
        prow = pivrows[pc]
        b = prow[pc]
        for pc2 in pivots[:i]:
            r2 = pivrows[pc2]
            a = r2.get(pc, 0)
            if a:
                g = math.gcd(a, b)
                pivrows[pc2] = _make_primitive(_combine(r2, b // g, prow, a // g))
    out = []
    for pc in pivots:
        r = pivrows[pc]
        pv = r[pc]
        dense = [Fraction(0)] * ncols
        for c, v in r.items():
            dense[c] = Fraction(v, pv)
        out.append(dense)
    return out, pivots


# -- prime-field elimination -------------------------------------------------


def _rref_mod_numpy(rows, ncols: int, p: int):
    a = np.array([[int(x) % p for x in row] for row in rows], dtype=np.int64)
    nrows = a.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    dense = [[int(x) for x in a[i]] for i in range(len(pivots))]
    return dense, pivots


def _rref_mod_python(rows, ncols: int, p: int):
    a = [[int(x) % p for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(a):
            break
        sel = next((i for i in range(r, len(a)) if a[i][c]), None)
        if sel is None:
            continue
        a[r], a[sel] = a[sel], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[: len(pivots)], pivots


def rref(m: Matrix):
    """Unique reduced row-echelon form (same shape, zero rows at the bottom):
    (rref matrix, pivot columns, rank)."""
    f = m.field
    if f.is_rational:
        dense, pivots = _rref_rational(m.rows, m.ncols)
    elif not m.nrows:
        dense, pivots = [], []
    elif f.modulus < _NUMPY_MOD_LIMIT:
        dense, pivots = _rref_mod_numpy(m.rows, m.ncols, f.modulus)
    else:
        dense, pivots = _rref_mod_python(m.rows, m.ncols, f.modulus)
    dense = list(dense)
    while len(dense) < m.nrows:
        dense.append([f.zero] * m.ncols)
    out = Matrix(f, dense, m.ncols)
    return out, tuple(pivots), len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[2]


def rank_mod(int_rows: Sequence[Sequence[int]], ncols: int, p: int, target: int | None = None) -> int:
    """Rank of an integer matrix reduced mod p; forward elimination only.

    With `target` set, stops as soon as the rank reaches it or provably
    cannot.  This is the accelerator behind fullness certificates: full rank
    mod p implies full rank over the rationals for integer matrices.
    """
    if not int_rows:
        return 0
    if p >= _NUMPY_MOD_LIMIT:
        return len(_rref_mod_python(int_rows, ncols, p)[1])
    # reduce in python first: entries may exceed int64 before reduction
    a = np.array([[x % p for x in row] for row in int_rows], dtype=np.int64)
    nrows = a.shape[0]
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        if target is not None:
            if r >= target:
                break
            if r + (ncols - c) < target:
                break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        below = a[r + 1 :, c]
        nzb = np.nonzero(below)[0]
        if nzb.size:
            factors = below[nzb] * inv % p
            a[r + 1 + nzb] = (a[r + 1 + nzb] - np.outer(factors, a[r])) % p
        r += 1
    return r


def kernel(m: Matrix) -> Matrix:
    """Canonical basis (rref rows) of {v : m @ v = 0}."""
    f = m.field
    red, pivots, rk = rref(m)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    vecs = []
    for fc in free:
        v = [f.zero] * m.ncols
        v[fc] = f.one
        for i, pc in enumerate(pivots):
            x = red.rows[i][fc]
            if x != f.zero:
                v[pc] = f.neg(x)
        vecs.append(v)
    red2, _, krank = rref(Matrix(f, vecs, m.ncols))
    invariant(krank == m.ncols - rk, "kernel dimension law violated")
    return Matrix(f, red2.rows[:krank], m.ncols)


# ---------------------------------------------------------------------------
# graded subspaces


@dataclass(frozen=True)
class GradedSubspace:
    """Subspace of the degree-k graded piece, canonical rref basis rows.

    `family` is "x" for the primal variables and "y" for the dual ones; the
    apolarity pairing is the only bridge between the two.
    """

    field: FieldConfig
    nvars: int
    degree: int
    family: str
    basis: Matrix
    pivots: tuple = dc_field(default=())

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def ambient_dim(self) -> int:
        return self.basis.ncols

    def complement_columns(self) -> tuple:
        pset = set(self.pivots)
        return tuple(c for c in range(self.ambient_dim) if c not in pset)

    def reduce(self, vec: Sequence) -> list:
        """Residual of vec after clearing pivot coordinates with basis rows."""
        f = self.field
        v = list(vec)
        for row, pc in zip(self.basis.rows, self.pivots):
            c = v[pc]
            if c != f.zero:
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        return v

    def contains_vector(self, vec: Sequence) -> bool:
        z = self.field.zero
        return all(x == z for x in self.reduce(vec))


def span(field: FieldConfig, nvars: int, degree: int, family: str, vectors) -> GradedSubspace:
    ncols = math.comb(nvars - 1 + degree, degree)
    red, pivots, rk = rref(Matrix(field, list(vectors), ncols))
    basis = Matrix(field, red.rows[:rk], ncols)
    return GradedSubspace(field, nvars, degree, family, basis, pivots)


def _check_ambient(a: GradedSubspace, b: GradedSubspace):
    if (a.field, a.nvars, a.degree, a.family) != (b.field, b.nvars, b.degree, b.family):
        raise AmbientMismatchError(
            f"subspace ambient mismatch: ({a.nvars},{a.degree},{a.family}) vs "
            f"({b.nvars},{b.degree},{b.family})"
        )


def subspace_sum(a: GradedSubspace, b: GradedSubspace) -> GradedSubspace:
    _check_ambient(a, b)
    return span(a.field, a.nvars, a.degree, a.family, a.basis.rows + b.basis.rows)


def subspace_intersect(a: GradedSubspace, b: GradedSubspace) -> GradedSubspace:
    """Zassenhaus: rref [A|A; B|0], read the right half of rows with zero left half."""
    _check_ambient(a, b)
    f = a.field
    n = a.basis.ncols
    z = f.zero
    rows = [list(r) + list(r) for r in a.basis.rows]
    rows += [list(r) + [z] * n for r in b.basis.rows]
    red, _, _ = rref(Matrix(f, rows, 2 * n))
    inter = [row[n:] for row in red.rows if all(x == z for x in row[:n])]
    out = span(f, a.nvars, a.degree, a.family, inter)
    invariant(
        out.dim + subspace_sum(a, b).dim == a.dim + b.dim,
        "dim(sum) + dim(intersect) != dim A + dim B",
    )
    return out


def subspace_contains(a: GradedSubspace, vec: Sequence) -> bool:
    if len(vec) != a.ambient_dim:
        raise AmbientMismatchError("vector length does not match ambient dimension")
    return a.contains_vector(vec)


def subspace_le(a: GradedSubspace, b: GradedSubspace) -> bool:
    """a is contained in b."""
    _check_ambient(a, b)
    return all(b.contains_vector(r) for r in a.basis.rows)
