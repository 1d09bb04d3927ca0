"""Special nodal forms, singular-point verification, evaluation maps on
finite point sets, defects of linear systems, and the dimension-identity
checker relating Milnor dimensions to defects.

Only reduced point-set singular loci are supported; defect is the corank of
the evaluation map from the degree-k piece to functions on the points.

Point-set file format: one point per line, comma-separated integers or
rationals, '#' starts a comment.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AmbientMismatchError,
    ParseError,
    PreconditionError,
    RangeError,
)
from .jacobian import milnor_dim, smooth_reference_dims
from .linalg import FieldConfig, Matrix, rank
from .poly import Polynomial, monomials


@dataclass(frozen=True)
class PointSet:
    """Distinct projective points, first nonzero coordinate normalized to 1."""

    field: FieldConfig
    nvars: int
    points: tuple

    @classmethod
    def from_raw(cls, field: FieldConfig, nvars: int, rows) -> "PointSet":
        pts = []
        seen = set()
        for row in rows:
            row = [field.coerce(x) for x in row]
            if len(row) != nvars:
                raise AmbientMismatchError(
                    f"point has {len(row)} coordinates, expected {nvars}"
                )
            pivot = next((x for x in row if x != field.zero), None)
            if pivot is None:
                raise PreconditionError("zero vector is not a projective point")
            inv = field.inv(pivot)
            pt = tuple(field.mul(inv, x) for x in row)
            if pt in seen:
                raise PreconditionError(f"repeated point {pt}")
            seen.add(pt)
            pts.append(pt)
        return cls(field, nvars, tuple(pts))

    def __len__(self):
        return len(self.points)


def parse_points(text: str, field: FieldConfig, nvars: int | None = None) -> PointSet:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        coords = []
        for piece in line.split(","):
            piece = piece.strip()
            try:
                coords.append(Fraction(piece))
            except (ValueError, ZeroDivisionError):
                raise ParseError(
                    f"bad coordinate {piece!r} on line {lineno}"
                ) from None
        rows.append(coords)
    if not rows:
        raise ParseError("no points in input")
    if nvars is None:
        nvars = len(rows[0])
    return PointSet.from_raw(field, nvars, rows)


@dataclass(frozen=True)
class DefectReport:
    k: int
    num_points: int
    rank_theta: int
    defect: int

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "points": self.num_points,
            "rank_theta": self.rank_theta,
            "defect": self.defect,
        }


@dataclass(frozen=True)
class LemmaReport:
    k: int
    holds: bool
    lhs: int
    rhs: int
    reference_dim: int
    defect: int

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "holds": self.holds,
            "lhs_milnor_dim": self.lhs,
            "rhs": self.rhs,
            "reference_dim": self.reference_dim,
            "defect": self.defect,
        }


# ---------------------------------------------------------------------------
# the special singular forms


def special_q(field: FieldConfig, n: int, d: int) -> Polynomial:
    """The nodal reference form in n+1 variables.

    For d = 3 this is the sum of all squarefree cubic monomials.  The printed
    source for d >= 4 mixes degrees d and d-1, so that branch is rejected
    with a diagnostic instead of guessing intended exponents.
    """
    if n < 2:
        raise PreconditionError("need n >= 2")
    if d < 3:
        raise PreconditionError("need d >= 3")
    if d >= 4:
        raise PreconditionError(
            "the d >= 4 reference formula (x_i^(d-2)x_j^2 + x_i^2 x_j^(d-3)) is "
            "inhomogeneous as printed (degrees d and d-1); only d = 3 is supported"
        )
    nvars = n + 1
    terms = {}
    for combo in itertools.combinations(range(nvars), 3):
        e = [0] * nvars
        for i in combo:
            e[i] = 1
        terms[tuple(e)] = field.one
    return Polynomial(field, nvars, "x", terms)


# ---------------------------------------------------------------------------
# singular points


def singular_points(f: Polynomial, candidates: PointSet) -> PointSet:
    """Subset of candidates where every first partial of F vanishes."""
    if candidates.nvars != f.nvars:
        raise AmbientMismatchError("point length != nvars")
    partials = [f.partial(i) for i in range(f.nvars)]
    verified = [
        pt
        for pt in candidates.points
        if all(p.evaluate(pt) == f.field.zero for p in partials)
    ]
    return PointSet(candidates.field, candidates.nvars, tuple(verified))


def brute_singular_search(f: Polynomial, p: int) -> PointSet:
    """Scan all of projective space over F_p for common zeros of the partials."""
    field = FieldConfig.prime_field(p)
    nvars = f.nvars
    partials = []
    for i in range(nvars):
        pf = f.partial(i)
        terms = {m: field.coerce(c) for m, c in pf.terms.items()}
        partials.append(Polynomial(field, nvars, f.family, terms))
    found = []
    for pivot in range(nvars):
        tail = nvars - pivot - 1
        for combo in itertools.product(range(p), repeat=tail):
            point = (0,) * pivot + (1,) + combo
            if all(g.evaluate(point) == 0 for g in partials):
                found.append(point)
    return PointSet(field, nvars, tuple(found))


def is_node(f: Polynomial, point) -> bool:
    """Nondegeneracy of the affine Hessian in the chart of the point's pivot."""
    field = f.field
    point = tuple(field.coerce(x) for x in point)
    if len(point) != f.nvars:
        raise AmbientMismatchError("point length != nvars")
    pivot = next((i for i, x in enumerate(point) if x != field.zero), None)
    if pivot is None:
        raise PreconditionError("zero vector is not a projective point")
    inv = field.inv(point[pivot])
    point = tuple(field.mul(inv, x) for x in point)
    if f.evaluate(point) != field.zero:
        raise PreconditionError("point does not lie on the hypersurface")
    if any(f.partial(i).evaluate(point) != field.zero for i in range(f.nvars)):
        raise PreconditionError("point is not singular on the hypersurface")
    chart = f.substitute(pivot, field.one)
    others = [i for i in range(f.nvars) if i != pivot]
    rows = []
    for i in others:
        di = chart.partial(i)
        rows.append([di.partial(j).evaluate(point) for j in others])
    hessian = Matrix(field, rows, len(others))
    return rank(hessian) == len(others)


# ---------------------------------------------------------------------------
# evaluation maps and defects


def evaluation_matrix(points: PointSet, k: int) -> Matrix:
    """Rows = values of the degree-k monomial basis at each point."""
    if k < 0:
        raise PreconditionError("degree must be nonnegative")
    field = points.field
    rows = []
    for pt in points.points:
        row = []
        for m in monomials(points.nvars, k):
            v = field.one
            for x, e in zip(pt, m):
                if e:
                    v = field.mul(v, field.pow(x, e))
            row.append(v)
        rows.append(row)
    return Matrix(field, rows, len(monomials(points.nvars, k)))


def defect(points: PointSet, k: int) -> DefectReport:
    theta = evaluation_matrix(points, k)
    r = rank(theta)
    return DefectReport(k, len(points), r, len(points) - r)


def check_lemma_defect(f: Polynomial, points: PointSet, k: int) -> LemmaReport:
    """Exact check of: dim M(F)_{T-k} = (smooth reference dim at k) + defect_k.

    Valid for 0 <= k <= n*d - 2n - 1 with n = nvars - 1; the range is
    enforced strictly.  `points` must be the verified reduced singular locus.
    """
    d = f.homogeneous_degree()
    n = f.nvars - 1
    upper = n * d - 2 * n - 1
    if not 0 <= k <= upper:
        raise RangeError(f"k = {k} outside the identity's range [0, {upper}]")
    verified = singular_points(f, points)
    if len(verified) != len(points):
        raise PreconditionError("points must all be singular on F")
    t = f.nvars * (d - 2)
    lhs = milnor_dim(f, t - k)
    ref = smooth_reference_dims(f.nvars, d)[k]
    dft = defect(points, k).defect
    rhs = ref + dft
    return LemmaReport(k, lhs == rhs, lhs, rhs, ref, dft)
