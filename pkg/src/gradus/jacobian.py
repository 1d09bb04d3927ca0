"""Graded pieces of Jacobian and general ideals, Milnor dimensions, and
smoothness certification for hypersurfaces and (cubic, quadric) complete
intersections.

Smoothness of {F=0} is decided by fullness of the degree-(T+1) piece of the
Jacobian ideal, T = nvars*(d-2).  Over the rationals the check first runs
modulo a fixed prime: full rank mod p certifies full rank over the rationals
for integer matrices, so a modular "smooth" verdict is promoted; a modular
deficiency triggers the exact computation.  All ranks are of matrices with
entries from the input field, so rational verdicts are conclusive.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import (
    AmbientMismatchError,
    CharacteristicError,
    PreconditionError,
    ZeroPolynomialError,
    invariant,
)
from .linalg import (
    DEFAULT_PRIME,
    FieldConfig,
    GradedSubspace,
    Matrix,
    rank_mod,
    rref,
    span,
)
from .poly import Polynomial, graded_dim, monomial_index, monomials

DEFAULT_KMAX = 12
DEFAULT_SEARCH_PRIME = 7


@dataclass(frozen=True)
class MilnorProfile:
    """Graded dimensions of S/J_F up to some degree, with T = nvars*(d-2)."""

    nvars: int
    degree: int
    t: int
    dims: tuple

    def as_dict(self) -> dict:
        return {k: d for k, d in enumerate(self.dims)}


@dataclass(frozen=True)
class SmoothnessCertificate:
    """Machine-checkable smoothness evidence.

    verdict is "smooth", "singular", or "inconclusive".  For smooth verdicts
    `degree` is the degree at which fullness was certified and `field_used`
    the field of the rank computation; `promoted` marks modular certificates
    that are valid over the rationals.  For singular verdicts `witness_point`
    carries a singular point when one was found (possibly over a small prime
    field, recorded in `field_used`).
    """

    verdict: str
    degree: int | None = None
    field_used: str = ""
    promoted: bool = False
    witness_point: tuple | None = None
    note: str = ""

    @property
    def is_smooth(self) -> bool:
        return self.verdict == "smooth"

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "degree": self.degree,
            "field_used": self.field_used,
            "promoted": self.promoted,
            "witness_point": list(self.witness_point) if self.witness_point else None,
            "note": self.note,
        }


@dataclass(frozen=True)
class EmptinessResult:
    certified: bool
    degree: int | None
    kmax: int
    field_used: str

    def as_dict(self) -> dict:
        return {
            "certified": self.certified,
            "degree": self.degree,
            "kmax": self.kmax,
            "field_used": self.field_used,
        }


# ---------------------------------------------------------------------------
# generator rows


def _shifted_rows(g: Polynomial, k: int):
    """Coefficient vectors of m*g for all monomials m of degree k - deg(g)."""
    e = g.homogeneous_degree()
    if e is None or e > k:
        return []
    nvars = g.nvars
    idx = monomial_index(nvars, k)
    zero = g.field.zero
    rows = []
    for m in monomials(nvars, k - e):
        row = [zero] * len(idx)
        for gm, c in g.terms.items():
            row[idx[tuple(a + b for a, b in zip(m, gm))]] = c
        rows.append(row)
    return rows


def _integer_poly_terms(p: Polynomial) -> dict:
    """Primitive integer coefficients of a rational polynomial (same ideal)."""
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = {m: c.numerator * (den // c.denominator) for m, c in p.terms.items()}
    g = 0
    for v in ints.values():
        g = math.gcd(g, v)
    if g > 1:
        ints = {m: v // g for m, v in ints.items()}
    return ints


def _integer_shifted_rows(terms: dict, nvars: int, e: int, k: int):
    idx = monomial_index(nvars, k)
    rows = []
    for m in monomials(nvars, k - e):
        row = [0] * len(idx)
        for gm, c in terms.items():
            row[idx[tuple(a + b for a, b in zip(m, gm))]] = c
        rows.append(row)
    return rows


def _require_homogeneous(p: Polynomial, what: str) -> int:
    if p.is_zero():
        raise ZeroPolynomialError(f"{what} must be nonzero")
    if not p.is_homogeneous():
        raise PreconditionError(f"{what} must be homogeneous")
    return p.degree()


# ---------------------------------------------------------------------------
# Jacobian ideal pieces and Milnor dimensions

_jac_cache: dict = {}


def jacobian_graded(f: Polynomial, k: int) -> GradedSubspace:
    """Degree-k piece of the ideal of first partials, canonical basis."""
    d = _require_homogeneous(f, "F")
    key = (f.key(), k)
    hit = _jac_cache.get(key)
    if hit is not None:
        return hit
    rows = []
    if k >= d - 1 >= 0:
        for i in range(f.nvars):
            rows.extend(_shifted_rows(f.partial(i), k))
    out = span(f.field, f.nvars, k, f.family, rows)
    _jac_cache[key] = out
    return out


def milnor_dim(f: Polynomial, k: int) -> int:
    return graded_dim(f.nvars, k) - jacobian_graded(f, k).dim


def milnor_profile(f: Polynomial, k_max: int | None = None) -> MilnorProfile:
    d = _require_homogeneous(f, "F")
    t = f.nvars * (d - 2)
    if k_max is None:
        k_max = max(t, 0)
    dims = tuple(milnor_dim(f, k) for k in range(k_max + 1))
    return MilnorProfile(f.nvars, d, t, dims)


def smooth_reference_dims(nvars: int, d: int) -> list:
    """Coefficients of (1-t^(d-1))^nvars / (1-t)^nvars up to T = nvars*(d-2)."""
    if d < 2:
        raise PreconditionError("need degree >= 2")
    n = nvars - 1
    t = nvars * (d - 2)
    out = []
    for k in range(t + 1):
        total = 0
        for j in range(nvars + 1):
            r = k - j * (d - 1)
            if r < 0:
                break
            total += (-1) ** j * math.comb(nvars, j) * math.comb(n + r, n)
        out.append(total)
    invariant(out == out[::-1], "reference dimensions are not symmetric")
    return out


# ---------------------------------------------------------------------------
# smoothness of a hypersurface

_smooth_cache: dict = {}


def _jacobian_int_rows(f: Polynomial, k: int):
    """Integer generator rows of J_{F,k} for a rational F."""
    rows = []
    d = f.degree()
    if k >= d - 1:
        for i in range(f.nvars):
            pf = f.partial(i)
            if pf.is_zero():
                continue
            rows.extend(
                _integer_shifted_rows(_integer_poly_terms(pf), f.nvars, d - 1, k)
            )
    return rows


def _search_singular_point_mod(f: Polynomial, p: int):
    """Exhaustive singular-point scan of projective space over F_p."""
    gens = [f.partial(i) for i in range(f.nvars)]
    return _common_zero_mod(gens + [f], f.nvars, p)


def _common_zero_mod(polys, nvars: int, p: int):
    field = FieldConfig.prime_field(p)
    reduced = []
    for g in polys:
        if g.is_zero():
            continue
        if g.field.is_rational:
            # primitive integer scaling: same zero locus, no denominator issues
            terms = {m: c % p for m, c in _integer_poly_terms(g).items()}
            g = Polynomial(field, nvars, g.family, terms)
        reduced.append(g)
    for pivot in range(nvars):
        tail = nvars - pivot - 1
        for combo in itertools.product(range(p), repeat=tail):
            point = (0,) * pivot + (1,) + combo
            if all(g.evaluate(point) == 0 for g in reduced):
                return point
    return None


def is_smooth_hypersurface(f: Polynomial) -> SmoothnessCertificate:
    """Smooth iff the Jacobian ideal is full in degree T+1.

    Rational inputs always get a conclusive smooth/singular verdict; prime
    field inputs get smooth (which certifies every integer lift) or
    inconclusive.
    """
    d = _require_homogeneous(f, "F")
    if d < 1:
        raise PreconditionError("constant polynomial defines no hypersurface")
    key = f.key()
    hit = _smooth_cache.get(key)
    if hit is not None:
        return hit
    nvars = f.nvars
    t1 = max(nvars * (d - 2) + 1, 0)
    target = graded_dim(nvars, t1)
    field = f.field

    if not field.is_rational:
        if field.modulus <= d:
            raise CharacteristicError(
                f"smoothness check at degree {d} needs p > {d}"
            )
        rows = _jacobian_int_rows_fp(f, t1)
        rk = rank_mod(rows, target, field.modulus, target=target)
        if rk == target:
            cert = SmoothnessCertificate(
                "smooth", t1, field.descriptor(), False,
                note="full Jacobian rank; certifies every integer lift",
            )
        else:
            cert = SmoothnessCertificate(
                "inconclusive", t1, field.descriptor(), False,
                note="modular rank deficiency; no rational lift available",
            )
        _smooth_cache[key] = cert
        return cert

    int_rows = _jacobian_int_rows(f, t1)
    rk_p = rank_mod(int_rows, target, DEFAULT_PRIME, target=target)
    if rk_p == target:
        cert = SmoothnessCertificate(
            "smooth", t1, f"fp:{DEFAULT_PRIME}", True,
            note="modular fullness promoted to a rational certificate",
        )
        _smooth_cache[key] = cert
        return cert
    # exact fallback: rational rank decides
    _, _, rk = rref(Matrix(field, int_rows, target))
    if rk == target:
        cert = SmoothnessCertificate("smooth", t1, "rational", False)
    else:
        witness = None
        if nvars <= 5:
            witness = _search_singular_point_mod(f, DEFAULT_SEARCH_PRIME)
        cert = SmoothnessCertificate(
            "singular", t1, "rational", False, witness,
            note=(
                f"Jacobian rank {rk} < {target} at degree {t1}"
                + (f"; singular point found over F_{DEFAULT_SEARCH_PRIME}" if witness else "")
            ),
        )
    _smooth_cache[key] = cert
    return cert


def _jacobian_int_rows_fp(f: Polynomial, k: int):
    rows = []
    d = f.degree()
    if k >= d - 1:
        for i in range(f.nvars):
            pf = f.partial(i)
            if pf.is_zero():
                continue
            rows.extend(_integer_shifted_rows(dict(pf.terms), f.nvars, d - 1, k))
    return rows


# ---------------------------------------------------------------------------
# general graded ideals and projective emptiness


def ideal_graded(generators, k: int) -> GradedSubspace:
    """Degree-k piece of the ideal generated by homogeneous polynomials."""
    gens = list(generators)
    if not gens:
        raise PreconditionError("need at least one generator")
    nvars = gens[0].nvars
    field = gens[0].field
    family = gens[0].family
    rows = []
    for g in gens:
        if g.is_zero():
            raise ZeroPolynomialError("zero generator rejected")
        if g.nvars != nvars or g.field != field or g.family != family:
            raise AmbientMismatchError("generators live in different rings")
        _require_homogeneous(g, "generator")
        rows.extend(_shifted_rows(g, k))
    return span(field, nvars, k, family, rows)


def _ideal_full_mod(gens, k: int, p: int) -> bool:
    nvars = gens[0].nvars
    target = graded_dim(nvars, k)
    rows = []
    for g in gens:
        e = g.homogeneous_degree()
        if e > k:
            continue
        terms = _integer_poly_terms(g) if g.field.is_rational else dict(g.terms)
        rows.extend(_integer_shifted_rows(terms, nvars, e, k))
    return rank_mod(rows, target, p, target=target) == target


def projective_empty(
    generators,
    k_max: int = DEFAULT_KMAX,
    check_monotone: bool = False,
) -> EmptinessResult:
    """Sweep degrees for fullness of the generated ideal.

    Fullness at any degree certifies that the generators have no common
    projective zero (over the complex numbers, for rational inputs: the
    modular accelerator only ever promotes fullness, never deficiency).
    A sweep that never fills up is reported as inconclusive.
    """
    gens = [g for g in generators]
    if not gens:
        raise PreconditionError("need at least one generator")
    for g in gens:
        if g.is_zero():
            raise ZeroPolynomialError("zero generator rejected")
        _require_homogeneous(g, "generator")
    field = gens[0].field
    p = DEFAULT_PRIME if field.is_rational else field.modulus
    k0 = max(g.degree() for g in gens)
    for k in range(k0, k_max + 1):
        if _ideal_full_mod(gens, k, p):
            if check_monotone and k + 1 <= k_max:
                invariant(
                    _ideal_full_mod(gens, k + 1, p),
                    "fullness is not monotone across degrees",
                )
            return EmptinessResult(True, k, k_max, f"fp:{p}")
    return EmptinessResult(False, None, k_max, f"fp:{p}")


# ---------------------------------------------------------------------------
# smoothness of Y = {F = Q = 0}


def ci_smooth(
    f: Polynomial,
    q: Polynomial,
    k_max: int = DEFAULT_KMAX,
    allow_general: bool = False,
    search_prime: int = DEFAULT_SEARCH_PRIME,
    falsify: bool = True,
) -> SmoothnessCertificate:
    """Jacobian-criterion certificate for the complete intersection {F=Q=0}.

    The generator set is {F, Q} plus the 2x2 minors of the Jacobian matrix of
    (F, Q); an empty projective zero locus of that system is exactly
    smoothness of Y (as a scheme).  Falsification for small cases scans
    projective space over a small prime field for a common zero.
    """
    df = _require_homogeneous(f, "F")
    dq = _require_homogeneous(q, "Q")
    if f.nvars != q.nvars or f.field != q.field or f.family != q.family:
        raise AmbientMismatchError("F and Q live in different rings")
    if not allow_general and (f.nvars, df, dq) != (5, 3, 2):
        raise PreconditionError(
            "expected the cubic/quadric configuration in 5 variables; "
            "pass allow_general to override"
        )
    gens = [f, q]
    for i in range(f.nvars):
        for j in range(i + 1, f.nvars):
            minor = f.partial(i) * q.partial(j) - f.partial(j) * q.partial(i)
            if not minor.is_zero():
                gens.append(minor)
    sweep = projective_empty(gens, k_max)
    if sweep.certified:
        return SmoothnessCertificate(
            "smooth", sweep.degree, sweep.field_used, f.field.is_rational,
            note=f"ideal of (F, Q, minors) full at degree {sweep.degree}",
        )
    if not falsify:
        return SmoothnessCertificate(
            "inconclusive", sweep.kmax, sweep.field_used, False,
            note=f"no fullness up to degree {sweep.kmax}; falsification skipped",
        )
    point = _common_zero_mod(gens, f.nvars, search_prime)
    if point is not None:
        return SmoothnessCertificate(
            "singular", None, f"fp:{search_prime}", False, point,
            note=f"common zero of (F, Q, minors) over F_{search_prime}",
        )
    return SmoothnessCertificate(
        "inconclusive", sweep.kmax, sweep.field_used, False,
        note=f"no fullness up to degree {sweep.kmax}, no small-field witness",
    )
