"""Multiplication maps between Milnor-algebra graded pieces and
strong-Lefschetz verification for smooth forms.

A profile records, for every k below T/2, the rank of multiplication by the
(T-2k)-th power of a linear form from the degree-k piece to the degree-(T-k)
piece; the verdict is true when every such map is an isomorphism.  A witness
found by randomized search certifies the property (the good locus of linear
forms is open), while a search failure is only ever reported as "no witness
found", never as a refutation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError, ZeroPolynomialError
from .jacobian import jacobian_graded
from .linalg import Matrix, SeedStream, child_seed, random_scalar, rank
from .poly import Polynomial, monomials


@dataclass(frozen=True)
class LefschetzProfile:
    ell: Polynomial
    t: int
    per_k: dict
    verdict: bool

    def as_dict(self) -> dict:
        return {
            "ell": str(self.ell),
            "t": self.t,
            "per_k": {
                str(k): {"source_dim": s, "target_dim": g, "rank": r}
                for k, (s, g, r) in sorted(self.per_k.items())
            },
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class SlpSearchResult:
    found: bool
    trials_used: int
    trial_index: int | None = None
    ell: Polynomial | None = None
    profile: LefschetzProfile | None = None

    def as_dict(self) -> dict:
        out = {"found": self.found, "trials_used": self.trials_used}
        if self.found:
            out["trial_index"] = self.trial_index
            out["witness"] = str(self.ell)
            out["profile"] = self.profile.as_dict()
        else:
            out["anomaly"] = (
                "no Lefschetz witness found; inspect this input, it is a "
                "conjecture-relevant event"
            )
        return out


def _require_smooth(f: Polynomial):
    from .jacobian import is_smooth_hypersurface

    cert = is_smooth_hypersurface(f)
    if not cert.is_smooth:
        raise PreconditionError(
            f"Lefschetz maps need a smooth-certified form (verdict: {cert.verdict})"
        )


def mult_map(f: Polynomial, g: Polynomial, j: int) -> Matrix:
    """Matrix of multiplication by g from the degree-j quotient piece to the
    degree-(j + deg g) piece, in the canonical complement-monomial bases."""
    _require_smooth(f)
    if g.is_zero():
        raise ZeroPolynomialError("multiplier must be nonzero")
    if not g.is_homogeneous():
        raise PreconditionError("multiplier must be homogeneous")
    m = g.homogeneous_degree()
    src = jacobian_graded(f, j)
    tgt = jacobian_graded(f, j + m)
    src_cols = src.complement_columns()
    tgt_cols = tgt.complement_columns()
    field = f.field
    src_mons = monomials(f.nvars, j)
    columns = []
    for c in src_cols:
        mono = Polynomial(field, f.nvars, f.family, {src_mons[c]: field.one})
        vec = (mono * g).coeff_vector(j + m)
        resid = tgt.reduce(vec)
        columns.append([resid[t] for t in tgt_cols])
    rows = [
        tuple(columns[s][t] for s in range(len(src_cols)))
        for t in range(len(tgt_cols))
    ]
    return Matrix(field, rows, len(src_cols))


def slp_check(f: Polynomial, ell: Polynomial) -> LefschetzProfile:
    """Rank profile of ell^(T-2k) from degree k to degree T-k for 2k < T."""
    _require_smooth(f)
    if ell.is_zero():
        raise ZeroPolynomialError("linear form must be nonzero")
    if ell.homogeneous_degree() != 1:
        raise PreconditionError("multiplier must be a linear form")
    d = f.homogeneous_degree()
    t = f.nvars * (d - 2)
    per_k = {}
    verdict = True
    for k in range(t):
        if 2 * k >= t:
            break
        power = ell.pow(t - 2 * k)
        mat = mult_map(f, power, k)
        r = rank(mat)
        per_k[k] = (mat.ncols, mat.nrows, r)
        if not (r == mat.ncols == mat.nrows):
            verdict = False
    return LefschetzProfile(ell, t, per_k, verdict)


def slp_search(
    f: Polynomial, trials: int = 5, seed: int = 0, bound: int = 10
) -> SlpSearchResult:
    """First linear form (in deterministic seed order) with a full profile.

    Trial i draws from the stream seeded with child_seed(seed, i), so trials
    are reproducible individually and could run concurrently; the witness is
    the lowest-index success.
    """
    _require_smooth(f)
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    field = f.field
    for i in range(trials):
        stream = SeedStream(child_seed(seed, i))
        while True:
            coeffs = [random_scalar(field, stream, bound) for _ in range(f.nvars)]
            if any(c != field.zero for c in coeffs):
                break
        ell = Polynomial(
            field,
            f.nvars,
            f.family,
            {m: c for m, c in zip(monomials(f.nvars, 1), coeffs)},
        )
        profile = slp_check(f, ell)
        if profile.verdict:
            return SlpSearchResult(True, i + 1, i, ell, profile)
    return SlpSearchResult(False, trials)
