import pytest

from gradus import (
    FieldConfig,
    Polynomial,
    SeedStream,
    ci_smooth,
    graded_dim,
    ideal_graded,
    is_smooth_hypersurface,
    jacobian_graded,
    milnor_dim,
    milnor_profile,
    monomials,
    parse_poly,
    projective_empty,
    random_poly,
    smooth_reference_dims,
    span,
)
from gradus.errors import PreconditionError, ZeroPolynomialError

QQ = FieldConfig.rationals()


def test_jacobian_dims_for_special_form(special_cubic):
    assert jacobian_graded(special_cubic, 3).dim == 25
    assert jacobian_graded(special_cubic, 4).dim == 65
    # degree d-2: no multiples of the partials yet
    assert jacobian_graded(special_cubic, 1).dim == 0


def test_jacobian_degree4_equals_monomial_span(special_cubic):
    j4 = jacobian_graded(special_cubic, 4)
    pure = {tuple(4 if i == j else 0 for i in range(5)) for j in range(5)}
    rows = []
    for i, m in enumerate(monomials(5, 4)):
        if m in pure:
            continue
        vec = [QQ.zero] * graded_dim(5, 4)
        vec[i] = QQ.one
        rows.append(vec)
    assert j4 == span(QQ, 5, 4, "x", rows)


def test_milnor_dims(special_cubic, fermat):
    assert milnor_dim(special_cubic, 3) == 10
    assert milnor_dim(special_cubic, 5) == 5
    assert milnor_dim(fermat, 6) == 0


def test_smooth_reference_dims():
    assert smooth_reference_dims(5, 3) == [1, 5, 10, 10, 5, 1]
    assert smooth_reference_dims(4, 2) == [1]
    assert smooth_reference_dims(3, 4) == [1, 3, 6, 7, 6, 3, 1]
    with pytest.raises(PreconditionError):
        smooth_reference_dims(5, 1)


def test_is_smooth_fermat(fermat):
    cert = is_smooth_hypersurface(fermat)
    assert cert.is_smooth and cert.degree == 6


def test_is_smooth_special_form_singular(special_cubic):
    cert = is_smooth_hypersurface(special_cubic)
    assert cert.verdict == "singular"
    assert cert.witness_point is not None


def test_is_smooth_cube_of_linear_form():
    p = parse_poly("x0^3", QQ, nvars=5)
    assert is_smooth_hypersurface(p).verdict == "singular"


def test_is_smooth_rejects_zero_and_inhomogeneous():
    with pytest.raises(ZeroPolynomialError):
        is_smooth_hypersurface(Polynomial.zero(QQ, 5))
    with pytest.raises(PreconditionError):
        is_smooth_hypersurface(parse_poly("x0^2 + x1", QQ, nvars=5))


def test_is_smooth_prime_field_promotion():
    f101 = FieldConfig.prime_field(101)
    p = parse_poly("x0^3+x1^3+x2^3+x3^3+x4^3", f101)
    cert = is_smooth_hypersurface(p)
    assert cert.is_smooth and cert.field_used == "fp:101"


def test_milnor_profile_matches_reference_for_smooth_cubics(smooth_cubics):
    ref = smooth_reference_dims(5, 3)
    for f in smooth_cubics:
        prof = milnor_profile(f)
        assert list(prof.dims) == ref
        assert prof.t == 5


def test_milnor_symmetry(smooth_cubics):
    for f in smooth_cubics[:5]:
        prof = milnor_profile(f)
        assert list(prof.dims) == list(prof.dims)[::-1]


def test_ideal_graded_basics(fermat):
    field = QQ
    lin = [Polynomial.variable(field, 5, i) for i in range(5)]
    assert ideal_graded(lin, 1).dim == 5
    # principal ideal generated by a smooth cubic
    for k in (3, 4, 5):
        assert ideal_graded([fermat], k).dim == graded_dim(5, k - 3)
    parts = [fermat.partial(i) for i in range(5)]
    for k in (3, 4, 5, 6):
        assert ideal_graded(parts, k) == jacobian_graded(fermat, k)


def test_projective_empty_coordinates():
    lin = [Polynomial.variable(QQ, 5, i) for i in range(5)]
    res = projective_empty(lin, 4)
    assert res.certified and res.degree == 1


def test_projective_empty_inconclusive_for_positive_dimensional_locus():
    gens = [Polynomial.variable(QQ, 5, 0), Polynomial.variable(QQ, 5, 1)]
    res = projective_empty(gens, 8)
    assert not res.certified and res.degree is None


def test_projective_empty_partials_of_smooth_cubic(smooth_cubics):
    f = smooth_cubics[0]
    parts = [f.partial(i) for i in range(5)]
    res = projective_empty(parts, 8, check_monotone=True)
    assert res.certified and res.degree <= 6
    assert is_smooth_hypersurface(f).is_smooth


def test_ci_smooth_generic_quadric(fermat):
    stream = SeedStream(0)
    q = random_poly(QQ, stream, 5, 2, 5)
    cert = ci_smooth(fermat, q)
    assert cert.is_smooth and cert.degree <= 12


def test_ci_smooth_degenerate_quadric_not_smooth(fermat):
    q = parse_poly("x0^2", QQ, nvars=5)
    cert = ci_smooth(fermat, q)
    assert cert.verdict in ("singular", "inconclusive")
    assert cert.verdict == "singular"  # the F_7 point search decides this case
    assert cert.witness_point is not None


def test_ci_smooth_rejects_zero_and_offsize(fermat):
    with pytest.raises(ZeroPolynomialError):
        ci_smooth(fermat, Polynomial.zero(QQ, 5))
    cubic3 = parse_poly("x0^3 + x1^3 + x2^3", QQ)
    quad3 = parse_poly("x0^2 + x1^2 + x2^2", QQ)
    with pytest.raises(PreconditionError):
        ci_smooth(cubic3, quad3)
    # explicitly allowed when the generality flag is set
    cert = ci_smooth(cubic3, quad3, allow_general=True)
    assert cert.verdict in ("smooth", "singular", "inconclusive")


def test_monotone_fullness_during_sweep(fermat):
    parts = [fermat.partial(i) for i in range(5)]
    res = projective_empty(parts, 8, check_monotone=True)
    assert res.certified
