from fractions import Fraction

import pytest

from gradus import (
    FieldConfig,
    Polynomial,
    SeedStream,
    annihilator_quadric,
    colon_graded,
    extract_c,
    fermat_form,
    graded_dim,
    jacobian_graded,
    kernel,
    macaulay_pairing_matrix,
    monomial_index,
    parse_poly,
    perp_graded,
    random_poly,
    rank,
    socle_functional,
    span,
)
from gradus.apolarity import _pairing_weights
from gradus.errors import (
    DegeneratePairError,
    NotSmoothError,
    PreconditionError,
)
from gradus.linalg import Matrix

from .oracles import brute_colon_basis

QQ = FieldConfig.rationals()


def test_perp_of_zero_subspace_is_everything():
    e = span(QQ, 5, 3, "x", [])
    p = perp_graded(e)
    assert p.dim == 35 and p.family == "y"


def test_perp_of_special_jacobian_contains_fermat(special_cubic):
    perp = perp_graded(jacobian_graded(special_cubic, 3))
    assert perp.dim == 10
    fy = fermat_form(QQ, 5, 3, family="y")
    assert perp.contains_vector(fy.coeff_vector(3))


def test_perp_of_monomial_line():
    vec = [QQ.zero] * 35
    vec[monomial_index(5, 3)[(3, 0, 0, 0, 0)]] = QQ.one
    e = span(QQ, 5, 3, "x", [vec])
    p = perp_graded(e)
    assert p.dim == 34
    y0cubed = [QQ.zero] * 35
    y0cubed[monomial_index(5, 3)[(3, 0, 0, 0, 0)]] = QQ.one
    assert not p.contains_vector(y0cubed)


def test_perp_dimension_law_and_involution(smooth_cubics):
    f = smooth_cubics[0]
    j3 = jacobian_graded(f, 3)
    perp = perp_graded(j3)  # involution asserted internally
    assert j3.dim + perp.dim == 35


def test_socle_functional_fermat(fermat):
    lam = socle_functional(fermat)
    assert lam.degree == 5
    idx = monomial_index(5, 5)[(1, 1, 1, 1, 1)]
    expect = [QQ.zero] * len(lam.vector)
    expect[idx] = QQ.one
    assert list(lam.vector) == expect


def test_socle_functional_kills_jacobian(smooth_cubics):
    f = smooth_cubics[1]
    lam = socle_functional(f)
    j5 = jacobian_graded(f, 5)
    assert all(lam.apply_vector(row) == 0 for row in j5.basis.rows)
    assert any(x != 0 for x in lam.vector)


def test_socle_functional_rejects_singular(special_cubic):
    with pytest.raises(NotSmoothError):
        socle_functional(special_cubic)


def test_socle_functional_scale_invariant(smooth_cubics):
    f = smooth_cubics[2]
    assert socle_functional(f).vector == socle_functional(f.scale(7)).vector


def test_macaulay_pairing_ranks(smooth_cubics):
    f = smooth_cubics[0]
    m2 = macaulay_pairing_matrix(f, 2)
    assert (m2.nrows, m2.ncols) == (10, 10) and rank(m2) == 10
    m0 = macaulay_pairing_matrix(f, 0)
    assert (m0.nrows, m0.ncols) == (1, 1) and m0.rows[0][0] != 0
    m5 = macaulay_pairing_matrix(f, 5)
    assert (m5.nrows, m5.ncols) == (1, 1) and rank(m5) == 1


def _unit_hyperplane(f, g):
    """{b in degree-3 : <b, G> = 0} computed directly."""
    weights = _pairing_weights(QQ, 5, 3)
    gvec = g.coeff_vector(3)
    row = [QQ.mul(c, w) for c, w in zip(gvec, weights)]
    null = kernel(Matrix(QQ, [row], 35))
    return span(QQ, 5, 3, "x", null.rows)


def test_annihilator_quadric_colon_identity(u_pairs):
    f, um, _ = u_pairs[0]
    g = um.witness
    qprime = annihilator_quadric(f, g)
    colon3 = colon_graded(f, qprime, 3)
    assert colon3 == _unit_hyperplane(f, g)
    assert colon3.dim == 34


def test_annihilator_quadric_scaling_invariance(u_pairs):
    f, um, _ = u_pairs[1]
    g = um.witness
    assert annihilator_quadric(f, g) == annihilator_quadric(f, g.scale(Fraction(5, 3)))


def test_annihilator_quadric_rejects_bad_witness(smooth_cubics):
    f = smooth_cubics[0]
    bad = fermat_form(QQ, 5, 3, family="y")
    with pytest.raises(PreconditionError, match="perp"):
        annihilator_quadric(f, bad)


def test_colon_generic_pair_is_zero_in_degree_one(smooth_cubics):
    f = smooth_cubics[0]
    stream = SeedStream(404)
    q = random_poly(QQ, stream, 5, 2, 10)
    assert colon_graded(f, q, 1).dim == 0


def test_colon_with_jacobian_quadric_is_everything(smooth_cubics):
    f = smooth_cubics[3]
    q = f.partial(0)
    for k in (1, 2):
        assert colon_graded(f, q, k).dim == graded_dim(5, k)


def test_colon_contains_jacobian_piece(smooth_cubics):
    f = smooth_cubics[4]
    stream = SeedStream(77)
    q = random_poly(QQ, stream, 5, 2, 10)
    colon3 = colon_graded(f, q, 3)
    j3 = jacobian_graded(f, 3)
    from gradus.linalg import subspace_le

    assert subspace_le(j3, colon3)


def test_colon_invariant_under_jacobian_perturbation(smooth_cubics):
    stream = SeedStream(3000)
    for f in smooth_cubics[:5]:
        q = random_poly(QQ, stream, 5, 2, 10)
        pert = Polynomial.zero(QQ, 5)
        for i in range(5):
            pert = pert + f.partial(i).scale(stream.randint(-10, 10))
        for k in (1, 3):
            assert colon_graded(f, q, k) == colon_graded(f, q + pert, k)


def test_colon_brute_force_oracle_small():
    # two variables keeps the stacked system tiny
    f = parse_poly("x0^4 + x1^4 + x0*x1^3", QQ)
    for q_text, k in (("x0^2 + 2*x1^2", 1), ("x0*x1", 2), ("x0^2 - x1^2", 3)):
        q = parse_poly(q_text, QQ)
        assert colon_graded(f, q, k) == brute_colon_basis(f, q, k)


def test_colon_brute_force_oracle_three_vars():
    f = parse_poly("x0^3 + x1^3 + x2^3 - x0*x1*x2", QQ)
    stream = SeedStream(1234)
    for k in (1, 2):
        q = random_poly(QQ, stream, 3, 2, 4)
        assert colon_graded(f, q, k) == brute_colon_basis(f, q, k)


def test_extract_c_equals_witness(u_pairs):
    f, um, cert = u_pairs[0]
    assert cert.c == um.witness.normalized()
    assert extract_c(f, cert.q).poly == cert.c


def test_extract_c_invariant_under_rescaling(u_pairs):
    f, _, cert = u_pairs[2]
    c1 = extract_c(f, cert.q).poly
    c2 = extract_c(f.scale(3), cert.q.scale(Fraction(2, 7))).poly
    assert c1 == c2


def test_extract_c_degenerate_pair_reports_dimension(smooth_cubics):
    f = smooth_cubics[0]
    with pytest.raises(DegeneratePairError) as err:
        extract_c(f, f.partial(0))
    assert err.value.dim == 0


def test_perp_in_prime_field_needs_large_characteristic():
    f5 = FieldConfig.prime_field(5)
    e = span(f5, 5, 5, "x", [])
    from gradus.errors import CharacteristicError

    with pytest.raises(CharacteristicError):
        perp_graded(e)
