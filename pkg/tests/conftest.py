import pytest

from gradus import (
    FieldConfig,
    SeedStream,
    child_seed,
    construct_pair,
    fermat_form,
    is_smooth_hypersurface,
    membership_u,
    random_poly,
    special_q,
)

MASTER_SEED = 20260101


@pytest.fixture(scope="session")
def qq():
    return FieldConfig.rationals()


@pytest.fixture(scope="session")
def fp():
    return FieldConfig.prime_field(10007)


@pytest.fixture(scope="session")
def special_cubic(qq):
    return special_q(qq, 4, 3)


@pytest.fixture(scope="session")
def fermat(qq):
    return fermat_form(qq, 5, 3)


def _seeded_smooth_cubics(field, count, master=MASTER_SEED, bound=10):
    out = []
    i = 0
    while len(out) < count:
        stream = SeedStream(child_seed(master, i))
        f = random_poly(field, stream, 5, 3, bound)
        i += 1
        if f.is_zero():
            continue
        if is_smooth_hypersurface(f).is_smooth:
            out.append(f)
    return out


@pytest.fixture(scope="session")
def smooth_cubics(qq):
    """20 seeded random smooth-certified cubic threefolds."""
    return _seeded_smooth_cubics(qq, 20)


@pytest.fixture(scope="session")
def u_pairs(smooth_cubics):
    """(F, membership, pair certificate) for 10 cubics certified in the good locus."""
    out = []
    for f in smooth_cubics:
        if len(out) == 10:
            break
        um = membership_u(f, trials=5, seed=7)
        if not um.in_u:
            continue
        cert = construct_pair(f, um.witness, seed=11)
        out.append((f, um, cert))
    assert len(out) == 10, "could not certify 10 cubics in the good locus"
    return out
