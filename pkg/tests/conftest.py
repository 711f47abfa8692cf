import pytest

from commpres.algebra import AlgebraElement
from commpres.analysis import LinearEndomorphism
from commpres.fields import prime_field, rationals
from commpres.poset import Poset


@pytest.fixture
def Q():
    return rationals()


@pytest.fixture
def F2():
    return prime_field(2)


@pytest.fixture
def F3():
    return prime_field(3)


@pytest.fixture
def F5():
    return prime_field(5)


@pytest.fixture
def chain2():
    return Poset([1, 2], [(1, 2)])


@pytest.fixture
def chain3():
    return Poset([1, 2, 3], [(1, 2), (2, 3)])


@pytest.fixture
def vee():
    """Minimal element 1 below incomparable 2 and 3."""
    return Poset([1, 2, 3], [(1, 2), (1, 3)])


@pytest.fixture
def crown():
    return Poset([1, 2, 3, 4], [(1, 3), (1, 4), (2, 3), (2, 4)])


@pytest.fixture
def twoarm():
    """Two maximal chains 1 < 2 < 3 and 1 < 4 < 5 sharing the bottom."""
    return Poset([1, 2, 3, 4, 5], [(1, 2), (2, 3), (1, 4), (4, 5)])


def endo_from_images(poset, field, images, default_identity=True):
    """Endomorphism from partial basis images; unspecified basis vectors
    map to themselves when default_identity is set."""
    full = {}
    for pair in poset.comparable_pairs:
        if pair in images:
            full[pair] = images[pair]
        elif default_identity:
            full[pair] = AlgebraElement.basis(poset, field, *pair)
        else:
            full[pair] = AlgebraElement.zero(poset, field)
    return LinearEndomorphism.from_basis_images(poset, field, full)


@pytest.fixture
def vee_phi(vee, Q):
    """The worked map on the vee poset: identity on the diagonal, with
    diagonal residues e_1 + e_3 and e_1 + e_2 added to the radical images."""
    e = lambda x, y: AlgebraElement.basis(vee, Q, x, y)
    return endo_from_images(vee, Q, {
        (1, 2): e(1, 2) + e(1, 1) + e(3, 3),
        (1, 3): e(1, 3) + e(1, 1) + e(2, 2),
    })


@pytest.fixture
def twoarm_phi(twoarm, Q):
    """The worked two-arm map: sign flips on one arm, a non-indicator
    diagonal image of e_1, and sigma(1,5) = -1."""
    e = lambda x, y: AlgebraElement.basis(twoarm, Q, x, y)
    return endo_from_images(twoarm, Q, {
        (1, 1): e(1, 1) + 2 * e(4, 4) + 2 * e(5, 5),
        (4, 4): -e(4, 4),
        (5, 5): -e(5, 5),
        (1, 5): -e(1, 5),
    })


@pytest.fixture
def chain2_shifted(chain2, Q):
    """On the 2-chain: e_12 picks up a residue e_1; a strong bijective
    diagonality preserver that is not of Lie type."""
    e = lambda x, y: AlgebraElement.basis(chain2, Q, x, y)
    return endo_from_images(chain2, Q, {(1, 2): e(1, 1) + e(1, 2)})


@pytest.fixture
def chain2_nondiag(chain2, Q):
    """On the 2-chain: e_1 -> e_12, e_12 -> e_2, e_2 -> delta - e_12; a
    strong bijective preserver that does not preserve diagonality."""
    e = lambda x, y: AlgebraElement.basis(chain2, Q, x, y)
    delta = AlgebraElement.delta(chain2, Q)
    return endo_from_images(chain2, Q, {
        (1, 1): e(1, 2),
        (1, 2): e(2, 2),
        (2, 2): delta - e(1, 2),
    }, default_identity=False)


# --- acceptance summary plumbing -------------------------------------------

ACCEPTANCE_RESULTS = []


def record_acceptance(name, passed, elapsed, budget):
    ACCEPTANCE_RESULTS.append((name, passed, elapsed, budget))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, passed, elapsed, budget in ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(
            f"{status}  {name}  ({elapsed:.2f}s, budget {budget:.0f}s)"
        )
