import random

from commpres.analysis import check_commutativity_preserver, is_strong_preserver
from commpres.fields import prime_field, rationals
from commpres.sampling import (
    chain_poset,
    random_admissible_c,
    random_closed_walk,
    random_compatible_sigma,
    random_connected_poset,
    random_monotone_theta,
    random_valid_alpha,
    random_valid_quadruple,
    standard_posets,
)
from commpres.structure import (
    build_shift,
    check_admissible,
    check_c_constant_on_chains,
    theta_is_monotone,
    validate_alpha,
)


def test_standard_posets_bounds():
    assert [name for name, _ in standard_posets(2)] == ["chain2"]
    names4 = [name for name, _ in standard_posets(4)]
    assert "crown" in names4 and "diamond" in names4 and "chain5" not in names4


def test_random_connected_posets_are_valid():
    rng = random.Random(1)
    sizes = set()
    for _ in range(40):
        poset = random_connected_poset(rng, 5)
        sizes.add(poset.n)
        assert 2 <= poset.n <= 5
    assert len(sizes) >= 3


def test_random_monotone_theta_is_monotone(crown, twoarm):
    rng = random.Random(2)
    for poset in (crown, twoarm):
        nontrivial = 0
        for _ in range(15):
            theta = random_monotone_theta(rng, poset)
            assert theta_is_monotone(poset, theta).monotone
            if any(theta[p] != p for p in poset.strict_pairs):
                nontrivial += 1
        assert nontrivial > 0


def test_random_admissible_c_crown(crown):
    rng = random.Random(3)
    Q = rationals()
    for _ in range(10):
        theta = random_monotone_theta(rng, crown)
        c = random_admissible_c(rng, crown, Q, theta)
        if c is None:
            continue
        assert all(c.values())
        assert check_c_constant_on_chains(crown, c).constant
        assert check_admissible(crown, theta, c).admissible


def test_random_quadruple_validity(crown, twoarm):
    rng = random.Random(4)
    for poset in (crown, twoarm):
        for field in (rationals(), prime_field(5), prime_field(2)):
            quad = random_valid_quadruple(rng, poset, field)
            assert quad is not None
            theta, sigma, c, kappa = quad
            assert theta_is_monotone(poset, theta).monotone
            assert check_c_constant_on_chains(poset, c).constant
            assert check_admissible(poset, theta, c).admissible
            sigma2 = random_compatible_sigma(rng, poset, field, theta, c)
            assert sigma2 is not None
            total = field.zero
            for k in kappa:
                total = total + k
            assert total


def test_random_valid_alpha_produces_shift_preservers(crown, twoarm):
    rng = random.Random(5)
    for poset in (crown, twoarm):
        for field in (rationals(), prime_field(3)):
            alpha = random_valid_alpha(rng, poset, field)
            if alpha is None:
                continue
            report = validate_alpha(poset, alpha)
            assert report.comm_preserver and report.strong and report.bijective
            endo = build_shift(poset, alpha)
            assert check_commutativity_preserver(endo).holds
            assert is_strong_preserver(endo).strong
            assert endo.is_bijective()


def test_random_closed_walks_close_and_validate(crown, twoarm):
    rng = random.Random(6)
    for poset in (crown, twoarm):
        non_tree_hit = 0
        for _ in range(120):
            walk = random_closed_walk(rng, poset)
            assert walk.is_closed
            assert poset.check_walk(walk)
            if poset is crown and any(
                frozenset(s) == frozenset((2, 4)) for s in walk.steps()
            ):
                non_tree_hit += 1
        if poset is crown:
            assert non_tree_hit > 10


def test_chain_poset_shape():
    poset = chain_poset(4)
    assert poset.maximal_chains() == [(1, 2, 3, 4)]
    assert len(poset.strict_pairs) == 6
