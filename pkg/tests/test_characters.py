"""
Weyl characters: Freudenthal multiplicities against an independent Kostant
partition-function count, Weyl dimensions and Brauer-Klimyk tensor products.
"""

from functools import lru_cache
import itertools

import pytest

from tiltcell.core.characters import (
    ch_point,
    tensor_weyl_factors,
    weight_multiplicities,
    weyl_dim,
)
from tiltcell.core.errors import InvalidConfigError
from tiltcell.core.rootdata import add, apply_matrix, root_coordinates, subtract


# -- Helpers ------------------------------------------------------------------


@lru_cache(maxsize=None)
def partition_count(roots: tuple, gamma: tuple, k: int = 0) -> int:
    """ways of writing gamma as a sum of roots[k:], with repetition"""
    if all(c == 0 for c in gamma):
        return 1
    if k == len(roots) or any(c < 0 for c in gamma):
        return 0
    res = 0
    current = gamma
    while all(c >= 0 for c in current):
        res += partition_count(roots, current, k + 1)
        current = tuple(c - a for c, a in zip(current, roots[k]))
    return res


def kostant_multiplicity(rs, weight, mu):
    """m_lambda(mu) = sum_w sign(w) P(w(lambda + rho) - (mu + rho))"""
    roots = tuple(rs.positive_roots)
    total = 0
    for u in rs.weyl_group:
        difference = subtract(apply_matrix(u, add(weight, rs.rho)), add(mu, rs.rho))
        coords = root_coordinates(rs, difference)
        if any(c.denominator != 1 for c in coords):
            continue
        total += (-1) ** rs.weyl_lengths[u] * partition_count(roots, tuple(int(c) for c in coords))
    return total


def small_dominant(rank, bound):
    return list(itertools.product(range(bound + 1), repeat=rank))


def dominant_up_to_dimension(rs, bound, prefix=()):
    """every dominant weight with weyl_dim <= bound, using monotonicity in each coordinate"""
    rank = rs.rank
    if len(prefix) == rank:
        return [prefix]
    res = []
    k = 0
    while weyl_dim(rs, prefix + (k,) + (0,) * (rank - len(prefix) - 1)) <= bound:
        res.extend(dominant_up_to_dimension(rs, bound, prefix + (k,)))
        k += 1
    return res


# -- Weyl modules -------------------------------------------------------------


def test_a1_characters(a1):
    assert weight_multiplicities(a1, (2,)).terms == {(2,): 1, (0,): 1, (-2,): 1}
    assert weight_multiplicities(a1, (0,)).terms == {(0,): 1}
    for n in range(6):
        assert weyl_dim(a1, (n,)) == n + 1


def test_g2_fundamental_modules(g2):
    character = weight_multiplicities(g2, (1, 0))
    assert character.dimension() == 7
    assert character[(0, 0)] == 1
    assert weyl_dim(g2, (1, 0)) == 7
    assert weyl_dim(g2, (0, 1)) == 14
    assert weight_multiplicities(g2, (0, 1))[(0, 0)] == 2


@pytest.mark.parametrize("name", ["a2", "b2", "g2"])
def test_dimension_and_invariance(name, request):
    rs = request.getfixturevalue(name)
    for weight in small_dominant(rs.rank, 2):
        character = weight_multiplicities(rs, weight)
        assert character.dimension() == weyl_dim(rs, weight)
        assert character.is_invariant(rs)
        assert all(m > 0 for _, m in character.items())


@pytest.mark.parametrize("name, count", [("a1", 200), ("a2", 87), ("b2", 26), ("g2", 9)])
def test_freudenthal_matches_kostant(name, count, request):
    rs = request.getfixturevalue(name)
    weights = dominant_up_to_dimension(rs, 200)
    assert len(weights) == count
    for weight in weights:
        character = weight_multiplicities(rs, weight)
        for mu, m in character.items():
            assert kostant_multiplicity(rs, weight, mu) == m


def test_non_dominant_weight_is_rejected(a2):
    with pytest.raises(InvalidConfigError):
        weight_multiplicities(a2, (1, -1))
    with pytest.raises(InvalidConfigError):
        weyl_dim(a2, (1,))


# -- Tensor products ----------------------------------------------------------


def test_tensor_a1(a1):
    assert tensor_weyl_factors(a1, (1,), (1,)) == {(2,): 1, (0,): 1}
    assert tensor_weyl_factors(a1, (3,), (0,)) == {(3,): 1}
    assert tensor_weyl_factors(a1, (3,), (2,)) == {(5,): 1, (3,): 1, (1,): 1}


def test_tensor_g2(g2):
    assert tensor_weyl_factors(g2, (1, 0), (1, 0)) == {
        (2, 0): 1,
        (0, 1): 1,
        (1, 0): 1,
        (0, 0): 1,
    }


@pytest.mark.parametrize("name", ["a2", "b2", "g2"])
def test_tensor_commutes_and_conserves_dimension(name, request):
    rs = request.getfixturevalue(name)
    weights = small_dominant(rs.rank, 1)
    for weight, other in itertools.product(weights, repeat=2):
        factors = tensor_weyl_factors(rs, weight, other)
        assert factors == tensor_weyl_factors(rs, other, weight)
        assert sum(m * weyl_dim(rs, nu) for nu, m in factors.items()) == weyl_dim(
            rs, weight
        ) * weyl_dim(rs, other)


def test_ch_point(a1):
    assert ch_point(a1, (-1,)) is None
    assert ch_point(a1, (-3,)) == (-1, (1,))
