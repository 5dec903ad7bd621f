"""
Antispherical module: the Hbar_s action, KL basis elements, the
specialization to N^1 and the on-disk KL cache.

Core claims:
  - Nbar_x has coefficient 1 at N_x and coefficients in vZ_{>=0}[v] below.
  - Nbar_x does not depend on the right descent used to build it.
  - Nbar_x agrees with the projection of the full Hecke KL element Hbar_x.
  - beta(n H_s) = beta(n) s.
"""

import json
import random

import pytest

from tiltcell.core.affine import AffineGroup
from tiltcell.core.errors import InvalidConfigError
from tiltcell.core.hecke import (
    AntisphericalModule,
    AntisphericalVector,
    LaurentPolynomial,
    N1Vector,
    specialize_v1,
)

from .conftest import word
from .hecke_oracle import FullHeckeOracle

ONE = LaurentPolynomial.monomial(0)
V = LaurentPolynomial.monomial(1)
V_INV = LaurentPolynomial.monomial(-1)


# -- Helpers ------------------------------------------------------------------


def vector(group, terms: dict) -> AntisphericalVector:
    return AntisphericalVector({word(group, w): p for w, p in terms.items()})


def random_vector(group, rng, truncation) -> AntisphericalVector:
    ball = group.ball(truncation)
    return AntisphericalVector(
        {
            rng.choice(ball): LaurentPolynomial({rng.randint(-2, 2): rng.randint(-3, 3)})
            for _ in range(4)
        }
    )


# -- Laurent polynomials ------------------------------------------------------


def test_laurent_polynomial_arithmetic():
    p = V + V_INV
    assert p * p == LaurentPolynomial({2: 1, 0: 2, -2: 1})
    assert p.bar() == p
    assert (V - V).coefficients == {}
    assert (V * 3).at_one() == 3
    assert V.shift(-1) == 1
    assert repr(LaurentPolynomial({0: 1, 2: -1})) == "1 - v^2"


# -- Hbar_s action ------------------------------------------------------------


def test_a1_action(a1_group, a1_module):
    e = a1_module.standard(word(a1_group, ""))
    s0 = a1_module.standard(word(a1_group, "0"))
    assert a1_module.act_Hbar_s(e, 0) == vector(a1_group, {"0": ONE, "": V})
    assert not a1_module.act_Hbar_s(e, 1)
    assert a1_module.act_Hbar_s(s0, 0) == vector(a1_group, {"": ONE, "0": V_INV})
    kl = a1_module.kl_element(word(a1_group, "0"))
    assert a1_module.act_Hbar_s(kl, 0) == kl.scale(V + V_INV)


def test_a1_kl_elements(a1_group, a1_module):
    assert a1_module.kl_element(word(a1_group, "")) == vector(a1_group, {"": ONE})
    assert a1_module.kl_element(word(a1_group, "0")) == vector(a1_group, {"0": ONE, "": V})
    assert a1_module.kl_element(word(a1_group, "01")) == vector(a1_group, {"01": ONE, "0": V})
    assert a1_module.mu(word(a1_group, ""), word(a1_group, "0")) == 1
    assert a1_module.mu(word(a1_group, "0"), word(a1_group, "0")) == 0
    assert a1_module.mu(word(a1_group, "0"), word(a1_group, "01")) == 1


def test_kl_element_rejects_elements_outside_wf(a1_group, a1_module):
    outside = a1_group.rep(a1_group.generators[1])
    with pytest.raises(InvalidConfigError):
        a1_module.kl_element(outside)
    with pytest.raises(InvalidConfigError):
        a1_module.kl_element(word(a1_group, "01"), descent=0)


@pytest.mark.parametrize("name", ["a2", "b2", "g2"])
def test_kl_positivity_and_triangularity(name, request):
    group = request.getfixturevalue(f"{name}_group")
    module = request.getfixturevalue(f"{name}_module")
    for x in group.ball(8):
        kl = module.kl_element(x)
        assert kl[x] == ONE
        for y, p in kl.items():
            if y == x:
                continue
            assert y.length < x.length
            assert all(e >= 1 and c > 0 for e, c in p.pairs())


def _check_descent_independence(group, module, truncation):
    checked = 0
    for x in group.ball(truncation):
        descents = [
            s for s in group.generator_indices
            if group.multiply_generator(x, s)[0] == AffineGroup.DESCENT
        ]
        for s in descents:
            assert module.kl_element(x, descent=s) == module.kl_element(x)
        checked += len(descents) > 1
    return checked


def test_descent_independence(a2_group, a2_module, g2_group, g2_module):
    assert _check_descent_independence(a2_group, a2_module, 7) > 0
    assert _check_descent_independence(g2_group, g2_module, 8) > 0


@pytest.mark.slow
def test_descent_independence_g2_long(g2_group, g2_module):
    assert _check_descent_independence(g2_group, g2_module, 12) > 0


@pytest.mark.parametrize("name, truncation", [("a1", 8), ("a2", 8), ("g2", 6)])
def test_kl_basis_matches_full_hecke_algebra(name, truncation, request):
    group = request.getfixturevalue(f"{name}_group")
    module = request.getfixturevalue(f"{name}_module")
    oracle = FullHeckeOracle(group)
    for x in group.ball(truncation):
        assert module.kl_element(x) == oracle.project(oracle.kl(x.element))


def test_kl_expand_recovers_products(g2_group, g2_module):
    for x in g2_group.ball(5):
        for s in g2_group.generator_indices:
            product = g2_module.act_Hbar_s(g2_module.kl_element(x), s)
            total = AntisphericalVector()
            for y, p in g2_module.kl_expand(product).items():
                total = total + g2_module.kl_element(y).scale(p)
            assert total == product


# -- Specialization -----------------------------------------------------------


def test_specialize(a1_group, a1_module):
    assert specialize_v1(a1_module.kl_element(word(a1_group, "0"))) == N1Vector(
        {word(a1_group, "0"): 1, word(a1_group, ""): 1}
    )
    assert not specialize_v1(vector(a1_group, {"0": V - V_INV}))


def test_n1_action_a1(a1_group, a1_module):
    e = N1Vector({word(a1_group, ""): 1})
    s0 = N1Vector({word(a1_group, "0"): 1})
    assert a1_module.n1_act_generator(e, 1) == e.scale(-1)
    assert a1_module.n1_act_generator(e, 0) == s0
    assert a1_module.n1_act_generator(s0, 0) == e


def test_n1_action_respects_braid_relations(a2_group, a2_module):
    rng = random.Random(2)
    for _ in range(20):
        n = specialize_v1(random_vector(a2_group, rng, 5))
        assert a2_module.n1_act(n, (1, 2, 1)) == a2_module.n1_act(n, (2, 1, 2))
        assert a2_module.n1_act(n, (0, 1, 0)) == a2_module.n1_act(n, (1, 0, 1))
        assert a2_module.n1_act(n, (0, 0)) == n


@pytest.mark.parametrize("name", ["a2", "g2"])
def test_specialization_intertwines_the_actions(name, request):
    group = request.getfixturevalue(f"{name}_group")
    module = request.getfixturevalue(f"{name}_module")
    rng = random.Random(3)
    for _ in range(30):
        n = random_vector(group, rng, 5)
        for s in group.generator_indices:
            ## H_s = Hbar_s - v
            acted = module.act_Hbar_s(n, s) - n.scale(V)
            assert specialize_v1(acted) == module.n1_act_generator(specialize_v1(n), s)


# -- Cache --------------------------------------------------------------------


def test_cache_round_trip(tmp_path, a1_group):
    module = AntisphericalModule(a1_group, cache_dir=tmp_path)
    assert module.list_cache() == []
    ball = a1_group.ball(6)
    for x in ball:
        module.kl_element(x)
    module.save_cache()
    restored = AntisphericalModule(a1_group, cache_dir=tmp_path)
    assert restored.list_cache() == [x.label for x in ball]
    for x in ball:
        assert restored.kl_element(x) == module.kl_element(x)
    assert restored.verify_cache(fraction=1.0) == {"checked": len(ball), "evicted": []}


def test_cache_detects_tampering(tmp_path, a1_group):
    module = AntisphericalModule(a1_group, cache_dir=tmp_path)
    for x in a1_group.ball(4):
        module.kl_element(x)
    module.save_cache()
    with open(module.cache_path) as f:
        data = json.load(f)
    for entry in data["entries"]:
        if entry[0] == [0, 1]:
            entry[1][-1][1] = [[0, 2]]
    data["entries"].append([[9, 9], []])
    with open(module.cache_path, "w") as f:
        json.dump(data, f)

    tampered = AntisphericalModule(a1_group, cache_dir=tmp_path)
    assert "01" in tampered.list_cache()
    res = tampered.verify_cache(fraction=1.0)
    assert res["evicted"] == ["01"]
    assert "01" not in tampered.list_cache()
    assert tampered.kl_element(word(a1_group, "01")) == module.kl_element(word(a1_group, "01"))


def test_cache_clear(tmp_path, a1_group):
    module = AntisphericalModule(a1_group, cache_dir=tmp_path)
    module.kl_element(word(a1_group, "010"))
    module.save_cache()
    module.clear_cache()
    assert module.list_cache() == []
    assert AntisphericalModule(a1_group, cache_dir=tmp_path).list_cache() == []
