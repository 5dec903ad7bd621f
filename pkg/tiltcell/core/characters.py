"""
Formal characters in Z[X]^{W_f}: weight multiplicities of Weyl modules by the
Freudenthal recursion, the Weyl dimension formula and Brauer-Klimyk tensor
product decomposition of Weyl characters.
"""

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
import logging

from .errors import InvalidConfigError, InvariantViolationError
from .rootdata import (
    RootSystem,
    Weight,
    add,
    dominant_conjugate,
    dominant_rep_signed,
    inner_product,
    is_dominant,
    pairing_coroot,
    reflect,
    root_coordinates,
    subtract,
)

logger = logging.getLogger(__name__)


class FormalCharacter:
    """finite Z-combination of formal exponentials e^lambda"""

    def __init__(self, terms: dict = None):
        self.terms = {weight: m for weight, m in (terms or {}).items() if m != 0}

    def __getitem__(self, weight: Weight) -> int:
        return self.terms.get(weight, 0)

    def __contains__(self, weight: Weight) -> bool:
        return weight in self.terms

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, FormalCharacter) and self.terms == other.terms

    def __add__(self, other: "FormalCharacter") -> "FormalCharacter":
        res = dict(self.terms)
        for weight, m in other.terms.items():
            res[weight] = res.get(weight, 0) + m
        return FormalCharacter(res)

    def __repr__(self):
        return f"FormalCharacter({dict(sorted(self.terms.items()))})"

    def items(self):
        return self.terms.items()

    def scale(self, factor: int) -> "FormalCharacter":
        return FormalCharacter({weight: factor * m for weight, m in self.terms.items()})

    def dimension(self) -> int:
        return sum(self.terms.values())

    def is_invariant(self, root_system: RootSystem) -> bool:
        """True when every simple reflection permutes the terms"""
        return all(
            self.terms.get(reflect(root_system, weight, i), 0) == m
            for weight, m in self.terms.items()
            for i in range(root_system.rank)
        )


def _check_dominant(weight: Weight, root_system: RootSystem):
    if len(weight) != root_system.rank:
        raise InvalidConfigError(
            f"weight {list(weight)} has {len(weight)} coordinates, {root_system.name} needs {root_system.rank}"
        )
    if not is_dominant(weight):
        raise InvalidConfigError(f"weight {list(weight)} is not dominant")


def _is_below(root_system: RootSystem, top: Weight, weight: Weight) -> bool:
    """top - weight is a nonnegative integral combination of simple roots"""
    coords = root_coordinates(root_system, subtract(top, weight))
    return all(c.denominator == 1 and c >= 0 for c in coords)


def dominance_height(root_system: RootSystem, weight: Weight) -> int:
    """<lambda + rho, 2 rho^vee>, a linear extension of the dominance order"""
    shifted = add(weight, root_system.rho)
    return sum(pairing_coroot(shifted, coroot) for coroot in root_system.coroots)


def weyl_dim(root_system: RootSystem, weight: Weight) -> int:
    _check_dominant(weight, root_system)
    shifted = add(weight, root_system.rho)
    res = Fraction(1)
    for coroot in root_system.coroots:
        res *= Fraction(
            pairing_coroot(shifted, coroot), pairing_coroot(root_system.rho, coroot)
        )
    if res.denominator != 1:
        raise InvariantViolationError(f"Weyl dimension of {list(weight)} is not an integer: {res}")
    return int(res)


@lru_cache(maxsize=None)
def weight_multiplicities(root_system: RootSystem, weight: Weight) -> FormalCharacter:
    """
    Character of the Weyl module V(lambda).

    Args:
        root_system: the finite root system.
        weight: a dominant weight lambda in fundamental-weight coordinates.

    Returns:
        FormalCharacter mapping each weight of V(lambda) to its multiplicity.

    Note:
        Only dominant multiplicities are computed by Freudenthal's formula
        m(mu) = 2 sum_{alpha > 0} sum_{k >= 1} m(mu + k alpha)(mu + k alpha, alpha)
        / ((lambda + rho, lambda + rho) - (mu + rho, mu + rho)),
        the rest follow by W_f-invariance. Results are cached per
        (root system, lambda) and must not be mutated.

    Examples:
        >>> a1 = root_system_from_type("A1")
        >>> weight_multiplicities(a1, (2,)).terms
        {(2,): 1, (0,): 1, (-2,): 1}
    """
    weight = tuple(weight)
    _check_dominant(weight, root_system)
    rank = root_system.rank
    simple_roots = [root_system.simple_root(i) for i in range(rank)]

    ## weights of V(lambda): everything whose dominant conjugate lies below lambda
    depth = {weight: 0}
    queue = [weight]
    position = 0
    while position < len(queue):
        current = queue[position]
        position += 1
        for alpha in simple_roots:
            lower = subtract(current, alpha)
            if lower in depth:
                continue
            conjugate, _ = dominant_conjugate(root_system, lower)
            if _is_below(root_system, weight, conjugate):
                depth[lower] = depth[current] + 1
                queue.append(lower)
    support = set(depth)

    top = add(weight, root_system.rho)
    top_norm = inner_product(root_system, top, top)
    dominant = sorted((mu for mu in support if is_dominant(mu)), key=lambda mu: (depth[mu], mu))
    multiplicity = {weight: 1}

    def lookup(mu):
        return multiplicity[dominant_conjugate(root_system, mu)[0]]

    for mu in dominant:
        if mu == weight:
            continue
        total = Fraction(0)
        for alpha in root_system.positive_roots_weight:
            k = 1
            while True:
                shifted = tuple(m + k * a for m, a in zip(mu, alpha))
                if shifted not in support:
                    break
                total += lookup(shifted) * inner_product(root_system, shifted, alpha)
                k += 1
        shifted_mu = add(mu, root_system.rho)
        denominator = top_norm - inner_product(root_system, shifted_mu, shifted_mu)
        value = 2 * total / denominator
        if value.denominator != 1 or value < 0:
            raise InvariantViolationError(
                f"Freudenthal recursion gave {value} for {list(mu)} in V({list(weight)})"
            )
        multiplicity[mu] = int(value)

    return FormalCharacter({mu: lookup(mu) for mu in support})


def ch_point(root_system: RootSystem, weight: Weight):
    """signed dominant normal form of the symbol ch(lambda); None stands for zero"""
    return dominant_rep_signed(root_system, tuple(weight))


def tensor_weyl_factors(root_system: RootSystem, weight: Weight, other: Weight) -> dict:
    """
    Brauer-Klimyk decomposition of ch V(lambda) * ch V(mu) into Weyl characters.

    The weights of the smaller module are added to the highest weight of the
    larger one and every sum is reduced with ch_point.
    """
    weight, other = tuple(weight), tuple(other)
    _check_dominant(weight, root_system)
    _check_dominant(other, root_system)
    dims = {weight: weyl_dim(root_system, weight), other: weyl_dim(root_system, other)}
    large, small = (weight, other) if (dims[weight], weight) >= (dims[other], other) else (other, weight)
    totals = defaultdict(int)
    for omega, c in weight_multiplicities(root_system, small).items():
        reduced = ch_point(root_system, add(large, omega))
        if reduced is None:
            continue
        sign, nu = reduced
        totals[nu] += sign * c
    factors = {}
    for nu, m in totals.items():
        if m < 0:
            raise InvariantViolationError(
                f"negative multiplicity {m} of V({list(nu)}) in V({list(weight)}) x V({list(other)})"
            )
        if m > 0:
            factors[nu] = m
    conserved = sum(m * weyl_dim(root_system, nu) for nu, m in factors.items())
    if conserved != dims[weight] * dims[other]:
        raise InvariantViolationError(
            f"dimension not conserved in V({list(weight)}) x V({list(other)}): "
            f"{conserved} != {dims[weight] * dims[other]}"
        )
    return factors
