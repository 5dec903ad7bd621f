"""
Characters of tilting modules in Weyl-filtration form, their tensor products,
the maps alpha_lambda into N^1, cell tensor ideals and quotient Grothendieck
rings.
"""

from collections import defaultdict
from dataclasses import dataclass, field
import logging
import random
import threading

import polars as pl
import sympy
import tqdm

from .affine import WfRep
from .cells import TensorIdeal
from .characters import (
    FormalCharacter,
    ch_point,
    dominance_height,
    tensor_weyl_factors,
    weyl_dim,
)
from .errors import InvalidConfigError, InvariantViolationError
from .hecke import AntisphericalModule, N1Vector, specialize_v1
from .rootdata import Weight, add, is_dominant

logger = logging.getLogger(__name__)


@dataclass
class TiltingCharacter:
    """block lambda_0 in C together with the Weyl factors V(nu) and their multiplicities"""

    block: Weight
    factors: dict = field(default_factory=dict)

    def __post_init__(self):
        self.block = tuple(self.block)
        self.factors = {tuple(nu): int(m) for nu, m in self.factors.items() if m != 0}

    def __eq__(self, other):
        return (
            isinstance(other, TiltingCharacter)
            and self.block == other.block
            and self.factors == other.factors
        )

    def items(self):
        return self.factors.items()

    def sorted_factors(self, root_system) -> list:
        return sorted(
            self.factors.items(),
            key=lambda item: (-dominance_height(root_system, item[0]), item[0]),
        )

    def top(self, root_system) -> Weight:
        return max(self.factors, key=lambda nu: (dominance_height(root_system, nu), nu))

    def dimension(self, root_system) -> int:
        return sum(m * weyl_dim(root_system, nu) for nu, m in self.factors.items())

    def to_dict(self, root_system) -> dict:
        return {
            "block": list(self.block),
            "factors": [[list(nu), m] for nu, m in self.sorted_factors(root_system)],
        }


class TiltingCategory:
    """
    Character-level model of the tilting modules of a quantum group at an l-th
    root of unity. Indecomposable characters are cached per highest weight.
    """

    def __init__(self, module: AntisphericalModule):
        self.module = module
        self.group = module.group
        self.root_system = module.group.root_system
        self._indecomposables = {}
        self._weyl_products = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"TiltingCategory({self.group.name}, l={self.group.level})"

    def weyl_module(self, weight: Weight) -> TiltingCharacter:
        weight = tuple(weight)
        return TiltingCharacter(self.group.block_of(weight), {weight: 1})

    ## indecomposables
    def tilting_regular(self, x: WfRep) -> TiltingCharacter:
        """Q(x.0) from Nbar^1_x: factors (y.0, n_{y,x}(1))"""
        factors = {}
        for y, c in specialize_v1(self.module.kl_element(x)).items():
            if c < 0:
                raise InvariantViolationError(
                    f"negative coefficient {c} of N_{y.label} in Nbar^1_{x.label}"
                )
            factors[self.group.dot_act(y.element, self.root_system.zero)] = c
        return TiltingCharacter(self.root_system.zero, factors)

    def translate(self, character: TiltingCharacter, target: Weight) -> TiltingCharacter:
        """
        Translation functor from the block of the character to the block of
        target: V(w.lambda_0) has the factors V(w w_1.mu_0), w_1 in
        Stab(lambda_0), each distinct dominant one once.
        """
        target = tuple(target)
        if not self.group.in_closed_alcove(target):
            raise InvalidConfigError(f"{list(target)} is not in the fundamental alcove")
        stabilizer = self.group.stabilizer(character.block)
        res = defaultdict(int)
        for nu, m in character.items():
            w, base = self.group.to_fundamental(nu)
            if base != character.block:
                raise InvalidConfigError(
                    f"V({list(nu)}) is not in the block of {list(character.block)}"
                )
            images = {self.group.dot_act(self.group.multiply(w, x), target) for x in stabilizer}
            for image in images:
                if is_dominant(image):
                    res[image] += m
                elif ch_point(self.root_system, image) is not None:
                    raise InvariantViolationError(
                        f"translation of V({list(nu)}) produced the non-vanishing V({list(image)})"
                    )
        return TiltingCharacter(target, res)

    def translate_regular_to_wall(self, character: TiltingCharacter, target: Weight) -> TiltingCharacter:
        if character.block != self.root_system.zero:
            raise InvalidConfigError("translate_regular_to_wall expects a character of the principal block")
        return self.translate(character, target)

    def longest_representative(self, weight: Weight) -> tuple:
        """(w', w, lambda_0) with w' the longest element of w Stab(lambda_0) in W^f"""
        w, base = self.group.resolve_dominant(weight)
        _, longest = self.group.coset_extremes(w, self.group.stabilizer(base))
        return longest, w, base

    def tilting_indecomposable(self, weight: Weight) -> TiltingCharacter:
        """
        Character of Q(mu).

        Note:
            The translation of Q(w'.0) to the block lambda_0 of mu is k copies
            of Q(mu), k being the multiplicity of V(mu) in it. The division
            must be exact and alpha_lambda of the result must equal
            Nbar^1_{w'}; otherwise InvariantViolationError is raised.
        """
        weight = tuple(weight)
        if weight in self._indecomposables:
            return self._indecomposables[weight]
        longest, w, base = self.longest_representative(weight)
        translated = self.translate(self.tilting_regular(longest), base)
        k = translated.factors.get(weight, 0)
        if k <= 0 or any(m % k for m in translated.factors.values()):
            raise InvariantViolationError(
                f"singular-character inconsistency for Q({list(weight)}): "
                f"translation of Q({longest.label}.0) is not a multiple of a character with top V({list(weight)})"
            )
        res = TiltingCharacter(base, {nu: m // k for nu, m in translated.items()})
        if res.top(self.root_system) != weight:
            raise InvariantViolationError(
                f"singular-character inconsistency for Q({list(weight)}): top factor is {list(res.top(self.root_system))}"
            )
        if longest != w and self.alpha_map(res) != specialize_v1(self.module.kl_element(longest)):
            raise InvariantViolationError(
                f"singular-character inconsistency for Q({list(weight)}): alpha image differs from Nbar^1_{longest.label}"
            )
        with self._lock:
            self._indecomposables[weight] = res
        return res

    def peel_decompose(self, character: TiltingCharacter) -> dict:
        """multiplicities of the indecomposable summands Q(mu), highest factors first"""
        work = dict(character.factors)
        res = defaultdict(int)
        while work:
            top = max(work, key=lambda nu: (dominance_height(self.root_system, nu), nu))
            k = work[top]
            if k < 0:
                raise InvariantViolationError(f"not a tilting character: V({list(top)}) has multiplicity {k}")
            for nu, m in self.tilting_indecomposable(top).items():
                remaining = work.get(nu, 0) - k * m
                if remaining < 0:
                    raise InvariantViolationError(
                        f"not a tilting character: removing {k} Q({list(top)}) leaves V({list(nu)}) at {remaining}"
                    )
                if remaining:
                    work[nu] = remaining
                else:
                    work.pop(nu, None)
            res[top] += k
        return dict(res)

    ## tensor products
    def _weyl_product(self, weight: Weight, other: Weight) -> dict:
        key = (weight, other) if weight <= other else (other, weight)
        if key not in self._weyl_products:
            self._weyl_products[key] = tensor_weyl_factors(self.root_system, *key)
        return self._weyl_products[key]

    def tensor_product(self, character: TiltingCharacter, other: TiltingCharacter) -> list:
        """Weyl factors of the tensor product, one TiltingCharacter per block"""
        total = defaultdict(int)
        for nu1, m1 in character.items():
            for nu2, m2 in other.items():
                for nu, m in self._weyl_product(nu1, nu2).items():
                    total[nu] += m1 * m2 * m
        blocks = defaultdict(dict)
        for nu, m in total.items():
            blocks[self.group.block_of(nu)][nu] = m
        res = [TiltingCharacter(block, factors) for block, factors in sorted(blocks.items())]
        expected = character.dimension(self.root_system) * other.dimension(self.root_system)
        if sum(t.dimension(self.root_system) for t in res) != expected:
            raise InvariantViolationError("dimension not conserved in tensor product")
        return res

    def tensor_decompose(self, weight: Weight, other: Weight) -> dict:
        """Q(lambda) x Q(mu) as multiplicities of indecomposables"""
        res = defaultdict(int)
        for block in self.tensor_product(
            self.tilting_indecomposable(weight), self.tilting_indecomposable(other)
        ):
            for nu, k in self.peel_decompose(block).items():
                res[nu] += k
        return dict(res)

    ## maps to N^1
    def alpha_map(self, character: TiltingCharacter) -> N1Vector:
        """
        alpha_lambda_0: each V(nu) goes to the sum of 1 x x over x with
        x.lambda_0 = nu, written in the basis N^1_{x''} through x = u x''.
        """
        stabilizer = self.group.stabilizer(character.block)
        res = defaultdict(int)
        for nu, m in character.items():
            w, base = self.group.to_fundamental(nu)
            if base != character.block:
                raise InvalidConfigError(
                    f"V({list(nu)}) is not in the block of {list(character.block)}"
                )
            for x in stabilizer:
                u, minimal = self.group.factor_finite(self.group.multiply(w, x))
                res[self.group.rep(minimal)] += m * self.group.finite_sign(u)
        return N1Vector(res)

    def c_element(self, weights: FormalCharacter, block: Weight, target: Weight) -> dict:
        """
        Element c(M) of Z[W] with alpha_mu(V x M) = alpha_lambda(V) c(M) for V
        in the block lambda_0 = block and mu_0 = target, given the weights of M.

        Returns a map AffineElement -> multiplicity, one representative for
        each orbit of Stab(lambda_0) acting on the left.
        """
        block, target = tuple(block), tuple(target)
        left = self.group.stabilizer(block)
        right = self.group.stabilizer(target)
        multiset = defaultdict(int)
        for omega, c in weights.items():
            w, base = self.group.to_fundamental(add(block, omega))
            if base != target:
                continue
            for y in right:
                multiset[self.group.multiply(w, y)] += c
        key = lambda x: (self.group.length(x), self.group.reduced_word(x))
        res = {}
        seen = set()
        for t in sorted(multiset, key=key):
            if t in seen:
                continue
            orbit = {self.group.multiply(y, t) for y in left}
            if any(multiset.get(z, 0) != multiset[t] for z in orbit):
                raise InvariantViolationError("weights of M are not W_f-invariant")
            seen |= orbit
            res[t] = multiset[t]
        return res

    def apply_c_element(self, n: N1Vector, element: dict) -> N1Vector:
        res = N1Vector()
        for z, c in element.items():
            res = res + self.module.n1_act(n, z).scale(c)
        return res

    ## ideals
    def ideal_membership(self, weight: Weight, ideal: TensorIdeal) -> bool:
        longest, _, _ = self.longest_representative(weight)
        return longest in ideal

    def quotient_basis(self, ideal: TensorIdeal) -> list:
        """dominant weights mu with Q(mu) outside the ideal"""
        candidates = self.group.enumerate_dominant_in_region(ideal.surviving_alcoves())
        return [mu for mu in candidates if not self.ideal_membership(mu, ideal)]

    def closure_violations(self, ideal: TensorIdeal, weights) -> list:
        """summands outside the ideal of Q(mu) x Q(omega_i) for ideal members mu"""
        rank = self.root_system.rank
        fundamentals = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
        violations = []
        members = [mu for mu in weights if self.ideal_membership(mu, ideal)]
        for mu in tqdm.tqdm(members, desc="closure check", disable=not self.group.progress):
            for omega in fundamentals:
                for nu in self.tensor_decompose(mu, omega):
                    if not self.ideal_membership(nu, ideal):
                        violations.append((mu, omega, nu))
        return violations

    def quotient_ring(self, ideal: TensorIdeal) -> "QuotientRing":
        basis = self.quotient_basis(ideal)
        if self.root_system.zero not in basis:
            raise InvalidConfigError("the ideal contains the unit object Q(0)")
        index = {mu: i for i, mu in enumerate(basis)}
        structure = {}
        pairs = [(i, j) for i in range(len(basis)) for j in range(i, len(basis))]
        for i, j in tqdm.tqdm(pairs, desc="structure constants", disable=not self.group.progress):
            product = self.tensor_decompose(basis[i], basis[j])
            row = {index[nu]: k for nu, k in product.items() if nu in index}
            structure[(i, j)] = row
            structure[(j, i)] = row
        ring = QuotientRing(basis=basis, structure=structure, unit=index[self.root_system.zero])
        ring.verify()
        logger.info(f"{self.group.name} quotient ring of dimension {ring.dimension}")
        return ring


@dataclass
class QuotientRing:
    """split Grothendieck ring of the quotient by a tensor ideal"""

    basis: list
    structure: dict
    unit: int

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coefficient(self, i: int, j: int, k: int) -> int:
        return self.structure.get((i, j), {}).get(k, 0)

    def multiply(self, a: list, b: list) -> list:
        res = [0] * self.dimension
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                for k, c in self.structure[(i, j)].items():
                    res[k] += x * y * c
        return res

    def basis_vector(self, i: int) -> list:
        return [int(k == i) for k in range(self.dimension)]

    def check_unit(self) -> bool:
        return all(
            self.structure[(self.unit, i)] == {i: 1} for i in range(self.dimension)
        )

    def check_commutativity(self) -> bool:
        return all(
            self.structure[(i, j)] == self.structure[(j, i)]
            for i in range(self.dimension)
            for j in range(self.dimension)
        )

    def check_associativity(self, samples: int = 50, seed: int = 0) -> bool:
        rng = random.Random(seed)
        for _ in range(samples):
            i, j, k = (rng.randrange(self.dimension) for _ in range(3))
            a, b, c = (self.basis_vector(x) for x in (i, j, k))
            if self.multiply(self.multiply(a, b), c) != self.multiply(a, self.multiply(b, c)):
                return False
        return True

    def verify(self, samples: int = 50, seed: int = 0) -> "QuotientRing":
        """raise InvariantViolationError unless the unit, commutativity and sampled associativity laws hold"""
        failed = [
            name
            for name, ok in [
                ("unit", self.check_unit()),
                ("commutativity", self.check_commutativity()),
                ("associativity", self.check_associativity(samples, seed)),
            ]
            if not ok
        ]
        if failed:
            raise InvariantViolationError(
                f"quotient ring of dimension {self.dimension} violates {', '.join(failed)}"
            )
        return self

    def left_matrix(self, vector) -> sympy.Matrix:
        """matrix of multiplication by sum_i vector[i] b_i in the basis"""
        n = self.dimension
        res = sympy.zeros(n, n)
        for i, x in enumerate(vector):
            if x == 0:
                continue
            for j in range(n):
                for k, c in self.structure[(i, j)].items():
                    res[k, j] += x * c
        return res

    def to_frame(self) -> pl.DataFrame:
        rows = [
            (str(list(self.basis[i])), str(list(self.basis[j])), str(list(self.basis[k])), c)
            for (i, j), row in sorted(self.structure.items())
            for k, c in sorted(row.items())
        ]
        return pl.DataFrame(
            rows, schema=["lambda", "mu", "nu", "c"], orient="row"
        )

    def to_dict(self) -> dict:
        return {
            "basis": [list(mu) for mu in self.basis],
            "dimension": self.dimension,
            "unit": self.unit,
            "table": [
                [i, j, k, c]
                for (i, j), row in sorted(self.structure.items())
                for k, c in sorted(row.items())
            ],
        }


def _trace_form(ring: QuotientRing) -> sympy.Matrix:
    n = ring.dimension
    traces = [ring.left_matrix(ring.basis_vector(k)).trace() for k in range(n)]
    gram = sympy.zeros(n, n)
    for i in range(n):
        for j in range(n):
            gram[i, j] = sum(c * traces[k] for k, c in ring.structure[(i, j)].items())
    return gram


def radical_basis(ring: QuotientRing) -> list:
    """
    Rational basis of the radical, the kernel of the trace form
    (x, y) -> tr(L_{xy}). Every basis vector is checked to be nilpotent.
    """
    n = ring.dimension
    basis = [list(v) for v in _trace_form(ring).nullspace()]
    for vector in basis:
        if not (ring.left_matrix(vector) ** n).is_zero_matrix:
            raise InvariantViolationError(f"radical vector {vector} is not nilpotent")
    return basis


def radical_dim(ring: QuotientRing) -> int:
    return ring.dimension - _trace_form(ring).rank()
