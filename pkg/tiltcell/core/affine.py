"""
The affine Weyl group W = W_f x| l Q acting on X by the dot action, its
alcove model and the minimal coset representatives W^f.

Elements are canonical pairs (u, nu): u a W_f matrix on weight coordinates,
nu a root-lattice vector in weight coordinates, acting linearly by
lambda -> u(lambda) + l nu. Generator index 0 is the affine reflection s_0,
indices 1..rank are the finite simple reflections.
"""

from dataclasses import dataclass, field
import itertools
import logging
import threading

import tqdm

from .errors import InvalidConfigError, InvariantViolationError
from .rootdata import (
    RootSystem,
    Weight,
    add,
    apply_matrix,
    is_dominant,
    pairing_coroot,
    subtract,
)

logger = logging.getLogger(__name__)


def _mat_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def _identity(rank):
    return tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))


@dataclass(frozen=True)
class AffineElement:
    finite: tuple
    translation: Weight


@dataclass(frozen=True)
class WfRep:
    """an element of W^f with its canonical reduced word"""

    element: AffineElement
    word: tuple = field(compare=False)

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def label(self) -> str:
        return format_word(self.word)

    def sort_key(self):
        return (len(self.word), self.word)

    def __repr__(self):
        return f"WfRep({self.label})"


def format_word(word) -> str:
    """"e" for the identity, otherwise the generator indices run together"""
    if not word:
        return "e"
    if any(s > 9 for s in word):
        return ".".join(str(s) for s in word)
    return "".join(str(s) for s in word)


def parse_word(text: str) -> tuple:
    text = (text or "").strip()
    if text in ("", "e"):
        return ()
    if "." in text or "," in text:
        return tuple(int(s) for s in text.replace(",", ".").split(".") if s != "")
    return tuple(int(s) for s in text)


class AffineGroup:
    """
    W for a root system at level l, with caches for lengths, reduced words
    and the right action of generators on W^f.
    """

    ## outcomes of multiplying a W^f element by a generator on the right
    ASCENT = "ascent"
    DESCENT = "descent"
    OUTSIDE = "outside"

    def __init__(self, root_system: RootSystem, level: int, progress: bool = True):
        self.root_system = root_system
        self.level = int(level)
        self.rank = root_system.rank
        self.progress = progress
        self.identity = AffineElement(_identity(self.rank), root_system.zero)
        self.generators = [self._affine_reflection()] + [
            self._simple_reflection(i) for i in range(self.rank)
        ]
        self._lengths = {}
        self._words = {self.identity: ()}
        self._right = {}
        self._shells = [[self.rep(self.identity)]]
        ## guards the memo tables and shells; ball() re-enters it through multiply_generator
        self._lock = threading.RLock()

    def __repr__(self):
        return f"AffineGroup({self.root_system.name}, l={self.level})"

    @property
    def name(self) -> str:
        return self.root_system.name

    @property
    def generator_indices(self) -> range:
        return range(self.rank + 1)

    def _simple_reflection(self, i: int) -> AffineElement:
        alpha = self.root_system.simple_root(i)
        matrix = tuple(
            tuple(int(r == c) - alpha[r] * int(c == i) for c in range(self.rank))
            for r in range(self.rank)
        )
        return AffineElement(matrix, self.root_system.zero)

    def _affine_reflection(self) -> AffineElement:
        ## s_0 = t_{theta} s_theta for the highest short root theta
        theta = self.root_system.highest_short_root_weight
        coroot = self.root_system.highest_coroot
        matrix = tuple(
            tuple(int(r == c) - theta[r] * coroot[c] for c in range(self.rank))
            for r in range(self.rank)
        )
        return AffineElement(matrix, theta)

    ## group law
    def multiply(self, a: AffineElement, b: AffineElement) -> AffineElement:
        return AffineElement(
            _mat_mul(a.finite, b.finite),
            add(apply_matrix(a.finite, b.translation), a.translation),
        )

    def inverse(self, a: AffineElement) -> AffineElement:
        ## W_f matrices are orthogonal for the invariant form; invert through the group
        finite = self._finite_inverse(a.finite)
        return AffineElement(finite, tuple(-x for x in apply_matrix(finite, a.translation)))

    def _finite_inverse(self, matrix):
        power = matrix
        previous = _identity(self.rank)
        while power != _identity(self.rank):
            previous = power
            power = _mat_mul(power, matrix)
        return previous

    def element_from_word(self, word) -> AffineElement:
        res = self.identity
        for s in word:
            if s not in self.generator_indices:
                raise InvalidConfigError(f"generator index {s} out of range for {self.name}")
            res = self.multiply(res, self.generators[s])
        return res

    ## actions
    def linear_act(self, w: AffineElement, weight: Weight) -> Weight:
        return add(
            apply_matrix(w.finite, weight), tuple(self.level * x for x in w.translation)
        )

    def dot_act(self, w: AffineElement, weight: Weight) -> Weight:
        """w . lambda = u(lambda + rho) + l nu - rho"""
        rho = self.root_system.rho
        return subtract(self.linear_act(w, add(tuple(weight), rho)), rho)

    def finite_part(self, w: AffineElement):
        return w.finite

    ## alcove geometry
    def in_closed_alcove(self, weight: Weight, interior: bool = False) -> bool:
        """membership of lambda in the fundamental alcove C"""
        shifted = add(tuple(weight), self.root_system.rho)
        top = pairing_coroot(shifted, self.root_system.highest_coroot)
        if interior:
            return all(x > 0 for x in shifted) and top < self.level
        return all(x >= 0 for x in shifted) and top <= self.level

    def length(self, w: AffineElement) -> int:
        """number of walls separating C and w.C"""
        if w in self._lengths:
            return self._lengths[w]
        point = self.linear_act(w, self.root_system.rho)
        res = sum(
            abs(pairing_coroot(point, coroot) // self.level)
            for coroot in self.root_system.coroots
        )
        with self._lock:
            self._lengths[w] = res
        return res

    def is_minimal(self, w: AffineElement) -> bool:
        """w in W^f, i.e. the alcove w.C lies in the dominant cone"""
        return is_dominant(self.dot_act(w, self.root_system.zero))

    def right_descents(self, w: AffineElement) -> frozenset:
        length = self.length(w)
        return frozenset(
            s for s in self.generator_indices
            if self.length(self.multiply(w, self.generators[s])) < length
        )

    def length_and_descents(self, w: AffineElement) -> tuple:
        return self.length(w), self.right_descents(w)

    def reduced_word(self, w: AffineElement) -> tuple:
        """canonical reduced word, built by stripping the smallest right descent"""
        if w in self._words:
            return self._words[w]
        stack = []
        current = w
        while current not in self._words:
            length = self.length(current)
            for s in self.generator_indices:
                shorter = self.multiply(current, self.generators[s])
                if self.length(shorter) < length:
                    stack.append((current, s))
                    current = shorter
                    break
            else:
                raise InvariantViolationError(f"no right descent found for {current}")
        word = self._words[current]
        with self._lock:
            for element, s in reversed(stack):
                word = word + (s,)
                self._words[element] = word
        return word

    def rep(self, w: AffineElement) -> WfRep:
        return WfRep(w, self.reduced_word(w))

    def rep_from_word(self, word) -> WfRep:
        return self.rep(self.element_from_word(word))

    def multiply_generator(self, x: WfRep, s: int) -> tuple:
        """
        (kind, xs) for x in W^f: ASCENT or DESCENT when xs stays in W^f,
        (OUTSIDE, None) when xs = t x for a finite simple reflection t.
        """
        key = (x.element, s)
        if key in self._right:
            return self._right[key]
        product = self.multiply(x.element, self.generators[s])
        if not self.is_minimal(product):
            res = (self.OUTSIDE, None)
        elif self.length(product) > x.length:
            res = (self.ASCENT, self.rep(product))
        else:
            res = (self.DESCENT, self.rep(product))
        with self._lock:
            self._right[key] = res
        return res

    def factor_finite(self, w: AffineElement) -> tuple:
        """w = u . w'' with u in W_f and w'' in W^f; returns (u, w'')"""
        point = self.linear_act(w, self.root_system.rho)
        forward = _identity(self.rank)
        backward = _identity(self.rank)
        while True:
            negative = next((i for i, a in enumerate(point) if a < 0), None)
            if negative is None:
                break
            reflection = self.generators[negative + 1].finite
            point = apply_matrix(reflection, point)
            forward = _mat_mul(reflection, forward)
            backward = _mat_mul(backward, reflection)
        minimal = self.multiply(AffineElement(forward, self.root_system.zero), w)
        return backward, minimal

    def finite_sign(self, u) -> int:
        return (-1) ** self.root_system.weyl_lengths[u]

    ## blocks and stabilizers
    def to_fundamental(self, weight: Weight) -> tuple:
        """(w, lambda_0) with lambda_0 in the closed fundamental alcove and w . lambda_0 = lambda"""
        rho = self.root_system.rho
        coroot = self.root_system.highest_coroot
        point = add(tuple(weight), rho)
        word = []
        while True:
            negative = next((i for i, a in enumerate(point) if a < 0), None)
            if negative is not None:
                s = negative + 1
            elif pairing_coroot(point, coroot) > self.level:
                s = 0
            else:
                break
            point = self.linear_act(self.generators[s], point)
            word.append(s)
        return self.element_from_word(word), subtract(point, rho)

    def block_of(self, weight: Weight) -> Weight:
        return self.to_fundamental(weight)[1]

    def stabilizer(self, weight: Weight) -> tuple:
        """parabolic subgroup of W fixing lambda_0 in C under the dot action"""
        weight = tuple(weight)
        if not self.in_closed_alcove(weight):
            raise InvalidConfigError(
                f"{list(weight)} is not in the fundamental alcove of {self.name} at l = {self.level}"
            )
        shifted = add(weight, self.root_system.rho)
        walls = [s for s in range(1, self.rank + 1) if shifted[s - 1] == 0]
        if pairing_coroot(shifted, self.root_system.highest_coroot) == self.level:
            walls.insert(0, 0)
        elements = {self.identity}
        queue = [self.identity]
        while queue:
            current = queue.pop()
            for s in walls:
                product = self.multiply(current, self.generators[s])
                if product not in elements:
                    elements.add(product)
                    queue.append(product)
        return tuple(sorted(elements, key=lambda x: (self.length(x), self.reduced_word(x))))

    def resolve_dominant(self, weight: Weight) -> tuple:
        """(w, lambda_0) with w the minimal element of W^f sending lambda_0 to lambda"""
        weight = tuple(weight)
        if len(weight) != self.rank or not is_dominant(weight):
            raise InvalidConfigError(f"weight {list(weight)} is not a dominant weight of {self.name}")
        w, base = self.to_fundamental(weight)
        coset = [self.multiply(w, x) for x in self.stabilizer(base)]
        minimal = min(coset, key=lambda x: (self.length(x), self.reduced_word(x)))
        if not self.is_minimal(minimal):
            raise InvariantViolationError(f"minimal element for {list(weight)} is not in W^f")
        return self.rep(minimal), base

    def coset_extremes(self, w: WfRep, stabilizer) -> tuple:
        """(shortest, longest) elements of w Stab(lambda_0) inside W^f"""
        coset = [self.multiply(w.element, x) for x in stabilizer]
        inside = [x for x in coset if self.is_minimal(x)]
        key = lambda x: (self.length(x), self.reduced_word(x))
        longest = max(coset, key=key)
        if not self.is_minimal(longest):
            logger.warning(
                f"longest element of the coset of {w.label} leaves W^f in {self.name}, "
                "using the longest element inside W^f"
            )
        return self.rep(min(inside, key=key)), self.rep(max(inside, key=key))

    ## truncations
    def ball(self, truncation: int) -> list:
        """W^f elements of length at most L, sorted by length then word"""
        if truncation < 0:
            raise InvalidConfigError(f"truncation must be nonnegative, got {truncation}")
        with self._lock:
            if len(self._shells) <= truncation:
                missing = range(len(self._shells), truncation + 1)
                for _ in tqdm.tqdm(missing, desc=f"{self.name} alcoves", disable=not self.progress):
                    self._shells.append(self._next_shell(self._shells[-1]))
        res = []
        for shell in self._shells[: truncation + 1]:
            res.extend(shell)
        return res

    def _next_shell(self, shell: list) -> list:
        found = {}
        for x in shell:
            for s in self.generator_indices:
                kind, y = self.multiply_generator(x, s)
                if kind == self.ASCENT and y.element not in found:
                    found[y.element] = self.rep(y.element)
        return sorted(found.values(), key=WfRep.sort_key)

    def enumerate_dominant_in_region(self, alcoves, interior_only: bool = False) -> list:
        """dominant weights in the union of the closed alcoves w.C"""
        alcoves = list(alcoves)
        if not alcoves:
            return []
        longest = max(x.length for x in alcoves)
        bound = (longest + 1) * self.level
        coroot = self.root_system.highest_coroot
        inverses = [self.inverse(x.element) for x in alcoves]
        res = []
        ## lambda + rho has coordinates >= 1 and <lambda + rho, theta^vee> <= bound
        ranges = [range(1, bound // c + 1) for c in coroot]
        for shifted in itertools.product(*ranges):
            if pairing_coroot(shifted, coroot) > bound:
                continue
            weight = subtract(shifted, self.root_system.rho)
            if any(
                self.in_closed_alcove(self.dot_act(inverse, weight), interior=interior_only)
                for inverse in inverses
            ):
                res.append(weight)
        return sorted(res, key=lambda weight: (sum(weight), weight))

    def check_coxeter_relations(self):
        """(s_a s_b)^m = e for every pair with a finite Coxeter exponent"""
        exponents = {0: 2, 1: 3, 2: 4, 3: 6}
        ## Cartan entries of the affine diagram, node 0 is -theta
        theta = self.root_system.highest_short_root_weight
        coroot = self.root_system.highest_coroot

        def entry(a, b):
            if a == b:
                return 2
            if a == 0:
                return -pairing_coroot(self.root_system.simple_root(b - 1), coroot)
            if b == 0:
                return -theta[a - 1]
            return self.root_system.cartan[a - 1][b - 1]

        for a in self.generator_indices:
            if self.multiply(self.generators[a], self.generators[a]) != self.identity:
                raise InvariantViolationError(f"s_{a} is not an involution in {self.name}")
            for b in range(a + 1, self.rank + 1):
                product = entry(a, b) * entry(b, a)
                if product not in exponents:
                    continue
                pair = self.multiply(self.generators[a], self.generators[b])
                power = self.identity
                for _ in range(exponents[product]):
                    power = self.multiply(power, pair)
                if power != self.identity:
                    raise InvariantViolationError(
                        f"braid relation between s_{a} and s_{b} fails in {self.name}"
                    )


def affine_group(root_system: RootSystem, level: int, progress: bool = True) -> AffineGroup:
    """build W at level l > h, warning when the parity hypotheses on l fail"""
    h = root_system.coxeter_number
    if level <= h:
        raise InvalidConfigError(f"level l = {level} must exceed the Coxeter number h = {h} of {root_system.name}")
    if level % 2 == 0:
        logger.warning(f"l = {level} is even; results are uniform in l > h but untested for even l")
    if root_system.datum.family == "G" and level % 3 == 0:
        logger.warning(f"l = {level} is divisible by 3 for {root_system.name}")
    group = AffineGroup(root_system, level, progress=progress)
    if root_system.rank <= 3:
        group.check_coxeter_relations()
    return group
