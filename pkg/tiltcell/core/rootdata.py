"""
Finite root data for tiltcell.

Cartan matrices follow the convention a_ij = <alpha_j, alpha_i^vee>, so the
simple root alpha_j has fundamental-weight coordinates given by column j of
the matrix. Weights are plain integer tuples in the fundamental-weight basis.
"""

from dataclasses import dataclass
from fractions import Fraction
import itertools
import logging
import re

import numpy as np
import sympy

from .constants import SUPPORTED_FAMILIES
from .errors import InvalidConfigError

logger = logging.getLogger(__name__)

Weight = tuple  ## tuple[int, ...] in fundamental-weight coordinates
Matrix = tuple  ## tuple[tuple[int, ...], ...], acts on weight coordinates


@dataclass(frozen=True)
class CartanDatum:
    family: str
    rank: int
    cartan: Matrix

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def validate(self):
        """Check the datum describes a finite-type root system."""
        a = np.array(self.cartan, dtype=int)
        if a.shape != (self.rank, self.rank):
            raise InvalidConfigError(
                f"{self.name}: Cartan matrix has shape {a.shape}, expected {(self.rank, self.rank)}"
            )
        if any(a[i, i] != 2 for i in range(self.rank)):
            raise InvalidConfigError(f"{self.name}: diagonal entries must all be 2")
        for i, j in itertools.permutations(range(self.rank), 2):
            if a[i, j] > 0:
                raise InvalidConfigError(
                    f"{self.name}: off-diagonal entry a_{i + 1}{j + 1} = {a[i, j]} is positive"
                )
            if (a[i, j] == 0) != (a[j, i] == 0):
                raise InvalidConfigError(
                    f"{self.name}: a_{i + 1}{j + 1} and a_{j + 1}{i + 1} must vanish together"
                )
        for k in range(1, self.rank + 1):
            minor = sympy.Matrix(a[:k, :k].tolist()).det()
            if minor <= 0:
                raise InvalidConfigError(
                    f"{self.name}: leading principal minor of size {k} is {minor}, "
                    "the matrix is not of finite type"
                )
        return self


def cartan_matrix(family: str, rank: int) -> np.ndarray:
    """Cartan matrix with Bourbaki numbering; G2 has alpha_1 short."""
    a = 2 * np.eye(rank, dtype=int)
    if family == "G":
        if rank != 2:
            raise InvalidConfigError(f"G{rank} is not a root system")
        a[0, 1] = -3
        a[1, 0] = -1
        return a
    if family == "F":
        if rank != 4:
            raise InvalidConfigError(f"F{rank} is not a root system")
        chain = [(0, 1), (1, 2), (2, 3)]
    elif family == "E":
        if rank not in (6, 7, 8):
            raise InvalidConfigError(f"E{rank} is not a root system")
        chain = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, rank - 1)]
    elif family == "D":
        if rank < 3:
            raise InvalidConfigError(f"D{rank} is not supported, use A or A1xA1")
        chain = [(k, k + 1) for k in range(rank - 2)] + [(rank - 3, rank - 1)]
    else:
        chain = [(k, k + 1) for k in range(rank - 1)]
    for i, j in chain:
        a[i, j] = -1
        a[j, i] = -1
    ## double bonds
    if family == "B" and rank > 1:
        a[rank - 1, rank - 2] = -2
    elif family == "C" and rank > 1:
        a[rank - 2, rank - 1] = -2
    elif family == "F":
        a[2, 1] = -2
    return a


def cartan_datum(type_string: str) -> CartanDatum:
    """parse a type string such as "G2" or "A1" into a validated CartanDatum."""
    match = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", type_string or "")
    if match is None:
        raise InvalidConfigError(f"cannot parse root system type {type_string!r}")
    family, rank = match.group(1).upper(), int(match.group(2))
    if family not in SUPPORTED_FAMILIES or rank < 1:
        raise InvalidConfigError(f"unsupported root system type {type_string!r}")
    a = cartan_matrix(family, rank)
    return CartanDatum(
        family=family, rank=rank, cartan=tuple(tuple(int(x) for x in row) for row in a)
    ).validate()


@dataclass(frozen=True, eq=False)
class RootSystem:
    datum: CartanDatum
    ## R_+ in simple-root coordinates, ordered by height
    positive_roots: tuple
    ## the same roots in fundamental-weight coordinates
    positive_roots_weight: tuple
    ## coroots in simple-coroot coordinates, matching positive_roots
    coroots: tuple
    rho: Weight
    highest_short_root: int
    coxeter_number: int
    ## d_i = (alpha_i, alpha_i) / 2, short roots have d = 1
    symmetrizer: tuple
    ## Gram matrix of the invariant form on fundamental weights
    form: tuple
    weyl_group: tuple
    weyl_lengths: dict

    def __hash__(self):
        return hash(self.datum)

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.datum == other.datum

    def __repr__(self):
        return f"RootSystem({self.name})"

    @property
    def name(self) -> str:
        return self.datum.name

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def cartan(self) -> Matrix:
        return self.datum.cartan

    @property
    def order(self) -> int:
        return len(self.weyl_group)

    @property
    def zero(self) -> Weight:
        return (0,) * self.rank

    @property
    def highest_coroot(self) -> tuple:
        return self.coroots[self.highest_short_root]

    @property
    def highest_short_root_weight(self) -> Weight:
        return self.positive_roots_weight[self.highest_short_root]

    def simple_root(self, i: int) -> Weight:
        """alpha_i (0-based) in fundamental-weight coordinates"""
        return tuple(row[i] for row in self.cartan)

    def simple_coroot(self, i: int) -> tuple:
        return tuple(int(k == i) for k in range(self.rank))


def _symmetrizer(cartan: np.ndarray) -> tuple:
    rank = cartan.shape[0]
    d = [None] * rank
    for start in range(rank):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(rank):
                if j != i and cartan[i, j] != 0 and d[j] is None:
                    ## d_i a_ij = d_j a_ji
                    d[j] = d[i] * int(cartan[i, j]) / int(cartan[j, i])
                    queue.append(j)
    denominator = np.lcm.reduce([x.denominator for x in d])
    scaled = [x * int(denominator) for x in d]
    smallest = min(scaled)
    return tuple(int(x / smallest) for x in scaled)


def _positive_roots(cartan: np.ndarray) -> list:
    """closure enumeration of R_+ from the simple roots, by height"""
    rank = cartan.shape[0]
    simple = [tuple(int(k == i) for k in range(rank)) for i in range(rank)]
    roots = list(simple)
    known = set(roots)
    position = 0
    while position < len(roots):
        beta = roots[position]
        position += 1
        for i in range(rank):
            ## alpha_i string through beta: p - q = <beta, alpha_i^vee>
            p = 0
            lower = list(beta)
            while True:
                lower[i] -= 1
                if tuple(lower) in known:
                    p += 1
                else:
                    break
            pairing = sum(beta[j] * int(cartan[i, j]) for j in range(rank))
            if p - pairing > 0:
                upper = tuple(beta[k] + (k == i) for k in range(rank))
                if upper not in known:
                    known.add(upper)
                    roots.append(upper)
    return roots


def _simple_reflection_matrix(cartan: np.ndarray, i: int) -> np.ndarray:
    rank = cartan.shape[0]
    unit = np.zeros((1, rank), dtype=int)
    unit[0, i] = 1
    return np.eye(rank, dtype=int) - cartan[:, [i]] @ unit


def _generate_weyl_group(cartan: np.ndarray) -> tuple:
    """BFS over simple reflections; BFS depth equals Coxeter length."""
    rank = cartan.shape[0]
    generators = [_simple_reflection_matrix(cartan, i) for i in range(rank)]
    identity = np.eye(rank, dtype=int)
    as_key = lambda m: tuple(tuple(int(x) for x in row) for row in m)
    lengths = {as_key(identity): 0}
    elements = [as_key(identity)]
    shell = [identity]
    depth = 0
    while shell:
        depth += 1
        next_shell = []
        for m in shell:
            for g in generators:
                product = m @ g
                key = as_key(product)
                if key not in lengths:
                    lengths[key] = depth
                    elements.append(key)
                    next_shell.append(product)
        shell = next_shell
    return tuple(elements), lengths


def build_root_system(datum: CartanDatum) -> RootSystem:
    """Enumerate R_+, coroots, rho, h and W_f for a finite-type Cartan datum."""
    datum.validate()
    cartan = np.array(datum.cartan, dtype=int)
    rank = datum.rank
    d = _symmetrizer(cartan)
    roots = _positive_roots(cartan)
    roots_weight = [tuple(int(x) for x in cartan @ np.array(beta)) for beta in roots]
    coroots = []
    norms = []
    for beta in roots:
        ## d_beta = (beta, beta) / 2 with (alpha_i, alpha_j) = d_i a_ij
        d_beta = Fraction(
            sum(beta[i] * beta[j] * d[i] * int(cartan[i, j]) for i in range(rank) for j in range(rank)),
            2,
        )
        coroot = [Fraction(beta[j] * d[j]) / d_beta for j in range(rank)]
        if any(c.denominator != 1 for c in coroot):
            raise InvalidConfigError(f"{datum.name}: non-integral coroot for {beta}")
        coroots.append(tuple(int(c) for c in coroot))
        norms.append(d_beta)
    shortest = min(norms)
    highest_short = max(
        (k for k in range(len(roots)) if norms[k] == shortest), key=lambda k: sum(roots[k])
    )
    coxeter_number = 2 * len(roots) // rank
    inverse = sympy.Matrix(cartan.tolist()).inv()
    form = tuple(
        tuple(Fraction(int((d[i] * inverse[i, j]).p), int((d[i] * inverse[i, j]).q)) for j in range(rank))
        for i in range(rank)
    )
    weyl_group, weyl_lengths = _generate_weyl_group(cartan)
    root_system = RootSystem(
        datum=datum,
        positive_roots=tuple(roots),
        positive_roots_weight=tuple(roots_weight),
        coroots=tuple(coroots),
        rho=(1,) * rank,
        highest_short_root=highest_short,
        coxeter_number=coxeter_number,
        symmetrizer=d,
        form=form,
        weyl_group=weyl_group,
        weyl_lengths=weyl_lengths,
    )
    theta_pairing = pairing_coroot(root_system.rho, root_system.highest_coroot)
    if theta_pairing != coxeter_number - 1:
        raise InvalidConfigError(
            f"{datum.name}: <rho, theta^vee> = {theta_pairing} but h - 1 = {coxeter_number - 1}"
        )
    logger.debug(
        f"built {datum.name}: |R+| = {len(roots)}, h = {coxeter_number}, |W_f| = {len(weyl_group)}"
    )
    return root_system


def root_system_from_type(type_string: str) -> RootSystem:
    return build_root_system(cartan_datum(type_string))


def pairing_coroot(weight: Weight, coroot: tuple) -> int:
    """<lambda, alpha^vee> for a coroot in simple-coroot coordinates"""
    return sum(a * b for a, b in zip(weight, coroot))


def add(weight: Weight, other: Weight) -> Weight:
    return tuple(a + b for a, b in zip(weight, other))


def subtract(weight: Weight, other: Weight) -> Weight:
    return tuple(a - b for a, b in zip(weight, other))


def is_dominant(weight: Weight) -> bool:
    return all(a >= 0 for a in weight)


def apply_matrix(matrix: Matrix, weight: Weight) -> Weight:
    return tuple(sum(m * w for m, w in zip(row, weight)) for row in matrix)


def reflect(root_system: RootSystem, weight: Weight, i: int) -> Weight:
    """linear simple reflection s_i (0-based)"""
    coefficient = weight[i]
    if coefficient == 0:
        return weight
    return tuple(w - coefficient * row[i] for w, row in zip(weight, root_system.cartan))


def dominant_conjugate(root_system: RootSystem, weight: Weight) -> tuple:
    """(dominant W_f-conjugate of lambda, number of simple reflections used)"""
    steps = 0
    while True:
        negative = next((i for i, a in enumerate(weight) if a < 0), None)
        if negative is None:
            return weight, steps
        weight = reflect(root_system, weight, negative)
        steps += 1


def weyl_orbit(root_system: RootSystem, weight: Weight) -> frozenset:
    orbit = {weight}
    queue = [weight]
    while queue:
        current = queue.pop()
        for i in range(root_system.rank):
            image = reflect(root_system, current, i)
            if image not in orbit:
                orbit.add(image)
                queue.append(image)
    return frozenset(orbit)


def dominant_rep_signed(root_system: RootSystem, weight: Weight):
    """
    Signed dominant normal form under the dot action of W_f.

    Returns None when lambda + rho lies on a reflection hyperplane, otherwise
    (sign, mu) with mu = w . lambda dominant and sign = (-1)^{l(w)}.
    """
    shifted, steps = dominant_conjugate(root_system, add(weight, root_system.rho))
    if any(a == 0 for a in shifted):
        return None
    return (-1) ** steps, subtract(shifted, root_system.rho)


def inner_product(root_system: RootSystem, weight: Weight, other: Weight) -> Fraction:
    """W_f-invariant form, short roots have squared length 2"""
    return sum(
        (weight[i] * root_system.form[i][j] * other[j] for i in range(root_system.rank) for j in range(root_system.rank)),
        Fraction(0),
    )


def root_coordinates(root_system: RootSystem, weight: Weight) -> tuple:
    """coordinates of lambda in the basis of simple roots (rational)"""
    d = root_system.symmetrizer
    ## (lambda, omega_j) = d_j * m_j when lambda = sum m_j alpha_j
    return tuple(
        sum((root_system.form[j][k] * weight[k] for k in range(root_system.rank)), Fraction(0)) / d[j]
        for j in range(root_system.rank)
    )


def dump(root_system: RootSystem) -> dict:
    """JSON-able description of the root system"""
    return {
        "type": root_system.name,
        "rank": root_system.rank,
        "cartan": [list(row) for row in root_system.cartan],
        "positive_roots": [list(beta) for beta in root_system.positive_roots],
        "positive_roots_weight": [list(beta) for beta in root_system.positive_roots_weight],
        "coroots": [list(c) for c in root_system.coroots],
        "rho": list(root_system.rho),
        "highest_short_root": list(root_system.positive_roots[root_system.highest_short_root]),
        "highest_coroot": list(root_system.highest_coroot),
        "coxeter_number": root_system.coxeter_number,
        "weyl_group_order": root_system.order,
    }
