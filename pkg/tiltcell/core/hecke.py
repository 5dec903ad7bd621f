"""
Antispherical module N of the affine Hecke algebra, its Kazhdan-Lusztig basis
and the specialization N -> N^1 at v = 1.

The normalisation is H_s^2 = 1 + (v^{-1} - v) H_s with H_s acting on the
finite part as -v, so for x in W^f and s in S the right action of
Hbar_s = H_s + v on standard basis elements is

    N_x Hbar_s = N_{xs} + v N_x        if xs in W^f and xs > x
    N_x Hbar_s = N_{xs} + v^{-1} N_x   if xs in W^f and xs < x
    N_x Hbar_s = 0                     otherwise
"""

from collections import defaultdict
import json
import logging
import os
import random
import threading

import tqdm

from .affine import AffineElement, AffineGroup, WfRep, format_word
from .constants import CACHE_VERIFY_FRACTION, KL_CACHE_PREFIX, SCHEMA_VERSION
from .errors import InvalidConfigError
from .utils import write_atomic

logger = logging.getLogger(__name__)


class LaurentPolynomial:
    """sparse element of Z[v, v^{-1}]"""

    def __init__(self, coefficients: dict = None):
        self.coefficients = {
            int(e): int(c) for e, c in (coefficients or {}).items() if c != 0
        }

    @classmethod
    def monomial(cls, exponent: int = 0, coefficient: int = 1) -> "LaurentPolynomial":
        return cls({exponent: coefficient})

    @classmethod
    def from_pairs(cls, pairs) -> "LaurentPolynomial":
        res = defaultdict(int)
        for e, c in pairs:
            res[e] += c
        return cls(res)

    def __bool__(self):
        return bool(self.coefficients)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.monomial(0, other)
        return isinstance(other, LaurentPolynomial) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.monomial(0, other)
        res = dict(self.coefficients)
        for e, c in other.coefficients.items():
            res[e] = res.get(e, 0) + c
        return LaurentPolynomial(res)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.coefficients.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial({e: other * c for e, c in self.coefficients.items()})
        res = defaultdict(int)
        for e1, c1 in self.coefficients.items():
            for e2, c2 in other.coefficients.items():
                res[e1 + e2] += c1 * c2
        return LaurentPolynomial(res)

    __rmul__ = __mul__

    def shift(self, n: int) -> "LaurentPolynomial":
        """multiply by v^n"""
        return LaurentPolynomial({e + n: c for e, c in self.coefficients.items()})

    def coefficient(self, exponent: int) -> int:
        return self.coefficients.get(exponent, 0)

    def constant_term(self) -> int:
        return self.coefficient(0)

    def bar(self) -> "LaurentPolynomial":
        return LaurentPolynomial({-e: c for e, c in self.coefficients.items()})

    def at_one(self) -> int:
        return sum(self.coefficients.values())

    def pairs(self) -> list:
        return sorted(self.coefficients.items())

    def __repr__(self):
        if not self.coefficients:
            return "0"
        terms = []
        for e, c in self.pairs():
            if e == 0:
                terms.append(str(c))
                continue
            power = "v" if e == 1 else f"v^{e}"
            terms.append(power if c == 1 else f"-{power}" if c == -1 else f"{c}{power}")
        return " + ".join(terms).replace("+ -", "- ")


ONE = LaurentPolynomial.monomial(0)
V = LaurentPolynomial.monomial(1)


class AntisphericalVector:
    """finite L-combination of standard basis elements N_x, x in W^f"""

    def __init__(self, terms: dict = None):
        self.terms = {x: p for x, p in (terms or {}).items() if p}

    def __getitem__(self, x: WfRep) -> LaurentPolynomial:
        return self.terms.get(x, LaurentPolynomial())

    def __contains__(self, x):
        return x in self.terms

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, AntisphericalVector) and self.terms == other.terms

    def __add__(self, other: "AntisphericalVector") -> "AntisphericalVector":
        res = dict(self.terms)
        for x, p in other.terms.items():
            res[x] = res[x] + p if x in res else p
        return AntisphericalVector(res)

    def __sub__(self, other: "AntisphericalVector") -> "AntisphericalVector":
        return self + other.scale(LaurentPolynomial.monomial(0, -1))

    def scale(self, factor: LaurentPolynomial) -> "AntisphericalVector":
        return AntisphericalVector({x: p * factor for x, p in self.terms.items()})

    def items(self):
        return self.terms.items()

    def support(self) -> list:
        return sorted(self.terms, key=WfRep.sort_key)

    def __repr__(self):
        return " + ".join(f"({self.terms[x]}) N[{x.label}]" for x in self.support()) or "0"


class N1Vector:
    """finite Z-combination of N^1_x, x in W^f"""

    def __init__(self, terms: dict = None):
        self.terms = {x: int(c) for x, c in (terms or {}).items() if c != 0}

    def __getitem__(self, x: WfRep) -> int:
        return self.terms.get(x, 0)

    def __contains__(self, x):
        return x in self.terms

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, N1Vector) and self.terms == other.terms

    def __add__(self, other: "N1Vector") -> "N1Vector":
        res = dict(self.terms)
        for x, c in other.terms.items():
            res[x] = res.get(x, 0) + c
        return N1Vector(res)

    def __sub__(self, other: "N1Vector") -> "N1Vector":
        return self + other.scale(-1)

    def scale(self, factor: int) -> "N1Vector":
        return N1Vector({x: factor * c for x, c in self.terms.items()})

    def items(self):
        return self.terms.items()

    def support(self) -> list:
        return sorted(self.terms, key=WfRep.sort_key)

    def __repr__(self):
        return " + ".join(f"{self.terms[x]} N1[{x.label}]" for x in self.support()) or "0"


def specialize_v1(n: AntisphericalVector) -> N1Vector:
    """beta: N -> N^1, v -> 1"""
    return N1Vector({x: p.at_one() for x, p in n.items()})


class AntisphericalModule:
    """
    KL basis of the antispherical module for an affine Weyl group.

    kl_element results are memoized; insertion into the memo is serialized by
    a lock. When a cache directory is given, KL elements are loaded from and
    saved to kl_<TYPE>.json there. KL data does not depend on l, entries are
    keyed by reduced words.
    """

    def __init__(self, group: AffineGroup, cache_dir=None):
        self.group = group
        self.cache_dir = cache_dir
        self._kl = {}
        self._lock = threading.Lock()
        self._dirty = False
        if cache_dir is not None:
            self.load_cache()

    def __repr__(self):
        return f"AntisphericalModule({self.group.name}, l={self.group.level})"

    @property
    def identity(self) -> WfRep:
        return self.group.rep(self.group.identity)

    def standard(self, x: WfRep) -> AntisphericalVector:
        return AntisphericalVector({x: ONE})

    def act_Hbar_s(self, n: AntisphericalVector, s: int) -> AntisphericalVector:
        """right action of Hbar_s = H_s + v"""
        res = defaultdict(LaurentPolynomial)
        for x, p in n.items():
            kind, y = self.group.multiply_generator(x, s)
            if kind == AffineGroup.OUTSIDE:
                continue
            res[y] = res[y] + p
            res[x] = res[x] + p.shift(1 if kind == AffineGroup.ASCENT else -1)
        return AntisphericalVector(res)

    def kl_element(self, x: WfRep, descent: int = None) -> AntisphericalVector:
        """
        The KL basis element Nbar_x.

        Args:
            x: an element of W^f.
            descent: right descent s of x used for the recursion
                Nbar_x = Nbar_{xs} Hbar_s - sum_y c_y Nbar_y. Defaults to the
                last letter of the canonical reduced word. Results obtained
                with an explicit descent are not memoized.

        Returns:
            AntisphericalVector with coefficient 1 at N_x and coefficients in
            vZ[v] elsewhere.
        """
        if not self.group.is_minimal(x.element):
            raise InvalidConfigError(f"{x.label} is not a minimal coset representative")
        if descent is None and x in self._kl:
            return self._kl[x]
        if x.length == 0:
            res = self.standard(x)
        else:
            s = x.word[-1] if descent is None else descent
            kind, shorter = self.group.multiply_generator(x, s)
            if kind != AffineGroup.DESCENT:
                raise InvalidConfigError(f"s_{s} is not a right descent of {x.label}")
            res = self._correct(x, self.act_Hbar_s(self.kl_element(shorter), s))
        if descent is None:
            with self._lock:
                if x not in self._kl:
                    self._kl[x] = res
                    self._dirty = True
        return res

    def _correct(self, x: WfRep, product: AntisphericalVector) -> AntisphericalVector:
        """subtract constant terms below the top, longest elements first"""
        while True:
            offending = [
                y for y, p in product.items() if y != x and p.constant_term() != 0
            ]
            if not offending:
                return product
            y = max(offending, key=WfRep.sort_key)
            c = product[y].constant_term()
            product = product - self.kl_element(y).scale(LaurentPolynomial.monomial(0, c))

    def kl_expand(self, n: AntisphericalVector) -> dict:
        """coordinates of n in the KL basis, as WfRep -> LaurentPolynomial"""
        res = {}
        while n:
            y = max(n.terms, key=WfRep.sort_key)
            p = n[y]
            res[y] = p
            n = n - self.kl_element(y).scale(p)
        return res

    def mu(self, y: WfRep, x: WfRep) -> int:
        if y == x:
            return 0
        return self.kl_element(x)[y].coefficient(1)

    def n1_act_generator(self, n: N1Vector, s: int) -> N1Vector:
        """N^1_x s = N^1_{xs} if xs in W^f, otherwise -N^1_x"""
        res = defaultdict(int)
        for x, c in n.items():
            kind, y = self.group.multiply_generator(x, s)
            if kind == AffineGroup.OUTSIDE:
                res[x] -= c
            else:
                res[y] += c
        return N1Vector(res)

    def n1_act(self, n: N1Vector, w) -> N1Vector:
        """right action of w (an AffineElement or a word) on N^1"""
        word = self.group.reduced_word(w) if isinstance(w, AffineElement) else tuple(w)
        for s in word:
            n = self.n1_act_generator(n, s)
        return n

    ## disk cache
    @property
    def cache_path(self) -> str:
        return os.path.join(str(self.cache_dir), f"{KL_CACHE_PREFIX}{self.group.name}.json")

    def _encode(self, x: WfRep) -> list:
        kl = self._kl[x]
        return [
            list(x.word),
            [[list(y.word), [list(pair) for pair in kl[y].pairs()]] for y in kl.support()],
        ]

    def _decode(self, entry) -> tuple:
        word, terms = entry
        x = self.group.rep_from_word(word)
        if x.word != tuple(word) or not self.group.is_minimal(x.element):
            raise ValueError(f"word {word} is not a canonical W^f word")
        vector = AntisphericalVector(
            {
                self.group.rep_from_word(y): LaurentPolynomial.from_pairs(pairs)
                for y, pairs in terms
            }
        )
        return x, vector

    def load_cache(self) -> int:
        """read cached KL elements, skipping entries that cannot be decoded"""
        if not os.path.exists(self.cache_path):
            return 0
        try:
            with open(self.cache_path) as f:
                data = json.load(f)
        except (OSError, ValueError) as err:
            logger.warning(f"ignoring unreadable KL cache {self.cache_path}: {err}")
            return 0
        if data.get("schema") != SCHEMA_VERSION or data.get("type") != self.group.name:
            logger.warning(f"ignoring KL cache {self.cache_path} with foreign schema or type")
            return 0
        loaded = 0
        for entry in data.get("entries", []):
            try:
                x, vector = self._decode(entry)
            except (ValueError, TypeError, IndexError, KeyError, InvalidConfigError) as err:
                logger.warning(f"evicting corrupt KL cache entry: {err}")
                self._dirty = True
                continue
            self._kl[x] = vector
            loaded += 1
        logger.info(f"loaded {loaded} KL elements from {self.cache_path}")
        return loaded

    def save_cache(self, force: bool = False):
        if self.cache_dir is None or not (self._dirty or force):
            return
        os.makedirs(str(self.cache_dir), exist_ok=True)
        with self._lock:
            entries = [self._encode(x) for x in sorted(self._kl, key=WfRep.sort_key)]
            self._dirty = False
        payload = {"schema": SCHEMA_VERSION, "type": self.group.name, "entries": entries}
        write_atomic(self.cache_path, json.dumps(payload, sort_keys=True))
        logger.info(f"saved {len(entries)} KL elements to {self.cache_path}")

    def list_cache(self) -> list:
        return [format_word(x.word) for x in sorted(self._kl, key=WfRep.sort_key)]

    def clear_cache(self):
        with self._lock:
            self._kl = {}
            self._dirty = False
        if self.cache_dir is not None and os.path.exists(self.cache_path):
            os.remove(self.cache_path)
            logger.info(f"removed {self.cache_path}")

    def verify_cache(self, fraction: float = CACHE_VERIFY_FRACTION, seed: int = 0) -> dict:
        """recompute a random sample of cached elements from scratch and evict mismatches"""
        cached = sorted(self._kl, key=WfRep.sort_key)
        if not cached:
            return {"checked": 0, "evicted": []}
        rng = random.Random(seed)
        sample = rng.sample(cached, max(1, round(fraction * len(cached))))
        fresh = AntisphericalModule(self.group)
        evicted = []
        for x in tqdm.tqdm(sample, desc="verifying KL cache", disable=not self.group.progress):
            if fresh.kl_element(x) != self._kl[x]:
                logger.warning(f"cached KL element {x.label} does not match, evicting")
                evicted.append(x)
        if evicted:
            with self._lock:
                for x in evicted:
                    del self._kl[x]
                self._dirty = True
            self.save_cache()
        return {"checked": len(sample), "evicted": [x.label for x in evicted]}
