"""
Brute-force KL basis of the full affine Hecke algebra, used only as a test
oracle for the antispherical recursion.

Standard basis H_w of H, w in W, with H_w H_s = H_{ws} if ws > w and
H_w H_s = H_{ws} + (v^{-1} - v) H_w otherwise. The KL element Hbar_x is built
from Hbar_{xs} Hbar_s by removing constant terms, and projected to N through
1 x H_y = (-v)^{l(u)} N_{y''} for y = u y'' with u in W_f.
"""

from collections import defaultdict

from tiltcell.core.hecke import AntisphericalVector, LaurentPolynomial


V = LaurentPolynomial.monomial(1)
V_INV = LaurentPolynomial.monomial(-1)


class FullHeckeOracle:
    def __init__(self, group):
        self.group = group
        self._kl = {}

    def _key(self, w):
        return (self.group.length(w), self.group.reduced_word(w))

    def multiply_s(self, h: dict, s: int) -> dict:
        res = defaultdict(LaurentPolynomial)
        generator = self.group.generators[s]
        for w, p in h.items():
            ws = self.group.multiply(w, generator)
            res[ws] = res[ws] + p
            if self.group.length(ws) < self.group.length(w):
                res[w] = res[w] + p * (V_INV - V)
        return {w: p for w, p in res.items() if p}

    def multiply_hbar_s(self, h: dict, s: int) -> dict:
        res = defaultdict(LaurentPolynomial, self.multiply_s(h, s))
        for w, p in h.items():
            res[w] = res[w] + p * V
        return {w: p for w, p in res.items() if p}

    def kl(self, x) -> dict:
        if x in self._kl:
            return self._kl[x]
        if x == self.group.identity:
            res = {x: LaurentPolynomial.monomial(0)}
        else:
            s = self.group.reduced_word(x)[-1]
            shorter = self.group.multiply(x, self.group.generators[s])
            res = self.multiply_hbar_s(self.kl(shorter), s)
            while True:
                offending = [y for y, p in res.items() if y != x and p.constant_term() != 0]
                if not offending:
                    break
                y = max(offending, key=self._key)
                c = res[y].constant_term()
                update = defaultdict(LaurentPolynomial, res)
                for z, p in self.kl(y).items():
                    update[z] = update[z] - p * c
                res = {z: p for z, p in update.items() if p}
        self._kl[x] = res
        return res

    def project(self, h: dict) -> AntisphericalVector:
        res = defaultdict(LaurentPolynomial)
        for y, p in h.items():
            u, minimal = self.group.factor_finite(y)
            length = self.group.root_system.weyl_lengths[u]
            sign = (-1) ** length
            res[self.group.rep(minimal)] = res[self.group.rep(minimal)] + p.shift(length) * sign
        return AntisphericalVector(res)
