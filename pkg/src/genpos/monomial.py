"""Monomial ideals given by their minimal bases."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .algebra import (
    cls,
    degree,
    degrevlex_key,
    divides,
    revlex_key,
    term_lcm,
    term_str,
    terms_of_degree,
    unit,
)


def minimalize(terms: Iterable[tuple]) -> tuple:
    """Minimal generators of the ideal spanned by ``terms``, sorted descending degrevlex."""
    ts = sorted(set(tuple(t) for t in terms), key=lambda t: (sum(t), revlex_key(t)))
    kept = []
    for t in ts:
        if not any(divides(g, t) for g in kept):
            kept.append(t)
    kept.sort(key=degrevlex_key, reverse=True)
    return tuple(kept)


class MonomialIdeal:
    """A monomial ideal in ``n`` variables, stored as its minimal basis."""

    __slots__ = ("gens", "n")

    def __init__(self, terms: Iterable[tuple], n: int | None = None):
        terms = [tuple(t) for t in terms]
        if n is None:
            if not terms:
                raise ValueError("cannot infer the number of variables of the zero ideal")
            n = len(terms[0])
        if any(len(t) != n for t in terms):
            raise ValueError("all terms must have %d exponents" % n)
        self.n = n
        self.gens = minimalize(terms)

    # basic protocol ---------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.n == other.n and self.gens == other.gens

    def __hash__(self):
        return hash((self.n, self.gens))

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __contains__(self, t) -> bool:
        return self.contains(t)

    def __repr__(self):
        return "<%s>" % ", ".join(term_str(g) for g in self.gens)

    def to_str(self, names=None) -> str:
        return "<%s>" % ", ".join(term_str(g, names) for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(sum(g) == 0 for g in self.gens)

    @property
    def max_degree(self) -> int:
        """Largest degree of a minimal generator (0 for the zero ideal)."""
        return max((sum(g) for g in self.gens), default=0)

    @property
    def min_degree(self) -> int:
        return min((sum(g) for g in self.gens), default=0)

    # membership and ideal operations ---------------------------------------

    def contains(self, t) -> bool:
        t = tuple(t)
        return any(divides(g, t) for g in self.gens)

    def divisor(self, t):
        """Some minimal generator dividing ``t``, or None."""
        for g in self.gens:
            if divides(g, t):
                return g
        return None

    def issubset(self, other: "MonomialIdeal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.gens + other.gens, self.n)

    def add_variables(self, indices: Iterable[int]) -> "MonomialIdeal":
        """The ideal ``<J, x_k : k in indices>`` (1-based)."""
        return MonomialIdeal(self.gens + tuple(unit(self.n, k) for k in indices), self.n)

    def intersection(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal((term_lcm(a, b) for a in self.gens for b in other.gens), self.n)

    def colon_term(self, t) -> "MonomialIdeal":
        return MonomialIdeal(
            (tuple(max(a - b, 0) for a, b in zip(g, t)) for g in self.gens), self.n
        )

    def colon_variable(self, k: int) -> "MonomialIdeal":
        return self.colon_term(unit(self.n, k))

    def colon_ideal(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if other.is_zero():
            return MonomialIdeal([(0,) * self.n], self.n)
        out = None
        for g in other.gens:
            c = self.colon_term(g)
            out = c if out is None else out.intersection(c)
        return out

    def saturate_variable(self, k: int) -> "MonomialIdeal":
        """``J : x_k^infinity``: drop the exponent of ``x_k`` in every generator."""
        gens = []
        for g in self.gens:
            g = list(g)
            g[k - 1] = 0
            gens.append(tuple(g))
        return MonomialIdeal(gens, self.n)

    def saturate_prefix(self, m: int) -> "MonomialIdeal":
        """``J : <x_1, ..., x_m>^infinity`` as the intersection of the ``J : x_k^infinity``."""
        if m == 0:
            return self
        out = self.saturate_variable(1)
        for k in range(2, m + 1):
            out = out.intersection(self.saturate_variable(k))
        return out

    def restrict(self, m: int) -> "MonomialIdeal":
        """``J ∩ k[x_1, ..., x_m]`` as an ideal of that subring (generators padded to n)."""
        return MonomialIdeal((g for g in self.gens if not any(g[m:])), self.n)

    # combinatorial invariants ---------------------------------------------

    def has_pure_power(self, k: int) -> bool:
        return any(g[k - 1] and sum(g) == g[k - 1] for g in self.gens) or self.is_unit()

    def pure_power_exponent(self, k: int):
        es = [g[k - 1] for g in self.gens if g[k - 1] and sum(g) == g[k - 1]]
        return min(es) if es else None

    def dimension(self) -> int:
        """Krull dimension D of P/J: largest set of variables containing no generator's support."""
        if self.is_unit():
            return -1
        supports = [frozenset(k for k, e in enumerate(g) if e) for g in self.gens]
        for size in range(self.n, -1, -1):
            for Z in combinations(range(self.n), size):
                zs = set(Z)
                if not any(s <= zs for s in supports):
                    return size
        return 0

    def basis_in_degree(self, d: int) -> list:
        """All terms of degree ``d`` lying in J (descending degrevlex)."""
        return [t for t in terms_of_degree(self.n, d) if self.contains(t)]

    def graded_dimension(self, d: int) -> int:
        return sum(1 for t in terms_of_degree(self.n, d) if self.contains(t))

    def standard_terms(self, d: int) -> list:
        return [t for t in terms_of_degree(self.n, d) if not self.contains(t)]

    def truncate(self, d: int) -> "MonomialIdeal":
        """``J_{>=d}`` generated in degree d (or by original gens of larger degree)."""
        gens = [t for t in self.basis_in_degree(d)]
        gens += [g for g in self.gens if sum(g) > d]
        return MonomialIdeal(gens, self.n)

    def component_ideal(self, d: int) -> "MonomialIdeal":
        """The ideal generated by the degree-d component ``J_d``."""
        return MonomialIdeal(self.basis_in_degree(d), self.n)

    def hilbert_numerator(self) -> tuple:
        """Coefficients of K(t) with HS_{P/J}(t) = K(t) / (1-t)^n."""
        return _numerator(self.gens)


def _poly_sub(a, b):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                out[i + j] += c * d
    return out


_NUM_CACHE: dict = {}


def _numerator(gens: tuple) -> tuple:
    if gens in _NUM_CACHE:
        return _NUM_CACHE[gens]
    if not gens:
        res = (1,)
    elif any(sum(g) == 0 for g in gens):
        res = (0,)
    elif all(not any(a and b for a, b in zip(g, h)) for i, g in enumerate(gens) for h in gens[i + 1 :]):
        res = [1]
        for g in gens:
            res = _poly_mul(res, [1] + [0] * (sum(g) - 1) + [-1])
        res = tuple(res)
    else:
        # K(J) = K(J') - t^deg(m) K(J' : m), pivoting on the last generator
        m = gens[-1]
        rest = gens[:-1]
        colon = minimalize(tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest)
        shifted = [0] * sum(m) + list(_numerator(colon))
        res = tuple(_poly_sub(list(_numerator(rest)), shifted))
    if len(_NUM_CACHE) < 200_000:
        _NUM_CACHE[gens] = res
    return res


def zero_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal([], n)
