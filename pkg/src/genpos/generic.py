"""Generic initial ideals, beta-vectors, Pommaret spans and annihilator numbers.

gin is computed for the unipotent lower triangular substitution
x_k -> x_k + sum_{m<k} a_km x_m.  Over QQ a cheap certificate is tried first:

* J0 = lt(L(a0) I) at an integer point a0.  Prefix ranks of a polynomial
  matrix only drop under specialization, so in every degree gin dominates J0
  (more of its terms sit in every degrevlex prefix).
* gin is strongly stable (char 0), has the Hilbert function of I, and is
  generated in degrees <= reg I.  If J0 is strongly stable, reg I is the
  largest generator degree of J0.
* If J0 is the only strongly stable ideal with these properties dominating J0,
  then gin = J0.

When the certificate is inconclusive the generic branch of the parametric
Groebner computation (module ``parametric``) decides.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import comb

from .algebra import QQ, LinearChange, Polynomial, apply_change, cls, term_mul, terms_of_degree, unit
from .groebner import PolynomialIdeal, reduced_groebner_basis
from .monomial import MonomialIdeal
from .parametric import Caps, CapacityError, Ledger, generic_leading_terms
from .pommaret import monomial_pommaret_basis
from .stability import is_quasi_stable, is_strongly_stable


class NotQuasiStable(ValueError):
    """Raised when an operation needs an ideal in quasi-stable position."""


@dataclass(frozen=True)
class GinResult:
    gin: MonomialIdeal
    ledger: tuple = ()
    method: str = "generic-branch"

    def ledger_strings(self) -> list:
        return [str(c) for c in self.ledger]


def _as_ideal(I) -> PolynomialIdeal:
    if isinstance(I, MonomialIdeal):
        return PolynomialIdeal.from_monomial(I, QQ)
    return I


# ---------------------------------------------------------------------------
# certificate


def _borel_ups(t):
    for k in range(1, len(t)):
        if t[k]:
            u = list(t)
            u[k] -= 1
            u[k - 1] += 1
            yield tuple(u)


class _Budget(Exception):
    pass


def _dominating_candidates(J0: MonomialIdeal, h: dict, top: int, goal, limit=2, budget=200_000) -> list:
    """Strongly stable ideals generated in degree <= top with Hilbert numerator ``goal``,
    degree-d components of size h[d] that dominate J0_d.  Stops after ``limit`` hits."""
    n = J0.n
    found = []
    nodes = [0]

    def components(d, prev):
        T = terms_of_degree(n, d)
        shadow = {term_mul(t, unit(n, k)) for t in prev for k in range(1, n + 1)}
        target = h[d]
        ref = [0]
        for t in T:
            ref.append(ref[-1] + (1 if J0.contains(t) else 0))
        forced = [t in shadow for t in T]
        tail = [0] * (len(T) + 1)
        for p in range(len(T) - 1, -1, -1):
            tail[p] = tail[p + 1] + forced[p]
        chosen = set()

        def dfs(p, cnt):
            nodes[0] += 1
            if nodes[0] > budget:
                raise _Budget
            if cnt + tail[p] > target or cnt < ref[p]:
                return
            if p == len(T):
                if cnt == target:
                    yield set(chosen)
                return
            t = T[p]
            closed = all(u in chosen for u in _borel_ups(t))
            if forced[p]:
                if closed:
                    chosen.add(t)
                    yield from dfs(p + 1, cnt + 1)
                    chosen.discard(t)
                return
            if closed:
                chosen.add(t)
                yield from dfs(p + 1, cnt + 1)
                chosen.discard(t)
            yield from dfs(p + 1, cnt)

        for comp in dfs(0, 0):
            yield comp, shadow

    def rec(d, prev, gens):
        if len(found) >= limit:
            return
        if d > top:
            J = MonomialIdeal(gens, n)
            if J.hilbert_numerator() == goal:
                found.append(J)
            return
        for comp, shadow in components(d, prev):
            rec(d + 1, comp, gens + [t for t in comp if t not in shadow])
            if len(found) >= limit:
                return

    rec(1, set(), [])
    return found


def _random_triangular(n, rng, bound=30):
    return [[1 if k == m else (rng.randint(-bound, bound) if m < k else 0) for m in range(n)] for k in range(n)]


def certify_gin(I: PolynomialIdeal, points: int = 3, seed: int = 0):
    """gin over QQ by the specialization certificate, or None when inconclusive."""
    if I.field.characteristic != 0:
        return None
    n = I.n
    lt = I.leading_ideal()
    goal = lt.hilbert_numerator()
    rng = random.Random(seed)
    for _ in range(points):
        change = LinearChange(_random_triangular(n, rng), QQ)
        G = reduced_groebner_basis([apply_change(change, g) for g in I.groebner_basis()])
        J0 = MonomialIdeal((g.lt for g in G), n)
        if not is_strongly_stable(J0):
            continue
        top = J0.max_degree
        h = {d: lt.graded_dimension(d) for d in range(top + 1)}
        try:
            cands = _dominating_candidates(J0, h, top, goal)
        except _Budget:
            return None
        if cands == [J0]:
            return J0
        # a different point cannot shrink the candidate set below J0's own
        return None
    return None


# ---------------------------------------------------------------------------
# gin


def gin(I, method: str = "auto", caps: Caps | None = None) -> GinResult:
    """Generic initial ideal for degrevlex.

    ``method`` is "auto" (certificate, then generic branch), "certificate"
    (None-free: raises if inconclusive) or "generic-branch".
    """
    I = _as_ideal(I)
    n = I.n
    if I.is_zero():
        return GinResult(MonomialIdeal((), n), (), "trivial")
    lt = I.leading_ideal()
    if lt.is_unit() or n == 1:
        return GinResult(lt, (), "trivial")
    if method not in ("auto", "certificate", "generic-branch"):
        raise ValueError("unknown gin method %r" % method)
    if method != "generic-branch":
        J = certify_gin(I)
        if J is not None:
            return GinResult(J, (), "certificate")
        if method == "certificate":
            raise CapacityError("the specialization certificate was inconclusive")
    lts, ledger = generic_leading_terms(I.groebner_basis(), I.field, n, caps, target=lt)
    return GinResult(MonomialIdeal(lts, n), tuple(ledger.entries()), "generic-branch")


# ---------------------------------------------------------------------------
# beta-vectors


@dataclass(frozen=True)
class BetaVector:
    q: int
    counts: tuple
    zero: bool = False

    def __iter__(self):
        return iter(self.counts)

    def __eq__(self, other):
        if isinstance(other, BetaVector):
            return self.counts == other.counts
        return tuple(self.counts) == tuple(other)

    def __hash__(self):
        return hash(self.counts)


def _lt_of(I) -> MonomialIdeal:
    if isinstance(I, MonomialIdeal):
        return I
    return I.leading_ideal()


def beta_vector(I, q: int) -> BetaVector:
    """Counts of the degree-q terms of lt I by class."""
    J = _lt_of(I)
    counts = [0] * J.n
    for t in J.basis_in_degree(q):
        counts[cls(t) - 1] += 1
    return BetaVector(q, tuple(counts), not any(counts))


@dataclass(frozen=True)
class BetaMaximality:
    holds: bool
    failing_q: int | None = None
    reason: str = ""


def is_beta_maximal(I, gin_result: GinResult | None = None) -> BetaMaximality:
    I = _as_ideal(I)
    J = I.leading_ideal()
    if I.is_zero():
        return BetaMaximality(True)
    if not is_quasi_stable(J):
        return BetaMaximality(False, None, "not in quasi-stable position")
    reg = monomial_pommaret_basis(J).degree
    G = (gin_result or gin(I)).gin
    for q in range(J.min_degree, reg + 1):
        if beta_vector(J, q) != beta_vector(G, q):
            return BetaMaximality(False, q, "beta-vectors differ")
    return BetaMaximality(True)


def pommaret_span_hilbert(I, q: int, s: int) -> int:
    """Number of degree-s terms in the Pommaret span of the degree-q terms of lt I."""
    if s < q:
        raise ValueError("need s >= q")
    J = _lt_of(I)
    n = J.n
    seen = set()
    for t in J.basis_in_degree(q):
        k = cls(t)
        for u in terms_of_degree(n - k + 1, s - q):
            seen.add(term_mul(t, (0,) * (k - 1) + tuple(u)))
    return len(seen)


def pommaret_span_formula(I, q: int, s: int) -> int:
    """Same count from binomials, one cone per term (cones of equal-degree terms are disjoint)."""
    J = _lt_of(I)
    n = J.n
    return sum(comb(s - q + n - cls(t), s - q) for t in J.basis_in_degree(q))


# ---------------------------------------------------------------------------
# annihilator numbers


@dataclass(frozen=True)
class AnnihilatorTable:
    n: int
    entries: dict = dc_field(default_factory=dict)

    def __getitem__(self, key):
        return self.entries.get(tuple(key), 0)

    def row_sum(self, i: int) -> int:
        return sum(v for (a, _), v in self.entries.items() if a == i)

    def nonzero(self) -> dict:
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def __eq__(self, other):
        if not isinstance(other, AnnihilatorTable):
            return NotImplemented
        return self.n == other.n and self.nonzero() == other.nonzero()

    def __hash__(self):
        return hash((self.n, tuple(self.nonzero().items())))


def annihilator_numbers(I) -> AnnihilatorTable:
    """alpha_ij = number of Pommaret basis elements of class n-i and degree j+1."""
    J = _lt_of(I)
    n = J.n
    if J.is_zero():
        return AnnihilatorTable(n, {})
    H = monomial_pommaret_basis(J)
    if not H.finite:
        raise NotQuasiStable("annihilator numbers need quasi-stable position; transform the ideal first")
    out = {}
    for t in H.terms:
        key = (n - cls(t), sum(t) - 1)
        out[key] = out.get(key, 0) + 1
    return AnnihilatorTable(n, out)


def annihilator_colon_oracle(J: MonomialIdeal, max_j: int | None = None) -> AnnihilatorTable:
    """alpha_ij = dim ((K_i : x_{n-i}) / K_i)_j with K_i = J + <x_n, ..., x_{n-i+1}>.

    Finite for quasi-stable J; ``max_j`` defaults to the Pommaret degree.
    """
    n = J.n
    if max_j is None:
        max_j = max(monomial_pommaret_basis(J).degree, 1)
    out = {}
    for i in range(n):
        K = J.add_variables(range(n - i + 1, n + 1))
        C = K.colon_variable(n - i)
        for j in range(max_j + 1):
            v = C.graded_dimension(j) - K.graded_dimension(j)
            if v:
                out[(i, j)] = v
    return AnnihilatorTable(n, out)


def generic_annihilator_numbers(I, gin_result: GinResult | None = None) -> AnnihilatorTable:
    G = (gin_result or gin(_as_ideal(I))).gin
    return annihilator_numbers(G)
