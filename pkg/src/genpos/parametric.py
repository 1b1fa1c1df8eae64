"""Fraction-free Buchberger over a parameter coefficient ring (the generic branch).

Coefficients of x-terms are polynomials in the entries of a unipotent lower
triangular matrix, handled by python-flint (``fmpz_mpoly`` over the integers,
``nmod_mpoly`` over GF(p)).  Every coefficient we divide by is assumed nonzero
and written to the ledger; nothing is ever split into cases.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm

import flint

from .algebra import FieldSpec, Polynomial, degrevlex_key, divides, revlex_key, term_div, term_lcm, term_mul
from .monomial import MonomialIdeal


class CapacityError(RuntimeError):
    """A resource cap of the parametric computation was hit."""

    def __init__(self, message, ledger=()):
        super().__init__(message)
        self.ledger = tuple(ledger)


@dataclass
class Caps:
    max_coefficient_terms: int = 200_000
    max_parameter_degree: int = 400
    max_basis_size: int = 2_000


def parameter_names(n: int) -> list:
    """a_km for the substitution x_k -> x_k + sum_{m<k} a_km x_m, ordered a21, a31, a32, a41, ..."""
    return ["a%d_%d" % (k, m) for k in range(2, n + 1) for m in range(1, k)]


def _context(n: int, field: FieldSpec):
    names = tuple(parameter_names(n)) or ("a_unused",)
    if field.characteristic == 0:
        return flint.fmpz_mpoly_ctx.get(names, "degrevlex")
    return flint.nmod_mpoly_ctx.get(names, ordering="degrevlex", modulus=field.characteristic)


class Ledger:
    """Squarefree, content-free parameter polynomials assumed nonzero."""

    def __init__(self):
        self._seen = {}
        self._cache = set()

    def note(self, c):
        if c.is_constant():
            return
        key = str(c)
        if key in self._cache:
            return
        self._cache.add(key)
        _, factors = c.factor_squarefree()
        for f, _ in factors:
            if f.is_constant():
                continue
            f = _normalize_sign(f)
            self._seen.setdefault(str(f), f)

    def entries(self) -> list:
        return [self._seen[k] for k in sorted(self._seen)]

    def __len__(self):
        return len(self._seen)


def _normalize_sign(f):
    if hasattr(f, "primitive"):
        try:
            _, f = f.primitive()
        except Exception:
            pass
    lc = f.leading_coefficient()
    if hasattr(lc, "__int__"):
        try:
            if int(lc) < 0:
                return -f
        except (TypeError, ValueError):
            pass
    return f


def _lt(p):
    return max(p, key=degrevlex_key)


def _content(p: dict):
    g = None
    for c in p.values():
        g = c if g is None else g.gcd(c)
        if g.is_one():
            break
    return g


def _primitive(p: dict, ctx, char: int) -> dict:
    g = _content(p)
    if g is None:
        return p
    if g.is_constant():
        if char == 0:
            v = int(g.leading_coefficient())
            if abs(v) > 1:
                return {t: c / v for t, c in p.items()}
        return p
    return {t: c / g for t, c in p.items()}


class _Runner:
    def __init__(self, n, field, caps, ledger):
        self.n = n
        self.field = field
        self.char = field.characteristic
        self.ctx = _context(n, field)
        self.caps = caps
        self.ledger = ledger

    # -- coefficient helpers -------------------------------------------------

    def const(self, v):
        return self.ctx.constant(v)

    def check(self, p: dict):
        size = sum(len(c) for c in p.values())
        if size > self.caps.max_coefficient_terms:
            raise CapacityError("parameter coefficients grew beyond %d terms" % self.caps.max_coefficient_terms, self.ledger.entries())
        deg = max((c.total_degree() for c in p.values()), default=0)
        if deg > self.caps.max_parameter_degree:
            raise CapacityError("parameter degree %d exceeds the cap" % deg, self.ledger.entries())

    # -- substitution ---------------------------------------------------------

    def linear_form(self, k: int) -> dict:
        gens = self.ctx.gens()
        names = parameter_names(self.n)
        out = {tuple(1 if m == k else 0 for m in range(1, self.n + 1)): self.const(1)}
        for m in range(1, k):
            a = gens[names.index("a%d_%d" % (k, m))]
            out[tuple(1 if r == m else 0 for r in range(1, self.n + 1))] = a
        return out

    @staticmethod
    def mul(p: dict, q: dict) -> dict:
        out = {}
        for s, c in p.items():
            for t, d in q.items():
                u = term_mul(s, t)
                v = out.get(u)
                out[u] = c * d if v is None else v + c * d
        return {t: c for t, c in out.items() if not c.is_zero()}

    def transform(self, f: Polynomial) -> dict:
        one = tuple(0 for _ in range(self.n))
        forms = [self.linear_form(k) for k in range(1, self.n + 1)]
        powers = {}

        def power(k, e):
            key = (k, e)
            if key not in powers:
                powers[key] = {one: self.const(1)} if e == 0 else self.mul(power(k, e - 1), forms[k - 1])
            return powers[key]

        if self.char == 0:
            den = lcm(*(Fraction(c).denominator for c in f.terms.values()))
            coeffs = {t: int(Fraction(c) * den) for t, c in f.terms.items()}
        else:
            coeffs = {t: int(c) % self.char for t, c in f.terms.items()}
        out = {}
        for t, c in coeffs.items():
            part = {one: self.const(c)}
            for k, e in enumerate(t, start=1):
                if e:
                    part = self.mul(part, power(k, e))
            for u, v in part.items():
                w = out.get(u)
                out[u] = v if w is None else w + v
        out = {t: c for t, c in out.items() if not c.is_zero()}
        return _primitive(out, self.ctx, self.char) if out else out

    # -- Buchberger --------------------------------------------------------------

    def combine(self, f: dict, cf, g: dict, cg, shift):
        """cf*f - cg*x^shift*g."""
        out = {t: c * cf for t, c in f.items()}
        for t, c in g.items():
            u = term_mul(t, shift)
            v = out.get(u)
            w = -(c * cg) if v is None else v - c * cg
            if w.is_zero():
                out.pop(u, None)
            else:
                out[u] = w
        return out

    def top_reduce(self, f: dict, basis: list) -> dict:
        while f:
            t = _lt(f)
            best = None
            for lt, g in basis:
                if divides(lt, t) and (best is None or revlex_key(lt) > revlex_key(best[0])):
                    best = (lt, g)
            if best is None:
                return f
            lt, g = best
            cf, cg = f[t], g[lt]
            h = cf.gcd(cg)
            self.ledger.note(cg)
            f = self.combine(f, cg / h, g, cf / h, term_div(t, lt))
            if f:
                f = _primitive(f, self.ctx, self.char)
                self.check(f)
        return f

    def spoly(self, a, b) -> dict:
        (lta, pa), (ltb, pb) = a, b
        l = term_lcm(lta, ltb)
        ca, cb = pa[lta], pb[ltb]
        h = ca.gcd(cb)
        fa = {term_mul(t, term_div(l, lta)): c for t, c in pa.items()}
        return self.combine(fa, cb / h, pb, ca / h, term_div(l, ltb))

    def run(self, polys: list, target=None) -> list:
        """Groebner basis (leading term, polynomial) pairs of the transformed generators.

        ``target`` is the leading ideal of the untransformed ideal.  Its Hilbert
        function equals that of the transformed one, which certifies two
        shortcuts: pairs of degree d are skipped once the current leading terms
        fill degree d, and the run stops once the Hilbert series agree.
        """
        G, alive, pairs = [], [], []
        goal = target.hilbert_numerator() if target is not None else None

        def add(p):
            lt = _lt(p)
            self.ledger.note(p[lt])
            G.append((lt, p))
            alive.append(True)
            h = len(G) - 1
            if len(G) > self.caps.max_basis_size:
                raise CapacityError("basis grew beyond %d elements" % self.caps.max_basis_size, self.ledger.entries())
            cand = [(i, term_lcm(G[i][0], lt)) for i in range(h) if alive[i]]
            stage = []
            for idx, (i, l) in enumerate(cand):
                if any(divides(l2, l) and (l2 != l or jdx < idx) for jdx, (_, l2) in enumerate(cand) if jdx != idx):
                    continue
                stage.append((i, l))
            new = [(i, h, l) for i, l in stage if any(a and b for a, b in zip(G[i][0], lt))]
            kept = []
            for (i, j, l) in pairs:
                if divides(lt, l) and term_lcm(G[i][0], lt) != l and term_lcm(G[j][0], lt) != l:
                    continue
                kept.append((i, j, l))
            pairs[:] = kept + new
            for i in range(h):
                if alive[i] and divides(lt, G[i][0]):
                    alive[i] = False

        def active(extra=()):
            return [G[k] for k in range(len(G)) if alive[k] or k in extra]

        for p in polys:
            p = self.top_reduce(p, active())
            if p:
                add(p)
        filled = set()
        while pairs:
            pairs.sort(key=lambda x: (sum(x[2]), degrevlex_key(x[2]), x[0], x[1]))
            if target is not None:
                current = MonomialIdeal((G[k][0] for k in range(len(G)) if alive[k]), self.n)
                if current.hilbert_numerator() == goal:
                    break
                d = sum(pairs[0][2])
                if d in filled or current.graded_dimension(d) == target.graded_dimension(d):
                    filled.add(d)
                    pairs.pop(0)
                    continue
            i, j, _ = pairs.pop(0)
            s = self.spoly(G[i], G[j])
            if not s:
                continue
            s = _primitive(s, self.ctx, self.char)
            h = self.top_reduce(s, active((i, j)))
            if h:
                add(h)
        return [G[k] for k in range(len(G)) if alive[k]]


def generic_leading_terms(generators, field: FieldSpec, n: int, caps: Caps | None = None, target=None):
    """Leading x-terms of a Groebner basis of L*I over the parameter fraction field, plus the ledger.

    ``target`` (the leading ideal of I itself) enables the Hilbert-driven shortcuts.
    """
    ledger = Ledger()
    runner = _Runner(n, field, caps or Caps(), ledger)
    polys = [runner.transform(g) for g in generators if g]
    polys = [p for p in polys if p]
    basis = runner.run(polys, target)
    return [lt for lt, _ in basis], ledger
