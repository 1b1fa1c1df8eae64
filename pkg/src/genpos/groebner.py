"""Reduced Groebner bases for homogeneous ideals under degrevlex, plus autoreduction helpers."""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

from .algebra import (
    FieldSpec,
    LinearChange,
    Polynomial,
    apply_change,
    degrevlex_key,
    divides,
    revlex_key,
    term_div,
    term_lcm,
    term_mul,
    terms_of_degree,
)
from .monomial import MonomialIdeal


class NotHomogeneousError(ValueError):
    pass


# ---------------------------------------------------------------------------
# dict-level kernels (coefficients are field elements supporting + - * /)


def _lt(p: dict):
    return max(p, key=degrevlex_key)


def _sub_mul(p: dict, q: dict, m, c):
    """p - c * x^m * q, in place on p."""
    for t, v in q.items():
        u = term_mul(t, m)
        w = p.get(u)
        if w is None:
            p[u] = -c * v
        else:
            w = w - c * v
            if w:
                p[u] = w
            else:
                del p[u]


def _pick_divisor(t, basis):
    """Index of the basis element whose leading term divides t, preferring the revlex-greatest."""
    best = None
    for idx, (lt, _, _) in enumerate(basis):
        if divides(lt, t):
            if best is None or revlex_key(lt) > revlex_key(basis[best][0]):
                best = idx
    return best


def _normal_form(f: dict, basis, full: bool = True) -> dict:
    """Remainder of f modulo ``basis`` = list of (lt, lc, poly-dict).

    Always eliminates the greatest reducible term first.  With ``full=False``
    only the leading term is reduced (top reduction).
    """
    f = dict(f)
    rem = {}
    while f:
        t = _lt(f)
        k = _pick_divisor(t, basis)
        if k is None:
            if not full:
                rem.update(f)
                return rem
            rem[t] = f.pop(t)
            continue
        lt, lc, g = basis[k]
        _sub_mul(f, g, term_div(t, lt), f[t] / lc)
    return rem


def _monic(p: dict) -> dict:
    inv = 1 / p[_lt(p)]
    return {t: c * inv for t, c in p.items()}


def _entry(p: dict):
    lt = _lt(p)
    return (lt, p[lt], p)


def _spoly(a, b):
    lta, lca, pa = a
    ltb, lcb, pb = b
    l = term_lcm(lta, ltb)
    out = {}
    ma, mb = term_div(l, lta), term_div(l, ltb)
    for t, v in pa.items():
        out[term_mul(t, ma)] = v / lca
    _sub_mul(out, pb, mb, 1 / lcb)
    return out


def _buchberger(polys: list, field: FieldSpec) -> list:
    """Groebner basis (not reduced) via Buchberger with the normal selection strategy.

    Pairs are handled by the Gebauer-Moeller installation of both Buchberger criteria.
    """
    G = []  # entries (lt, lc, dict)
    pairs = []  # (i, j, lcm)
    alive = []

    def update(h_idx):
        nonlocal pairs
        h_lt = G[h_idx][0]
        cand = [(i, term_lcm(G[i][0], h_lt)) for i in range(h_idx) if alive[i]]
        # chain criterion among new pairs
        keep = []
        for i, l in cand:
            coprime = all(a == 0 or b == 0 for a, b in zip(G[i][0], h_lt))
            keep.append((i, l, coprime))
        stage = []
        for idx, (i, l, cp) in enumerate(keep):
            dominated = False
            for jdx, (i2, l2, cp2) in enumerate(keep):
                if jdx == idx:
                    continue
                if divides(l2, l) and (l2 != l or jdx < idx):
                    dominated = True
                    break
            if not dominated:
                stage.append((i, l, cp))
        new = [(i, h_idx, l) for i, l, cp in stage if not cp]
        # drop old pairs made redundant by the new element
        old = []
        for (i, j, l) in pairs:
            if divides(h_lt, l) and term_lcm(G[i][0], h_lt) != l and term_lcm(G[j][0], h_lt) != l:
                continue
            old.append((i, j, l))
        pairs = old + new
        for i in range(h_idx):
            if alive[i] and divides(h_lt, G[i][0]):
                alive[i] = False

    for p in polys:
        p = _normal_form(p, [G[i] for i in range(len(G)) if alive[i]])
        if not p:
            continue
        G.append(_entry(_monic(p)))
        alive.append(True)
        update(len(G) - 1)

    while pairs:
        pairs.sort(key=lambda x: (sum(x[2]), degrevlex_key(x[2]), x[0], x[1]))
        i, j, _ = pairs.pop(0)
        s = _spoly(G[i], G[j])
        active = [G[k] for k in range(len(G)) if alive[k] or k in (i, j)]
        h = _normal_form(s, active)
        if not h:
            continue
        G.append(_entry(_monic(h)))
        alive.append(True)
        update(len(G) - 1)
    return [G[k][2] for k in range(len(G))]


def _reduce_basis(G: list) -> list:
    """Turn a Groebner basis (dicts) into the reduced one, sorted by descending lt."""
    G = [_monic(g) for g in G if g]
    G.sort(key=lambda g: degrevlex_key(_lt(g)))
    minimal = []
    for g in G:
        lt = _lt(g)
        if not any(divides(_lt(h), lt) for h in minimal):
            minimal.append(g)
    out = []
    for k, g in enumerate(minimal):
        others = [_entry(h) for m, h in enumerate(minimal) if m != k]
        lt = _lt(g)
        tail = {t: c for t, c in g.items() if t != lt}
        r = _normal_form(tail, others)
        r[lt] = g[lt]
        out.append(_monic(r))
    out.sort(key=lambda g: degrevlex_key(_lt(g)), reverse=True)
    return out


# ---------------------------------------------------------------------------
# public API on Polynomial objects


def _same_context(polys: Sequence[Polynomial]):
    if not polys:
        return None, None
    field, n = polys[0].field, polys[0].n
    for p in polys:
        if p.field != field or p.n != n:
            raise ValueError("polynomials live in different rings")
    return field, n


def normal_form(f: Polynomial, G: Sequence[Polynomial]) -> Polynomial:
    """Full remainder of ``f`` modulo ``G`` (deterministic reduction order)."""
    basis = [_entry(g.terms) for g in G if g]
    return Polynomial._raw(_normal_form(f.terms, basis), f.field, f.n)


def top_reduce(f: Polynomial, G: Sequence[Polynomial]) -> Polynomial:
    basis = [_entry(g.terms) for g in G if g]
    return Polynomial._raw(_normal_form(f.terms, basis, full=False), f.field, f.n)


def spolynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    return Polynomial._raw(_spoly(_entry(f.terms), _entry(g.terms)), f.field, f.n)


def reduced_groebner_basis(generators: Sequence[Polynomial]) -> list:
    """Monic reduced degrevlex Groebner basis, sorted by descending leading term."""
    gens = [g for g in generators if g]
    field, n = _same_context(gens)
    if not gens:
        return []
    for g in gens:
        if not g.is_homogeneous():
            raise NotHomogeneousError("generator %s is not homogeneous" % g)
    G = _buchberger([g.terms for g in gens], field)
    return [Polynomial._raw(g, field, n) for g in _reduce_basis(G)]


def is_groebner_basis(G: Sequence[Polynomial]) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    G = [g for g in G if g]
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            if normal_form(spolynomial(G[a], G[b]), G):
                return False
    return True


def head_autoreduce(F: Sequence[Polynomial]) -> list:
    """F^△: top-reduce until no leading term divides another one."""
    queue = sorted((f for f in F if f), key=lambda f: revlex_key(f.lt), reverse=True)
    done = []
    while queue:
        f = queue.pop(0)
        f = top_reduce(f, done)
        if not f:
            continue
        lt = f.lt
        back = [h for h in done if divides(lt, h.lt)]
        if back:
            done = [h for h in done if not divides(lt, h.lt)]
            queue.extend(back)
            queue.sort(key=lambda f: revlex_key(f.lt), reverse=True)
        done.append(f)
    done.sort(key=lambda f: revlex_key(f.lt), reverse=True)
    return done


def complete_autoreduce(F: Sequence[Polynomial]) -> list:
    """F^▲: no term of any member is divisible by the leading term of another member."""
    cur = head_autoreduce(F)
    changed = True
    while changed:
        changed = False
        for k in range(len(cur)):
            others = cur[:k] + cur[k + 1 :]
            r = normal_form(cur[k], others)
            if r != cur[k]:
                changed = True
                if r:
                    cur = cur[:k] + [r] + cur[k + 1 :]
                    cur = head_autoreduce(cur)
                else:
                    cur = others
                break
    cur.sort(key=lambda f: revlex_key(f.lt), reverse=True)
    return cur


# ---------------------------------------------------------------------------
# leading tuples (the ls measure)


class LeadingTuple(tuple):
    """Leading terms sorted strictly descending under pure revlex.

    Instances compare with ``<``/``>`` exactly like the ls ordering: entrywise by
    revlex, and a proper prefix is smaller.
    """

    def __new__(cls, terms):
        terms = sorted((tuple(t) for t in terms), key=revlex_key, reverse=True)
        for a, b in zip(terms, terms[1:]):
            if a == b:
                raise ValueError("duplicate leading term %r: set is not head-autoreduced" % (a,))
        return super().__new__(cls, terms)

    def _keys(self):
        return tuple(revlex_key(t) for t in self)

    def __lt__(self, other):
        return self._keys() < LeadingTuple._keys(other)

    def __le__(self, other):
        return self._keys() <= LeadingTuple._keys(other)

    def __gt__(self, other):
        return self._keys() > LeadingTuple._keys(other)

    def __ge__(self, other):
        return self._keys() >= LeadingTuple._keys(other)


def leading_tuple(F) -> LeadingTuple:
    """ls(F) for polynomials or for bare terms."""
    terms = [f.lt if isinstance(f, Polynomial) else tuple(f) for f in F]
    return LeadingTuple(terms)


def compare_ls(a: LeadingTuple, b: LeadingTuple) -> int:
    ka, kb = LeadingTuple._keys(a), LeadingTuple._keys(b)
    return (ka > kb) - (ka < kb)


# ---------------------------------------------------------------------------
# ideals


class PolynomialIdeal:
    """Homogeneous ideal with a lazily computed, compute-once reduced Groebner basis."""

    def __init__(self, generators: Iterable[Polynomial], field: FieldSpec | None = None, n: int | None = None):
        gens = [g for g in generators]
        if gens:
            f0, n0 = _same_context(gens)
            field = field or f0
            n = n if n is not None else n0
            if f0 != field or n0 != n:
                raise ValueError("generators do not match the declared ring")
        if field is None or n is None:
            raise ValueError("an ideal without generators needs an explicit field and n")
        for g in gens:
            if g and not g.is_homogeneous():
                raise NotHomogeneousError("generator %s is not homogeneous" % g)
        self.generators = tuple(g for g in gens if g)
        self.field = field
        self.n = n
        self._gb = None
        self._lock = threading.Lock()

    @classmethod
    def from_basis(cls, basis: Sequence[Polynomial], field: FieldSpec, n: int):
        """Wrap a known reduced Groebner basis without recomputing it."""
        I = cls(basis, field, n)
        I._gb = tuple(basis)
        return I

    @classmethod
    def from_monomial(cls, J: MonomialIdeal, field: FieldSpec):
        gens = [Polynomial.monomial(t, field) for t in J.gens]
        return cls.from_basis(gens, field, J.n)

    def groebner_basis(self) -> tuple:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    self._gb = tuple(reduced_groebner_basis(self.generators))
        return self._gb

    def leading_ideal(self) -> MonomialIdeal:
        return MonomialIdeal((g.lt for g in self.groebner_basis()), self.n)

    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, f: Polynomial) -> bool:
        return not normal_form(f, self.groebner_basis())

    def __eq__(self, other):
        if not isinstance(other, PolynomialIdeal):
            return NotImplemented
        return (
            self.n == other.n
            and self.field == other.field
            and self.groebner_basis() == other.groebner_basis()
        )

    def __hash__(self):
        return hash(self.groebner_basis())

    def transform(self, change: LinearChange) -> "PolynomialIdeal":
        return PolynomialIdeal((apply_change(change, g) for g in self.groebner_basis()), self.field, self.n)

    def graded_dimension(self, d: int) -> int:
        return graded_dimension(self, d)

    def __repr__(self):
        return "PolynomialIdeal(%s)" % ", ".join(str(g) for g in self.generators)


def graded_dimension(I: PolynomialIdeal, d: int) -> int:
    """dim_k I_d, counted on the leading ideal."""
    if I.is_zero():
        return 0
    return I.leading_ideal().graded_dimension(d)


def _row_reduce(rows: list, columns: list, field: FieldSpec) -> list:
    """Reduced row echelon form of dict-rows; pivots taken in column order."""
    pivots = {}
    order = []
    for row in rows:
        row = dict(row)
        for col in columns:
            if col not in row:
                continue
            if col in pivots:
                piv = pivots[col]
                c = row[col]
                for t, v in piv.items():
                    w = row.get(t, field.zero) - c * v
                    if w:
                        row[t] = w
                    else:
                        row.pop(t, None)
                continue
            inv = 1 / row[col]
            row = {t: v * inv for t, v in row.items()}
            # clear this column from existing pivot rows
            for pc, prow in pivots.items():
                if col in prow:
                    c = prow[col]
                    for t, v in row.items():
                        w = prow.get(t, field.zero) - c * v
                        if w:
                            prow[t] = w
                        else:
                            prow.pop(t, None)
            pivots[col] = row
            order.append(col)
            break
    return [pivots[c] for c in sorted(order, key=columns.index)]


def degree_component_basis(I: PolynomialIdeal, d: int) -> list:
    """Echelon vector-space basis of I_d (rows sorted by descending leading term)."""
    if I.is_zero() or d < 0:
        return []
    n, field = I.n, I.field
    rows = []
    for g in I.groebner_basis():
        e = d - g.degree
        if e < 0:
            continue
        for t in terms_of_degree(n, e):
            rows.append({term_mul(s, t): c for s, c in g.terms.items()})
    if not rows:
        return []
    columns = terms_of_degree(n, d)
    echelon = _row_reduce(rows, columns, field)
    return [Polynomial._raw(r, field, n) for r in echelon if r]


def degree_component_ideal(I: PolynomialIdeal, d: int) -> PolynomialIdeal:
    """I_<d> = <I_d>."""
    return PolynomialIdeal(degree_component_basis(I, d), I.field, I.n)


def truncation_ideal(I: PolynomialIdeal, d: int) -> PolynomialIdeal:
    """I_[d] = <union of I_r for r <= d>, generated by the basis elements of degree <= d.

    Those elements need not form a Groebner basis of I_[d] (their S-pairs may
    only reduce to zero through higher-degree elements), so the basis is recomputed.
    """
    gens = [g for g in I.groebner_basis() if g.degree <= d]
    return PolynomialIdeal(gens, I.field, I.n)
