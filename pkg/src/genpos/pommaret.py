"""Pommaret bases of monomial and polynomial ideals.

A term h divides t involutively when h | t and t/h only involves
x_cls(h), ..., x_n.  A finite Pommaret basis exists iff the leading ideal is
quasi-stable; otherwise the functions below return a basis object whose
``finite`` flag is False.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import Polynomial, cls, divides, revlex_key, term_div, term_mul, terms_of_degree
from .groebner import PolynomialIdeal, _lt, _sub_mul, normal_form
from .monomial import MonomialIdeal


class InternalInconsistency(RuntimeError):
    pass


def involutively_divides(h, t) -> bool:
    if not divides(h, t):
        return False
    k = cls(h)
    return not any(t[m] - h[m] for m in range(k - 1))


@dataclass(frozen=True)
class PommaretBasis:
    """``terms`` are the leading terms; ``polys`` the elements (None for a monomial basis).

    An infinite basis carries the index (into the revlex-sorted minimal basis)
    of the first generator whose colon ideal is not zero-dimensional.
    """

    n: int
    terms: tuple
    polys: tuple | None = None
    finite: bool = True
    witness: tuple | None = None

    def __len__(self):
        return len(self.terms)

    def classes(self) -> list:
        return [cls(t) for t in self.terms]

    def multiplicative(self, idx: int) -> range:
        return range(cls(self.terms[idx]), self.n + 1)

    def non_multiplicative(self, idx: int) -> range:
        return range(1, cls(self.terms[idx]))

    def element(self, idx: int):
        return self.polys[idx] if self.polys is not None else self.terms[idx]

    def involutive_divisor(self, t):
        for idx, h in enumerate(self.terms):
            if involutively_divides(h, t):
                return idx
        return None

    @property
    def degree(self) -> int:
        return max(sum(t) for t in self.terms) if self.terms else 0


def _infinite(n, witness):
    return PommaretBasis(n, (), None, False, witness)


def _box_complement(J: MonomialIdeal, m: int):
    """Terms of k[x_1..x_m] outside J, or None when that set is infinite."""
    if J.is_unit():
        return []
    bounds = []
    for k in range(1, m + 1):
        e = J.pure_power_exponent(k)
        if e is None:
            return None
        bounds.append(e)
    out = []
    pad = (0,) * (J.n - m)
    for exps in product(*(range(b) for b in bounds)):
        t = tuple(exps) + pad
        if not J.contains(t):
            out.append(t)
    return out


def monomial_pommaret_basis(J: MonomialIdeal) -> PommaretBasis:
    """Finite basis B u {s t_i : s in C_i}, or an infinite-flagged result."""
    n = J.n
    B = sorted(J.gens, key=revlex_key, reverse=True)
    H = list(B)
    for i, t in enumerate(B):
        k = cls(t)
        Ji = MonomialIdeal(B[:i], n).colon_term(t).restrict(k - 1)
        if k == 1:
            continue
        C = _box_complement(Ji, k - 1)
        if C is None:
            return _infinite(n, (i, t))
        for s in C:
            if any(s):
                H.append(term_mul(s, t))
    H.sort(key=lambda t: (sum(t), revlex_key(t)), reverse=True)
    return PommaretBasis(n, tuple(H))


def polynomial_pommaret_basis(I: PolynomialIdeal, degree_cap: int | None = None) -> PommaretBasis:
    """Reduced Pommaret basis: h_t = t - NF(t) for each t in the monomial basis of lt I.

    Each h_t lies in I and has leading term t; a polynomial set whose leading
    terms form a Pommaret basis of lt I is a Pommaret basis of I.
    """
    n = I.n
    if I.is_zero():
        return PommaretBasis(n, (), ())
    G = I.groebner_basis()
    mono = monomial_pommaret_basis(I.leading_ideal())
    if not mono.finite:
        return mono
    if degree_cap is None:
        degree_cap = 2 * max(g.degree for g in G) * n
    if mono.degree > degree_cap:
        raise InternalInconsistency("Pommaret basis degree %d exceeds the cap %d" % (mono.degree, degree_cap))
    field = I.field
    polys = []
    for t in mono.terms:
        m = Polynomial.monomial(t, field)
        polys.append(m - normal_form(m, G))
    return PommaretBasis(n, mono.terms, tuple(polys))


def pommaret_basis(I) -> PommaretBasis:
    if isinstance(I, MonomialIdeal):
        return monomial_pommaret_basis(I)
    return polynomial_pommaret_basis(I)


# ---------------------------------------------------------------------------
# involutive reduction


def _as_dict(H: PommaretBasis, idx: int, field):
    if H.polys is not None:
        return H.polys[idx].terms
    return {H.terms[idx]: field.one}


def involutive_reduce(f: Polynomial, H: PommaretBasis):
    """Involutive normal form of f and the quotients (index -> Polynomial)."""
    if not H.finite:
        raise ValueError("involutive reduction needs a finite Pommaret basis")
    field, n = f.field, f.n
    work = dict(f.terms)
    rem = {}
    quot = {}
    while work:
        t = _lt(work)
        idx = H.involutive_divisor(t)
        if idx is None:
            rem[t] = work.pop(t)
            continue
        h = _as_dict(H, idx, field)
        lt = H.terms[idx]
        c = work[t] / h[lt]
        m = term_div(t, lt)
        _sub_mul(work, h, m, c)
        q = quot.setdefault(idx, {})
        v = q.get(m)
        q[m] = c if v is None else v + c
    quotients = {k: Polynomial(q, field, n) for k, q in quot.items()}
    return Polynomial._raw(rem, field, n), {k: q for k, q in quotients.items() if q}


def involutive_normal_form(f: Polynomial, H: PommaretBasis) -> Polynomial:
    return involutive_reduce(f, H)[0]


@dataclass(frozen=True)
class StandardRepresentation:
    """x_k * h_alpha = sum_beta coefficients[beta] * h_beta."""

    alpha: int
    k: int
    coefficients: dict

    def terms_used(self):
        return sorted(self.coefficients)


def standard_representations(H: PommaretBasis, field=None) -> list:
    if not H.finite:
        raise ValueError("standard representations need a finite Pommaret basis")
    if H.polys is None:
        from .algebra import QQ

        field = field or QQ
        elems = [Polynomial.monomial(t, field) for t in H.terms]
    else:
        elems = list(H.polys)
    out = []
    for alpha, h in enumerate(elems):
        for k in H.non_multiplicative(alpha):
            xk = tuple(1 if m == k - 1 else 0 for m in range(H.n))
            rem, quot = involutive_reduce(h.mul_term(xk), H)
            if rem:
                raise InternalInconsistency("x%d*h%d has a nonzero involutive normal form" % (k, alpha))
            out.append(StandardRepresentation(alpha, k, quot))
    return out


def invariants_from_basis(H: PommaretBasis) -> dict:
    if not H.finite:
        raise ValueError("invariants need a finite Pommaret basis")
    n = H.n
    if not H.terms:
        return {"dim": n, "depth": n, "reg": 0}
    J = MonomialIdeal(H.terms, n)
    return {
        "dim": J.dimension(),
        "depth": n - max(cls(t) for t in H.terms),
        "reg": H.degree,
    }


def cone_check(H: PommaretBasis, J: MonomialIdeal, extra: int = 3) -> bool:
    """Every term of J up to degree reg+extra has exactly one involutive divisor in H."""
    top = H.degree + extra
    for d in range(J.min_degree, top + 1):
        for t in terms_of_degree(J.n, d):
            hits = sum(1 for h in H.terms if involutively_divides(h, t))
            if hits != (1 if J.contains(t) else 0):
                return False
    return True
