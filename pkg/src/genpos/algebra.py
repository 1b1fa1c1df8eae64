"""Exact scalars, terms, homogeneous polynomials and linear changes of coordinates.

Terms are plain tuples of non-negative exponents.  Position 0 of the tuple is
the greatest variable ``x1`` under ``x1 > x2 > ... > xn``; every public index in
this package (classes, moves, obstructions) is 1-based to match that naming.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from itertools import product
from typing import Iterable, Mapping, Sequence

Term = tuple


class DimensionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# fields


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@total_ordering
class Mod:
    """Element of a prime field GF(p), stored as a residue in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise ValueError("mixing elements of different prime fields")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Mod(o, self.p) / self

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pow__(self, k: int):
        return Mod(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __lt__(self, other):
        # only used to make sorting of mixed data deterministic
        return self.v < self._coerce(other) % self.p

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return "Mod(%d, %d)" % (self.v, self.p)

    def __str__(self):
        # symmetric representative reads better in reports
        v = self.v
        return str(v - self.p if v > self.p // 2 else v)


class FieldSpec:
    """The coefficient field: the rationals (characteristic 0) or GF(p)."""

    def __init__(self, characteristic: int = 0):
        if characteristic < 0:
            raise ValueError("characteristic must be non-negative")
        if characteristic and (characteristic >= 2**31 or not is_prime(characteristic)):
            raise ValueError("GF modulus must be a prime below 2^31, got %d" % characteristic)
        self.characteristic = characteristic

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    @property
    def order(self):
        """Cardinality of the field, ``None`` for the rationals."""
        return self.characteristic or None

    def __call__(self, x):
        p = self.characteristic
        if p == 0:
            if isinstance(x, Mod):
                raise ValueError("cannot map a prime-field element into QQ")
            return Fraction(x)
        if isinstance(x, Mod):
            if x.p != p:
                raise ValueError("element of GF(%d) used in GF(%d)" % (x.p, p))
            return x
        if isinstance(x, Fraction):
            return Mod(x.numerator, p) / x.denominator
        return Mod(int(x), p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def elements(self):
        """Nonzero elements in enumeration order 1, 2, ..., p-1 (prime fields only)."""
        if not self.characteristic:
            raise ValueError("QQ is infinite")
        return [self(k) for k in range(1, self.characteristic)]

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("FieldSpec", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else "GF(%d)" % self.characteristic


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


# ---------------------------------------------------------------------------
# terms


def degree(t: Term) -> int:
    return sum(t)


def cls(t: Term) -> int:
    """Largest 1-based index with a nonzero exponent; the class of 1 is 1."""
    for k in range(len(t) - 1, -1, -1):
        if t[k]:
            return k + 1
    return 1


def multiplicative_indices(t: Term) -> range:
    """1-based indices of the Pommaret multiplicative variables of ``t``."""
    return range(cls(t), len(t) + 1)


def divides(s: Term, t: Term) -> bool:
    return all(a <= b for a, b in zip(s, t))


def term_mul(s: Term, t: Term) -> Term:
    return tuple(a + b for a, b in zip(s, t))


def term_div(t: Term, s: Term) -> Term:
    return tuple(b - a for a, b in zip(s, t))


def term_lcm(s: Term, t: Term) -> Term:
    return tuple(max(a, b) for a, b in zip(s, t))


def unit(n: int, k: int, e: int = 1) -> Term:
    """The term x_k^e in n variables (k is 1-based)."""
    t = [0] * n
    t[k - 1] = e
    return tuple(t)


def revlex_key(t: Term):
    """Sort key for pure reverse lexicographic order (larger key = greater term)."""
    return tuple(-e for e in reversed(t))


def degrevlex_key(t: Term):
    return (sum(t), tuple(-e for e in reversed(t)))


def _check_len(s, t):
    if len(s) != len(t):
        raise DimensionError("terms of different length: %d vs %d" % (len(s), len(t)))


def compare_degrevlex(s: Term, t: Term) -> int:
    """-1, 0 or 1 as s is less than, equal to or greater than t."""
    _check_len(s, t)
    ks, kt = degrevlex_key(s), degrevlex_key(t)
    return (ks > kt) - (ks < kt)


def compare_revlex(s: Term, t: Term) -> int:
    _check_len(s, t)
    ks, kt = revlex_key(s), revlex_key(t)
    return (ks > kt) - (ks < kt)


def terms_of_degree(n: int, d: int):
    """All terms of degree d in n variables, in descending degrevlex order."""
    out = []

    def rec(prefix, left, k):
        if k == n - 1:
            out.append(tuple(prefix) + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + [e], left - e, k + 1)

    if n == 0:
        return [()] if d == 0 else []
    rec([], d, 0)
    out.sort(key=degrevlex_key, reverse=True)
    return out


def default_names(n: int):
    return ["x%d" % (k + 1) for k in range(n)]


def term_str(t: Term, names: Sequence[str] | None = None) -> str:
    names = names or default_names(len(t))
    parts = []
    for name, e in zip(names, t):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append("%s^%d" % (name, e))
    return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable polynomial: a mapping term -> nonzero field element."""

    __slots__ = ("terms", "field", "n", "_lt")

    def __init__(self, terms: Mapping[Term, object], field: FieldSpec, n: int):
        clean = {}
        for t, c in terms.items():
            if len(t) != n:
                raise DimensionError("term %r does not have %d exponents" % (t, n))
            c = field(c)
            if c:
                clean[tuple(t)] = c
        self.terms = clean
        self.field = field
        self.n = n
        self._lt = None

    @classmethod
    def _raw(cls, terms, field, n):
        # trusted constructor: terms already clean and in the field
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.field = field
        obj.n = n
        obj._lt = None
        return obj

    @classmethod
    def monomial(cls, t: Term, field: FieldSpec, coeff=1):
        return cls({tuple(t): coeff}, field, len(t))

    @classmethod
    def zero(cls, field: FieldSpec, n: int):
        return cls._raw({}, field, n)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.field, frozenset(self.terms.items())))

    @property
    def lt(self) -> Term:
        if self._lt is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            self._lt = max(self.terms, key=degrevlex_key)
        return self._lt

    @property
    def lc(self):
        return self.terms[self.lt]

    @property
    def degree(self) -> int:
        return max(sum(t) for t in self.terms) if self.terms else -1

    def is_homogeneous(self) -> bool:
        return len({sum(t) for t in self.terms}) <= 1

    def support(self):
        """Terms in descending degrevlex order."""
        return sorted(self.terms, key=degrevlex_key, reverse=True)

    def coefficient(self, t: Term):
        return self.terms.get(tuple(t), self.field.zero)

    def monic(self) -> "Polynomial":
        inv = 1 / self.lc
        return Polynomial._raw({t: c * inv for t, c in self.terms.items()}, self.field, self.n)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if other.n != self.n:
            raise DimensionError("adding polynomials in %d and %d variables" % (self.n, other.n))
        if other.field != self.field:
            raise ValueError("adding polynomials over %r and %r" % (self.field, other.field))
        out = dict(self.terms)
        for t, c in other.terms.items():
            v = out.get(t)
            if v is None:
                out[t] = c
            else:
                v = v + c
                if v:
                    out[t] = v
                else:
                    del out[t]
        return Polynomial._raw(out, self.field, self.n)

    def __neg__(self):
        return Polynomial._raw({t: -c for t, c in self.terms.items()}, self.field, self.n)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        c = self.field(c)
        if not c:
            return Polynomial.zero(self.field, self.n)
        return Polynomial._raw({t: c * v for t, v in self.terms.items()}, self.field, self.n)

    def mul_term(self, m: Term, c=1) -> "Polynomial":
        c = self.field(c)
        if not c:
            return Polynomial.zero(self.field, self.n)
        return Polynomial._raw(
            {term_mul(t, m): c * v for t, v in self.terms.items()}, self.field, self.n
        )

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out = {}
        for s, a in self.terms.items():
            for t, b in other.terms.items():
                u = term_mul(s, t)
                out[u] = out.get(u, 0) + a * b
        return Polynomial({u: c for u, c in out.items() if c}, self.field, self.n)

    def evaluate(self, point: Sequence):
        total = self.field.zero
        for t, c in self.terms.items():
            v = c
            for x, e in zip(point, t):
                if e:
                    v = v * self.field(x) ** e
            total = total + v
        return total

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        out = []
        for t in self.support():
            c = self.terms[t]
            neg = False
            if self.field.characteristic == 0:
                neg = c < 0
                mag = -c if neg else c
            else:
                s = str(c)
                neg = s.startswith("-")
                mag = s.lstrip("-")
            ts = term_str(t, names)
            if str(mag) == "1":
                body = ts
            elif ts == "1":
                body = str(mag)
            else:
                body = "%s*%s" % (mag, ts)
            if not out:
                out.append("-" + body if neg else body)
            else:
                out.append(("- " if neg else "+ ") + body)
        return " ".join(out)

    def __repr__(self):
        return "Polynomial(%s)" % self.to_str()

    __str__ = to_str


# ---------------------------------------------------------------------------
# linear changes of coordinates


def _binomials(m: int):
    """Row m of Pascal's triangle, built by the additive recurrence."""
    row = [1]
    for _ in range(m):
        row = [1] + [row[k] + row[k + 1] for k in range(len(row) - 1)] + [1]
    return row


class LinearChange:
    """Invertible substitution ``x_k -> sum_j matrix[k][j] x_j`` plus its move log.

    ``moves`` lists the elementary moves ``(j, i, a)`` meaning ``x_j -> x_j + a*x_i``
    (1-based, ``i < j``) in the order they were applied.
    """

    __slots__ = ("matrix", "moves", "field")

    def __init__(self, matrix, field: FieldSpec, moves=()):
        self.field = field
        self.matrix = tuple(tuple(field(v) for v in row) for row in matrix)
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise DimensionError("matrix must be square")
        self.moves = tuple((j, i, field(a)) for j, i, a in moves)
        if not determinant(self.matrix, field):
            raise ValueError("linear change must be invertible")

    @property
    def n(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = QQ) -> "LinearChange":
        return cls([[1 if r == c else 0 for c in range(n)] for r in range(n)], field)

    def is_identity(self) -> bool:
        return all(
            v == (1 if r == c else 0) for r, row in enumerate(self.matrix) for c, v in enumerate(row)
        )

    def __eq__(self, other):
        return isinstance(other, LinearChange) and self.matrix == other.matrix and self.field == other.field

    def __hash__(self):
        return hash(self.matrix)

    def inverse(self) -> "LinearChange":
        inv = matrix_inverse(self.matrix, self.field)
        moves = tuple((j, i, -a) for j, i, a in reversed(self.moves))
        return LinearChange(inv, self.field, moves)

    def __repr__(self):
        rows = "; ".join(" ".join(str(v) for v in row) for row in self.matrix)
        return "LinearChange([%s], moves=%d)" % (rows, len(self.moves))


def elementary_move_matrix(j: int, i: int, a, n: int, field: FieldSpec = QQ) -> LinearChange:
    """The move ``x_j -> x_j + a*x_i``; requires ``1 <= i < j <= n`` and ``a != 0``."""
    if not (1 <= i < j <= n):
        raise ValueError("elementary move needs 1 <= i < j <= n, got j=%d, i=%d, n=%d" % (j, i, n))
    a = field(a)
    if not a:
        raise ValueError("elementary move coefficient must be nonzero")
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[j - 1][i - 1] = a
    return LinearChange(rows, field, [(j, i, a)])


def compose(second: LinearChange, first: LinearChange) -> LinearChange:
    """The change "apply ``first``, then ``second``".

    The stored matrix is the substitution matrix of the composite, which is
    ``first.matrix @ second.matrix`` because substituting ``x -> B x`` into
    ``f(A x)`` gives ``f(A B x)``.
    """
    if second.n != first.n:
        raise DimensionError("cannot compose changes of different size")
    if second.field != first.field:
        raise ValueError("cannot compose changes over different fields")
    m = matmul(first.matrix, second.matrix, first.field)
    return LinearChange(m, first.field, first.moves + second.moves)


def matmul(A, B, field: FieldSpec):
    n = len(A)
    zero = field.zero
    return [[sum((A[r][k] * B[k][c] for k in range(n)), zero) for c in range(n)] for r in range(n)]


def determinant(M, field: FieldSpec):
    A = [list(row) for row in M]
    n = len(A)
    det = field.one
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c]
        inv = 1 / A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] * inv
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


def matrix_inverse(M, field: FieldSpec):
    n = len(M)
    A = [list(row) + [field.one if r == c else field.zero for c in range(n)] for r, row in enumerate(M)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c])
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def _linear_form_power(coeffs, e, field, n):
    """(sum_j coeffs[j] x_j)^e as a term -> coefficient dict."""
    out = {(0,) * n: field.one}
    for _ in range(e):
        nxt = {}
        for t, c in out.items():
            for j, a in coeffs:
                u = list(t)
                u[j] += 1
                u = tuple(u)
                nxt[u] = nxt.get(u, field.zero) + c * a
        out = {t: c for t, c in nxt.items() if c}
    return out


def apply_change(change: LinearChange, f: Polynomial) -> Polynomial:
    """Substitute ``x_k -> sum_j matrix[k][j] x_j`` into ``f`` and expand exactly."""
    if change.n != f.n:
        raise DimensionError("change of size %d applied to polynomial in %d variables" % (change.n, f.n))
    if change.field != f.field:
        raise ValueError("field mismatch between change and polynomial")
    n, field = f.n, f.field
    rows = [[(j, v) for j, v in enumerate(row) if v] for row in change.matrix]
    sparse_move = _single_move(change)
    if sparse_move is not None:
        return _apply_move(sparse_move, f)
    cache = {}
    out = {}
    for t, c in f.terms.items():
        acc = {(0,) * n: c}
        for k, e in enumerate(t):
            if not e:
                continue
            key = (k, e)
            if key not in cache:
                cache[key] = _linear_form_power(rows[k], e, field, n)
            pw = cache[key]
            nxt = {}
            for s, a in acc.items():
                for u, b in pw.items():
                    w = term_mul(s, u)
                    nxt[w] = nxt.get(w, field.zero) + a * b
            acc = nxt
        for w, v in acc.items():
            out[w] = out.get(w, field.zero) + v
    return Polynomial._raw({w: v for w, v in out.items() if v}, field, n)


def _single_move(change: LinearChange):
    """(j, i, a) 0-based if the matrix is one elementary move, else None."""
    found = None
    for r, row in enumerate(change.matrix):
        for c, v in enumerate(row):
            if r == c:
                if v != 1:
                    return None
            elif v:
                if found is not None or c > r:
                    return None
                found = (r, c, v)
    return found


def _apply_move(move, f: Polynomial) -> Polynomial:
    # binomial expansion x_j^m -> sum_s C(m, s) a^(m-s) x_i^(m-s) x_j^s
    j, i, a = move
    field = f.field
    out = {}
    for t, c in f.terms.items():
        m = t[j]
        if m == 0:
            out[t] = out.get(t, field.zero) + c
            continue
        binom = _binomials(m)
        apow = field.one
        for s in range(m, -1, -1):
            coeff = field(binom[s]) * apow
            if coeff:
                u = list(t)
                u[j] = s
                u[i] += m - s
                u = tuple(u)
                out[u] = out.get(u, field.zero) + c * coeff
            apow = apow * a
    return Polynomial._raw({w: v for w, v in out.items() if v}, field, f.n)


def apply_move(j: int, i: int, a, f: Polynomial) -> Polynomial:
    """Shortcut for ``apply_change(elementary_move_matrix(j, i, a), f)``."""
    a = f.field(a)
    return _apply_move((j - 1, i - 1, a), f)
