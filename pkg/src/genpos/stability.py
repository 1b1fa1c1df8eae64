"""Stability-type positions of monomial ideals and of polynomial ideals via their leading ideals.

Index conventions: an obstruction removes ``power`` copies of x_j (the
*removed* index) and puts the same number of x_i in their place (the
*replacing* index, i < j).  The matching elementary move is x_j -> x_j + a x_i.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations

from .algebra import cls, term_str, unit
from .groebner import PolynomialIdeal, truncation_ideal
from .monomial import MonomialIdeal

QUASI_STABLE = "quasi-stable"
STABLE = "stable"
STRONGLY_STABLE = "strongly-stable"
BASES = (QUASI_STABLE, STABLE, STRONGLY_STABLE)


class PositionError(ValueError):
    """Invalid kind / characteristic combination."""


@dataclass(frozen=True)
class PositionKind:
    """A position to test or reach.

    ``scope`` is "full", "ell" or "weak-ell" (the latter two need ``ell``).
    ``special`` names the kinds outside the stability grid: "noether",
    "borel", "dqs".
    """

    base: str = QUASI_STABLE
    scope: str = "full"
    ell: int | None = None
    p_variant: bool = False
    componentwise: bool = False
    special: str | None = None

    def __post_init__(self):
        if self.special is None and self.base not in BASES:
            raise PositionError("unknown base %r" % self.base)
        if self.scope not in ("full", "ell", "weak-ell"):
            raise PositionError("unknown scope %r" % self.scope)
        if self.scope != "full" and (self.ell is None or self.ell < 0):
            raise PositionError("scope %s needs a non-negative ell" % self.scope)
        if self.p_variant and self.base == QUASI_STABLE:
            raise PositionError("p-variants exist only for stable and strongly stable")
        if self.componentwise and (self.p_variant or self.scope != "full"):
            raise PositionError("componentwise positions use the full ordinary notions")

    def validate(self, n: int):
        if self.ell is not None and self.ell > n - 1:
            raise PositionError("ell must lie in [0, %d], got %d" % (n - 1, self.ell))

    def ordinary(self) -> "PositionKind":
        return replace(self, componentwise=False)

    @property
    def name(self) -> str:
        if self.special:
            return self.special if self.ell is None else "%s(%d)" % (self.special, self.ell)
        s = self.base
        if self.p_variant:
            s = s.replace("stable", "p-stable")
        if self.scope == "ell":
            s = "%d-%s" % (self.ell, s)
        elif self.scope == "weak-ell":
            s = "weakly-%d-%s" % (self.ell, s)
        if self.componentwise:
            s = "componentwise-" + s
        return s


def kind(base=QUASI_STABLE, ell=None, weak=False, p=False, componentwise=False) -> PositionKind:
    scope = "full" if ell is None else ("weak-ell" if weak else "ell")
    return PositionKind(base, scope, ell, p, componentwise)


NOETHER = PositionKind(special="noether")
DQS = PositionKind(special="dqs")


def borel(ell=None) -> PositionKind:
    return PositionKind(special="borel", ell=ell)


@dataclass(frozen=True)
class Obstruction:
    generator: tuple
    j: int  # removed index
    i: int  # replacing index, i < j
    power: int  # how many x_j are removed
    witness: tuple  # the missing term

    @property
    def move(self) -> tuple:
        return (self.j, self.i)

    def describe(self, names=None) -> str:
        return "%s not in ideal (from generator %s, x%d replaced by x%d)" % (
            term_str(self.witness, names),
            term_str(self.generator, names),
            self.j,
            self.i,
        )


@dataclass(frozen=True)
class Verdict:
    holds: bool
    obstruction: Obstruction | None = None
    failing_degree: int | None = None

    def __bool__(self):
        return self.holds


def p_precedes(k: int, l: int, p: int) -> bool:
    """k <_p l, i.e. binom(l, k) != 0 mod p, by Lucas' theorem."""
    if k < 0 or k > l:
        return False
    while k or l:
        if k % p > l % p:
            return False
        k //= p
        l //= p
    return True


def _swap(t, j, i, power, add=None):
    """Remove ``power`` x_j and multiply by x_i^add (add defaults to power)."""
    t = list(t)
    t[j - 1] -= power
    t[i - 1] += power if add is None else add
    return tuple(t)


def _moves(g, k: PositionKind, n: int, q: int, char: int):
    """Candidate (j, i, power, witness) of the defining clause for one generator."""
    m = cls(g)
    ell = k.ell if k.scope != "full" else n - 1
    if k.scope != "full" and m < n - ell:
        return
    jmax = n - ell if k.scope == "weak-ell" else n  # bound on the replacing index
    if k.base == QUASI_STABLE:
        if not g[m - 1]:
            return
        for i in range(1, min(m - 1, jmax) + 1):
            yield m, i, g[m - 1], _swap(g, m, i, g[m - 1], q)
        return
    if k.base == STABLE:
        removed = [m] if g[m - 1] else []
    else:
        lo = n - ell if k.scope != "full" else 1
        removed = [j for j in range(max(lo, 2), n + 1) if g[j - 1]]
    for j in removed:
        if k.p_variant:
            powers = [s for s in range(1, g[j - 1] + 1) if p_precedes(s, g[j - 1], char)]
        else:
            powers = [1]
        for i in range(1, min(j - 1, jmax) + 1):
            for s in powers:
                yield j, i, s, _swap(g, j, i, s)


def _q(J: MonomialIdeal) -> int:
    return J.max_degree


def obstructions(J: MonomialIdeal, k: PositionKind, char: int = 0) -> list:
    """All violations of the clause of ``k`` over the minimal generators."""
    if k.special:
        raise PositionError("%s is not a stability-grid kind" % k.special)
    if k.p_variant and not char:
        raise PositionError("p-variants need a positive characteristic")
    k.validate(J.n)
    q = _q(J)
    out = []
    for g in J.gens:
        for j, i, s, w in _moves(g, k, J.n, q, char):
            if not J.contains(w):
                out.append(Obstruction(g, j, i, s, w))
    return out


def _select(obs: list):
    """Selection rule: the rl-smallest violating generator, then the smallest
    replacing index, then the largest removed index, then the smallest power."""
    from .algebra import revlex_key

    if not obs:
        return None
    return min(obs, key=lambda o: (revlex_key(o.generator), o.i, -o.j, o.power))


def check_position(J: MonomialIdeal, k: PositionKind, char: int = 0) -> Verdict:
    if k.special == "noether":
        return Verdict(noether_monomial(J))
    if k.special == "dqs":
        return Verdict(dqs_test(J))
    if k.special == "borel":
        return Verdict(is_borel_fixed(J, char, k.ell))
    if k.componentwise:
        # for monomial ideals the componentwise stable notions reduce to the ordinary ones
        if k.base == QUASI_STABLE:
            return componentwise_check_direct(PolynomialIdeal.from_monomial(J, _field(char)), k)
        k = k.ordinary()
    obs = _select(obstructions(J, k, char))
    return Verdict(obs is None, obs)


def _field(char):
    from .algebra import FieldSpec

    return FieldSpec(char)


# convenience predicates ----------------------------------------------------


def is_quasi_stable(J, ell=None, weak=False) -> bool:
    return check_position(J, kind(QUASI_STABLE, ell, weak)).holds


def is_stable(J, ell=None, weak=False) -> bool:
    return check_position(J, kind(STABLE, ell, weak)).holds


def is_strongly_stable(J, ell=None, weak=False) -> bool:
    return check_position(J, kind(STRONGLY_STABLE, ell, weak)).holds


def is_borel_fixed(J: MonomialIdeal, char: int = 0, ell: int | None = None) -> bool:
    if ell is None or ell >= J.n - 1:
        k = kind(STRONGLY_STABLE, p=bool(char))
    else:
        k = kind(STRONGLY_STABLE, ell, p=bool(char))
    return check_position(J, k, char).holds


# D-quasi-stability and Noether position ---------------------------------------


def dqs_test(J: MonomialIdeal) -> bool:
    """DQS-Test, with no prior knowledge of D."""
    n = J.n
    if J.is_zero():
        return True
    dg = J.max_degree
    ell = n
    for j in range(0, n + 1):
        if all(J.contains(unit(n, a, dg)) for a in range(1, n - j + 1)):
            ell = j
            break
    for g in J.gens:
        k = cls(g)
        if k < n - ell:
            continue
        for i in range(1, k):
            if not J.contains(_swap(g, k, i, g[k - 1], dg)):
                return False
    return True


def noether_monomial(J: MonomialIdeal) -> bool:
    """Pure powers of x_1, ..., x_{n-D} lie in J."""
    if J.is_unit():
        return True
    D = J.dimension()
    return all(J.has_pure_power(i) for i in range(1, J.n - D + 1))


def is_noether_position(I) -> bool:
    J = I if isinstance(I, MonomialIdeal) else I.leading_ideal()
    return noether_monomial(J)


def weak_quasi_stable_at(J: MonomialIdeal, ell: int) -> bool:
    """Weak ell-quasi-stability for any ell >= 0 (ell >= n makes the clause vacuous)."""
    if ell >= J.n:
        return True
    return check_position(J, kind(QUASI_STABLE, ell, weak=True)).holds


def noether_equals_wdqs(J: MonomialIdeal) -> bool:
    if J.is_unit():
        return True
    return noether_monomial(J) == weak_quasi_stable_at(J, J.dimension())


# componentwise positions -----------------------------------------------------


def _ordinary_ok(I: PolynomialIdeal, k: PositionKind):
    J = I.leading_ideal()
    return check_position(J, k.ordinary())


def componentwise_component_lt(I: PolynomialIdeal, d: int) -> MonomialIdeal:
    """lt(I_<d>) = lt(I_[d]) restricted to degrees >= d."""
    T = truncation_ideal(I, d)
    return T.leading_ideal().truncate(d)


def componentwise_check_direct(I: PolynomialIdeal, k: PositionKind) -> Verdict:
    """Test lt(I_<d>) for every d from the lowest generator degree up to reg(I)."""
    from .pommaret import polynomial_pommaret_basis

    base = k.ordinary() if k.componentwise else k
    if base.special or base.scope != "full" or base.p_variant:
        raise PositionError("componentwise checks use the ordinary base notions")
    if I.is_zero():
        return Verdict(True)
    v = _ordinary_ok(I, base)
    if not v.holds:
        return Verdict(False, v.obstruction, None)
    H = polynomial_pommaret_basis(I)
    reg = H.degree
    lo = min(g.degree for g in I.groebner_basis())
    for d in range(lo, reg + 1):
        Jd = componentwise_component_lt(I, d)
        if Jd.is_zero():
            continue
        w = check_position(Jd, base)
        if not w.holds:
            return Verdict(False, w.obstruction, d)
    return Verdict(True)


def hat_set(H, d: int) -> set:
    """Indices of H-hat_d: elements whose lt is divisible by the lt of an element of degree <= d."""
    from .algebra import divides

    low = [t for t in H.terms if sum(t) <= d]
    return {idx for idx, t in enumerate(H.terms) if any(divides(s, t) for s in low)}


def componentwise_check_criterion(I, d: int, H=None, reps=None) -> bool:
    """Sufficient criterion for I_[d] to be quasi-stable, read off the standard representations."""
    from .pommaret import polynomial_pommaret_basis, standard_representations

    if H is None:
        H = polynomial_pommaret_basis(I)
    if not H.finite:
        raise PositionError("the criterion needs an ideal in quasi-stable position")
    if reps is None:
        reps = standard_representations(H)
    hat = hat_set(H, d)
    for r in reps:
        if r.alpha in hat and any(b not in hat for b in r.coefficients):
            return False
    return True


def criterion_failure(H, reps, d: int):
    """First representation violating the criterion at degree d, or None."""
    hat = hat_set(H, d)
    for r in reps:
        if r.alpha in hat:
            bad = [b for b in sorted(r.coefficients) if b not in hat]
            if bad:
                return r, bad
    return None


def position_holds(I, k: PositionKind, char: int | None = None) -> Verdict:
    """Evaluate a kind on a polynomial ideal (through its leading ideal where applicable)."""
    if isinstance(I, MonomialIdeal):
        return check_position(I, k, char or 0)
    char = I.field.characteristic if char is None else char
    if k.componentwise:
        return componentwise_check_direct(I, k)
    return check_position(I.leading_ideal(), k, char)


# characterization oracles (monomial ideals) -----------------------------------


def qs_exponent_oracle(J: MonomialIdeal, ell: int | None = None, weak: bool = False) -> bool:
    """Exponent-wise clause: for x^mu in J with mu_j > 0, each 0 < r <= mu_j and
    admissible i < j, some x_i^s x^mu / x_j^r lies in J (checked on minimal generators
    through saturations)."""
    n = J.n
    sats = {i: J.saturate_variable(i) for i in range(1, n + 1)}
    for g in J.gens:
        if ell is not None and cls(g) < n - ell:
            continue
        for j in range(2, n + 1):
            if ell is not None and j < n - ell:
                continue
            for r in range(1, g[j - 1] + 1):
                t = _swap(g, j, j, r, 0)
                top = j - 1 if not weak else min(j - 1, n - ell)
                for i in range(1, top + 1):
                    if not sats[i].contains(t):
                        return False
    return True


def qs_colon_oracle(J: MonomialIdeal, ell: int | None = None, weak: bool = False) -> bool:
    """J : x_{n-j}^inf = J : <x_1..x_{n-j}>^inf for 0 <= j <= ell (ell = n-1 for the full notion);
    the weak form asks J : x_{n-j}^inf to be contained in J : <x_1..x_{n-ell}>^inf."""
    n = J.n
    top = n - 1 if ell is None else ell
    for j in range(0, top + 1):
        left = J.saturate_variable(n - j)
        if weak:
            right = J.saturate_prefix(n - ell)
            if not left.issubset(right):
                return False
        elif left != J.saturate_prefix(n - j):
            return False
    return True


def qs_chain_oracle(J: MonomialIdeal) -> bool:
    """Ascending chain J:x_n^inf <= ... <= J:x_{n-D+1}^inf plus pure powers of x_1..x_{n-D}."""
    n = J.n
    if J.is_unit():
        return True
    D = J.dimension()
    sats = [J.saturate_variable(n - k) for k in range(0, D)]
    for a, b in zip(sats, sats[1:]):
        if not a.issubset(b):
            return False
    return all(J.has_pure_power(j) for j in range(1, n - D + 1))


def qs_completion_oracle(J: MonomialIdeal) -> bool:
    """Run monomial involutive completion, always adding the lowest missing
    prolongation; reaching past the degree bound n(q-1)+1 means no finite
    Pommaret basis exists."""
    import heapq

    from .algebra import degrevlex_key, term_mul
    from .pommaret import involutively_divides

    n = J.n
    if J.is_zero() or J.is_unit():
        return True
    bound = n * (J.max_degree - 1) + 1
    H = list(J.gens)
    heap = []

    def push(t):
        for k in range(1, cls(t)):
            u = term_mul(t, unit(n, k))
            heapq.heappush(heap, (degrevlex_key(u), u))

    for t in H:
        push(t)
    while heap:
        _, u = heapq.heappop(heap)
        if any(involutively_divides(h, u) for h in H):
            continue
        if sum(u) > bound:
            return False
        H.append(u)
        push(u)
    return True


def qs_pbqs_oracle(J: MonomialIdeal) -> bool:
    from .pommaret import monomial_pommaret_basis

    return monomial_pommaret_basis(J).finite


def quasi_stability_characterizations(J: MonomialIdeal) -> dict:
    return {
        "definition": is_quasi_stable(J),
        "exponents": qs_exponent_oracle(J),
        "colon": qs_colon_oracle(J),
        "chain": qs_chain_oracle(J),
        "completion": qs_completion_oracle(J),
        "colon_bases": qs_pbqs_oracle(J),
    }


def _with_last_variables(J: MonomialIdeal, count: int) -> MonomialIdeal:
    n = J.n
    return J.add_variables(range(n - count + 1, n + 1))


def _maximal_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal([unit(n, k) for k in range(1, n + 1)], n)


def stable_colon_oracle(J: MonomialIdeal, ell: int) -> bool:
    """<J, x_n..x_{n-j+1}> : x_{n-j} = <J, x_n..x_{n-j+1}> : m for 0 <= j <= ell."""
    n = J.n
    m = _maximal_ideal(n)
    for j in range(0, ell + 1):
        K = _with_last_variables(J, j)
        if K.colon_variable(n - j) != K.colon_ideal(m):
            return False
    return True


def weak_stable_colon_oracle(J: MonomialIdeal, ell: int) -> bool:
    """<J, x_n..x_{n-ell+1}> : x_{n-ell} = <J, x_n..x_{n-ell+1}> : m.

    For j < ell the variable x_{n-j} already lies in <J, x_n..x_{n-ell+1}>,
    so the colon by it is the unit ideal; only j = ell carries information.
    """
    n = J.n
    K = _with_last_variables(J, ell)
    return K.colon_variable(n - ell) == K.colon_ideal(_maximal_ideal(n))


def all_monomial_ideals(n: int, max_degree: int):
    """Every monomial ideal of k[x_1..x_n] whose minimal generators have degree in [1, max_degree].

    Enumerated as antichains of the divisibility order (the zero ideal included).
    """
    from .algebra import divides, terms_of_degree

    terms = [t for d in range(1, max_degree + 1) for t in terms_of_degree(n, d)]
    terms.sort(key=lambda t: (sum(t), t))
    comparable = [[divides(a, b) or divides(b, a) for b in terms] for a in terms]

    def rec(start, chosen):
        yield chosen
        for k in range(start, len(terms)):
            if all(not comparable[k][c] for c in chosen):
                yield from rec(k + 1, chosen + [k])

    for chosen in rec(0, []):
        yield MonomialIdeal([terms[c] for c in chosen], n)
