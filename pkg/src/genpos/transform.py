"""Deterministic transformation into a target position by elementary moves.

Each outer step picks one move x_j -> x_j + a x_i from an obstruction of the
current leading ideal and accepts it once the leading tuple of the reduced
Groebner basis strictly increases.  In characteristic 0 the unit move is
re-applied to the moved basis, so the effective coefficient walks 1, 2, 3, ...;
in characteristic p the values 1, ..., p-1 are tried on the basis from before
the move.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field, replace

from .algebra import LinearChange, cls, apply_move, compose, elementary_move_matrix
from .groebner import PolynomialIdeal, leading_tuple, reduced_groebner_basis
from .monomial import MonomialIdeal
from .pommaret import polynomial_pommaret_basis, standard_representations
from .stability import (
    PositionError,
    QUASI_STABLE,
    STRONGLY_STABLE,
    PositionKind,
    check_position,
    componentwise_check_direct,
    criterion_failure,
)


class TransformError(RuntimeError):
    """A safety cap was hit or no admissible move was found."""


class FieldTooSmall(TransformError):
    pass


@dataclass(frozen=True)
class TransformConfig:
    target: PositionKind
    max_outer_iterations: int = 500
    max_inner_iterations: int = 200
    schedule: tuple | None = None  # char p: nonzero field elements to try, in order
    random_values: bool = False
    seed: int = 0
    initial_moves: tuple = ()  # (j, i) pairs applied with a = 1, unconditionally, before the loop

    def __post_init__(self):
        if self.max_outer_iterations < 1 or self.max_inner_iterations < 1:
            raise ValueError("iteration caps must be positive")
        if self.schedule is not None and len(set(self.schedule)) != len(self.schedule):
            raise ValueError("the schedule repeats a value")


@dataclass(frozen=True)
class TransformResult:
    change: LinearChange
    final_basis: tuple
    final_lt: MonomialIdeal
    iterations: int
    ls_trace: tuple
    inner_counts: tuple = ()
    notes: tuple = dc_field(default_factory=tuple)

    @property
    def moves(self) -> tuple:
        return self.change.moves

    def ideal(self) -> PolynomialIdeal:
        return PolynomialIdeal.from_basis(self.final_basis, self.change.field, self.change.n)


def _lt_ideal(G, n) -> MonomialIdeal:
    return MonomialIdeal((g.lt for g in G), n)


def find_obstruction_move(G, target: PositionKind, char: int = 0):
    """(j, i) of the selected obstruction of lt<G> against ``target``, or None."""
    if not G:
        raise ValueError("empty basis")
    n = G[0].n
    if target.special:
        raise PositionError("%s is not reachable by obstruction moves" % target.special)
    v = check_position(_lt_ideal(G, n), target.ordinary(), char)
    return None if v.holds else v.obstruction.move


def _criterion_move(G, field, n):
    """Move suggested by the first degree where the componentwise criterion fails."""
    I = PolynomialIdeal.from_basis(G, field, n)
    H = polynomial_pommaret_basis(I)
    if not H.finite:
        return None
    reps = standard_representations(H, field)
    lo = min(g.degree for g in G)
    for d in range(lo, H.degree + 1):
        hit = criterion_failure(H, reps, d)
        if hit is not None:
            r, _ = hit
            return cls(H.terms[r.alpha]), r.k, d
    return None


class _Engine:
    def __init__(self, I: PolynomialIdeal, cfg: TransformConfig):
        self.cfg = cfg
        self.field = I.field
        self.char = I.field.characteristic
        self.n = I.n
        self.G = tuple(I.groebner_basis())
        self.change = LinearChange.identity(self.n, self.field)
        self.trace = [leading_tuple(self.G)]
        self.inner = []
        self.notes = []
        self.rng = random.Random(cfg.seed)
        if cfg.target.p_variant and not self.char:
            raise PositionError("p-variants need a positive characteristic")

    def _gb(self, polys):
        return tuple(reduced_groebner_basis(list(polys)))

    def _moved(self, G, j, i, a):
        return self._gb(apply_move(j, i, a, g) for g in G)

    def _values(self):
        if self.char:
            if self.cfg.random_values:
                vals = list(range(1, self.char))
                self.rng.shuffle(vals)
                return vals[: self.cfg.max_inner_iterations]
            sched = self.cfg.schedule or tuple(range(1, self.char))
            return list(sched)[: self.cfg.max_inner_iterations]
        return None

    def step(self, j, i, better=None) -> bool:
        """Try the move (j, i); on success update state and return True.

        ``better(H)`` replaces the default test (leading tuple strictly up)."""
        old = self.trace[-1]
        if better is None:
            better = lambda H: leading_tuple(H) > old
        if self.char:
            vals = self._values()
            for count, a in enumerate(vals, start=1):
                if not self.field(a):
                    continue
                H = self._moved(self.G, j, i, a)
                if better(H):
                    self._accept(H, j, i, a, count)
                    return True
            if len(vals) >= self.char - 1:
                raise FieldTooSmall("field too small: no value in GF(%d) advances the move x%d -> x%d + a*x%d" % (self.char, j, j, i))
            return False
        if self.cfg.random_values:
            for count in range(1, self.cfg.max_inner_iterations + 1):
                a = 0
                while a == 0:
                    a = self.rng.randint(-2, 2)
                H = self._moved(self.G, j, i, a)
                if better(H):
                    self._accept(H, j, i, a, count)
                    return True
            return False
        H = self.G
        for count in range(1, self.cfg.max_inner_iterations + 1):
            H = self._moved(H, j, i, 1)
            if better(H):
                self._accept(H, j, i, count, count)
                return True
        return False

    def force(self, j, i):
        # no acceptance test: the leading tuple may stay the same
        H = self._moved(self.G, j, i, 1)
        if not leading_tuple(H) > self.trace[-1]:
            self.notes.append("forced move (%d, %d) left the leading tuple unchanged or smaller" % (j, i))
        self.G = H
        self.change = compose(elementary_move_matrix(j, i, 1, self.n, self.field), self.change)
        self.trace.append(leading_tuple(H))
        self.inner.append(0)

    def _accept(self, H, j, i, a, count):
        self.G = H
        self.change = compose(elementary_move_matrix(j, i, a, self.n, self.field), self.change)
        self.trace.append(leading_tuple(H))
        self.inner.append(count)

    def result(self, outer) -> TransformResult:
        return TransformResult(
            self.change,
            self.G,
            _lt_ideal(self.G, self.n),
            outer,
            tuple(self.trace),
            tuple(self.inner),
            tuple(self.notes),
        )


def resolve_target(t: PositionKind, char: int) -> PositionKind:
    """Kinds outside the stability grid are reached through one inside it."""
    if t.special in ("noether", "dqs"):
        return PositionKind(QUASI_STABLE)
    if t.special == "borel":
        if char:
            return PositionKind(STRONGLY_STABLE, "full" if t.ell is None else "ell", t.ell, True)
        return PositionKind(STRONGLY_STABLE, "full" if t.ell is None else "ell", t.ell)
    return t


def transform_to_position(I: PolynomialIdeal, cfg: TransformConfig) -> TransformResult:
    if cfg.target.componentwise:
        return transform_componentwise(I, cfg.target.base, cfg)
    target = resolve_target(cfg.target, I.field.characteristic)
    target.validate(I.n)
    if target != cfg.target:
        cfg = replace(cfg, target=target)
    if I.is_zero():
        return TransformResult(LinearChange.identity(I.n, I.field), (), MonomialIdeal((), I.n), 0, ())
    eng = _Engine(I, cfg)
    outer = 0
    for j, i in cfg.initial_moves:
        eng.force(j, i)
    while True:
        move = find_obstruction_move(eng.G, cfg.target, eng.char)
        if move is None:
            return eng.result(outer)
        outer += 1
        if outer > cfg.max_outer_iterations:
            raise TransformError("more than %d outer iterations" % cfg.max_outer_iterations)
        if not eng.step(*move):
            raise TransformError("no accepted value for the move (%d, %d) within %d tries" % (move[0], move[1], cfg.max_inner_iterations))


def _defect(G, field, n, k):
    """First degree where the direct componentwise check fails; None when it holds."""
    v = componentwise_check_direct(PolynomialIdeal.from_basis(G, field, n), k)
    return None if v.holds else (v.failing_degree, v.obstruction)


def transform_componentwise(I: PolynomialIdeal, base: str, cfg: TransformConfig) -> TransformResult:
    """Ordinary base position first, then moves driven by the componentwise criterion.

    A criterion move is accepted when the leading tuple strictly increases.
    If none does, a move that keeps the leading tuple and pushes the first
    failing degree of the direct check upwards is accepted instead; the pair
    (leading tuple, failing degree) still increases, and failing degrees are
    bounded by the regularity.  Runs stop once the criterion holds, or once
    the direct check holds and no criterion move advances.
    """
    if I.field.characteristic:
        raise PositionError("componentwise transformation is implemented in characteristic 0")
    target = PositionKind(base)
    full = PositionKind(base, componentwise=True)
    if I.is_zero():
        return TransformResult(LinearChange.identity(I.n, I.field), (), MonomialIdeal((), I.n), 0, ())
    eng = _Engine(I, TransformConfig(target, cfg.max_outer_iterations, cfg.max_inner_iterations, None, cfg.random_values, cfg.seed))
    outer = 0
    while True:
        move = find_obstruction_move(eng.G, target, 0)
        stage = 1
        if move is None:
            hit = _criterion_move(eng.G, eng.field, eng.n)
            if hit is None:
                return eng.result(outer)
            move, stage = hit[:2], 2
        outer += 1
        if outer > cfg.max_outer_iterations:
            raise TransformError("more than %d outer iterations" % cfg.max_outer_iterations)
        if eng.step(*move):
            continue
        if stage == 2:
            bad = _defect(eng.G, eng.field, eng.n, full)
            if bad is None:
                eng.notes.append("criterion move (%d, %d) never advanced; the direct check holds" % move)
                return eng.result(outer)
            old, deg = eng.trace[-1], bad[0]

            def better(H):
                lt = leading_tuple(H)
                if lt != old:
                    return lt > old
                after = _defect(H, eng.field, eng.n, full)
                return after is None or after[0] > deg

            tries = [move]
            if bad[1] is not None:
                tries.append((bad[1].j, bad[1].i))
            tries += [(j, i) for j in range(eng.n, 1, -1) for i in range(1, j) if (j, i) not in tries]
            if any(eng.step(j, i, better) for j, i in tries):
                if eng.trace[-1] == old:
                    eng.notes.append("move (%d, %d) kept the leading tuple and raised the failing degree" % eng.change.moves[-1][:2])
                continue
        raise TransformError("no accepted value for the move (%d, %d) within %d tries" % (move[0], move[1], cfg.max_inner_iterations))
