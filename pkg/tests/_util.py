"""Shared helpers for the test-suite."""

from functools import lru_cache

from genpos.generic import gin
from genpos.io import load_corpus, parse_ideal
from genpos.monomial import MonomialIdeal


@lru_cache(maxsize=None)
def doc(name):
    return load_corpus(name)


@lru_cache(maxsize=None)
def ideal(name):
    return doc(name).ideal()


@lru_cache(maxsize=None)
def gin_of(name):
    return gin(ideal(name)).gin


def lt(name):
    return ideal(name).leading_ideal()


def terms(n, text):
    """Exponent tuples of the comma separated monomials in x1..xn."""
    names = " ".join("x%d" % k for k in range(1, n + 1))
    d = parse_ideal("vars: %s\nI: %s" % (names, text))
    return [g.lt for g in d.generators]


def M(n, text):
    return MonomialIdeal(terms(n, text), n)


def term(n, text):
    (t,) = terms(n, text)
    return t
