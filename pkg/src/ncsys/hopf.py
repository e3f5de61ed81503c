"""Generic Hopf-algebra axiom checks on explicit basis elements.

A Hopf structure is described by plain callables on :class:`Element`
values, so the same checks serve NSym, Connes-Kreimer and Grossman-Larson.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .algebra import Element, Tensor, _add_into


@dataclass(frozen=True)
class HopfOps:
    carrier: object
    coproduct: Callable[[Element], Element]
    counit: Callable[[Element], object]
    antipode: Callable[[Element], Element]
    normalize: Callable[[Element], Element] = lambda x: x


def _iterate_left(ops: HopfOps, x: Element) -> dict:
    """``(Delta (x) id) Delta x`` keyed by key triples."""
    acc: dict = {}
    A = ops.carrier
    for (a, b), c in ops.coproduct(x).terms.items():
        for (p, q), d in ops.coproduct(A.basis(a)).terms.items():
            _add_into(acc, {(p, q, b): c * d})
    return acc


def _iterate_right(ops: HopfOps, x: Element) -> dict:
    acc: dict = {}
    A = ops.carrier
    for (a, b), c in ops.coproduct(x).terms.items():
        for (p, q), d in ops.coproduct(A.basis(b)).terms.items():
            _add_into(acc, {(a, p, q): c * d})
    return acc


def coassociative(ops: HopfOps, xs: Iterable[Element]) -> bool:
    return all(_iterate_left(ops, x) == _iterate_right(ops, x) for x in xs)


def counital(ops: HopfOps, xs: Iterable[Element]) -> bool:
    A = ops.carrier
    for x in xs:
        left, right = A.zero(), A.zero()
        for (a, b), c in ops.coproduct(x).terms.items():
            left = left + A.basis(b) * (ops.counit(A.basis(a)) * c)
            right = right + A.basis(a) * (ops.counit(A.basis(b)) * c)
        x = ops.normalize(x)
        if ops.normalize(left) != x or ops.normalize(right) != x:
            return False
    return True


def antipode_convolution(ops: HopfOps, xs: Iterable[Element]) -> bool:
    """``m(S (x) id) Delta = eta epsilon = m(id (x) S) Delta``."""
    A = ops.carrier
    for x in xs:
        unit = A.one() * ops.counit(x)
        left, right = A.zero(), A.zero()
        for (a, b), c in ops.coproduct(x).terms.items():
            left = left + ops.antipode(A.basis(a)) * A.basis(b) * c
            right = right + A.basis(a) * ops.antipode(A.basis(b)) * c
        if ops.normalize(left) != ops.normalize(unit) or ops.normalize(right) != ops.normalize(unit):
            return False
    return True


def associative(triples: Iterable[tuple[Element, Element, Element]]) -> bool:
    return all((a * b) * c == a * (b * c) for a, b, c in triples)


def unital(ops: HopfOps, xs: Iterable[Element]) -> bool:
    one = ops.carrier.one()
    return all(one * x == x and x * one == x for x in xs)


def bialgebra(ops: HopfOps, pairs: Iterable[tuple[Element, Element]]) -> bool:
    """``Delta(ab) = Delta(a) Delta(b)`` in the tensor square."""
    T = Tensor(ops.carrier, ops.carrier)
    for a, b in pairs:
        lhs = ops.coproduct(a * b)
        rhs = Element(T, ops.coproduct(a).terms) * Element(T, ops.coproduct(b).terms)
        if Element(T, lhs.terms) != rhs:
            return False
    return True


def graded_triples(basis_by_weight: Sequence[Sequence[Element]], max_weight: int):
    """All ``(a, b, c)`` with total weight ``<= max_weight``."""
    for wa, A in enumerate(basis_by_weight):
        for wb, B in enumerate(basis_by_weight):
            for wc, C in enumerate(basis_by_weight):
                if wa + wb + wc <= max_weight:
                    for a in A:
                        for b in B:
                            for c in C:
                                yield a, b, c


def graded_pairs(basis_by_weight: Sequence[Sequence[Element]], max_weight: int):
    for wa, A in enumerate(basis_by_weight):
        for wb, B in enumerate(basis_by_weight):
            if wa + wb <= max_weight:
                for a in A:
                    for b in B:
                        yield a, b
