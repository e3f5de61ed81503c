"""Seeded random components for property checks and ``--seed`` runs."""
from __future__ import annotations

import random

from gmpy2 import mpq

from .algebra import QQ, TruncSeries, compositions
from .ncs import Component
from .nsym import BASES, NSYM


def random_rational(rng: random.Random, bound: int = 5) -> mpq:
    return mpq(rng.randint(-bound, bound), rng.randint(1, bound))


def _shape(tag: Component, order: int) -> tuple[int, int, object]:
    """(series order, weight offset, forced constant term)."""
    if tag in (Component.F, Component.G):
        return order, 0, 1
    if tag is Component.D:
        return order, 0, 0
    return order - 1, 1, None


def random_scalar_component(tag: Component | str, order: int, rng: random.Random) -> TruncSeries:
    tag = Component.parse(tag) if isinstance(tag, str) else tag
    n, _, const = _shape(tag, order)
    coeffs = [QQ.scalar(random_rational(rng)) for _ in range(n + 1)]
    if const is not None and n >= 0:
        coeffs[0] = QQ.scalar(const)
    return TruncSeries(QQ, coeffs)


def random_nsym_element(weight: int, rng: random.Random, max_terms: int = 3):
    """Random homogeneous element of the given weight, words mixing all five families."""
    if weight == 0:
        return NSYM.scalar(random_rational(rng))
    comps = compositions(weight)
    out = NSYM.zero()
    for _ in range(rng.randint(1, max_terms)):
        comp = rng.choice(comps)
        letters = [f"{rng.choice(BASES)}{p}" for p in comp]
        out = out + NSYM.word(letters) * random_rational(rng)
    return out


def random_nsym_component(tag: Component | str, order: int, rng: random.Random) -> TruncSeries:
    """Coefficient of ``t^k`` is homogeneous of weight ``k`` (``k + 1`` for h, m)."""
    tag = Component.parse(tag) if isinstance(tag, str) else tag
    n, offset, const = _shape(tag, order)
    coeffs = [random_nsym_element(k + offset, rng) for k in range(n + 1)]
    if const is not None and n >= 0:
        coeffs[0] = NSYM.scalar(const)
    return TruncSeries(NSYM, coeffs)
