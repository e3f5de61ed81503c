"""Noncommutative symmetric functions and the universal NCS system.

Elements live in one free algebra ``NSYM`` whose letters name generators of
five families: ``L<m>`` (elementary), ``S<m>`` (complete), ``Ph<m>`` and
``Ps<m>`` (power sums of the two classical kinds) and ``Xi<m>``.  Every
transition between families is read off the universal system, nothing is
transcribed from closed formulas.
"""
from __future__ import annotations

import itertools
import re
import threading
from functools import lru_cache

from gmpy2 import mpq

from .algebra import (
    BasisCarrier,
    Element,
    FreeAlgebra,
    PolyRing,
    Tensor,
    TruncSeries,
    _add_into,
    compositions,
    format_terms,
    parse_terms,
    substitute,
    tensor_map,
)
from .ncs import NcsSystem, complete_from

BASES = ("L", "S", "Ph", "Ps", "Xi")
FAMILY = {"L": "lambda", "S": "s", "Ph": "phi", "Ps": "psi", "Xi": "xi"}
DEFAULT_WEIGHT = 6

_GEN = re.compile(r"^(L|S|Ph|Ps|Xi)([1-9]\d*)$")


class NSymAlgebra(FreeAlgebra):
    def __init__(self):
        super().__init__("NSym")

    def check_letter(self, letter):
        if not _GEN.match(letter):
            raise ValueError(f"unknown NSym generator {letter!r}")


NSYM = NSymAlgebra()
NSYM_TENSOR = Tensor(NSYM, NSYM)


def split_letter(letter: str) -> tuple[str, int]:
    m = _GEN.match(letter)
    if not m:
        raise ValueError(f"not an NSym generator: {letter!r}")
    return m.group(1), int(m.group(2))


def gen(basis: str, m: int) -> Element:
    return NSYM.gen(f"{basis}{m}")


def word(basis: str, parts) -> Element:
    return NSYM.word(f"{basis}{p}" for p in parts)


def parse(text: str) -> Element:
    return NSYM.parse(text)


def word_weight(w) -> int:
    return sum(split_letter(x)[1] for x in w)


def weight(x: Element) -> int:
    """Largest weight of a word in ``x`` (0 for scalars and zero)."""
    return max((word_weight(w) for w in x.terms), default=0)


def homogeneous_component(x: Element, m: int) -> Element:
    return Element(NSYM, {w: c for w, c in x.terms.items() if word_weight(w) == m})


def is_homogeneous(x: Element, m: int) -> bool:
    return all(word_weight(w) == m for w in x.terms)


def bases_in(x: Element) -> set[str]:
    return {split_letter(letter)[0] for w in x.terms for letter in w}


# --------------------------------------------------------------------------
# universal system and transitions
# --------------------------------------------------------------------------

_lock = threading.Lock()


@lru_cache(maxsize=None)
def _universal(order: int) -> NcsSystem:
    lam = TruncSeries(NSYM, [NSYM.one()] + [gen("L", k) for k in range(1, order + 1)])
    return complete_from("F", lam)


def universal_system(order: int) -> NcsSystem:
    """The system Pi over NSym with ``f = 1 + sum t^m L_m``."""
    if order < 0:
        raise ValueError("order must be >= 0")
    with _lock:
        return _universal(order)


def _bound(m: int) -> int:
    return max(m, DEFAULT_WEIGHT)


@lru_cache(maxsize=None)
def _to_lambda(basis: str, m: int) -> Element:
    """``basis_m`` written in the Lambda alphabet."""
    if basis == "L":
        return gen("L", m)
    pi = universal_system(_bound(m))
    return pi.family(FAMILY[basis], m)


@lru_cache(maxsize=None)
def _from_lambda(basis: str, m: int) -> Element:
    """``L_m`` written in the ``basis`` alphabet (triangular inversion)."""
    if basis == "L":
        return gen("L", m)
    x = _to_lambda(basis, m)
    lead = x.coefficient((f"L{m}",))
    if lead == 0:
        raise ArithmeticError(f"{basis}{m} has no L{m} term; transition not triangular")
    rest = x - gen("L", m) * lead
    rest_in_basis = substitute(rest, lambda letter: _from_lambda(basis, split_letter(letter)[1]), NSYM)
    return (gen(basis, m) - rest_in_basis) * (1 / lead)


def to_lambda(x: Element) -> Element:
    return substitute(x, lambda letter: _to_lambda(*split_letter(letter)), NSYM)


def convert(x: Element, basis: str) -> Element:
    """Rewrite ``x`` in the generator family ``basis``."""
    if basis not in BASES:
        raise ValueError(f"unknown basis {basis!r}; expected one of {BASES}")
    if bases_in(x) <= {basis}:
        return x
    lam = to_lambda(x)
    if basis == "L":
        return lam
    return substitute(lam, lambda letter: _from_lambda(basis, split_letter(letter)[1]), NSYM)


def basis_of(x: Element, default: str = "L") -> str:
    found = bases_in(x)
    return found.pop() if len(found) == 1 else default


def word_basis(basis: str, m: int) -> list[tuple[str, ...]]:
    """Words of weight ``m`` in one family, ordered like compositions."""
    return [tuple(f"{basis}{p}" for p in comp) for comp in compositions(m)]


def transition_matrix(src: str, dst: str, m: int) -> list[list[mpq]]:
    """Row ``I``: coordinates of the ``src`` word ``I`` in ``dst`` words of weight ``m``."""
    cols = word_basis(dst, m)
    rows = []
    for w in word_basis(src, m):
        y = convert(NSYM.basis(w), dst)
        rows.append([y.coefficient(c) for c in cols])
    return rows


# --------------------------------------------------------------------------
# involutions and Hopf structure
# --------------------------------------------------------------------------


def omega_lambda(x: Element) -> Element:
    """Anti-involution fixing every ``L_m``; the result is in the Lambda alphabet."""
    lam = to_lambda(x)
    return Element(NSYM, {w[::-1]: c for w, c in lam.terms.items()})


def tau_phi(x: Element) -> Element:
    """Algebra involution ``Ph_m -> -Ph_m``; answers in the input's family."""
    basis = basis_of(x)
    ph = convert(x, "Ph")
    flipped = Element(NSYM, {w: c * (-1) ** len(w) for w, c in ph.terms.items()})
    return convert(flipped, basis)


def coproduct(x: Element, basis: str | None = None) -> Element:
    """``Delta(x)`` in ``NSym (x) NSym`` with both sides in ``basis``.

    Computed in the Psi family, where every generator is primitive.
    """
    basis = basis or basis_of(x)
    ps = convert(x, "Ps")
    acc: dict = {}
    for w, c in ps.terms.items():
        n = len(w)
        for mask in itertools.product((0, 1), repeat=n):
            left = tuple(w[i] for i in range(n) if mask[i])
            right = tuple(w[i] for i in range(n) if not mask[i])
            _add_into(acc, {(left, right): c})
    out = Element(NSYM_TENSOR, acc)
    if basis == "Ps":
        return out
    back = lambda y: convert(y, basis)  # noqa: E731
    return tensor_map(out, back, back, NSYM_TENSOR)


def counit(x: Element) -> mpq:
    return x.constant()


def antipode(x: Element, basis: str | None = None) -> Element:
    basis = basis or basis_of(x)
    ps = convert(x, "Ps")
    out = Element(NSYM, {w[::-1]: c * (-1) ** len(w) for w, c in ps.terms.items()})
    return convert(out, basis)


# --------------------------------------------------------------------------
# abelianization
# --------------------------------------------------------------------------


def abelian_ring(m: int) -> PolyRing:
    return PolyRing([f"e{k}" for k in range(1, m + 1)])


def abelianize(x: Element, ring: PolyRing | None = None) -> Element:
    """Image in the commutative polynomial ring on ``e_1, e_2, ...``."""
    lam = to_lambda(x)
    ring = ring or abelian_ring(max(weight(lam), 1))
    return substitute(lam, lambda letter: ring.gen("e" + letter[1:]), ring)


# --------------------------------------------------------------------------
# universal homomorphism
# --------------------------------------------------------------------------


def universal_hom(target: NcsSystem, x: Element):
    """Image of ``x`` under the unique homomorphism sending Pi to ``target``."""
    lam = to_lambda(x)
    if weight(lam) > target.order:
        raise ValueError("insufficient truncation order")
    return substitute(lam, lambda letter: target.f[split_letter(letter)[1]], target.carrier)


# --------------------------------------------------------------------------
# quasi-symmetric functions
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def quasi_shuffle(a: tuple, b: tuple) -> dict:
    if not a:
        return {b: mpq(1)}
    if not b:
        return {a: mpq(1)}
    acc: dict = {}
    for w, c in quasi_shuffle(a[1:], b).items():
        _add_into(acc, {(a[0],) + w: c})
    for w, c in quasi_shuffle(a, b[1:]).items():
        _add_into(acc, {(b[0],) + w: c})
    for w, c in quasi_shuffle(a[1:], b[1:]).items():
        _add_into(acc, {(a[0] + b[0],) + w: c})
    return acc


class QSymAlgebra(BasisCarrier):
    """Quasi-symmetric functions in the monomial basis ``M_I``."""

    name = "QSym"
    one_key = ()
    commutative = True

    def mul_basis(self, a, b):
        return quasi_shuffle(a, b)

    def __eq__(self, other):
        return isinstance(other, QSymAlgebra)

    def __hash__(self):
        return hash("QSym")

    def sort_key(self, key):
        return (sum(key), key)

    def format_key(self, key):
        return "M[" + ",".join(map(str, key)) + "]"

    def M(self, *parts: int) -> Element:
        return self.basis(tuple(parts))

    def parse(self, text: str) -> Element:
        # M[1,2] is rewritten to a single name token M_1_2
        rewritten = re.sub(r"M\[([\d,\s]*)\]", lambda m: "M_" + "_".join(p.strip() for p in m.group(1).split(",") if p.strip()), text)
        acc: dict = {}
        for coeff, factors in parse_terms(rewritten):
            if len(factors) > 1 or (factors and factors[0][1] != 1):
                raise ValueError("QSym text accepts one monomial M[...] per term")
            key = ()
            if factors:
                name = factors[0][0]
                if not name.startswith("M_"):
                    raise ValueError(f"unexpected generator {name!r} in QSym")
                key = tuple(int(p) for p in name[2:].split("_") if p)
            _add_into(acc, {key: coeff})
        return Element(self, acc)


QSYM = QSymAlgebra()


def pair(x: Element, q: Element) -> mpq:
    """Duality pairing with ``<S^I, M_J> = delta_{I,J}``."""
    s = convert(x, "S")
    total = mpq(0)
    for w, c in s.terms.items():
        comp = tuple(split_letter(letter)[1] for letter in w)
        total += c * q.coefficient(comp)
    return total


def format_family(x: Element) -> str:
    return format_terms([(c, "*".join(k)) for k, c in x.items()])
