"""Exact linear combinations over Q, free (non)commutative polynomials and
truncated power series in a central parameter ``t``.

Every carrier used by the rest of the package exposes ``zero()``, ``one()``
and ``name``; its elements support ``+``, ``-``, ``*`` (with each other and
with rational scalars) and ``==``.  Most carriers are *basis carriers*: their
elements are finite maps from hashable basis keys to exact rationals, and
the carrier only has to say how two basis keys multiply.
"""
from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from gmpy2 import mpq

# Coefficients are gmpy2 rationals: exact, always reduced, and they mix
# freely with Fraction and int (hashes and comparisons agree).
Rational = mpq
Scalar = (int, Fraction, type(mpq()))


def as_rational(x):
    if isinstance(x, Scalar):
        return mpq(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _add_into(acc: dict, terms: Mapping, scale=None) -> None:
    if scale is None:
        for k, c in terms.items():
            v = acc.get(k, 0) + c
            if v:
                acc[k] = v
            else:
                acc.pop(k, None)
        return
    for k, c in terms.items():
        v = acc.get(k, 0) + scale * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


# --------------------------------------------------------------------------
# Elements of basis carriers
# --------------------------------------------------------------------------


class Element:
    """A finite rational linear combination of basis keys of ``parent``."""

    __slots__ = ("parent", "terms", "_hash")

    def __init__(self, parent: "BasisCarrier", terms: Mapping | None = None):
        self.parent = parent
        self.terms = {k: mpq(c) for k, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def _make(cls, parent, terms: dict) -> "Element":
        """Trusted constructor: ``terms`` already holds nonzero rationals."""
        self = object.__new__(cls)
        self.parent = parent
        self.terms = terms
        self._hash = None
        return self

    # ---- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.parent != self.parent:
                raise TypeError(f"cannot combine elements of {self.parent.name} and {other.parent.name}")
            return other
        if isinstance(other, Scalar):
            return self.parent.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        _add_into(acc, other.terms)
        return Element._make(self.parent, acc)

    __radd__ = __add__

    def __neg__(self):
        return Element._make(self.parent, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        _add_into(acc, other.terms, -1)
        return Element._make(self.parent, acc)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Scalar):
            c = mpq(other)
            if not c:
                return Element._make(self.parent, {})
            return Element._make(self.parent, {k: c * v for k, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict = {}
        mono = self.parent.mono_mul
        if mono is not None:
            # each product of basis keys is a single key (or zero)
            get = acc.get
            for ka, ca in self.terms.items():
                for kb, cb in other.terms.items():
                    k = mono(ka, kb)
                    if k is not None:
                        acc[k] = get(k, 0) + ca * cb
            return Element._make(self.parent, {k: v for k, v in acc.items() if v})
        mul = self.parent.mul_basis
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                _add_into(acc, mul(ka, kb), ca * cb)
        return Element._make(self.parent, acc)

    def __rmul__(self, other):
        if isinstance(other, Scalar):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            return self * (1 / mpq(other))
        return NotImplemented

    def __pow__(self, n: int):
        out = self.parent.one()
        for _ in range(n):
            out = out * self
        return out

    # ---- comparisons -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Scalar):
            other = self.parent.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.parent == other.parent and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.parent, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # ---- inspection ------------------------------------------------------
    def coefficient(self, key):
        return self.terms.get(key, mpq(0))

    def constant(self):
        return self.coefficient(self.parent.one_key)

    def items(self):
        """Terms in the carrier's canonical order."""
        return sorted(self.terms.items(), key=lambda kv: self.parent.sort_key(kv[0]))

    def map_keys(self, fn: Callable[[Any], Mapping], parent: "BasisCarrier | None" = None) -> "Element":
        """Linear extension of ``fn`` (basis key -> term map) into ``parent``."""
        acc: dict = {}
        for k, c in self.terms.items():
            _add_into(acc, fn(k), c)
        return Element(parent or self.parent, acc)

    def __str__(self):
        return self.parent.format(self)

    def __repr__(self):
        return f"<{self.parent.name}: {self}>"


class BasisCarrier:
    """Base class: an associative unital Q-algebra with a distinguished basis."""

    name = "carrier"
    one_key: Hashable = ()
    commutative = False
    # optional fast path: (key, key) -> key or None, for monomial bases
    mono_mul = None

    def mul_basis(self, a, b) -> Mapping:
        raise NotImplementedError

    def sort_key(self, key):
        return key

    def format_key(self, key) -> str:
        return str(key)

    # ---- constructors ----------------------------------------------------
    def zero(self) -> Element:
        return Element(self, {})

    def one(self) -> Element:
        return Element(self, {self.one_key: mpq(1)})

    def scalar(self, c) -> Element:
        return Element(self, {self.one_key: as_rational(c)})

    def basis(self, key) -> Element:
        return Element(self, {key: mpq(1)})

    def element(self, terms: Mapping) -> Element:
        return Element(self, terms)

    def format(self, x: Element) -> str:
        return format_terms(
            [(c, self.format_key(k) if k != self.one_key else "") for k, c in x.items()]
        )

    def parse(self, text: str) -> Element:
        raise NotImplementedError(f"{self.name} has no text grammar")


def format_terms(terms: Sequence[tuple[mpq, str]]) -> str:
    """Join ``(coefficient, monomial)`` pairs with the shared ``+``/``-`` grammar."""
    if not terms:
        return "0"
    out = []
    for i, (c, mono) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# --------------------------------------------------------------------------
# Concrete carriers
# --------------------------------------------------------------------------


class RationalField(BasisCarrier):
    """Q itself, as a one-dimensional basis carrier (single key ``()``)."""

    name = "QQ"
    commutative = True

    def mul_basis(self, a, b):
        return {(): mpq(1)}

    def mono_mul(self, a, b):
        return ()

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __call__(self, c) -> Element:
        return self.scalar(c)

    def parse(self, text: str) -> Element:
        acc = self.zero()
        for coeff, factors in parse_terms(text):
            if factors:
                raise ParseError(f"unexpected generator {factors[0][0]!r} in a scalar", 0)
            acc = acc + coeff
        return acc


QQ = RationalField()

_LETTER = re.compile(r"^([A-Za-z_]+)(\d*)$")


def letter_key(letter: str):
    m = _LETTER.match(letter)
    if not m:
        return (letter, -1)
    return (m.group(1), int(m.group(2)) if m.group(2) else -1)


class FreeAlgebra(BasisCarrier):
    """Free associative algebra on string letters; keys are words (tuples).

    With ``max_degree`` set, words longer than the bound are discarded, which
    realizes the quotient by the two-sided ideal of long words.
    """

    def __init__(self, name: str = "Free", max_degree: int | None = None, letters: Iterable[str] | None = None):
        self.name = name
        self.max_degree = max_degree
        self.letters = tuple(letters) if letters is not None else None

    def __eq__(self, other):
        return (
            isinstance(other, FreeAlgebra)
            and self.name == other.name
            and self.max_degree == other.max_degree
            and self.letters == other.letters
        )

    def __hash__(self):
        return hash(("Free", self.name, self.max_degree, self.letters))

    def __repr__(self):
        return f"FreeAlgebra({self.name!r}, max_degree={self.max_degree})"

    def mul_basis(self, a, b):
        if self.max_degree is not None and len(a) + len(b) > self.max_degree:
            return {}
        return {a + b: mpq(1)}

    def mono_mul(self, a, b):
        if self.max_degree is not None and len(a) + len(b) > self.max_degree:
            return None
        return a + b

    def sort_key(self, key):
        return (len(key), tuple(letter_key(x) for x in key))

    def format_key(self, key):
        return "*".join(key)

    def gen(self, letter: str) -> Element:
        return self.basis((letter,))

    def word(self, letters: Iterable[str]) -> Element:
        w = tuple(letters)
        if self.max_degree is not None and len(w) > self.max_degree:
            return self.zero()
        return self.basis(w)

    def check_letter(self, letter: str) -> None:
        if self.letters is not None and letter not in self.letters:
            raise ValueError(f"unknown generator {letter!r} for {self.name}")

    def parse(self, text: str) -> Element:
        acc: dict = {}
        for coeff, factors in parse_terms(text):
            word = []
            for letter, power in factors:
                self.check_letter(letter)
                word.extend([letter] * power)
            if self.max_degree is not None and len(word) > self.max_degree:
                continue
            _add_into(acc, {tuple(word): coeff})
        return Element(self, acc)

    def degree(self, key) -> int:
        return len(key)


class PolyRing(BasisCarrier):
    """Commutative polynomials in named variables; keys are exponent tuples."""

    commutative = True

    def __init__(self, variables: Sequence[str], max_degree: int | None = None, name: str | None = None):
        self.variables = tuple(variables)
        self.max_degree = max_degree
        self.name = name or "Poly[" + ",".join(self.variables) + "]"
        self.one_key = (0,) * len(self.variables)
        self._index = {v: i for i, v in enumerate(self.variables)}

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.max_degree == other.max_degree
        )

    def __hash__(self):
        return hash(("Poly", self.variables, self.max_degree))

    def __repr__(self):
        return f"PolyRing({self.variables}, max_degree={self.max_degree})"

    def mul_basis(self, a, b):
        e = self.mono_mul(a, b)
        return {} if e is None else {e: mpq(1)}

    def mono_mul(self, a, b):
        e = tuple(x + y for x, y in zip(a, b))
        if self.max_degree is not None and sum(e) > self.max_degree:
            return None
        return e

    def sort_key(self, key):
        return (sum(key), tuple(-x for x in key))

    def format_key(self, key):
        parts = []
        for v, e in zip(self.variables, key):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts)

    def gen(self, name: str) -> Element:
        e = [0] * len(self.variables)
        e[self._index[name]] = 1
        return self.basis(tuple(e))

    def gens(self) -> list[Element]:
        return [self.gen(v) for v in self.variables]

    def parse(self, text: str) -> Element:
        acc: dict = {}
        for coeff, factors in parse_terms(text):
            e = [0] * len(self.variables)
            for name, power in factors:
                if name not in self._index:
                    raise ValueError(f"unknown variable {name!r} for {self.name}")
                e[self._index[name]] += power
            if self.max_degree is not None and sum(e) > self.max_degree:
                continue
            _add_into(acc, {tuple(e): coeff})
        return Element(self, acc)

    def degree(self, key) -> int:
        return sum(key)

    def partial(self, x: Element, var: str) -> Element:
        i = self._index[var]
        acc: dict = {}
        for k, c in x.terms.items():
            if k[i]:
                e = list(k)
                e[i] -= 1
                _add_into(acc, {tuple(e): c * k[i]})
        return Element(self, acc)


class Tensor(BasisCarrier):
    """Tensor product of two basis carriers, keys are pairs of keys."""

    def __init__(self, left: BasisCarrier, right: BasisCarrier):
        self.left = left
        self.right = right
        self.name = f"({left.name} (x) {right.name})"
        self.one_key = (left.one_key, right.one_key)
        self.commutative = left.commutative and right.commutative
        self._mul = lru_cache(maxsize=None)(self._mul_basis)

    def __eq__(self, other):
        return isinstance(other, Tensor) and self.left == other.left and self.right == other.right

    def __hash__(self):
        return hash(("Tensor", self.left, self.right))

    def mul_basis(self, a, b):
        return self._mul(a, b)

    def _mul_basis(self, a, b):
        ta = self.left.mul_basis(a[0], b[0])
        tb = self.right.mul_basis(a[1], b[1])
        return {(x, y): cx * cy for x, cx in ta.items() for y, cy in tb.items()}

    def sort_key(self, key):
        return (self.left.sort_key(key[0]), self.right.sort_key(key[1]))

    def format_key(self, key):
        def side(carrier, k):
            return "1" if k == carrier.one_key else carrier.format_key(k)

        return f"{side(self.left, key[0])} (x) {side(self.right, key[1])}"

    def format(self, x):
        return format_terms([(c, self.format_key(k)) for k, c in x.items()])

    def pure(self, a: Element, b: Element) -> Element:
        """``a (x) b``."""
        return Element(
            self, {(ka, kb): ca * cb for ka, ca in a.terms.items() for kb, cb in b.terms.items()}
        )

    def left_embed(self, a: Element) -> Element:
        return self.pure(a, self.right.one())

    def right_embed(self, b: Element) -> Element:
        return self.pure(self.left.one(), b)


def tensor_map(x: Element, f: Callable[[Element], Element], g: Callable[[Element], Element],
               target: Tensor | None = None) -> Element:
    """``(f (x) g)(x)`` for ``x`` in a :class:`Tensor` carrier."""
    src: Tensor = x.parent
    out_f: dict = {}
    out_g: dict = {}
    acc: dict = {}
    tgt = target
    for (ka, kb), c in x.terms.items():
        if ka not in out_f:
            out_f[ka] = f(src.left.basis(ka))
        if kb not in out_g:
            out_g[kb] = g(src.right.basis(kb))
        fa, gb = out_f[ka], out_g[kb]
        if tgt is None:
            tgt = Tensor(fa.parent, gb.parent)
        for xa, ca in fa.terms.items():
            for xb, cb in gb.terms.items():
                _add_into(acc, {(xa, xb): c * ca * cb})
    if tgt is None:
        tgt = Tensor(src.left, src.right)
    return Element(tgt, acc)


def substitute(x: Element, image: Callable[[Any], Any], target) -> Any:
    """Algebra-homomorphism extension of a letter map on a free algebra."""
    cache: dict = {}
    total = target.zero()
    for word, c in x.terms.items():
        prod = target.one()
        for letter in word:
            if letter not in cache:
                cache[letter] = image(letter)
            prod = prod * cache[letter]
        total = total + prod * c
    return total


# --------------------------------------------------------------------------
# Text grammar shared by the CLI and fixtures
# --------------------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", int(m.group(1)), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^":
                raise ParseError(f"unexpected character {ch!r}", start)
            out.append((ch, ch, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_terms(text: str) -> list[tuple[mpq, list[tuple[str, int]]]]:
    """Parse ``3/2*z1^2*z2 - z2*z1 + 4`` into ``[(coeff, [(name, power), ...]), ...]``.

    Factor order inside a term is preserved; rationals may appear anywhere in
    a product.
    """
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take(kind):
        nonlocal i
        tok = toks[i]
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        i += 1
        return tok

    def number():
        nonlocal i
        n = mpq(take("num")[1])
        if peek()[0] == "/":
            i += 1
            d = take("num")
            if d[1] == 0:
                raise ParseError("zero denominator", d[2])
            n /= d[1]
        return n

    def factor():
        nonlocal i
        kind, val, pos = peek()
        if kind == "num":
            return number(), None
        if kind == "name":
            i += 1
            power = 1
            if peek()[0] == "^":
                i += 1
                power = take("num")[1]
            return mpq(1), (val, power)
        raise ParseError(f"expected a number or generator, found {val!r}", pos)

    terms = []
    sign = mpq(1)
    if peek()[0] in "+-":
        sign = mpq(-1) if peek()[0] == "-" else mpq(1)
        i += 1
    if peek()[0] == "end":
        raise ParseError("empty expression", peek()[2])
    while True:
        coeff = sign
        factors = []
        c, f = factor()
        coeff *= c
        if f:
            factors.append(f)
        while peek()[0] == "*":
            i += 1
            c, f = factor()
            coeff *= c
            if f:
                factors.append(f)
        terms.append((coeff, factors))
        kind, val, pos = peek()
        if kind == "end":
            return terms
        if kind not in "+-":
            raise ParseError(f"unexpected {val!r}", pos)
        sign = mpq(-1) if kind == "-" else mpq(1)
        i += 1


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside of parentheses/brackets."""
    depth = 0
    parts, cur = [], []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


# --------------------------------------------------------------------------
# Truncated power series in the central parameter t
# --------------------------------------------------------------------------


class TruncSeries:
    """``c_0 + c_1 t + ... + c_N t^N`` with coefficients in one carrier.

    ``order`` is ``N``; an order of ``-1`` (no coefficients) arises when
    differentiating an order-0 series and carries no information.
    """

    __slots__ = ("carrier", "coeffs")

    def __init__(self, carrier, coeffs: Iterable):
        self.carrier = carrier
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, carrier, order: int) -> "TruncSeries":
        z = carrier.zero()
        return cls(carrier, [z] * (order + 1))

    @classmethod
    def one(cls, carrier, order: int) -> "TruncSeries":
        return cls.constant(carrier.one(), order, carrier)

    @classmethod
    def constant(cls, c, order: int, carrier=None) -> "TruncSeries":
        carrier = carrier or c.parent
        z = carrier.zero()
        return cls(carrier, [c] + [z] * order)

    @classmethod
    def from_dict(cls, carrier, coeffs: Mapping[int, Any], order: int) -> "TruncSeries":
        z = carrier.zero()
        return cls(carrier, [coeffs.get(k, z) for k in range(order + 1)])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other: "TruncSeries") -> None:
        if not isinstance(other, TruncSeries) or other.order != self.order or other.carrier != self.carrier:
            raise ValueError("series shape mismatch")

    def __add__(self, other):
        self._check(other)
        return TruncSeries(self.carrier, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return TruncSeries(self.carrier, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TruncSeries(self.carrier, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Scalar):
            c = mpq(other)
            return TruncSeries(self.carrier, [a * c for a in self.coeffs])
        return series_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, Scalar):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        return self * (1 / mpq(other))

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self.carrier == other.carrier and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.order, tuple(self.coeffs)))

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError(f"cannot raise truncation order {self.order} to {order}")
        return TruncSeries(self.carrier, self.coeffs[: order + 1])

    def reflect(self) -> "TruncSeries":
        """Substitute ``t -> -t``."""
        return TruncSeries(self.carrier, [c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    def map(self, fn: Callable, carrier=None) -> "TruncSeries":
        """Apply ``fn`` coefficientwise (base extension of a linear map)."""
        return TruncSeries(carrier or self.carrier, [fn(c) for c in self.coeffs])

    def shift(self) -> "TruncSeries":
        """Multiply by ``t``; the order grows by one."""
        return TruncSeries(self.carrier, [self.carrier.zero()] + list(self.coeffs))

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == self.carrier.zero():
                continue
            s = str(c)
            tk = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not tk:
                parts.append(f"({s})")
            else:
                parts.append(f"{tk}*({s})")
        return (" + ".join(parts) or "0") + f" + O(t^{self.order + 1})"

    def __repr__(self):
        return f"TruncSeries[{self.order}]({self})"


def _is_zero(x) -> bool:
    return not x


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product, ``a`` on the left."""
    a._check(b)
    n = a.order
    nz_a = [i for i, c in enumerate(a.coeffs) if not _is_zero(c)]
    nz_b = [j for j, c in enumerate(b.coeffs) if not _is_zero(c)]
    out = [a.carrier.zero() for _ in range(n + 1)]
    for i in nz_a:
        for j in nz_b:
            if i + j > n:
                break
            out[i + j] = out[i + j] + a.coeffs[i] * b.coeffs[j]
    return TruncSeries(a.carrier, out)


def series_inverse(a: TruncSeries) -> TruncSeries:
    """Two-sided inverse of a series with constant term 1."""
    one = a.carrier.one()
    if a.order < 0 or a.coeffs[0] != one:
        raise ValueError("non-unit constant term")
    b = [one]
    for k in range(1, a.order + 1):
        acc = a.carrier.zero()
        for i in range(1, k + 1):
            if not _is_zero(a.coeffs[i]):
                acc = acc + a.coeffs[i] * b[k - i]
        b.append(-acc)
    return TruncSeries(a.carrier, b)


def series_exp(d: TruncSeries) -> TruncSeries:
    """``sum_{m<=N} d^m / m!`` for ``d`` with zero constant term."""
    if d.order >= 0 and not _is_zero(d.coeffs[0]):
        raise ValueError(f"exp needs a zero constant term, got {d.coeffs[0]}")
    total = TruncSeries.one(d.carrier, d.order)
    power = total
    fact = 1
    for m in range(1, d.order + 1):
        power = series_mul(power, d)
        fact *= m
        total = total + power * mpq(1, fact)
    return total


def series_log(g: TruncSeries) -> TruncSeries:
    """``sum_{m<=N} (-1)^{m+1} (g-1)^m / m`` for ``g`` with constant term 1."""
    one = g.carrier.one()
    if g.order < 0 or g.coeffs[0] != one:
        raise ValueError(f"log needs constant term 1, got {g.coeffs[0] if g.order >= 0 else 'nothing'}")
    x = g - TruncSeries.one(g.carrier, g.order)
    total = TruncSeries.zero(g.carrier, g.order)
    power = TruncSeries.one(g.carrier, g.order)
    for m in range(1, g.order + 1):
        power = series_mul(power, x)
        total = total + power * mpq((-1) ** (m + 1), m)
    return total


def series_ddt(a: TruncSeries) -> TruncSeries:
    """Formal ``d/dt``; the result has order ``N - 1``."""
    return TruncSeries(a.carrier, [a.coeffs[k] * k for k in range(1, a.order + 1)])


def series_integrate(a: TruncSeries) -> TruncSeries:
    """Antiderivative with zero constant term; the order grows by one."""
    return TruncSeries(
        a.carrier, [a.carrier.zero()] + [c * mpq(1, k + 1) for k, c in enumerate(a.coeffs)]
    )


def series_from_text(text: str, carrier: BasisCarrier, order: int, t: str = "t") -> TruncSeries:
    """Parse a polynomial in ``t`` and the carrier's generators into a series.

    ``t`` is central, so its position inside a monomial is irrelevant.
    """
    buckets: dict[int, list] = {}
    for coeff, factors in parse_terms(text):
        k = sum(p for name, p in factors if name == t)
        rest = [(n, p) for n, p in factors if n != t]
        buckets.setdefault(k, []).append((coeff, rest))
    coeffs = {}
    for k, terms in buckets.items():
        if k > order:
            continue
        coeffs[k] = carrier.parse(_unparse(terms)) if terms else carrier.zero()
    return TruncSeries.from_dict(carrier, coeffs, order)


def _unparse(terms) -> str:
    pieces = []
    for coeff, factors in terms:
        mono = "*".join(n if p == 1 else f"{n}^{p}" for n, p in factors)
        pieces.append((coeff, mono))
    return format_terms(pieces)


def rank_q(rows: Sequence[Sequence[mpq]]) -> int:
    """Exact rank over Q."""
    import sympy

    if not rows or not rows[0]:
        return 0
    return sympy.Matrix([[sympy.Rational(int(c.numerator), int(c.denominator)) for c in r] for r in rows]).rank()


def compositions(n: int) -> list[tuple[int, ...]]:
    """All compositions of ``n`` (``[()]`` for ``n = 0``)."""
    if n == 0:
        return [()]
    out = []
    for cuts in itertools.product((0, 1), repeat=n - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(tuple(parts))
    return sorted(out)
