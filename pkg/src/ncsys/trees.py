"""Labeled rooted trees, forests, and the Connes-Kreimer / Grossman-Larson
Hopf algebras.

Trees are :class:`LTree` named tuples ``(label, children)`` whose children are
kept sorted by :func:`tree_key`, so isomorphic trees are equal as values.  A
forest is a sorted tuple of trees.  Grossman-Larson basis trees have root
label 0; their weight ignores the root.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from functools import lru_cache
from typing import Iterable, NamedTuple

from gmpy2 import mpq

from .algebra import BasisCarrier, Element, PolyRing, Tensor, _add_into, format_terms, parse_terms


class LTree(NamedTuple):
    label: int
    children: tuple["LTree", ...] = ()

    def __str__(self):
        return format_tree(self)


Forest = tuple  # tuple[LTree, ...] in canonical order


@lru_cache(maxsize=None)
def tree_key(t: LTree):
    """Canonical total order: (weight, label, children keys)."""
    return (weight(t), t.label, tuple(tree_key(c) for c in t.children))


def make_tree(label: int, children: Iterable[LTree] = ()) -> LTree:
    return LTree(label, tuple(sorted(children, key=tree_key)))


def canonicalize(t) -> LTree:
    """Canonical form of a tree given as nested ``(label, [children])``."""
    label, children = t[0], t[1] if len(t) > 1 else ()
    return make_tree(label, (canonicalize(c) for c in children))


def make_forest(trees: Iterable[LTree]) -> Forest:
    return tuple(sorted(trees, key=tree_key))


def leaf(label: int) -> LTree:
    return LTree(label, ())


def chain(*labels: int) -> LTree:
    """Chain with ``labels[0]`` at the root."""
    t = None
    for lab in reversed(labels):
        t = LTree(lab, (t,) if t is not None else ())
    return t


SINGLETON = LTree(0, ())


# --------------------------------------------------------------------------
# statistics
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def weight(t: LTree) -> int:
    return t.label + sum(weight(c) for c in t.children)


def forest_weight(f: Forest) -> int:
    return sum(weight(t) for t in f)


@lru_cache(maxsize=None)
def num_vertices(t: LTree) -> int:
    return 1 + sum(num_vertices(c) for c in t.children)


def height(t: LTree) -> int:
    return 0 if not t.children else 1 + max(height(c) for c in t.children)


def num_leaves(t: LTree) -> int:
    return 1 if not t.children else sum(num_leaves(c) for c in t.children)


def root_degree(t: LTree) -> int:
    """``o(T)``: number of children of the root."""
    return len(t.children)


@lru_cache(maxsize=None)
def aut_count(t: LTree) -> int:
    """Order of the automorphism group (root and labels preserved)."""
    n = 1
    for child, mult in Counter(t.children).items():
        n *= math.factorial(mult) * aut_count(child) ** mult
    return n


def forest_aut_count(f: Forest) -> int:
    n = 1
    for tree, mult in Counter(f).items():
        n *= math.factorial(mult) * aut_count(tree) ** mult
    return n


def is_chain(t: LTree) -> bool:
    return num_leaves(t) == 1


def is_shrub(t: LTree) -> bool:
    return height(t) == 1


def is_primitive(t: LTree) -> bool:
    return len(t.children) == 1


def leaf_labels(t: LTree) -> list[int]:
    return [t.label] if not t.children else [x for c in t.children for x in leaf_labels(c)]


def beta(t: LTree) -> int:
    """Weight of the unique leaf of a chain of positive weight, else 0."""
    if weight(t) > 0 and is_chain(t):
        return leaf_labels(t)[0]
    return 0


def gamma(t: LTree) -> int:
    """Label of the root's only child for primitive trees, else 0."""
    return t.children[0].label if is_primitive(t) else 0


def labels(t: LTree) -> set[int]:
    out = {t.label}
    for c in t.children:
        out |= labels(c)
    return out


# --------------------------------------------------------------------------
# order polynomial
# --------------------------------------------------------------------------


def _count_maps(f: Forest, s: int) -> int:
    """Order-preserving maps from the forest poset (roots minimal) into ``1..s``."""

    @lru_cache(maxsize=None)
    def above(t: LTree, lo: int) -> int:
        return sum(math.prod(above(c, r) for c in t.children) for r in range(lo, s + 1))

    return math.prod(above(t, 1) for t in f)


_S_RING = PolyRing(["s"])


def order_polynomial(f: Forest) -> Element:
    """``Omega(P, s)`` as a polynomial in ``s`` by interpolation at ``0..v(P)``."""
    v = sum(num_vertices(t) for t in f)
    pts = list(range(v + 1))
    vals = [_count_maps(f, k) for k in pts]
    s = _S_RING.gen("s")
    total = _S_RING.zero()
    for i, xi in enumerate(pts):
        term = _S_RING.scalar(vals[i])
        for j, xj in enumerate(pts):
            if j != i:
                term = term * (s - xj) * mpq(1, xi - xj)
        total = total + term
    return total


def theta(t: LTree) -> mpq:
    """Coefficient of ``s`` in the order polynomial of ``B_-(T)``."""
    return order_polynomial(b_minus(t)).coefficient((1,))


# --------------------------------------------------------------------------
# enumeration
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _trees_of_weight(labels: frozenset, w: int) -> tuple[LTree, ...]:
    out = []
    for r in sorted(labels):
        if r <= w:
            for f in _forests_of_weight(labels, w - r):
                out.append(LTree(r, f))
    return tuple(sorted(out, key=tree_key))


@lru_cache(maxsize=None)
def _forests_of_weight(labels: frozenset, w: int) -> tuple[Forest, ...]:
    if w == 0:
        return ((),)
    pool = [t for k in range(1, w + 1) for t in _trees_of_weight(labels, k)]
    pool.sort(key=tree_key)
    out = []

    def rec(remaining: int, start: int, acc: list):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(pool)):
            t = pool[i]
            wt = weight(t)
            if wt <= remaining:
                acc.append(t)
                rec(remaining - wt, i, acc)
                acc.pop()

    rec(w, 0, [])
    return tuple(sorted(out, key=lambda f: tuple(tree_key(t) for t in f)))


def enumerate_trees(labels: Iterable[int], max_weight: int) -> list[LTree]:
    """All ``labels``-labeled rooted trees of weight ``1..max_weight``."""
    ls = _check_labels(labels)
    return [t for w in range(1, max_weight + 1) for t in _trees_of_weight(ls, w)]


def trees_of_weight(labels: Iterable[int], w: int) -> list[LTree]:
    return list(_trees_of_weight(_check_labels(labels), w))


def forests_of_weight(labels: Iterable[int], w: int) -> list[Forest]:
    return list(_forests_of_weight(_check_labels(labels), w))


def gl_trees_of_weight(labels: Iterable[int], w: int) -> list[LTree]:
    return [b_plus(f) for f in forests_of_weight(labels, w)]


def enumerate_gl_trees(labels: Iterable[int], max_weight: int, include_singleton: bool = True) -> list[LTree]:
    start = 0 if include_singleton else 1
    return [t for w in range(start, max_weight + 1) for t in gl_trees_of_weight(labels, w)]


def _check_labels(labels) -> frozenset:
    ls = frozenset(labels)
    if not ls or any((not isinstance(x, int)) or x <= 0 for x in ls):
        raise ValueError("label set must be a nonempty set of positive integers")
    return ls


# --------------------------------------------------------------------------
# B+ / B- and cuts
# --------------------------------------------------------------------------


def b_plus(f: Forest) -> LTree:
    return make_tree(0, f)


def b_minus(t: LTree) -> Forest:
    if t.label != 0:
        raise ValueError(f"B_- needs a root labeled 0, got {t.label}")
    return t.children


@lru_cache(maxsize=None)
def admissible_cuts(t: LTree) -> tuple[tuple[Forest, LTree], ...]:
    """Every admissible cut as ``(P_C, R_C)``; the empty cut gives ``((), T)``."""
    per_child = []
    for c in t.children:
        options = [((c,), None)]  # cut the edge above c
        options.extend(admissible_cuts(c))
        per_child.append(options)
    out = []
    for choice in itertools.product(*per_child):
        pruned: list[LTree] = []
        kept: list[LTree] = []
        for p, r in choice:
            pruned.extend(p)
            if r is not None:
                kept.append(r)
        out.append((make_forest(pruned), make_tree(t.label, kept)))
    return tuple(out)


# --------------------------------------------------------------------------
# text format
# --------------------------------------------------------------------------


def format_tree(t: LTree) -> str:
    if not t.children:
        return f"({t.label})"
    return f"({t.label} " + " ".join(format_tree(c) for c in t.children) + ")"


def format_forest(f: Forest) -> str:
    return "{" + ", ".join(format_tree(t) for t in f) + "}"


def parse_tree(text: str) -> LTree:
    from .algebra import ParseError

    pos = 0

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def node():
        nonlocal pos
        skip()
        if pos >= len(text) or text[pos] != "(":
            raise ParseError("expected '('", pos)
        pos += 1
        skip()
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if start == pos:
            raise ParseError("expected a vertex label", pos)
        label = int(text[start:pos])
        kids = []
        while True:
            skip()
            if pos < len(text) and text[pos] == ")":
                pos += 1
                return make_tree(label, kids)
            if pos >= len(text):
                raise ParseError("unbalanced parentheses", pos)
            kids.append(node())

    t = node()
    skip()
    if pos != len(text):
        raise ParseError("trailing input", pos)
    return t


def parse_forest(text: str) -> Forest:
    from .algebra import ParseError, split_top_level

    s = text.strip()
    if s in ("1", "{}"):
        return ()
    if not (s.startswith("{") and s.endswith("}")):
        raise ParseError("a forest is written {tree, tree, ...}", 0)
    body = s[1:-1].strip()
    if not body:
        return ()
    return make_forest(parse_tree(p) for p in split_top_level(body))


# --------------------------------------------------------------------------
# Connes-Kreimer
# --------------------------------------------------------------------------


class ConnesKreimer(BasisCarrier):
    """Commutative algebra of forests; keys are canonical forests."""

    name = "CK"
    one_key = ()
    commutative = True
    spec = "CK"

    def __eq__(self, other):
        return isinstance(other, ConnesKreimer)

    def __hash__(self):
        return hash("CK")

    def mul_basis(self, a, b):
        return {make_forest(a + b): mpq(1)}

    def mono_mul(self, a, b):
        return make_forest(a + b)

    def sort_key(self, key):
        return (forest_weight(key), tuple(tree_key(t) for t in key))

    def format_key(self, key):
        return format_forest(key)

    def format(self, x):
        return format_terms([(c, "1" if k == () else self.format_key(k)) for k, c in x.items()])

    def parse(self, text: str) -> Element:
        return _parse_lincomb(self, text, parse_forest)

    def forest(self, *trees: LTree) -> Element:
        return self.basis(make_forest(trees))

    # -- coalgebra --
    def tree_coproduct(self, t: LTree) -> dict:
        acc: dict = {((t,), ()): mpq(1)}
        for p, r in admissible_cuts(t):
            _add_into(acc, {(p, (r,)): mpq(1)})
        return acc

    @lru_cache(maxsize=None)
    def coproduct_basis(self, f: Forest) -> dict:
        acc: dict = {((), ()): mpq(1)}
        for t in f:
            new: dict = {}
            for (a, b), c in acc.items():
                for (x, y), d in self.tree_coproduct(t).items():
                    _add_into(new, {(make_forest(a + x), make_forest(b + y)): c * d})
            acc = new
        return acc

    def coproduct(self, x: Element) -> Element:
        return x.map_keys(self.coproduct_basis, Tensor(self, self))

    def counit(self, x: Element) -> mpq:
        return x.constant()

    @lru_cache(maxsize=None)
    def _antipode_tree(self, t: LTree) -> Element:
        # S(T) = -T - sum_{C nonempty} S(P_C) R_C
        out = -self.basis((t,))
        for p, r in admissible_cuts(t):
            if not p:
                continue
            out = out - self.antipode_basis(p) * self.basis((r,))
        return out

    @lru_cache(maxsize=None)
    def antipode_basis(self, f: Forest) -> Element:
        out = self.one()
        for t in f:
            out = out * self._antipode_tree(t)
        return out

    def antipode(self, x: Element) -> Element:
        return x.map_keys(lambda k: self.antipode_basis(k).terms)


CK = ConnesKreimer()


# --------------------------------------------------------------------------
# Grossman-Larson
# --------------------------------------------------------------------------


def _graft(s: LTree, extra: dict[int, list[LTree]]) -> LTree:
    counter = itertools.count()

    def rebuild(node: LTree) -> LTree:
        idx = next(counter)
        kids = [rebuild(c) for c in node.children]
        kids.extend(extra.get(idx, ()))
        return make_tree(node.label, kids)

    return rebuild(s)


class GrossmanLarson(BasisCarrier):
    """Span of root-0 trees; ``T.S`` grafts the branches of ``T`` onto ``S``."""

    name = "GL"
    one_key = SINGLETON
    spec = "GL"

    def __eq__(self, other):
        return isinstance(other, GrossmanLarson)

    def __hash__(self):
        return hash("GL")

    @lru_cache(maxsize=None)
    def mul_basis(self, a: LTree, b: LTree) -> dict:
        branches = a.children
        nv = num_vertices(b)
        acc: dict = {}
        for assignment in itertools.product(range(nv), repeat=len(branches)):
            extra: dict[int, list[LTree]] = {}
            for br, v in zip(branches, assignment):
                extra.setdefault(v, []).append(br)
            _add_into(acc, {_graft(b, extra): mpq(1)})
        return acc

    def sort_key(self, key):
        return tree_key(key)

    def format_key(self, key):
        return format_tree(key)

    def format(self, x):
        return format_terms([(c, self.format_key(k)) for k, c in x.items()])

    def parse(self, text: str) -> Element:
        return _parse_lincomb(self, text, parse_tree)

    def tree(self, t: LTree) -> Element:
        if t.label != 0:
            raise ValueError("Grossman-Larson basis trees have root label 0")
        return self.basis(t)

    # -- coalgebra --
    @lru_cache(maxsize=None)
    def coproduct_basis(self, t: LTree) -> dict:
        m = len(t.children)
        acc: dict = {}
        for mask in itertools.product((0, 1), repeat=m):
            left = [t.children[i] for i in range(m) if mask[i]]
            right = [t.children[i] for i in range(m) if not mask[i]]
            _add_into(acc, {(make_tree(0, left), make_tree(0, right)): mpq(1)})
        return acc

    def coproduct(self, x: Element) -> Element:
        return x.map_keys(self.coproduct_basis, Tensor(self, self))

    def counit(self, x: Element) -> mpq:
        return x.constant()

    @lru_cache(maxsize=None)
    def antipode_basis(self, t: LTree) -> Element:
        if t == SINGLETON:
            return self.one()
        out = -self.basis(t)
        for (a, b), c in self.coproduct_basis(t).items():
            if a == SINGLETON or b == SINGLETON:
                continue
            out = out - self.antipode_basis(a) * self.basis(b) * c
        return out

    def antipode(self, x: Element) -> Element:
        return x.map_keys(lambda k: self.antipode_basis(k).terms)


GL = GrossmanLarson()


def _parse_lincomb(carrier: BasisCarrier, text: str, parse_key) -> Element:
    """``c1*KEY + c2*KEY``, where keys are bracketed tree/forest strings."""
    from .algebra import ParseError

    # protect bracketed keys from the polynomial tokenizer
    keys: list = []
    out, i, depth, start = [], 0, 0, None
    while i < len(text):
        ch = text[i]
        if ch in "({":
            if depth == 0:
                start = i
            depth += 1
        elif ch in ")}":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced brackets", i)
            if depth == 0:
                keys.append(parse_key(text[start : i + 1]))
                out.append(f"K{len(keys) - 1}")
        elif depth == 0:
            out.append(ch)
        i += 1
    if depth:
        raise ParseError("unbalanced brackets", len(text))
    acc: dict = {}
    for coeff, factors in parse_terms("".join(out)):
        if len(factors) > 1 or (factors and factors[0][1] != 1):
            raise ParseError("one basis element per term", 0)
        if factors:
            name = factors[0][0]
            if not name.startswith("K"):
                raise ParseError(f"unexpected name {name!r}", 0)
            key = keys[int(name[1:])]
        else:
            key = carrier.one_key
        _add_into(acc, {key: coeff})
    return Element(carrier, acc)


def pairing(t: LTree, f: Forest) -> int:
    """``<T, F> = alpha(T)`` if ``T = B_+(F)``, else 0."""
    return aut_count(t) if t == b_plus(f) else 0


def pair_elements(x: Element, y: Element) -> mpq:
    """Bilinear extension of :func:`pairing` to GL x CK (or their tensor squares)."""
    if isinstance(x.parent, Tensor):
        total = mpq(0)
        for (a, b), c in x.terms.items():
            for (p, q), d in y.terms.items():
                total += c * d * pairing(a, p) * pairing(b, q)
        return total
    return sum((c * y.coefficient(b_minus(t)) * aut_count(t) for t, c in x.terms.items()), mpq(0))
