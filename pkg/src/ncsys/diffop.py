"""Formal automorphisms ``F_t = z - H_t(z)`` and their NCS systems over the
algebra of differential operators.

Operators are stored by their action on the space of polynomials of degree
at most ``D`` in the variables ``z``.  Every operator built here maps degree
``k`` into degrees ``>= k``, so dropping degrees above ``D`` is a quotient
that respects sums and compositions.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from gmpy2 import mpq

from .algebra import (
    Element,
    FreeAlgebra,
    ParseError,
    PolyRing,
    Scalar,
    TruncSeries,
    _add_into,
    series_ddt,
    series_log,
    series_mul,
    split_top_level,
    series_from_text,
)
from .ncs import NcsSystem

DEFAULT_DEGREE = 6
DEFAULT_ORDER = 4


# --------------------------------------------------------------------------
# polynomial spaces
# --------------------------------------------------------------------------


class PolySpace:
    """Polynomials of degree ``<= degree`` in ``variables``."""

    def __init__(self, variables: Sequence[str], degree: int = DEFAULT_DEGREE, commutative: bool = False):
        self.variables = tuple(variables)
        if not self.variables or len(set(self.variables)) != len(self.variables):
            raise ValueError("variables must be distinct and nonempty")
        if "t" in self.variables:
            raise ValueError("'t' is reserved for the series parameter")
        self.degree = degree
        self.commutative = commutative
        if commutative:
            self.carrier = PolyRing(self.variables, max_degree=degree)
        else:
            self.carrier = FreeAlgebra("z", max_degree=degree, letters=self.variables)
        self.basis = self._basis()

    def __eq__(self, other):
        return isinstance(other, PolySpace) and (self.variables, self.degree, self.commutative) == (
            other.variables, other.degree, other.commutative)

    def __hash__(self):
        return hash((self.variables, self.degree, self.commutative))

    def __repr__(self):
        kind = "commutative" if self.commutative else "noncommutative"
        return f"PolySpace({','.join(self.variables)}; degree<={self.degree}; {kind})"

    def _basis(self):
        out = []
        n = len(self.variables)
        for k in range(self.degree + 1):
            if self.commutative:
                for combo in itertools.combinations_with_replacement(range(n), k):
                    e = [0] * n
                    for i in combo:
                        e[i] += 1
                    out.append(tuple(e))
            else:
                out.extend(itertools.product(self.variables, repeat=k))
        return out

    def key_degree(self, key) -> int:
        return sum(key) if self.commutative else len(key)

    def letters(self, key) -> list[str]:
        """The monomial as a list of variable names (positions)."""
        if self.commutative:
            return [v for v, e in zip(self.variables, key) for _ in range(e)]
        return list(key)

    def gen(self, var: str) -> Element:
        return self.carrier.gen(var)

    def monomial(self, key) -> Element:
        return self.carrier.basis(key)

    def from_letters(self, letters: Sequence[str]) -> Element:
        out = self.carrier.one()
        for x in letters:
            out = out * self.gen(x)
        return out

    def parse(self, text: str) -> Element:
        return self.carrier.parse(text)

    def poly_degree(self, x: Element) -> set[int]:
        return {self.key_degree(k) for k in x.terms}


# --------------------------------------------------------------------------
# operators
# --------------------------------------------------------------------------


class DiffOpAlgebra:
    """Linear operators on a :class:`PolySpace`; the product is composition."""

    def __init__(self, space: PolySpace):
        self.space = space
        self.name = f"End({space!r})"
        self.commutative = False

    def __eq__(self, other):
        return isinstance(other, DiffOpAlgebra) and self.space == other.space

    def __hash__(self):
        return hash(("DiffOp", self.space))

    def zero(self) -> "DiffOp":
        return DiffOp(self, {})

    def one(self) -> "DiffOp":
        return DiffOp(self, {k: {k: mpq(1)} for k in self.space.basis})

    def scalar(self, c) -> "DiffOp":
        return self.one() * mpq(c)

    def from_function(self, fn: Callable[[object], Element]) -> "DiffOp":
        """Operator whose column at basis key ``u`` is ``fn(u)``."""
        return DiffOp(self, {k: fn(k).terms for k in self.space.basis})


class DiffOp:
    __slots__ = ("algebra", "cols", "_hash")

    def __init__(self, algebra: DiffOpAlgebra, cols: Mapping):
        self.algebra = algebra
        self.cols = {}
        for k, col in cols.items():
            col = {j: c for j, c in col.items() if c}
            if col:
                self.cols[k] = col
        self._hash = None

    @property
    def space(self) -> PolySpace:
        return self.algebra.space

    def _combine(self, other, scale):
        if isinstance(other, Scalar):
            other = self.algebra.scalar(other)
        if not isinstance(other, DiffOp):
            return NotImplemented
        if other.algebra != self.algebra:
            raise TypeError("operators act on different spaces")
        cols = {k: dict(v) for k, v in self.cols.items()}
        for k, col in other.cols.items():
            acc = cols.setdefault(k, {})
            _add_into(acc, col, scale)
        return DiffOp(self.algebra, cols)

    def __add__(self, other):
        return self._combine(other, mpq(1))

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, mpq(-1))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return DiffOp(self.algebra, {k: {j: -c for j, c in col.items()} for k, col in self.cols.items()})

    def __mul__(self, other):
        if isinstance(other, Scalar):
            c = mpq(other)
            if not c:
                return self.algebra.zero()
            return DiffOp(self.algebra, {k: {j: c * v for j, v in col.items()} for k, col in self.cols.items()})
        if not isinstance(other, DiffOp):
            return NotImplemented
        if other.algebra != self.algebra:
            raise TypeError("operators act on different spaces")
        # (self * other)(u) = self(other(u))
        cols = {}
        mine = self.cols
        for k, col in other.cols.items():
            acc: dict = {}
            for j, c in col.items():
                img = mine.get(j)
                if img:
                    _add_into(acc, img, c)
            if acc:
                cols[k] = acc
        return DiffOp(self.algebra, cols)

    def __rmul__(self, other):
        if isinstance(other, Scalar):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        return self * (1 / mpq(other))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            other = self.algebra.scalar(other)
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.algebra == other.algebra and self.cols == other.cols

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset((k, frozenset(c.items())) for k, c in self.cols.items()))
        return self._hash

    def __bool__(self):
        return bool(self.cols)

    def column(self, key) -> Element:
        return Element(self.space.carrier, self.cols.get(key, {}))

    def apply(self, u: Element) -> Element:
        acc: dict = {}
        for k, c in u.terms.items():
            _add_into(acc, self.cols.get(k, {}), c)
        return Element(self.space.carrier, acc)

    def __call__(self, u: Element) -> Element:
        return self.apply(u)

    def __str__(self):
        if not self.cols:
            return "0"
        sp = self.space
        parts = []
        for k in sp.basis:
            if k in self.cols:
                src = sp.carrier.format_key(k) if sp.key_degree(k) else "1"
                parts.append(f"{src} -> {self.column(k)}")
        return "{" + "; ".join(parts) + "}"

    def __repr__(self):
        return f"<DiffOp {self}>"


def derivation(space: PolySpace, components: Mapping[str, Element] | Sequence[Element]) -> DiffOp:
    """``[u d/dz]``: each occurrence of ``z_i`` is replaced by ``u_i`` in turn."""
    if not isinstance(components, Mapping):
        components = dict(zip(space.variables, components))
    return DiffOpAlgebra(space).from_function(lambda k: apply_derivation(space, components, space.monomial(k)))


def apply_derivation(space: PolySpace, components: Mapping[str, Element], u: Element) -> Element:
    out = space.carrier.zero()
    for key, c in u.terms.items():
        out = out + multi_replace(space, key, [components]) * c
    return out


def multi_replace(space: PolySpace, key, fields: Sequence[Mapping[str, Element]]) -> Element:
    """Sum over injective maps ``fields -> positions`` of the monomial with the
    letter at each chosen position replaced by that field's component.

    One field gives the Leibniz action of a derivation; ``k`` fields give the
    symmetric multilinear ``k``-th derivative.
    """
    letters = space.letters(key)
    carrier = space.carrier
    out = carrier.zero()
    for positions in itertools.permutations(range(len(letters)), len(fields)):
        chosen = dict(zip(positions, fields))
        prod = carrier.one()
        for p, x in enumerate(letters):
            if p in chosen:
                comp = chosen[p].get(x)
                if comp is None or not comp:
                    prod = None
                    break
                prod = prod * comp
            else:
                prod = prod * space.gen(x)
            if not prod:
                break
        if prod:
            out = out + prod
    return out


def is_derivation(op: DiffOp, samples: Sequence[tuple[Element, Element]]) -> bool:
    """Leibniz rule ``D(uv) = D(u)v + uD(v)`` on the given pairs."""
    return all(op(u * v) == op(u) * v + u * op(v) for u, v in samples)


# --------------------------------------------------------------------------
# formal maps
# --------------------------------------------------------------------------


class FormalMap:
    """A map ``z -> P_t(z)`` with ``P_{t=0}(z) = z``, one series per variable."""

    def __init__(self, space: PolySpace, components: Sequence[TruncSeries]):
        if len(components) != len(space.variables):
            raise ValueError(f"expected {len(space.variables)} components, got {len(components)}")
        orders = {c.order for c in components}
        if len(orders) != 1:
            raise ValueError("components must share one truncation order")
        self.space = space
        self.components = tuple(components)
        self.order = orders.pop()
        for v, c in zip(space.variables, components):
            if c.carrier != space.carrier:
                raise ValueError("component carrier does not match the polynomial space")
            if c[0] != space.gen(v):
                raise ValueError(f"component {v} at t=0 must be {v}, got {c[0]}")
        for s in self.H:
            for k in range(s.order + 1):
                if s[k].terms.get(space.carrier.one_key):
                    raise ValueError("H_t must have no constant term (order >= 1 in z)")

    @classmethod
    def parse(cls, text: str, variables: Sequence[str], order: int = DEFAULT_ORDER,
              degree: int = DEFAULT_DEGREE, commutative: bool = False) -> "FormalMap":
        """``"z1 - t*z2*z1, z2"``: the components of ``F_t`` in order."""
        space = PolySpace(variables, degree, commutative)
        parts = split_top_level(text)
        if len(parts) != len(space.variables):
            raise ParseError(f"expected {len(space.variables)} comma-separated components, got {len(parts)}", 0)
        comps = [series_from_text(p, space.carrier, order) for p in parts]
        return cls(space, comps)

    @classmethod
    def from_H(cls, space: PolySpace, H: Sequence[TruncSeries]) -> "FormalMap":
        """``F_t = z - H_t``."""
        return cls(space, [_identity_series(space, v, h.order) - h for v, h in zip(space.variables, H)])

    @classmethod
    def from_slices(cls, space: PolySpace, slices: Mapping[int, Sequence[Element | str]], order: int) -> "FormalMap":
        """``F_t = z - sum_m t^m H_[m]``."""
        H = []
        for i in range(len(space.variables)):
            coeffs = {}
            for m, vec in slices.items():
                if m < 1:
                    raise ValueError("slices are indexed by m >= 1")
                x = vec[i]
                x = space.parse(x) if isinstance(x, str) else x
                if m <= order:
                    coeffs[m] = x
            H.append(TruncSeries.from_dict(space.carrier, coeffs, order))
        return cls.from_H(space, H)

    def __eq__(self, other):
        return isinstance(other, FormalMap) and self.space == other.space and self.components == other.components

    def __hash__(self):
        return hash((self.space, self.components))

    @property
    def H(self) -> tuple[TruncSeries, ...]:
        """``z - P_t``."""
        return tuple(_identity_series(self.space, v, self.order) - c for v, c in zip(self.space.variables, self.components))

    @property
    def M(self) -> tuple[TruncSeries, ...]:
        """``P_t - z``."""
        return tuple(-h for h in self.H)

    def slice(self, m: int) -> list[Element]:
        """``H_[m]``, the ``t^m`` coefficient of ``H_t``."""
        return [h[m] for h in self.H]

    @property
    def alpha(self) -> int | None:
        """Least z-degree occurring in ``H_t`` (None when ``H = 0``)."""
        degs = [self.space.key_degree(k) for h in self.H for c in h for k in c.terms]
        return min(degs) if degs else None

    def __str__(self):
        return ", ".join(str(c) for c in self.components)


def _identity_series(space: PolySpace, var: str, order: int) -> TruncSeries:
    return TruncSeries.constant(space.gen(var), order, space.carrier)


def _t_poly_str(series: TruncSeries) -> str:
    """Render a series over z-polynomials as a polynomial in ``t`` and ``z``."""
    from .algebra import format_terms

    terms = []
    for k, c in enumerate(series):
        for key, coeff in c.items():
            mono = series.carrier.format_key(key) if key != series.carrier.one_key else ""
            tk = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            terms.append((coeff, "*".join(x for x in (tk, mono) if x)))
    return format_terms(terms)


def format_map(fm: FormalMap) -> list[str]:
    return [_t_poly_str(c) for c in fm.components]


def compose(p: TruncSeries, subs: Mapping[str, TruncSeries], space: PolySpace) -> TruncSeries:
    """``p(t, S_t(z))`` where ``S`` substitutes a series for each variable."""
    n = p.order
    carrier = space.carrier
    out = TruncSeries.zero(carrier, n)
    cache: dict = {}

    def mono(letters: tuple, order: int) -> TruncSeries:
        key = (letters, order)
        if key not in cache:
            if not letters:
                cache[key] = TruncSeries.one(carrier, order)
            else:
                head = mono(letters[:-1], order)
                cache[key] = series_mul(head, subs[letters[-1]].truncate(order))
        return cache[key]

    for k in range(n + 1):
        for key, c in p[k].terms.items():
            s = mono(tuple(space.letters(key)), n - k)
            shifted = [carrier.zero()] * k + [x * c for x in s]
            out = out + TruncSeries(carrier, shifted)
    return out


def apply_map(fm: FormalMap, u: Element, order: int | None = None) -> TruncSeries:
    """``u(P_t(z))`` as a series in ``t``."""
    order = fm.order if order is None else order
    subs = {v: c.truncate(order) for v, c in zip(fm.space.variables, fm.components)}
    return compose(TruncSeries.constant(u, order, fm.space.carrier), subs, fm.space)


def compose_maps(a: FormalMap, b: FormalMap) -> FormalMap:
    """``a(b(z))``."""
    subs = dict(zip(b.space.variables, b.components))
    return FormalMap(a.space, [compose(c, subs, a.space) for c in a.components])


@lru_cache(maxsize=64)
def invert_map(fm: FormalMap) -> FormalMap:
    """``G_t = F_t^{-1} = z + M_t`` by the fixed point ``G = z + H_t(G)``."""
    space = fm.space
    H = fm.H
    ident = [_identity_series(space, v, fm.order) for v in space.variables]
    G = list(ident)
    # each pass fixes one more power of t
    for _ in range(fm.order + 1):
        subs = dict(zip(space.variables, G))
        new = [z + compose(h, subs, space) for z, h in zip(ident, H)]
        if new == G:
            break
        G = new
    return FormalMap(space, G)


# --------------------------------------------------------------------------
# the NCS system of a formal map
# --------------------------------------------------------------------------


def substitution_series(fm: FormalMap) -> TruncSeries:
    """Operator series ``u -> u(P_t)``; its ``t^k`` coefficient is an operator."""
    space = fm.space
    alg = DiffOpAlgebra(space)
    n = fm.order
    subs = dict(zip(space.variables, fm.components))
    carrier = space.carrier
    cols = [dict() for _ in range(n + 1)]
    for key in space.basis:
        s = compose(TruncSeries.constant(space.monomial(key), n, carrier), subs, space)
        for k in range(n + 1):
            if s[k]:
                cols[k][key] = s[k].terms
    return TruncSeries(alg, [DiffOp(alg, c) for c in cols])


def substitution_op(fm: FormalMap, k: int) -> DiffOp:
    return substitution_series(fm)[k]


def derivation_series(space: PolySpace, comps: Sequence[TruncSeries]) -> TruncSeries:
    """``[u_t d/dz]`` coefficientwise in ``t``."""
    alg = DiffOpAlgebra(space)
    order = comps[0].order
    out = []
    for k in range(order + 1):
        out.append(derivation(space, {v: c[k] for v, c in zip(space.variables, comps)}))
    return TruncSeries(alg, out)


@lru_cache(maxsize=64)
def omega_Ft(fm: FormalMap) -> NcsSystem:
    """``(f, g, d, h, m)`` with ``f(-t)u = u(F_t)`` and ``g(t)u = u(G_t)``."""
    space = fm.space
    G = invert_map(fm)
    subs_F = {v: c.truncate(fm.order - 1) for v, c in zip(space.variables, fm.components)}
    subs_G = {v: c.truncate(fm.order - 1) for v, c in zip(space.variables, G.components)}
    f = substitution_series(fm).reflect()
    g = substitution_series(G)
    d = series_log(g)
    h_comps = [compose(series_ddt(mc), subs_F, space) for mc in G.M]
    m_comps = [compose(series_ddt(hc), subs_G, space) for hc in fm.H]
    return NcsSystem(f, g, d, derivation_series(space, h_comps), derivation_series(space, m_comps))


def dlog(fm: FormalMap) -> tuple[TruncSeries, ...]:
    """``a_t`` with ``d(t) = log g(t) = -[a_t d/dz]``, one series per variable."""
    space = fm.space
    d = omega_Ft(fm).d
    out = []
    for v in space.variables:
        z = space.gen(v)
        out.append(TruncSeries(space.carrier, [-(op(z)) for op in d]))
    for k, op in enumerate(d):
        comps = {v: -out[i][k] for i, v in enumerate(space.variables)}
        if op != derivation(space, comps):
            raise ArithmeticError(f"log g has a non-derivation coefficient at t^{k}")
    return tuple(out)


def s_Ft(fm: FormalMap, x: Element) -> DiffOp:
    """Image of an NSym element under the specialization attached to ``F_t``."""
    from .nsym import universal_hom

    return universal_hom(omega_Ft(fm), x)


# --------------------------------------------------------------------------
# the C_m sequence
# --------------------------------------------------------------------------


def cm_sequence(space: PolySpace, H: Sequence[Element], maxm: int) -> list[list[Element]]:
    """``C_1 = H``, ``C_m = [C_{m-1} d/dz] H``."""
    H = [space.parse(h) if isinstance(h, str) else h for h in H]
    out = [list(H)]
    for _ in range(2, maxm + 1):
        prev = dict(zip(space.variables, out[-1]))
        out.append([apply_derivation(space, prev, h) for h in H])
    return out


def jacobian_cm(space: PolySpace, H: Sequence[Element], m: int) -> list[Element]:
    """``(JH)^{m-1} H`` in commuting variables."""
    if not space.commutative:
        raise ValueError("commutative only")
    ring: PolyRing = space.carrier
    H = [space.parse(h) if isinstance(h, str) else h for h in H]
    J = [[ring.partial(h, v) for v in space.variables] for h in H]
    vec = list(H)
    for _ in range(m - 1):
        vec = [sum((J[i][j] * vec[j] for j in range(len(vec))), ring.zero()) for i in range(len(vec))]
    return vec


def inverse_slices(fm: FormalMap) -> list[list[Element]]:
    """``N_[m]`` for ``m = 1..order``: the ``t^m`` coefficients of ``M_t``."""
    G = invert_map(fm)
    return [[mc[m] for mc in G.M] for m in range(1, fm.order + 1)]


# --------------------------------------------------------------------------
# grading
# --------------------------------------------------------------------------


def syntactic_graded(fm: FormalMap) -> bool:
    """``F_t(z) = t^{-1} F(tz)``: every ``H_[m]`` homogeneous of degree ``m + 1``."""
    sp = fm.space
    return all(sp.poly_degree(h) <= {m + 1} for m in range(1, fm.order + 1) for h in fm.slice(m))


def grading_check(fm: FormalMap) -> tuple[bool, bool]:
    """``(verdict, agrees)``: does every ``lambda_m`` raise degree by exactly
    ``m`` on monomials, and does that match :func:`syntactic_graded`?"""
    sp = fm.space
    f = omega_Ft(fm).f
    verdict = True
    for m in range(1, fm.order + 1):
        op = f[m]
        for key in sp.basis:
            k = sp.key_degree(key)
            if k + m > sp.degree:
                continue
            if not sp.poly_degree(op.column(key)) <= {k + m}:
                verdict = False
                break
        if not verdict:
            break
    return verdict, verdict == syntactic_graded(fm)


# --------------------------------------------------------------------------
# trees to operators
# --------------------------------------------------------------------------


class TreeOperatorMap:
    """``A_{F_t}: H_GL -> operators`` for ``F_t = z - sum_{m in W} t^m H_[m]``.

    A vertex labeled ``m`` with subtrees ``S_1..S_j`` carries the vector field
    obtained by feeding the subtrees' fields into the ``j``-th derivative of
    ``H_[m]``; a root-0 tree ``B_+(S_1..S_k)`` acts on ``u`` through the
    ``k``-th derivative of ``u``.
    """

    def __init__(self, fm: FormalMap, labels):
        self.fm = fm
        self.labels = frozenset(labels)
        for m in range(1, fm.order + 1):
            if m not in self.labels and any(fm.slice(m)):
                raise ValueError(f"H_t has a t^{m} slice but {m} is not a label")
        self.space = fm.space
        self.algebra = DiffOpAlgebra(fm.space)
        self._fields: dict = {}
        self._ops: dict = {}

    def field(self, tree) -> dict[str, Element]:
        if tree in self._fields:
            return self._fields[tree]
        if tree.label not in self.labels:
            raise ValueError(f"vertex label {tree.label} is outside the label set")
        sp = self.space
        H = self.fm.slice(tree.label) if tree.label <= self.fm.order else [sp.carrier.zero()] * len(sp.variables)
        kids = [self.field(c) for c in tree.children]
        out = {}
        for v, h in zip(sp.variables, H):
            acc = sp.carrier.zero()
            for key, c in h.terms.items():
                acc = acc + multi_replace(sp, key, kids) * c
            out[v] = acc
        self._fields[tree] = out
        return out

    def basis_op(self, tree) -> DiffOp:
        if tree.label != 0:
            raise ValueError("Grossman-Larson basis trees have root label 0")
        if tree not in self._ops:
            kids = [self.field(c) for c in tree.children]
            self._ops[tree] = self.algebra.from_function(lambda key: multi_replace(self.space, key, kids))
        return self._ops[tree]

    def __call__(self, x: Element) -> DiffOp:
        out = self.algebra.zero()
        for t, c in x.terms.items():
            out = out + self.basis_op(t) * c
        return out


def tree_operator(fm: FormalMap, labels, tree) -> DiffOp:
    return TreeOperatorMap(fm, labels).basis_op(tree)


def tree_expansion_inverse(fm: FormalMap, labels=None) -> list[list[Element]]:
    """``N_[m] = sum_{|S| = m} field(S) / alpha(S)`` over labeled trees."""
    from .trees import aut_count, trees_of_weight

    labels = labels or range(1, fm.order + 1)
    A = TreeOperatorMap(fm, labels)
    sp = fm.space
    out = []
    for m in range(1, fm.order + 1):
        vec = [sp.carrier.zero() for _ in sp.variables]
        for s in trees_of_weight(labels, m):
            fld = A.field(s)
            vec = [x + fld[v] * mpq(1, aut_count(s)) for x, v in zip(vec, sp.variables)]
        out.append(vec)
    return out


# --------------------------------------------------------------------------
# JSON
# --------------------------------------------------------------------------


def op_to_json(op: DiffOp) -> dict[str, str]:
    """Nonzero columns keyed by source monomial (``"1"`` for the constant)."""
    sp = op.space
    out = {}
    for key in sp.basis:
        if key in op.cols:
            src = sp.carrier.format_key(key) if sp.key_degree(key) else "1"
            out[src] = str(op.column(key))
    return out


def op_from_json(space: PolySpace, data: Mapping[str, str]) -> DiffOp:
    alg = DiffOpAlgebra(space)
    cols = {}
    for src, img in data.items():
        key = space.parse(src)
        if len(key.terms) != 1 or next(iter(key.terms.values())) != 1:
            raise ValueError(f"column label {src!r} is not a monomial")
        cols[next(iter(key.terms))] = space.parse(img).terms
    return DiffOp(alg, cols)


def space_to_json(space: PolySpace) -> dict:
    return {"vars": list(space.variables), "degree": space.degree, "commutative": space.commutative}


def space_from_json(data: Mapping) -> PolySpace:
    return PolySpace(data["vars"], data["degree"], data["commutative"])
