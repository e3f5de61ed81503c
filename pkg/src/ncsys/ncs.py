"""NCS systems: the five generating functions ``(f, g, d, h, m)``.

Coefficient conventions::

    f = sum t^m lambda_m      g = sum t^m s_m      d = sum t^m phi_m / m
    h = sum t^(m-1) psi_m     m = sum t^(m-1) xi_m

A system of order ``N`` stores ``f, g, d`` up to ``t^N`` and ``h, m`` up to
``t^(N-1)`` (that is ``psi_1..psi_N``), which is exactly the information a
single order-``N`` component determines.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Callable

from gmpy2 import mpq

from .algebra import (
    QQ,
    FreeAlgebra,
    PolyRing,
    Tensor,
    TruncSeries,
    series_ddt,
    series_exp,
    series_inverse,
    series_log,
    series_mul,
)


class Component(enum.Enum):
    F = "f"
    G = "g"
    D = "d"
    H = "h"
    M = "m"

    @classmethod
    def parse(cls, text: str) -> "Component":
        try:
            return cls[text.upper()]
        except KeyError:
            raise ValueError(f"unknown component {text!r}; expected one of F, G, D, H, M") from None


@dataclass(frozen=True)
class NcsSystem:
    f: TruncSeries
    g: TruncSeries
    d: TruncSeries
    h: TruncSeries
    m: TruncSeries

    def __post_init__(self):
        n = self.f.order
        carrier = self.f.carrier
        for name in "gd":
            s = getattr(self, name)
            if s.order != n or s.carrier != carrier:
                raise ValueError(f"component {name} does not match f (order {n}, carrier {carrier.name})")
        for name in "hm":
            s = getattr(self, name)
            if s.order != n - 1 or s.carrier != carrier:
                raise ValueError(f"component {name} must have order {n - 1} over {carrier.name}")

    @property
    def order(self) -> int:
        return self.f.order

    @property
    def carrier(self):
        return self.f.carrier

    def component(self, tag: Component) -> TruncSeries:
        return getattr(self, tag.value)

    def components(self) -> tuple[TruncSeries, ...]:
        return (self.f, self.g, self.d, self.h, self.m)

    # coefficient families
    def lam(self, k: int):
        return self.f[k]

    def s(self, k: int):
        return self.g[k]

    def phi(self, k: int):
        return self.d[k] * k

    def psi(self, k: int):
        return self.h[k - 1]

    def xi(self, k: int):
        return self.m[k - 1]

    def family(self, name: str, k: int):
        return {"lambda": self.lam, "s": self.s, "phi": self.phi, "psi": self.psi, "xi": self.xi}[name](k)

    def __eq__(self, other):
        if not isinstance(other, NcsSystem):
            return NotImplemented
        return self.components() == other.components()

    def __hash__(self):
        return hash(self.components())


# --------------------------------------------------------------------------
# verification
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Residual:
    equation: str
    order: int
    series: TruncSeries

    @property
    def zero(self) -> bool:
        return self.series.is_zero()


@dataclass(frozen=True)
class VerifyReport:
    residuals: tuple[Residual, ...]

    @property
    def valid(self) -> bool:
        return all(r.zero for r in self.residuals)

    def failures(self) -> list[Residual]:
        return [r for r in self.residuals if not r.zero]

    def __str__(self):
        lines = []
        for r in self.residuals:
            status = "zero" if r.zero else f"NONZERO: {r.series}"
            lines.append(f"{r.equation:<16} (checked to t^{r.order}): {status}")
        lines.append("all residuals zero" if self.valid else "verification FAILED")
        return "\n".join(lines)


def verify_ncs(sys: NcsSystem) -> VerifyReport:
    """Residuals of the five defining equations.

    The equations involving ``d/dt`` are checked to order ``N - 1``.
    """
    f, g, d, h, m = sys.components()
    n = sys.order
    carrier = sys.carrier
    one = TruncSeries.one(carrier, n)
    out = [Residual("f(0)=1", 0, TruncSeries(carrier, [f[0] - carrier.one()]))]
    f_neg = f.reflect()
    out.append(Residual("f(-t)g(t)=1", n, series_mul(f_neg, g) - one))
    out.append(Residual("g(t)f(-t)=1", n, series_mul(g, f_neg) - one))
    if n >= 0 and d[0] != carrier.zero():
        out.append(Residual("exp(d)=g", 0, TruncSeries(carrier, [d[0]])))
    else:
        out.append(Residual("exp(d)=g", n, series_exp(d) - g))
    dg = series_ddt(g)
    g_low = g.truncate(n - 1)
    out.append(Residual("g'=g h", n - 1, dg - series_mul(g_low, h)))
    out.append(Residual("g'=m g", n - 1, dg - series_mul(m, g_low)))
    return VerifyReport(tuple(out))


# --------------------------------------------------------------------------
# completion from one component
# --------------------------------------------------------------------------


def _h_from_g(g: TruncSeries) -> TruncSeries:
    # k s_k = psi_k + sum_{a+b=k, a,b>=1} s_a psi_b
    n = g.order
    psi = [None]
    for k in range(1, n + 1):
        acc = g[k] * k
        for a in range(1, k):
            acc = acc - g[a] * psi[k - a]
        psi.append(acc)
    return TruncSeries(g.carrier, psi[1:])


def _m_from_g(g: TruncSeries) -> TruncSeries:
    # k s_k = xi_k + sum_{a+b=k, a,b>=1} xi_b s_a
    n = g.order
    xi = [None]
    for k in range(1, n + 1):
        acc = g[k] * k
        for a in range(1, k):
            acc = acc - xi[k - a] * g[a]
        xi.append(acc)
    return TruncSeries(g.carrier, xi[1:])


def _g_from_h(h: TruncSeries) -> TruncSeries:
    n = h.order + 1
    carrier = h.carrier
    s = [carrier.one()]
    for k in range(1, n + 1):
        acc = h[k - 1]
        for a in range(1, k):
            acc = acc + s[a] * h[k - a - 1]
        s.append(acc * mpq(1, k))
    return TruncSeries(carrier, s)


def _g_from_m(m: TruncSeries) -> TruncSeries:
    n = m.order + 1
    carrier = m.carrier
    s = [carrier.one()]
    for k in range(1, n + 1):
        acc = m[k - 1]
        for a in range(1, k):
            acc = acc + m[k - a - 1] * s[a]
        s.append(acc * mpq(1, k))
    return TruncSeries(carrier, s)


def _from_g(g: TruncSeries, f: TruncSeries | None = None, d: TruncSeries | None = None) -> NcsSystem:
    if f is None:
        f = series_inverse(g).reflect()
    if d is None:
        d = series_log(g)
    return NcsSystem(f, g, d, _h_from_g(g), _m_from_g(g))


def complete_from(tag: Component | str, c: TruncSeries) -> NcsSystem:
    """The unique NCS system having ``c`` as its ``tag`` component."""
    if isinstance(tag, str):
        tag = Component.parse(tag)
    one, zero = c.carrier.one(), c.carrier.zero()
    if tag in (Component.F, Component.G):
        if c.order < 0 or c[0] != one:
            raise ValueError(f"component {tag.name}: constant coefficient must be 1, got {c[0] if c.order >= 0 else None}")
    if tag is Component.D and (c.order < 0 or c[0] != zero):
        raise ValueError(f"component D: constant coefficient must be 0, got {c[0] if c.order >= 0 else None}")

    if tag is Component.F:
        g = series_inverse(c.reflect())
        return _from_g(g, f=c)
    if tag is Component.G:
        return _from_g(c)
    if tag is Component.D:
        return _from_g(series_exp(c), d=c)
    if tag is Component.H:
        sys = _from_g(_g_from_h(c))
        return NcsSystem(sys.f, sys.g, sys.d, c, sys.m)
    sys = _from_g(_g_from_m(c))
    return NcsSystem(sys.f, sys.g, sys.d, sys.h, c)


# --------------------------------------------------------------------------
# constructions
# --------------------------------------------------------------------------


def flip(sys: NcsSystem) -> NcsSystem:
    """``(g(-t), f(-t), -d(t), -m(t), -h(t))``."""
    return NcsSystem(sys.g.reflect(), sys.f.reflect(), -sys.d, -sys.m, -sys.h)


def tensor(a: NcsSystem, b: NcsSystem) -> NcsSystem:
    """Tensor product of two systems over ``A (x) B``."""
    if a.order != b.order:
        raise ValueError(f"order mismatch: {a.order} vs {b.order}")
    T = Tensor(a.carrier, b.carrier)
    left = lambda s: s.map(T.left_embed, T)  # noqa: E731
    right = lambda s: s.map(T.right_embed, T)  # noqa: E731
    return NcsSystem(
        series_mul(left(a.f), right(b.f)),
        series_mul(left(a.g), right(b.g)),
        left(a.d) + right(b.d),
        left(a.h) + right(b.h),
        left(a.m) + right(b.m),
    )


def map_system(hom: Callable, sys: NcsSystem, target) -> NcsSystem:
    """Apply a unital algebra homomorphism coefficientwise."""
    return NcsSystem(*(s.map(hom, target) for s in sys.components()))


def trivial_system(carrier, order: int) -> NcsSystem:
    one = TruncSeries.one(carrier, order)
    return NcsSystem(one, one, TruncSeries.zero(carrier, order),
                     TruncSeries.zero(carrier, order - 1), TruncSeries.zero(carrier, order - 1))


# --------------------------------------------------------------------------
# JSON
# --------------------------------------------------------------------------


def carrier_spec(carrier) -> str:
    if carrier == QQ:
        return "QQ"
    if isinstance(carrier, FreeAlgebra):
        if carrier.name == "NSym":
            return "NSym"
        bound = "" if carrier.max_degree is None else str(carrier.max_degree)
        letters = "" if carrier.letters is None else ":" + ",".join(carrier.letters)
        return f"free:{carrier.name}:{bound}{letters}".rstrip(":")
    if isinstance(carrier, PolyRing):
        return "poly:" + ",".join(carrier.variables) + (f":{carrier.max_degree}" if carrier.max_degree is not None else "")
    if getattr(carrier, "spec", None):
        return carrier.spec
    raise ValueError(f"carrier {carrier.name} has no JSON form")


def carrier_from_spec(spec: str):
    if spec == "QQ":
        return QQ
    if spec == "NSym":
        from .nsym import NSYM

        return NSYM
    if spec == "GL":
        from .trees import GL

        return GL
    kind, _, rest = spec.partition(":")
    name, _, bound = rest.partition(":")
    bound, _, letters = bound.partition(":")
    bound = int(bound) if bound else None
    if kind == "free":
        return FreeAlgebra(name, max_degree=bound, letters=letters.split(",") if letters else None)
    if kind == "poly":
        return PolyRing(name.split(","), max_degree=bound)
    raise ValueError(f"unknown carrier {spec!r}")


def system_to_json(sys: NcsSystem) -> dict:
    return {
        "order": sys.order,
        "carrier": carrier_spec(sys.carrier),
        **{name: [str(c) for c in getattr(sys, name)] for name in "fgdhm"},
    }


def system_from_json(data: dict | str) -> NcsSystem:
    if isinstance(data, str):
        data = json.loads(data)
    carrier = carrier_from_spec(data["carrier"])
    comps = [TruncSeries(carrier, [carrier.parse(x) for x in data[name]]) for name in "fgdhm"]
    sys = NcsSystem(*comps)
    if sys.order != data["order"]:
        raise ValueError("order field disagrees with coefficient lists")
    return sys
