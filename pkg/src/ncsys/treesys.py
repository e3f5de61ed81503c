"""The NCS system of labeled rooted trees over the Grossman-Larson algebra,
the specialization ``T_W: NSym -> H_GL`` and its graded dual into QSym."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .algebra import Element, TruncSeries, compositions, rank_q
from .ncs import NcsSystem
from .nsym import QSYM, universal_hom
from .trees import (
    GL,
    Forest,
    LTree,
    aut_count,
    b_plus,
    beta,
    forest_weight,
    forests_of_weight,
    gamma,
    gl_trees_of_weight,
    is_chain,
    is_primitive,
    is_shrub,
    make_forest,
    pairing,
    root_degree,
    theta,
    weight,
)


@dataclass(frozen=True)
class TreeSystemConfig:
    labels: frozenset
    order: int

    def __init__(self, labels, order: int):
        ls = frozenset(labels)
        if not ls or any(not isinstance(x, int) or x <= 0 for x in ls):
            raise ValueError("labels must be a nonempty set of positive integers")
        if order < 0:
            raise ValueError("order must be >= 0")
        object.__setattr__(self, "labels", ls)
        object.__setattr__(self, "order", order)


def _series(cfg: TreeSystemConfig, coeff, shift: int, order: int) -> TruncSeries:
    """``sum_T coeff(T) t^(|T| - shift) V_T`` truncated at ``order``."""
    out = []
    for k in range(order + 1):
        acc: dict = {}
        for t in gl_trees_of_weight(cfg.labels, k + shift):
            c = coeff(t)
            if c:
                acc[t] = mpq(c) / aut_count(t)
        out.append(GL.element(acc))
    return TruncSeries(GL, out)


def _f_coeff(t: LTree):
    if weight(t) == 0:
        return 1
    if not is_shrub(t):
        return 0
    return (-1) ** ((root_degree(t) - weight(t)) % 2)


@lru_cache(maxsize=None)
def _omega_trees(labels: frozenset, order: int) -> NcsSystem:
    cfg = TreeSystemConfig(labels, order)
    n = order
    f = _series(cfg, _f_coeff, 0, n)
    g = _series(cfg, lambda t: 1, 0, n)
    d = _series(cfg, lambda t: theta(t) if is_primitive(t) else 0, 0, n)
    h = _series(cfg, lambda t: beta(t) if is_chain(t) else 0, 1, n - 1)
    m = _series(cfg, lambda t: gamma(t), 1, n - 1)
    return NcsSystem(f, g, d, h, m)


def omega_trees(cfg: TreeSystemConfig) -> NcsSystem:
    """The five series assembled from tree statistics (not solved for)."""
    return _omega_trees(cfg.labels, cfg.order)


def t_w(cfg: TreeSystemConfig, x: Element) -> Element:
    """Image of an NSym element in the Grossman-Larson algebra."""
    return universal_hom(omega_trees(cfg), x)


@lru_cache(maxsize=None)
def _s_word_image(labels: frozenset, comp: tuple) -> Element:
    cfg = TreeSystemConfig(labels, max(sum(comp), 1))
    sys = omega_trees(cfg)
    out = GL.one()
    for part in comp:
        out = out * sys.g[part]
    return out


def t_w_star(cfg: TreeSystemConfig, f: Forest) -> Element:
    """Dual map ``H_CK -> QSym``: ``c_I = <T_W(S^I), F>``."""
    f = make_forest(f)
    w = forest_weight(f)
    if w > cfg.order:
        raise ValueError("insufficient truncation order")
    acc = {}
    for comp in compositions(w):
        img = _s_word_image(cfg.labels, comp)
        t = b_plus(f)
        c = img.coefficient(t) * pairing(t, f)
        if c:
            acc[comp] = c
    return QSYM.element(acc)


def dual_matrix(labels, m: int) -> tuple[list[Forest], list[tuple], list[list[mpq]]]:
    forests = forests_of_weight(labels, m)
    comps = compositions(m)
    cfg = TreeSystemConfig(labels, m)
    rows = []
    for f in forests:
        q = t_w_star(cfg, f)
        rows.append([q.coefficient(c) for c in comps])
    return forests, comps, rows


def surjectivity_rank(labels, m: int) -> int:
    """Rank over Q of the weight-``m`` block of ``T_W^*``."""
    return rank_q(dual_matrix(labels, m)[2])
