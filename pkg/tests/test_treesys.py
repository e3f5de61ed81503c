import pytest
from gmpy2 import mpq

from ncsys.algebra import Tensor, compositions
from ncsys.ncs import complete_from, verify_ncs
from ncsys.nsym import NSYM, coproduct as nsym_coproduct, gen, word
from ncsys.trees import (
    GL,
    b_plus,
    chain,
    forests_of_weight,
    is_chain,
    leaf,
    parse_forest,
    weight,
)
from ncsys.treesys import TreeSystemConfig, dual_matrix, omega_trees, surjectivity_rank, t_w, t_w_star

import oracles


@pytest.mark.parametrize("labels,order", [({1}, 5), ({1, 2}, 4), ({2}, 4), ({1, 3}, 4)])
def test_tree_system_verifies(labels, order):
    sys = omega_trees(TreeSystemConfig(labels, order))
    assert verify_ncs(sys).valid


def test_tree_system_is_determined_by_any_component():
    sys = omega_trees(TreeSystemConfig({1, 2}, 4))
    for tag in "fgdhm":
        assert complete_from(tag, getattr(sys, tag)) == sys


def test_config_validation():
    with pytest.raises(ValueError):
        TreeSystemConfig(set(), 3)
    with pytest.raises(ValueError):
        TreeSystemConfig({0, 1}, 3)
    with pytest.raises(ValueError):
        TreeSystemConfig({1}, -1)


def test_low_order_components():
    sys = omega_trees(TreeSystemConfig({1}, 3))
    one = b_plus((leaf(1),))
    assert sys.g[1] == GL.tree(one)
    assert sys.f[1] == GL.tree(one)
    # the two-leaf shrub has sign +1 and two automorphisms
    shrub = b_plus((leaf(1), leaf(1)))
    assert sys.f[2] == GL.tree(shrub) * mpq(1, 2)
    assert sys.h[1] == GL.tree(b_plus((chain(1, 1),)))


@pytest.mark.parametrize("m", range(1, 5))
def test_psi_images_are_primitive_chains(m):
    cfg = TreeSystemConfig({1, 2}, 4)
    img = t_w(cfg, gen("Ps", m))
    assert img
    for t in img.terms:
        assert len(t.children) == 1 and is_chain(t)
    cop = GL.coproduct(img)
    T = Tensor(GL, GL)
    want = T.pure(img, GL.one()) + T.pure(GL.one(), img)
    assert cop.terms == want.terms


def test_t_w_preserves_weight():
    cfg = TreeSystemConfig({1, 2}, 4)
    for w in range(1, 5):
        for comp in compositions(w):
            for fam in ("L", "S", "Ph", "Ps", "Xi"):
                img = t_w(cfg, word(fam, comp))
                assert all(weight(t) == w for t in img.terms)


def test_t_w_intertwines_coproduct():
    cfg = TreeSystemConfig({1, 2}, 3)
    T = Tensor(GL, GL)
    for x in (word("S", [1, 2]), gen("Xi", 3), word("L", [2, 1])):
        lhs = GL.coproduct(t_w(cfg, x))
        rhs = T.zero()
        for (a, b), c in nsym_coproduct(x).terms.items():
            rhs = rhs + T.pure(t_w(cfg, NSYM.basis(a)), t_w(cfg, NSYM.basis(b))) * c
        assert lhs.terms == rhs.terms


def test_dual_map_against_level_map_oracle():
    for labels in ({1}, {1, 2}):
        for w in range(1, 4):
            cfg = TreeSystemConfig(labels, w)
            for f in forests_of_weight(labels, w):
                q = t_w_star(cfg, f)
                pl = [oracles.ltree_to_parents(t) for t in f]
                for c in compositions(w):
                    want = oracles.dual_coefficient([p for p, _ in pl], [lab for _, lab in pl], c)
                    assert q.coefficient(c) == want


def test_dual_map_is_genuinely_nonsymmetric():
    q = t_w_star(TreeSystemConfig({1, 2}, 3), parse_forest("{(1 (2))}"))
    assert q.coefficient((2, 1)) == 1
    assert q.coefficient((1, 2)) == 0


def test_dual_map_needs_enough_order():
    with pytest.raises(ValueError):
        t_w_star(TreeSystemConfig({1}, 2), parse_forest("{(1), (1), (1)}"))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_surjectivity_rank(m):
    assert surjectivity_rank(range(1, m + 1), m) == 2 ** (m - 1)


def test_single_label_already_has_full_rank():
    forests, comps, rows = dual_matrix({1}, 3)
    assert len(forests) == 4 and len(comps) == 4
    assert [surjectivity_rank({1}, m) for m in range(1, 5)] == [1, 2, 4, 8]
