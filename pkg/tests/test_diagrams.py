import random

import pytest

from bvgroup.braids import BraidWord
from bvgroup.diagrams import (
    IDENTITY,
    TreeBraidTree,
    branches,
    ell0,
    ell1,
    expand_to,
    invert,
    is_in_F,
    multiply,
    n_carets,
    product,
    reduce,
    reduce_pair,
    reducible_pairs,
    split_at_leaf,
)
from bvgroup.generators import eval_word, sigma_gen, tau_gen, x_gen
from bvgroup.trees import BinaryTree, all_right, common_refinement

from conftest import random_word


def test_generator_shapes():
    assert n_carets(x_gen(0)) == 2 and is_in_F(x_gen(0))
    assert n_carets(sigma_gen(1)) == 2 and not is_in_F(sigma_gen(1))
    assert n_carets(tau_gen(1)) == 1
    assert (ell0(x_gen(0)), ell1(x_gen(0))) == (1, 2)


def test_mismatched_counts_rejected():
    with pytest.raises(ValueError):
        TreeBraidTree(all_right(1), BraidWord(3), all_right(1))


def test_unreduced_diagram_reduces_to_identity():
    t = all_right(3)
    d = TreeBraidTree(t, BraidWord(4), t)
    assert reducible_pairs(d)
    assert reduce(d) == IDENTITY and n_carets(d) == 0
    assert reduce_pair(d, reducible_pairs(d)[0]).n_leaves == 3
    with pytest.raises(ValueError):
        reduce_pair(x_gen(0), 1)


def test_twisted_caret_pair_is_not_reducible():
    t = all_right(1)
    d = TreeBraidTree(t, BraidWord(2, (1,)), t)
    assert reducible_pairs(d) == [] and n_carets(d) == 1


def test_parallel_pair_under_crossing_reduces():
    # two strands that cross a third together collapse to one caret
    tp = BinaryTree(("00", "01", "1"))
    d = TreeBraidTree(tp, BraidWord(3, (2, 1)), BinaryTree(("0", "10", "11")))
    assert n_carets(d) == 1 and d.reduced.braid.equals(BraidWord(2, (1,)))


def test_parse_round_trip():
    d = eval_word("x0 s1 t1^-1")
    assert TreeBraidTree.parse(str(d)) == d
    with pytest.raises(ValueError):
        TreeBraidTree.parse("tplus=0,1 | braid=2: | bogus=e")
    with pytest.raises(ValueError):
        TreeBraidTree.parse("tplus=0,1 | braid=2:")


def test_inverse_and_powers():
    d = eval_word("x0 s1 x1^-1 t1")
    assert d * ~d == IDENTITY and invert(d) * d == IDENTITY
    assert d ** 3 == d * d * d and d ** -2 == ~d * ~d and d ** 0 == IDENTITY


def test_associativity_and_inverse_law(rng):
    for _ in range(60):
        a, b, c = (eval_word(random_word(rng, 1, 6)) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert ~(a * b) == ~b * ~a


def test_product_matches_sequential(rng):
    for _ in range(40):
        w = random_word(rng, 1, 12)
        seq = IDENTITY
        for a in w:
            seq = seq * eval_word([a])
        assert product(eval_word([a]) for a in w) == seq


def test_splitting_and_expansion_preserve_the_element(rng):
    for _ in range(40):
        d = eval_word(random_word(rng, 1, 8)).reduced
        for side in ("range", "domain"):
            j = rng.randrange(d.n_leaves)
            assert split_at_leaf(d, j, side) == d
        target = common_refinement(d.t_minus, all_right(d.n_leaves + 1))
        e = expand_to(d, target)
        assert e.t_minus == target and e == d
        target = common_refinement(d.t_plus, all_right(d.n_leaves + 1))
        assert expand_to(d, target, side="domain").t_plus == target
    with pytest.raises(ValueError):
        split_at_leaf(x_gen(0), 0, "sideways")


def test_branches_follow_strands():
    pairs = branches(x_gen(0))
    assert [(p.u, p.v) for p in pairs] == [("00", "0"), ("01", "10"), ("1", "11")]


def test_key_is_a_group_invariant():
    a = eval_word("x2 x0")
    b = eval_word("x0 x3")
    assert a.key == b.key and hash(a) == hash(b) and len({a, b}) == 1
    assert eval_word("s1 x0").key != eval_word("x0 s1").key
    assert a.canonical.canonical.key == a.key
