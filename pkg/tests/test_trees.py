import pytest
from hypothesis import given, strategies as st

from bvgroup.trees import (
    LEAF,
    BinaryTree,
    all_right,
    common_refinement,
    is_prefix,
    is_strict_prefix,
    minimal_tree_containing,
    refinement_groups,
)


@st.composite
def trees(draw, max_carets=8):
    t = LEAF
    for _ in range(draw(st.integers(0, max_carets))):
        t = t.add_caret(draw(st.integers(0, t.n_leaves - 1)))
    return t


def test_all_right_shape():
    t = all_right(3)
    assert t.branches == ("0", "10", "110", "111")
    assert (t.n_carets, t.ell0, t.ell1) == (3, 1, 3)
    assert all_right(0) is LEAF
    with pytest.raises(ValueError):
        all_right(-1)


@pytest.mark.parametrize("bad", [("0",), ("0", "1", "10"), ("00", "1"), ("1", "0"), ("0", "2")])
def test_invalid_branch_sets(bad):
    with pytest.raises(ValueError):
        BinaryTree(bad)


def test_prefix_helpers():
    assert is_prefix("", "01") and is_prefix("01", "01")
    assert is_strict_prefix("0", "01") and not is_strict_prefix("01", "01")


def test_caret_pairs_and_surgery():
    t = BinaryTree(("00", "01", "1"))
    assert t.is_caret_pair(0) and not t.is_caret_pair(1) and not t.is_caret_pair(5)
    assert t.remove_caret(0) == BinaryTree(("0", "1"))
    with pytest.raises(ValueError):
        t.remove_caret(1)
    assert t.attach_at("1", BinaryTree(("0", "1"))).branches == ("00", "01", "10", "11")
    assert t.internal == {"", "0"}
    assert t.has_strict_extension("0") and not t.has_strict_extension("1")


def test_minimal_tree_containing():
    t = minimal_tree_containing("010")
    assert t.has_branch("010") and t.n_carets == 3
    with pytest.raises(ValueError):
        minimal_tree_containing("")


@given(trees())
def test_text_round_trip(t):
    assert BinaryTree.parse(str(t)) == t
    assert BinaryTree.from_internal(t.internal) == t


@given(trees(), trees())
def test_common_refinement_is_least_upper_bound(a, b):
    c = common_refinement(a, b)
    assert c.internal == a.internal | b.internal
    assert common_refinement(b, a) == c


@given(trees(), trees())
def test_refinement_groups_cover_fine_tree(a, b):
    c = common_refinement(a, b)
    groups = refinement_groups(a, c)
    assert len(groups) == a.n_leaves
    assert tuple(u + s for u, g in zip(a.branches, groups) for s in g) == c.branches
