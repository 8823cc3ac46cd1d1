import pytest
from hypothesis import given, strategies as st

from bvgroup import conventions
from bvgroup.diagrams import IDENTITY, is_in_F, n_carets
from bvgroup.generators import (
    FINITE_ALPHABET,
    GenLetter,
    GenWord,
    eval_prefixes,
    eval_word,
    f_word,
    finite_relator_words,
    infinite_relators,
    letter_diagram,
    normal_form_F,
    positive_word,
    rewrite_to_finite,
    sigma_gen,
    subscript_copy,
    tau_gen,
    to_finite,
    trees_word,
    x_gen,
    x_in_finite,
)
from bvgroup.trees import BinaryTree, all_right

from conftest import random_word

letters = st.builds(
    GenLetter,
    st.sampled_from("xst"),
    st.integers(1, 6),
    st.sampled_from([1, -1]),
)


def test_letter_validation():
    with pytest.raises(ValueError):
        GenLetter("y", 1)
    with pytest.raises(ValueError):
        GenLetter("s", 0)
    with pytest.raises(ValueError):
        GenLetter("x", 0, 2)
    assert GenLetter("x", 0).is_finite() and not GenLetter("x", 2).is_finite()


def test_word_text_forms():
    w = GenWord.parse("x0^3 s1^-1 t1")
    assert len(w) == 5
    assert str(w) == "x0^3 s1^-1 t1"
    assert w.spelled() == "x0 x0 x0 s1^-1 t1"
    assert GenWord.parse(w.spelled()) == w
    assert GenWord.parse("") == GenWord()
    assert list(GenWord.parse("x0 x1").prefixes())[1] == GenWord.parse("x0")
    assert (w + w.inverse()).free_reduce() == GenWord()


@pytest.mark.parametrize("bad", ["x", "x-1", "s0", "x0^0", "q1", "x0^"])
def test_parse_errors_report_position(bad):
    with pytest.raises(ValueError, match="position 3"):
        GenWord.parse("x0 " + bad)


@given(st.lists(letters, max_size=12))
def test_str_round_trip(ls):
    w = GenWord(ls)
    assert GenWord.parse(str(w)) == w


@pytest.mark.parametrize("a", [GenLetter(f, i, s) for f in "xst" for i in range(1, 7) for s in (1, -1)])
def test_rewrite_to_finite(a):
    w = rewrite_to_finite(a)
    assert w.is_finite()
    assert eval_word(w) == letter_diagram(a)


def test_x_in_finite():
    for i in range(0, 8):
        assert eval_word(x_in_finite(i)) == x_gen(i)


def test_infinite_letters_have_expected_shape():
    for i in range(1, 6):
        assert n_carets(x_gen(i)) == i + 2
        assert n_carets(sigma_gen(i)) == i + 1
        assert n_carets(tau_gen(i)) == i


def test_to_finite_preserves_value(rng):
    for _ in range(30):
        w = GenWord(rng.choice([GenLetter(f, rng.randint(1, 5), rng.choice((1, -1))) for f in "xst"])
                    for _ in range(rng.randint(1, 6)))
        assert eval_word(to_finite(w)) == eval_word(w)


def test_eval_prefixes(rng):
    w = random_word(rng, 5, 8)
    pre = list(eval_prefixes(IDENTITY, w))
    assert len(pre) == len(w) + 1
    assert pre[-1] == eval_word(w)


def test_relators_hold():
    assert len(finite_relator_words()) == 18
    assert all(eval_word(w) == IDENTITY for _, w in finite_relator_words())
    assert all(eval_word(a) == eval_word(b) for _, a, b in infinite_relators(5))


def test_relators_hold_for_mirror_convention(monkeypatch):
    monkeypatch.setattr(conventions, "SIGMA_TAU_SIGN", -1)
    sigma_gen.cache_clear()
    tau_gen.cache_clear()
    try:
        assert sigma_gen(1).braid.letters == (-1,)
        assert all(eval_word(w) == IDENTITY for _, w in finite_relator_words())
        assert all(eval_word(a) == eval_word(b) for _, a, b in infinite_relators(5))
    finally:
        monkeypatch.undo()
        sigma_gen.cache_clear()
        tau_gen.cache_clear()
    assert sigma_gen(1).braid.letters == (1,)


def test_thompson_normal_form(rng):
    f_alpha = [a for a in FINITE_ALPHABET if a.family == "x"]
    for _ in range(40):
        d = eval_word(random_word(rng, 1, 8, f_alpha))
        assert is_in_F(d)
        pos, neg = normal_form_F(d)
        assert eval_word(pos + neg) == d
        assert eval_word(f_word(d)) == d
    with pytest.raises(ValueError):
        normal_form_F(sigma_gen(1))


def test_positive_word_and_trees_word():
    assert positive_word(all_right(4)) == GenWord()
    t = BinaryTree(("00", "01", "1"))
    assert positive_word(t) == GenWord.parse("x0")
    assert eval_word(trees_word(t, all_right(2))) == x_gen(0)
    with pytest.raises(ValueError):
        trees_word(t, all_right(3))


def test_subscript_copy():
    h = x_gen(0)
    c = subscript_copy(h, "1")
    assert c == x_gen(1)
    assert n_carets(subscript_copy(h, "01")) == 2 + n_carets(h)
    with pytest.raises(ValueError):
        subscript_copy(sigma_gen(1), "0")
    with pytest.raises(ValueError):
        subscript_copy(h, "")
