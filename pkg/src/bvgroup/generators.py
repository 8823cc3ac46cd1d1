"""
Generators of BV, words over them, and the Thompson group F inside BV.

Letters come from three families: ``x_i`` (``i >= 0``), ``sigma_i`` and
``tau_i`` (``i >= 1``), written ``x3``, ``s2``, ``t1`` in text, with ``^-1``
for inverses.  The standard generating set is ``{x0, x1, s1, t1}``.

Reduced diagrams of the generators:

* ``x_i``: trivial braid; domain branches ``0, 10, ..., 1^{i-1}0, 1^i00,
  1^i01, 1^i1`` and range branches ``0, ..., 1^{i-1}0, 1^i0, 1^i10, 1^i11``.
* ``sigma_i``: both trees all-right with ``i+1`` carets, one crossing of the
  strands at positions ``i-1, i``; the last strand runs straight.
* ``tau_i``: both trees all-right with ``i`` carets, one crossing of the
  last two strands (positions ``i-1, i``).
"""

from __future__ import annotations

import re
from itertools import groupby
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from . import conventions
from .braids import BraidWord
from .diagrams import TreeBraidTree, is_in_F, multiply, product, reduce
from .trees import BinaryTree, all_right, minimal_tree_containing

__all__ = [
    "GenLetter",
    "GenWord",
    "x_gen",
    "sigma_gen",
    "tau_gen",
    "letter_diagram",
    "eval_word",
    "rewrite_to_finite",
    "to_finite",
    "subscript_copy",
    "positive_word",
    "normal_form_F",
    "f_word",
    "x_in_finite",
    "FINITE_ALPHABET",
]

FAMILIES = ("x", "s", "t")
_MIN_INDEX = {"x": 0, "s": 1, "t": 1}


@dataclass(frozen=True, order=True)
class GenLetter:
    family: str
    index: int
    sign: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown generator family {self.family!r}")
        if self.index < _MIN_INDEX[self.family]:
            raise ValueError(f"index {self.index} too small for family {self.family!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def inverse(self) -> "GenLetter":
        return GenLetter(self.family, self.index, -self.sign)

    def is_finite(self) -> bool:
        return (self.family, self.index) in (("x", 0), ("x", 1), ("s", 1), ("t", 1))

    def __str__(self) -> str:
        return f"{self.family}{self.index}" + ("^-1" if self.sign < 0 else "")


FINITE_ALPHABET = tuple(
    GenLetter(f, i, s) for f, i in (("x", 0), ("x", 1), ("s", 1), ("t", 1)) for s in (1, -1)
)

_TOKEN = re.compile(r"^([xst])(\d+)(?:\^(-?\d+))?$")


class GenWord(tuple):
    """An immutable word of :class:`GenLetter`; ``len`` is the word length."""

    def __new__(cls, letters: Iterable[GenLetter] = ()):
        return super().__new__(cls, letters)

    def __add__(self, other) -> "GenWord":
        return GenWord(tuple(self) + tuple(other))

    def __mul__(self, k: int) -> "GenWord":
        return GenWord(tuple(self) * k)

    def inverse(self) -> "GenWord":
        return GenWord(a.inverse() for a in reversed(self))

    def free_reduce(self) -> "GenWord":
        out: list[GenLetter] = []
        for a in self:
            if out and out[-1] == a.inverse():
                out.pop()
            else:
                out.append(a)
        return GenWord(out)

    def is_finite(self) -> bool:
        return all(a.is_finite() for a in self)

    def prefixes(self) -> Iterator["GenWord"]:
        for k in range(len(self) + 1):
            yield GenWord(self[:k])

    def __str__(self) -> str:
        """Runs of a repeated letter are written with an exponent, e.g. ``x0^3 x1^-2``."""
        out = []
        for a, run in groupby(self):
            n = len(list(run))
            out.append(str(a) if n == 1 else f"{a.family}{a.index}^{a.sign * n}")
        return " ".join(out)

    def spelled(self) -> str:
        """One token per letter."""
        return " ".join(str(a) for a in self)

    def __repr__(self) -> str:
        return f"GenWord({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "GenWord":
        letters: list[GenLetter] = []
        for m in re.finditer(r"\S+", text):
            tok = m.group()
            hit = _TOKEN.match(tok)
            if not hit:
                raise ValueError(f"bad generator token {tok!r} at position {m.start()}")
            fam, idx, exp = hit.group(1), int(hit.group(2)), hit.group(3)
            exp = 1 if exp is None else int(exp)
            if exp == 0 or idx < _MIN_INDEX[fam]:
                raise ValueError(f"bad generator token {tok!r} at position {m.start()}")
            sign = 1 if exp > 0 else -1
            letters.extend([GenLetter(fam, idx, sign)] * abs(exp))
        return cls(letters)

    @classmethod
    def power(cls, family: str, index: int, exponent: int) -> "GenWord":
        if exponent == 0:
            return cls()
        return cls([GenLetter(family, index, 1 if exponent > 0 else -1)] * abs(exponent))


def word(text: str) -> GenWord:
    return GenWord.parse(text)


# ---------------------------------------------------------------------------
# generator diagrams


@lru_cache(maxsize=None)
def x_gen(i: int) -> TreeBraidTree:
    if i < 0:
        raise ValueError("x_i needs i >= 0")
    spine = tuple("1" * k + "0" for k in range(i))
    r = "1" * i
    tp = BinaryTree(spine + (r + "00", r + "01", r + "1"))
    tm = BinaryTree(spine + (r + "0", r + "10", r + "11"))
    return TreeBraidTree(tp, BraidWord(i + 3), tm, True)


@lru_cache(maxsize=None)
def sigma_gen(i: int) -> TreeBraidTree:
    if i < 1:
        raise ValueError("sigma_i needs i >= 1")
    t = all_right(i + 1)
    return TreeBraidTree(t, BraidWord(i + 2, (conventions.SIGMA_TAU_SIGN * i,)), t, True)


@lru_cache(maxsize=None)
def tau_gen(i: int) -> TreeBraidTree:
    if i < 1:
        raise ValueError("tau_i needs i >= 1")
    t = all_right(i)
    return TreeBraidTree(t, BraidWord(i + 1, (conventions.SIGMA_TAU_SIGN * i,)), t, True)


_FAMILY_GEN = {"x": x_gen, "s": sigma_gen, "t": tau_gen}


def letter_diagram(a: GenLetter) -> TreeBraidTree:
    d = _FAMILY_GEN[a.family](a.index)
    return d if a.sign > 0 else ~d


def eval_word(w: Iterable[GenLetter] | str) -> TreeBraidTree:
    """The element of BV spelled by ``w`` (reduced diagram)."""
    if isinstance(w, str):
        w = GenWord.parse(w)
    return product(letter_diagram(a) for a in w)


def eval_prefixes(start: TreeBraidTree, w: Sequence[GenLetter]) -> Iterator[TreeBraidTree]:
    """``start * w[:k]`` for ``k = 0 .. len(w)``, one letter at a time."""
    cur = start.reduced
    yield cur
    for a in w:
        cur = multiply(cur, letter_diagram(a))
        yield cur


# ---------------------------------------------------------------------------
# rewriting into the standard generating set


def x_in_finite(i: int) -> GenWord:
    """``x_i = x0^{-(i-1)} x1 x0^{i-1}`` for ``i >= 2``."""
    if i <= 1:
        return GenWord([GenLetter("x", i)])
    return GenWord.power("x", 0, -(i - 1)) + GenWord([GenLetter("x", 1)]) + GenWord.power("x", 0, i - 1)


@lru_cache(maxsize=None)
def _positive_finite(family: str, index: int) -> GenWord:
    if family == "x":
        return x_in_finite(index)
    if index == 1:
        return GenWord([GenLetter(family, 1)])
    if index == 2:
        if family == "s":
            # sigma_2 = x0^-1 sigma_1 x1 sigma_1^-1
            return GenWord.parse("x0^-1 s1 x1 s1^-1")
        # tau_2 = x0^-1 tau_1 sigma_1^-1
        return GenWord.parse("x0^-1 t1 s1^-1")
    # sigma_i = x0^{-(i-2)} sigma_2 x0^{i-2}, tau_i likewise
    inner = _positive_finite(family, 2)
    k = index - 2
    return (GenWord.power("x", 0, -k) + inner + GenWord.power("x", 0, k)).free_reduce()


def rewrite_to_finite(letter: GenLetter) -> GenWord:
    """A word over ``{x0, x1, s1, t1}`` equal to ``letter`` in BV."""
    w = _positive_finite(letter.family, letter.index)
    return w if letter.sign > 0 else w.inverse()


def to_finite(w: Iterable[GenLetter]) -> GenWord:
    out: list[GenLetter] = []
    for a in w:
        out.extend(rewrite_to_finite(a))
    return GenWord(out).free_reduce()


# ---------------------------------------------------------------------------
# Thompson group F


def subscript_copy(h: TreeBraidTree, u: str) -> TreeBraidTree:
    """The copy ``h_[u]`` of ``h`` acting below the branch ``u``."""
    h = h.reduced
    if not u:
        raise ValueError("u must be a non-empty binary word")
    if not is_in_F(h):
        raise ValueError("h must lie in F (trivial braid)")
    if h.n_leaves == 1:
        raise ValueError("h must not be the identity")
    base = minimal_tree_containing(u)
    tp = base.attach_at(u, h.t_plus)
    tm = base.attach_at(u, h.t_minus)
    return reduce(TreeBraidTree(tp, BraidWord(tp.n_leaves), tm))


def _leaf_exponents(t: BinaryTree) -> list[int]:
    out = []
    for b in t.branches:
        z = len(b) - len(b.rstrip("0"))
        if z and set(b[: len(b) - z]) <= {"1"}:
            # the left path climbs to the right spine; its last edge does not count
            z -= 1
        out.append(z)
    return out


def positive_word(t: BinaryTree) -> GenWord:
    """Word ``x_{i1}^{r1} ... x_{ik}^{rk}`` (``i1 < ... < ik``) for ``(t, Id, T_n)``."""
    out: list[GenLetter] = []
    for i, r in enumerate(_leaf_exponents(t)):
        out.extend([GenLetter("x", i)] * r)
    return GenWord(out)


def normal_form_F(d: TreeBraidTree) -> tuple[GenWord, GenWord]:
    """Positive and negative parts of an element of F."""
    d = d.reduced
    if not is_in_F(d):
        raise ValueError("element is not in F")
    return positive_word(d.t_plus), positive_word(d.t_minus).inverse()


def f_word(d: TreeBraidTree) -> GenWord:
    """A word over ``x0, x1`` and inverses for an element of F."""
    pos, neg = normal_form_F(d)
    return to_finite(pos + neg)


def trees_word(t_from: BinaryTree, t_to: BinaryTree) -> GenWord:
    """Word over ``x0, x1`` for ``(t_from, Id, t_to)``; the trees need equal caret counts."""
    if t_from.n_carets != t_to.n_carets:
        raise ValueError("trees must have the same number of carets")
    return to_finite(positive_word(t_from) + positive_word(t_to).inverse())


__all__ += ["word", "eval_prefixes", "trees_word"]


# ---------------------------------------------------------------------------
# presentations


def _w(*parts) -> GenWord:
    return GenWord.parse(" ".join(parts))


def infinite_relators(max_index: int = 8) -> list[tuple[str, GenWord, GenWord]]:
    """Relators ``(name, lhs, rhs)`` of the infinite presentation, subscripts ``<= max_index``."""
    m = max_index
    out: list[tuple[str, GenWord, GenWord]] = []

    def add(name, lhs, rhs, *idx):
        if all(v <= m for v in idx):
            out.append((name, _w(lhs), _w(rhs)))

    for i in range(0, m + 1):
        for j in range(i + 1, m + 1):
            add(f"A(i={i},j={j})", f"x{j} x{i}", f"x{i} x{j + 1}", j + 1)
    for i in range(1, m + 1):
        for j in range(i + 2, m + 1):
            add(f"B1(i={i},j={j})", f"s{i} s{j}", f"s{j} s{i}", j)
            add(f"B3(i={i},j={j})", f"s{i} t{j}", f"t{j} s{i}", j)
        add(f"B2(i={i})", f"s{i} s{i + 1} s{i}", f"s{i + 1} s{i} s{i + 1}", i + 1)
        add(f"B4(i={i})", f"s{i} t{i + 1} s{i}", f"t{i + 1} s{i} t{i + 1}", i + 1)
        for j in range(0, m + 1):
            if i < j:
                add(f"C1(i={i},j={j})", f"s{i} x{j}", f"x{j} s{i}")
            if i >= j + 2:
                add(f"C3(i={i},j={j})", f"s{i} x{j}", f"x{j} s{i + 1}", i + 1)
                add(f"D1(i={i},j={j})", f"t{i} x{j}", f"x{j} t{i + 1}", i + 1)
        add(f"C2(i={i})", f"s{i} x{i}", f"x{i - 1} s{i + 1} s{i}", i + 1)
        add(f"D2(i={i})", f"t{i} x{i - 1}", f"s{i} t{i + 1}", i + 1)
        add(f"D3(i={i})", f"t{i}", f"x{i - 1} t{i + 1} s{i}", i + 1)
    for i in range(0, m + 1):
        add(f"C4(i={i})", f"s{i + 1} x{i}", f"x{i + 1} s{i + 1} s{i + 2}", i + 2)
    return out


FINITE_RELATORS: tuple[tuple[str, str, str], ...] = (
    ("a1", "x2 x0", "x0 x3"),
    ("a2", "x3 x1", "x1 x4"),
    ("c1.1", "s1 x2", "x2 s1"),
    ("c1.2", "s1 x3", "x3 s1"),
    ("c1.3", "s2 x3", "x3 s2"),
    ("c1.4", "s2 x4", "x4 s2"),
    ("c3.1", "s2 x0", "x0 s3"),
    ("c3.2", "s3 x1", "x1 s4"),
    ("c4.1", "s1 x0", "x1 s1 s2"),
    ("c4.2", "s2 x1", "x2 s2 s3"),
    ("d1.1", "t2 x0", "x0 t3"),
    ("d1.2", "t3 x1", "x1 t4"),
    ("d2.1", "t1 x0", "s1 t2"),
    ("d2.2", "t2 x1", "s2 t3"),
    ("b1", "s1 s3", "s3 s1"),
    ("b2", "s1 s2 s1", "s2 s1 s2"),
    ("b3", "s1 t3", "t3 s1"),
    ("b4", "s1 t2 s1", "t2 s1 t2"),
)


def _inductive(letter: GenLetter) -> GenWord:
    # the recursions x_{i+2} = x_i^-1 x_{i+1} x_i, sigma_{i+1} = x_{i-1}^-1 sigma_i x_i sigma_i^-1,
    # tau_{i+1} = x_{i-1}^-1 tau_i sigma_i^-1, unrolled down to the four generators
    f, i = letter.family, letter.index
    if letter.is_finite():
        w = GenWord([GenLetter(f, i)])
    elif f == "x":
        w = _w(f"x{i - 2}^-1 x{i - 1} x{i - 2}")
    elif f == "s":
        w = _w(f"x{i - 2}^-1 s{i - 1} x{i - 1} s{i - 1}^-1")
    else:
        w = _w(f"x{i - 2}^-1 t{i - 1} s{i - 1}^-1")
    if not letter.is_finite():
        w = GenWord(b for a in w for b in _inductive(a))
    return w if letter.sign > 0 else w.inverse()


def finite_relator_words() -> list[tuple[str, GenWord]]:
    """Each finite relator as a word ``lhs rhs^-1`` over the four generators."""
    out = []
    for name, lhs, rhs in FINITE_RELATORS:
        full = _w(lhs) + _w(rhs).inverse()
        out.append((name, GenWord(b for a in full for b in _inductive(a)).free_reduce()))
    return out


__all__ += ["infinite_relators", "FINITE_RELATORS", "finite_relator_words"]
