"""
Finite rooted binary trees addressed by their leaves.

A leaf is addressed by the binary word spelling the path from the root to it
(``0`` = left edge, ``1`` = right edge).  A tree is stored as the tuple of its
leaf addresses in left-to-right order; that tuple is a maximal prefix-free set
of binary words and is also the text form (``"00,01,1"``).  Subtree surgery
(attaching, contracting carets) is done directly on the address list.

Leaves are numbered from 0, left to right.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

__all__ = [
    "BinaryTree",
    "LEAF",
    "EMPTY_WORD_TEXT",
    "all_right",
    "is_prefix",
    "is_strict_prefix",
    "minimal_tree_containing",
    "common_refinement",
    "refinement_groups",
]

EMPTY_WORD_TEXT = "e"


def _check_word(u: str) -> str:
    if u.strip("01"):
        raise ValueError(f"not a binary word: {u!r}")
    return u


def is_prefix(p: str, w: str) -> bool:
    return w.startswith(p)


def is_strict_prefix(p: str, w: str) -> bool:
    return len(p) < len(w) and w.startswith(p)


@dataclass(frozen=True)
class BinaryTree:
    """A finite rooted binary tree given by its branches, left to right."""

    branches: tuple[str, ...]

    def __post_init__(self):
        b = tuple(self.branches)
        object.__setattr__(self, "branches", b)
        if not b:
            raise ValueError("a tree has at least one leaf")
        for u in b:
            _check_word(u)
        for a, c in zip(b, b[1:]):
            # in sorted order a prefix is always followed by one of its extensions
            if not a < c or c.startswith(a):
                raise ValueError(f"branches are not a sorted prefix-free set: {a!r}, {c!r}")
        depth = max(len(u) for u in b)
        if sum(1 << (depth - len(u)) for u in b) != 1 << depth:
            raise ValueError("branch set is not maximal (some caret is missing a child)")

    # -- basic views -------------------------------------------------------

    @property
    def n_leaves(self) -> int:
        return len(self.branches)

    @property
    def n_carets(self) -> int:
        return len(self.branches) - 1

    @property
    def ell0(self) -> int:
        """Length of the leftmost branch (``0^l``)."""
        return len(self.branches[0])

    @property
    def ell1(self) -> int:
        """Length of the rightmost branch (``1^l``)."""
        return len(self.branches[-1])

    @cached_property
    def index(self) -> dict[str, int]:
        return {u: i for i, u in enumerate(self.branches)}

    @cached_property
    def internal(self) -> frozenset[str]:
        """Addresses of the carets (internal vertices)."""
        out = set()
        for u in self.branches:
            for k in range(len(u)):
                out.add(u[:k])
        return frozenset(out)

    def leaf_index(self, u: str) -> int:
        try:
            return self.index[u]
        except KeyError:
            raise ValueError(f"{u!r} is not a branch of {self}") from None

    def has_branch(self, u: str) -> bool:
        return u in self.index

    def is_caret_pair(self, i: int) -> bool:
        """True if leaves ``i`` and ``i+1`` hang from the same caret."""
        if not 0 <= i < len(self.branches) - 1:
            return False
        a, b = self.branches[i], self.branches[i + 1]
        return len(a) == len(b) and a[:-1] == b[:-1] and a[-1] == "0"

    def has_strict_extension(self, u: str) -> bool:
        """True if ``u`` is a strict prefix of some branch."""
        return u in self.internal

    # -- surgery ------------------------------------------------------------

    def attach_at(self, u: str, s: "BinaryTree") -> "BinaryTree":
        i = self.leaf_index(u)
        b = self.branches
        return BinaryTree(b[:i] + tuple(u + v for v in s.branches) + b[i + 1:])

    def add_caret(self, i: int) -> "BinaryTree":
        """Attach a caret at leaf ``i``."""
        b = self.branches
        u = b[i]
        return _trusted(b[:i] + (u + "0", u + "1") + b[i + 1:])

    def remove_caret(self, i: int) -> "BinaryTree":
        """Collapse the caret whose children are leaves ``i`` and ``i+1``."""
        if not self.is_caret_pair(i):
            raise ValueError(f"leaves {i}, {i + 1} do not form a caret")
        b = self.branches
        return _trusted(b[:i] + (b[i][:-1],) + b[i + 2:])

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        return ",".join(u if u else EMPTY_WORD_TEXT for u in self.branches)

    @classmethod
    def parse(cls, text: str) -> "BinaryTree":
        text = text.strip()
        if text in ("", EMPTY_WORD_TEXT, "ε"):
            return cls(("",))
        parts = [p.strip() for p in text.split(",")]
        return cls(tuple(sorted("" if p in (EMPTY_WORD_TEXT, "ε") else p for p in parts)))

    @classmethod
    def from_internal(cls, carets: Iterable[str]) -> "BinaryTree":
        """Tree whose caret addresses are exactly ``carets`` (must be prefix-closed)."""
        carets = set(carets)
        if not carets:
            return LEAF
        leaves = [u + c for u in carets for c in "01" if u + c not in carets]
        return cls(tuple(sorted(leaves)))


def _trusted(branches: tuple[str, ...]) -> BinaryTree:
    # skip validation for branch lists produced by local surgery
    t = object.__new__(BinaryTree)
    object.__setattr__(t, "branches", branches)
    return t


LEAF = BinaryTree(("",))


def all_right(n: int) -> BinaryTree:
    """The all-right tree with ``n`` carets: branches 0, 10, ..., 1^{n-1}0, 1^n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return LEAF
    return _trusted(tuple("1" * k + "0" for k in range(n)) + ("1" * n,))


def minimal_tree_containing(u: str) -> BinaryTree:
    """Smallest tree having ``u`` as a branch; it has ``len(u)`` carets."""
    _check_word(u)
    if not u:
        raise ValueError("u must be a non-empty binary word")
    return BinaryTree.from_internal(u[:k] for k in range(len(u)))


def common_refinement(t1: BinaryTree, t2: BinaryTree) -> BinaryTree:
    """Smallest tree containing both ``t1`` and ``t2`` as rooted subtrees."""
    if t1 == t2:
        return t1
    a, b = t1.branches, t2.branches
    out: list[str] = []
    i = j = 0
    # both lists cover the whole Cantor set in order, so one merge pass suffices
    while i < len(a) and j < len(b):
        u, v = a[i], b[j]
        if u == v:
            out.append(u)
            i += 1
            j += 1
        elif v.startswith(u):
            out.append(v)
            j += 1
            if j == len(b) or not b[j].startswith(u):
                i += 1
        else:
            out.append(u)
            i += 1
            if i == len(a) or not a[i].startswith(v):
                j += 1
    return _trusted(tuple(out))


def refinement_groups(coarse: BinaryTree, fine: BinaryTree) -> list[tuple[str, ...]]:
    """For each leaf ``u`` of ``coarse``, the suffixes ``s`` with ``u + s`` a leaf of ``fine``.

    ``fine`` must contain ``coarse`` as a rooted subtree.
    """
    out = []
    fb = fine.branches
    t = 0
    for u in coarse.branches:
        grp = []
        while t < len(fb) and fb[t].startswith(u):
            grp.append(fb[t][len(u):])
            t += 1
        if not grp:
            raise ValueError("the second tree does not refine the first")
        out.append(tuple(grp))
    if t != len(fb):
        raise ValueError("the second tree does not refine the first")
    return out
