"""
Tree-braid-tree diagrams and the group BV.

A diagram ``(t_plus, braid, t_minus)`` joins the leaves of the domain tree
``t_plus`` (bottom of the braid) to the leaves of the range tree ``t_minus``
(top of the braid).  Leaf ``i`` of ``t_plus`` is joined to leaf
``perm[i]`` of ``t_minus`` where ``perm`` is the braid's underlying
permutation.  Products are read left to right: in ``a * b`` the range tree of
``a`` is matched with the domain tree of ``b``.

Every diagram handed out by :func:`reduce` (and therefore by ``*``) is the
unique representative with the fewest carets.  Reduced diagrams also carry
their braid as a cable of a small core braid (maximal runs of parallel
strands collapsed to one); products and reductions work on the cores, so the
long block-crossing words that appear after many expansions are only ever
spelled out, never compared.  The canonical spelling (Garside normal form of
the core, cabled back) is computed on demand by
:attr:`TreeBraidTree.canonical`, and the key built from it is a complete
invariant of the group element.
"""

from __future__ import annotations

import heapq
from itertools import accumulate
from typing import Sequence
from dataclasses import dataclass
from functools import cached_property

from .braids import BraidWord, cable, decable, free_reduce, remove_strand, split_strand
from .trees import LEAF, BinaryTree, _trusted, common_refinement, refinement_groups

__all__ = [
    "TreeBraidTree",
    "BranchPair",
    "IDENTITY",
    "reduce",
    "multiply",
    "invert",
    "equal",
    "branches",
    "n_carets",
    "ell0",
    "ell1",
    "canonical_key",
    "is_in_F",
    "split_at_leaf",
    "reducible_pairs",
    "reduce_pair",
    "product",
    "expand_to",
]

@dataclass(frozen=True)
class BranchPair:
    u: str  # domain branch
    v: str  # range branch

    def __str__(self) -> str:
        return f"{self.u or 'e'}->{self.v or 'e'}"


@dataclass(frozen=True, eq=False)
class TreeBraidTree:
    t_plus: BinaryTree
    braid: BraidWord
    t_minus: BinaryTree
    is_reduced: bool = False

    def __post_init__(self):
        n = self.t_plus.n_leaves
        if self.t_minus.n_leaves != n or self.braid.strands != n:
            raise ValueError(
                f"leaf/strand counts disagree: {n}, {self.braid.strands}, {self.t_minus.n_leaves}"
            )

    # equality and hashing are group equality
    def __eq__(self, other) -> bool:
        if not isinstance(other, TreeBraidTree):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __mul__(self, other: "TreeBraidTree") -> "TreeBraidTree":
        return multiply(self, other)

    def __invert__(self) -> "TreeBraidTree":
        return invert(self)

    def __pow__(self, k: int) -> "TreeBraidTree":
        base = self if k >= 0 else invert(self)
        out = IDENTITY
        for _ in range(abs(k)):
            out = multiply(out, base)
        return out

    @cached_property
    def reduced(self) -> "TreeBraidTree":
        return self if self.is_reduced else reduce(self)

    @cached_property
    def canonical(self) -> "TreeBraidTree":
        """Reduced diagram with the braid in canonical spelling.

        The spelling is the cable of the Garside spelling of the core braid,
        which keeps normal forms small when many strands run in parallel.
        """
        r = self.reduced
        core, mult = _core_of(r)
        br = cable(core.canonical, mult)
        return TreeBraidTree(r.t_plus, br, r.t_minus, True)

    @cached_property
    def key(self) -> bytes:
        r = self.canonical
        return f"BV|{r.t_plus}|{r.braid}|{r.t_minus}".encode()

    @property
    def n_leaves(self) -> int:
        return self.t_plus.n_leaves

    @property
    def perm(self) -> tuple[int, ...]:
        return self.braid.permutation

    def __str__(self) -> str:
        return f"tplus={self.t_plus} | braid={self.braid} | tminus={self.t_minus}"

    def __repr__(self) -> str:
        return f"TreeBraidTree({self})"

    @classmethod
    def parse(cls, text: str) -> "TreeBraidTree":
        fields = {}
        offset = 0
        for part in text.split("|"):
            name, sep, value = part.partition("=")
            name = name.strip()
            if not sep or name not in ("tplus", "braid", "tminus"):
                raise ValueError(f"bad diagram field {part.strip()!r} at position {offset}")
            fields[name] = value
            offset += len(part) + 1
        missing = {"tplus", "braid", "tminus"} - fields.keys()
        if missing:
            raise ValueError(f"diagram text is missing {sorted(missing)}")
        return cls(
            BinaryTree.parse(fields["tplus"]),
            BraidWord.parse(fields["braid"]),
            BinaryTree.parse(fields["tminus"]),
        )


IDENTITY = TreeBraidTree(LEAF, BraidWord(1), LEAF, True)


# ---------------------------------------------------------------------------
# reduction


def _pair_is_reducible(d: TreeBraidTree, i: int, perm) -> bool:
    if not d.t_plus.is_caret_pair(i):
        return False
    j = perm[i]
    if perm[i + 1] != j + 1 or not d.t_minus.is_caret_pair(j):
        return False
    b = d.braid
    if not b.letters:
        return True
    resplit = split_strand(remove_strand(b, i + 1), i)
    return resplit.letters == b.letters or resplit.equals(b)


def reducible_pairs(d: TreeBraidTree) -> list[int]:
    """Domain leaf indices ``i`` where the carets over ``i, i+1`` can be removed."""
    perm = d.perm
    return [i for i in range(d.n_leaves - 1) if _pair_is_reducible(d, i, perm)]


def reduce_pair(d: TreeBraidTree, i: int) -> TreeBraidTree:
    """Remove the caret pair at domain leaves ``i, i+1`` (which must be reducible)."""
    if not _pair_is_reducible(d, i, d.perm):
        raise ValueError(f"leaves {i}, {i + 1} do not form a reducible caret pair")
    j = d.perm[i]
    return TreeBraidTree(
        d.t_plus.remove_caret(i), remove_strand(d.braid, i + 1), d.t_minus.remove_caret(j)
    )


def _core_of(d: TreeBraidTree) -> tuple[BraidWord, tuple[int, ...]]:
    # (core, mult) with d.braid == cable(core, mult) and maximal runs; cached on d
    c = d.__dict__.get("_core")
    if c is None:
        c = decable(BraidWord._trusted(d.braid.strands, free_reduce(d.braid.letters)))
        object.__setattr__(d, "_core", c)
    return c


def _cable_perm(c: BraidWord, q: Sequence[int]) -> list[int]:
    """Underlying permutation of ``cable(c, q)`` without spelling the cable."""
    cp = c.permutation
    size_at_top = [0] * c.strands
    for s, t in enumerate(cp):
        size_at_top[t] = q[s]
    top_off = list(accumulate(size_at_top, initial=0))
    perm = []
    for s, t in enumerate(cp):
        perm.extend(range(top_off[t], top_off[t] + q[s]))
    return perm


def _reduce_cabled(tp: BinaryTree, tm: BinaryTree, c: BraidWord, q: Sequence[int]) -> TreeBraidTree:
    """Reduce the diagram ``(tp, cable(c, q), tm)``."""
    core, mult = decable(c)
    run_of = [r for r, m in enumerate(mult) for _ in range(m)]  # c strand -> core strand
    group = [run_of[s] for s, k in enumerate(q) for _ in range(k)]
    perm = _cable_perm(c, q)
    inv = [0] * len(perm)
    for x, y in enumerate(perm):
        inv[y] = x
    work = [
        i for i in range(tp.n_leaves - 1)
        if group[i] == group[i + 1] and tp.is_caret_pair(i)
    ]
    heapq.heapify(work)
    queued = set(work)
    while work:
        i = heapq.heappop(work)
        queued.discard(i)
        if i >= tp.n_leaves - 1 or group[i] != group[i + 1] or not tp.is_caret_pair(i):
            continue
        j = perm[i]
        if perm[i + 1] != j + 1 or not tm.is_caret_pair(j):
            continue
        tp = tp.remove_caret(i)
        tm = tm.remove_caret(j)
        del group[i + 1]
        del perm[i + 1]
        perm = [y - 1 if y > j else y for y in perm]
        inv = [0] * len(perm)
        for x, y in enumerate(perm):
            inv[y] = x
        # only pairs touching the merged leaves can have become reducible
        # (leaf indices above i shifted down by one)
        shifted = {k - 1 if k > i else k for k in queued}
        for k in (i - 1, i, inv[j - 1] if j > 0 else -1, inv[j]):
            if 0 <= k < tp.n_leaves - 1:
                shifted.add(k)
        queued = shifted
        work = list(queued)
        heapq.heapify(work)
    counts = [0] * core.strands
    for g in group:
        counts[g] += 1
    out = TreeBraidTree(tp, cable(core, counts), tm, True)
    object.__setattr__(out, "_core", (core, tuple(counts)))
    return out


def reduce(d: TreeBraidTree) -> TreeBraidTree:
    """The minimal-caret representative of ``d``.

    The braid is written as a cable of a core braid with maximal runs of
    parallel strands; a caret pair is then removable exactly when its two
    strands lie in the same run, so no braid comparisons happen in the loop.
    """
    if d.is_reduced:
        return d
    core, mult = _core_of(d)
    return _reduce_cabled(d.t_plus, d.t_minus, core, mult)


# ---------------------------------------------------------------------------
# expansion and products


def split_at_leaf(d: TreeBraidTree, j: int, side: str = "range") -> TreeBraidTree:
    """Attach a caret at a leaf of one tree, splitting the strand through it.

    ``side="range"`` names leaf ``j`` of ``t_minus``; ``side="domain"`` names
    leaf ``j`` of ``t_plus``.  The matching caret goes on the other end of the
    same strand, so the element is unchanged.
    """
    perm = d.perm
    if side == "range":
        i = perm.index(j)
    elif side == "domain":
        i, j = j, perm[j]
    else:
        raise ValueError("side must be 'range' or 'domain'")
    return TreeBraidTree(d.t_plus.add_caret(i), split_strand(d.braid, i), d.t_minus.add_caret(j))


def expand_to(d: TreeBraidTree, target: BinaryTree, side: str = "range") -> TreeBraidTree:
    """Split strands of ``d`` until its tree on ``side`` equals ``target``.

    Every strand is cabled into as many parallel copies as its leaf needs,
    which is the same as splitting it repeatedly; the subtree hung below the
    leaf does not affect the braid.
    """
    if side not in ("range", "domain"):
        raise ValueError("side must be 'range' or 'domain'")
    cur = d.t_minus if side == "range" else d.t_plus
    if cur == target:
        return d
    groups = refinement_groups(cur, target)
    perm = d.perm
    if side == "range":
        by_bottom = [groups[perm[i]] for i in range(len(perm))]
        tp = _trusted(tuple(u + x for u, g in zip(d.t_plus.branches, by_bottom) for x in g))
        tm = target
    else:
        by_bottom = groups
        inv = [0] * len(perm)
        for x, y in enumerate(perm):
            inv[y] = x
        tp = target
        tm = _trusted(tuple(v + x for j, v in enumerate(d.t_minus.branches) for x in groups[inv[j]]))
    br = cable(d.braid, [len(g) for g in by_bottom])
    return TreeBraidTree(tp, br, tm)


def _blocks(mult: Sequence[int], order: Sequence[int], sizes: Sequence[int]) -> list[tuple[int, int]]:
    """Interval of positions taken by each core strand after expansion.

    Core strand ``r`` owns ``mult[r]`` consecutive leaves, laid out in the
    order ``order`` (its block index); leaf ``j`` expands to ``sizes[j]``
    positions.
    """
    n = len(mult)
    by_slot = [0] * n
    for r, t in enumerate(order):
        by_slot[t] = mult[r]
    leaf_off = list(accumulate(by_slot, initial=0))
    pos = list(accumulate(sizes, initial=0))
    out = []
    for r, t in enumerate(order):
        out.append((pos[leaf_off[t]], pos[leaf_off[t] + mult[r]]))
    return out


def multiply(a: TreeBraidTree, b: TreeBraidTree) -> TreeBraidTree:
    a = a.reduced
    b = b.reduced
    if a.n_leaves == 1 and not a.braid.letters:
        return b
    if b.n_leaves == 1 and not b.braid.letters:
        return a
    common = common_refinement(a.t_minus, b.t_plus)
    ga = refinement_groups(a.t_minus, common)
    gb = refinement_groups(b.t_plus, common)
    pa, pb = a.perm, b.perm
    tp = a.t_plus if all(len(g) == 1 for g in ga) else _trusted(
        tuple(u + x for u, t in zip(a.t_plus.branches, pa) for x in ga[t])
    )
    inv_b = [0] * len(pb)
    for x, y in enumerate(pb):
        inv_b[y] = x
    tm = b.t_minus if all(len(g) == 1 for g in gb) else _trusted(
        tuple(v + x for v, s in zip(b.t_minus.branches, inv_b) for x in gb[s])
    )

    # Each factor is a cable of its core.  Cut the interface (the leaves of
    # the common refinement) at every block boundary of either core: the
    # product is then a cable of (cabled core of a) * (cabled core of b).
    ca, ma = _core_of(a)
    cb, mb = _core_of(b)
    top_a = _blocks(ma, ca.permutation, [len(g) for g in ga])
    bot_b = _blocks(mb, range(len(mb)), [len(g) for g in gb])
    cuts = sorted({lo for lo, _ in top_a} | {lo for lo, _ in bot_b} | {common.n_leaves})
    index = {x: k for k, x in enumerate(cuts)}
    ra = [index[hi] - index[lo] for lo, hi in top_a]
    rb = [index[hi] - index[lo] for lo, hi in bot_b]
    # block sizes of the product's bottom strands, in a's bottom order
    q = [cuts[k + 1] - cuts[k] for lo, hi in top_a for k in range(index[lo], index[hi])]
    c = BraidWord._trusted(len(cuts) - 1, cable(ca, ra).letters + cable(cb, rb).letters)
    return _reduce_cabled(tp, tm, c, q)


def product(items) -> TreeBraidTree:
    """Product of a sequence of diagrams, evaluated as a balanced tree."""
    items = list(items)
    if not items:
        return IDENTITY
    while len(items) > 1:
        nxt = [multiply(items[k], items[k + 1]) for k in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0].reduced


def invert(d: TreeBraidTree) -> TreeBraidTree:
    out = TreeBraidTree(d.t_minus, ~d.braid, d.t_plus, d.is_reduced)
    c = d.__dict__.get("_core")
    if c is not None:
        core, mult = c
        flipped = [0] * len(mult)
        for r, t in enumerate(core.permutation):
            flipped[t] = mult[r]
        object.__setattr__(out, "_core", (~core, tuple(flipped)))
    return out


def equal(a: TreeBraidTree, b: TreeBraidTree) -> bool:
    return a.key == b.key


# ---------------------------------------------------------------------------
# queries


def branches(d: TreeBraidTree) -> list[BranchPair]:
    d = d.reduced
    perm = d.perm
    return [BranchPair(u, d.t_minus.branches[perm[i]]) for i, u in enumerate(d.t_plus.branches)]


def n_carets(d: TreeBraidTree) -> int:
    return d.reduced.t_plus.n_carets


def ell0(d: TreeBraidTree) -> int:
    return d.reduced.t_minus.ell0


def ell1(d: TreeBraidTree) -> int:
    return d.reduced.t_minus.ell1


def canonical_key(d: TreeBraidTree) -> bytes:
    return d.key


def is_in_F(d: TreeBraidTree) -> bool:
    return not d.canonical.braid.letters
