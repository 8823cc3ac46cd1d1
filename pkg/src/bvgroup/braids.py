"""
Artin braid groups B_n as words in the standard generators.

A braid on ``n`` strands is a word of signed letters ``±i`` with
``1 <= i <= n-1``; the letter ``i`` exchanges the strands at positions
``i-1`` and ``i`` (positions are 0-based).  Words are read from the bottom of
the braid to the top, so in a product ``ab`` the braid ``a`` is below ``b``.

Crossing convention (see :mod:`bvgroup.conventions`): in the letter ``+i`` the
strand coming from position ``i`` passes over the strand coming from position
``i-1``.  Everything combinatorial here (permutations, cabling, strand
deletion) is mirror symmetric; only the word for "strand ``k`` passes over
strands ``k-1, ..., 0``" depends on the choice.

Canonical spellings come from the left-greedy Garside normal form
``Δ^inf A_1 ... A_r``, computed on the smallest window of positions the word
touches.  From it we read off the left fraction ``N^{-1} P`` (``N``, ``P``
positive, no common left divisor), which does not depend on the number of
idle strands around the window, and spell it as a word.

Plain equality tests (:func:`words_equal`) strip the common prefix and
suffix and then use the normal form on narrow windows, or the faithful
Artin action realised in ``SL2(Z)`` on wide ones.  :func:`decable` writes a
braid as a cable of a core braid with no adjacent parallel strands.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

__all__ = [
    "BraidWord",
    "BraidNormalForm",
    "normal_form",
    "canonical_letters",
    "underlying_permutation",
    "split_strand",
    "cable",
    "remove_strand",
    "is_parallel_pair",
    "compose",
    "invert",
    "single_crossing",
    "crossing_count",
    "over_crossing_letter",
    "free_reduce",
    "words_equal",
    "decable",
]

Perm = tuple  # perm[bottom position] = top position


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.strands < 1:
            raise ValueError("a braid has at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise ValueError(f"letter {x} out of range for {self.strands} strands")

    @classmethod
    def _trusted(cls, n: int, letters: tuple[int, ...]) -> "BraidWord":
        # internal constructor: skips validation of letters already known to be in range
        out = object.__new__(cls)
        object.__setattr__(out, "strands", n)
        object.__setattr__(out, "letters", letters)
        return out

    @classmethod
    def identity(cls, n: int) -> "BraidWord":
        return cls(n, ())

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return compose(self, other)

    def __invert__(self) -> "BraidWord":
        return invert(self)

    @cached_property
    def permutation(self) -> Perm:
        return underlying_permutation(self)

    @cached_property
    def canonical(self) -> "BraidWord":
        """Canonical spelling of this braid (equal braids give equal words)."""
        return BraidWord._trusted(self.strands, canonical_letters(self.strands, self.letters))

    def is_identity(self) -> bool:
        return not self.letters or not self.canonical.letters

    def equals(self, other: "BraidWord") -> bool:
        if self.strands != other.strands:
            return False
        if "canonical" in self.__dict__ and "canonical" in other.__dict__:
            return self.canonical.letters == other.canonical.letters
        return words_equal(self.strands, self.letters, other.letters)

    def __str__(self) -> str:
        return f"{self.strands}: " + " ".join(str(x) for x in self.letters)

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        head, sep, tail = text.partition(":")
        if not sep:
            raise ValueError(f"braid text must look like 'n: i1 i2 -i3', got {text!r}")
        try:
            n = int(head)
        except ValueError:
            raise ValueError(f"bad strand count {head.strip()!r} at position 0") from None
        letters = []
        pos = len(head) + 1
        for tok in tail.split():
            at = text.index(tok, pos)
            pos = at + len(tok)
            try:
                letters.append(int(tok))
            except ValueError:
                raise ValueError(f"bad braid letter {tok!r} at position {at}") from None
        return cls(n, tuple(letters))


# ---------------------------------------------------------------------------
# basic operations


def compose(b1: BraidWord, b2: BraidWord) -> BraidWord:
    if b1.strands != b2.strands:
        raise ValueError(f"strand counts differ: {b1.strands} vs {b2.strands}")
    return BraidWord._trusted(b1.strands, b1.letters + b2.letters)


def invert(b: BraidWord) -> BraidWord:
    return BraidWord._trusted(b.strands, tuple(-x for x in reversed(b.letters)))


def single_crossing(n: int, i: int, sign: int = 1) -> BraidWord:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return BraidWord(n, (sign * i,))


def crossing_count(b: BraidWord) -> int:
    return len(b.letters)


def over_crossing_letter(upper_from_right: bool, i: int) -> int:
    """Letter exchanging positions ``i-1, i`` with the given strand on top.

    ``upper_from_right`` selects the strand coming from position ``i``.
    """
    return i if upper_from_right else -i


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def underlying_permutation(b: BraidWord) -> Perm:
    """``perm[p]`` is the top position of the strand starting at bottom position ``p``."""
    at = list(range(b.strands))  # at[pos] = bottom position of the strand now at pos
    for x in b.letters:
        i = abs(x)
        at[i - 1], at[i] = at[i], at[i - 1]
    perm = [0] * b.strands
    for pos, start in enumerate(at):
        perm[start] = pos
    return tuple(perm)


def _check_position(b: BraidWord, i: int) -> None:
    if not 0 <= i < b.strands:
        raise ValueError(f"position {i} out of range for {b.strands} strands")


def split_strand(b: BraidWord, i: int) -> BraidWord:
    """Double the strand starting at bottom position ``i``.

    The new strand runs immediately to the right of the old one and crosses
    every other strand the same way; each letter meeting the tracked strand
    becomes two adjacent letters of the same sign.
    """
    _check_position(b, i)
    p = i
    out: list[int] = []
    for x in b.letters:
        j = abs(x)
        s = 1 if x > 0 else -1
        if j < p:
            out.append(x)
        elif j > p + 1:
            out.append(x + s)
        elif j == p:
            # the strand on the left moves across the pair
            out.append(s * p)
            out.append(s * (p + 1))
            p -= 1
        else:
            # the pair moves across the strand on its right
            out.append(s * (p + 2))
            out.append(s * (p + 1))
            p += 1
    return BraidWord._trusted(b.strands + 1, tuple(out))


@lru_cache(maxsize=4096)
def _block_letter(x: int, p: int, q: int) -> tuple[int, ...]:
    # the letter x = ±1 on two strands with the left strand cabled p times and
    # the right one q times: the right block passes the left block row by row
    def rows(p, q):
        return [y for b in range(q) for y in range(p + b, b, -1)]

    if x > 0:
        return tuple(rows(p, q))
    return tuple(-y for y in reversed(rows(q, p)))


def cable(b: BraidWord, mult: Sequence[int]) -> BraidWord:
    """Replace the strand from bottom position ``i`` by ``mult[i]`` parallel copies.

    Same braid as splitting each strand ``mult[i] - 1`` times, done in one pass.
    A multiplicity of 0 deletes the strand.
    """
    n = b.strands
    if len(mult) != n or any(m < 0 for m in mult) or not any(mult):
        raise ValueError("need one non-negative multiplicity per strand, not all zero")
    if all(m == 1 for m in mult):
        return b
    at = list(range(n))  # bottom position of the strand now at each position
    off = [0] * n
    for pos in range(1, n):
        off[pos] = off[pos - 1] + mult[pos - 1]
    out: list[int] = []
    for x in b.letters:
        i = abs(x)
        left, right = at[i - 1], at[i]
        p, q = mult[left], mult[right]
        s = off[i - 1]
        if p == q == 1:
            out.append(s + 1 if x > 0 else -(s + 1))
        elif p and q:
            out.extend(y + s if y > 0 else y - s for y in _block_letter(1 if x > 0 else -1, p, q))
        at[i - 1], at[i] = right, left
        off[i] = s + q
    return BraidWord._trusted(sum(mult), tuple(out))


def remove_strand(b: BraidWord, i: int) -> BraidWord:
    """Delete the strand starting at bottom position ``i``."""
    _check_position(b, i)
    if b.strands < 2:
        raise ValueError("cannot remove the only strand")
    p = i
    out: list[int] = []
    for x in b.letters:
        j = abs(x)
        if j == p:
            p -= 1
        elif j == p + 1:
            p += 1
        elif j < p:
            out.append(x)
        else:
            out.append(x - 1 if x > 0 else x + 1)
    return BraidWord._trusted(b.strands - 1, tuple(out))


def is_parallel_pair(b: BraidWord, i: int) -> bool:
    """Whether the strands from bottom positions ``i``, ``i+1`` are parallel."""
    if not 0 <= i < b.strands - 1:
        raise ValueError(f"position {i} has no right neighbour in {b.strands} strands")
    perm = b.permutation
    if perm[i + 1] != perm[i] + 1:
        return False
    resplit = split_strand(remove_strand(b, i + 1), i)
    return resplit.equals(b)


# ---------------------------------------------------------------------------
# exact equality through the Artin action
#
# B_n acts faithfully on the free group F_n by Hurwitz moves
# (a, b) -> (a b a^-1, a).  Sending the free generators to A^j B A^-j with
# A = [[1, 2], [0, 1]], B = [[1, 0], [2, 1]] embeds F_n in SL2(Z) (these
# elements freely generate a subgroup of the free group <A, B>), so two words
# are equal braids exactly when they move this tuple of integer matrices to
# the same place.


def _mat_mul(a, b):
    return (
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    )


def _mat_inv(a):
    return (a[3], -a[1], -a[2], a[0])


def _hurwitz(m: int, letters: Sequence[int]) -> list:
    t = [(1 + 4 * j, -8 * j * j, 2, 1 - 4 * j) for j in range(m)]  # A^j B A^-j
    for x in letters:
        i = abs(x)
        a, b = t[i - 1], t[i]
        if x > 0:
            t[i - 1], t[i] = _mat_mul(_mat_mul(a, b), _mat_inv(a)), a
        else:
            t[i - 1], t[i] = b, _mat_mul(_mat_mul(_mat_inv(b), a), b)
    return t


_SMALL_WINDOW = 8


def words_equal(n: int, a: Sequence[int], b: Sequence[int]) -> bool:
    """Whether two words on ``n`` strands spell the same braid."""
    a, b = tuple(a), tuple(b)
    if a == b:
        return True
    # p x s == p y s  iff  x == y
    lo = 0
    top = min(len(a), len(b))
    while lo < top and a[lo] == b[lo]:
        lo += 1
    hi = 0
    while hi < top - lo and a[-1 - hi] == b[-1 - hi]:
        hi += 1
    x, y = a[lo:len(a) - hi], b[lo:len(b) - hi]
    rest = free_reduce(x + tuple(-t for t in reversed(y)))
    if not rest:
        return True
    lo_i = min(abs(t) for t in rest)
    hi_i = max(abs(t) for t in rest)
    if hi_i - lo_i + 2 <= _SMALL_WINDOW:
        return not canonical_letters(n, rest)
    x, y = free_reduce(x), free_reduce(y)
    off = min(abs(t) for t in x + y) - 1
    m = max(abs(t) for t in x + y) - off + 1
    x = [t - off if t > 0 else t + off for t in x]
    y = [t - off if t > 0 else t + off for t in y]
    return _hurwitz(m, x) == _hurwitz(m, y)


# ---------------------------------------------------------------------------
# cable decomposition


def _linking(b: BraidWord) -> dict[tuple[int, int], int]:
    # signed crossing count for each pair of strands (by bottom position)
    at = list(range(b.strands))
    out: dict[tuple[int, int], int] = {}
    for x in b.letters:
        i = abs(x)
        u, v = at[i - 1], at[i]
        key = (u, v) if u < v else (v, u)
        out[key] = out.get(key, 0) + (1 if x > 0 else -1)
        at[i - 1], at[i] = v, u
    return out


def _candidate_pairs(b: BraidWord) -> list[int]:
    """Pairs ``i, i+1`` that pass the cheap necessary tests for being parallel."""
    perm = b.permutation
    n = b.strands
    adj = [i for i in range(n - 1) if perm[i + 1] == perm[i] + 1]
    if not adj or not b.letters:
        return adj
    lk = _linking(b)
    rows: list[dict[int, int]] = [dict() for _ in range(n)]
    for (u, v), c in lk.items():
        if c:
            rows[u][v] = c
            rows[v][u] = c
    out = []
    for i in adj:
        ri, rj = rows[i], rows[i + 1]
        if i + 1 in ri:
            continue
        if {k: c for k, c in ri.items() if k != i + 1} == {k: c for k, c in rj.items() if k != i}:
            out.append(i)
    return out


def _runs(n: int, joined: Iterable[int]) -> list[int]:
    mult = []
    j = set(joined)
    for i in range(n):
        if i - 1 in j:
            mult[-1] += 1
        else:
            mult.append(1)
    return mult


def _collapse(b: BraidWord, joined: Iterable[int]) -> tuple[BraidWord, list[int]]:
    j = set(joined)
    keep = [0 if i - 1 in j else 1 for i in range(b.strands)]
    return cable(b, keep), _runs(b.strands, j)


def _jointly_parallel(b: BraidWord, joined: Sequence[int]) -> bool:
    core, mult = _collapse(b, joined)
    return words_equal(b.strands, cable(core, mult).letters, b.letters)


def decable(b: BraidWord) -> tuple[BraidWord, tuple[int, ...]]:
    """Write ``b`` as ``cable(core, mult)`` with the runs of parallel strands maximal.

    ``core`` has no adjacent parallel strands, so ``(core, mult)`` depends only
    on the braid and not on its spelling.
    """
    cand = _candidate_pairs(b)
    good: list[int] = []
    todo = [cand] if cand else []
    while todo:
        part = todo.pop()
        if _jointly_parallel(b, part):
            good.extend(part)
        elif len(part) > 1:
            h = len(part) // 2
            todo.append(part[h:])
            todo.append(part[:h])
    good.sort()
    if good and not _jointly_parallel(b, good):
        # individually parallel pairs should always combine; be safe anyway
        acc: list[int] = []
        for i in good:
            if _jointly_parallel(b, acc + [i]):
                acc.append(i)
        good = acc
    core, mult = _collapse(b, good)
    return core, tuple(mult)


# ---------------------------------------------------------------------------
# Garside normal form
#
# A simple braid (positive, each pair of strands crossing at most once) is
# stored as its permutation.  Composition "a then b" is b[a[x]].


def _compose(a: Perm, b: Perm) -> Perm:
    return tuple(b[x] for x in a)


def _inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for x, y in enumerate(a):
        out[y] = x
    return tuple(out)


def _delta(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


def _flip(a: Perm) -> Perm:
    """Conjugation by the half twist: letter ``i`` becomes ``n - i``."""
    n = len(a)
    return tuple(n - 1 - a[n - 1 - x] for x in range(n))


def _starting_set(a: Perm) -> list[int]:
    return [i for i in range(1, len(a)) if a[i - 1] > a[i]]


def _right_complement(a: Perm) -> Perm:
    """``a^{-1} Δ``."""
    n = len(a)
    inv = _inverse(a)
    return tuple(n - 1 - inv[y] for y in range(n))


def _simple_word(a: Perm) -> list[int]:
    """A positive word for the simple braid ``a`` (leftmost descent first)."""
    p = list(a)
    out = []
    i = 1
    while i < len(p):
        if p[i - 1] > p[i]:
            out.append(i)
            p[i - 1], p[i] = p[i], p[i - 1]
            i = max(1, i - 1)
        else:
            i += 1
    return out


def _left_weight(a: Perm, b: Perm) -> tuple[Perm, Perm]:
    """Move the largest possible left divisor of ``b`` onto the end of ``a``."""
    n = len(a)
    a = list(a)
    b = list(b)
    ainv = [0] * n
    for x, y in enumerate(a):
        ainv[y] = x
    # i in S(b) and i not in F(a): a·σ_i stays simple
    todo = [i for i in range(1, n) if b[i - 1] > b[i] and ainv[i - 1] < ainv[i]]
    while todo:
        i = todo.pop()
        if not (b[i - 1] > b[i] and ainv[i - 1] < ainv[i]):
            continue
        x, y = ainv[i - 1], ainv[i]
        a[x], a[y] = i, i - 1
        ainv[i - 1], ainv[i] = y, x
        b[i - 1], b[i] = b[i], b[i - 1]
        if i > 1:
            todo.append(i - 1)
        if i < n - 1:
            todo.append(i + 1)
    return tuple(a), tuple(b)


@dataclass(frozen=True)
class BraidNormalForm:
    """Left-greedy normal form ``Δ^infimum · factors[0] · ... · factors[-1]``."""

    strands: int
    infimum: int
    factors: tuple[Perm, ...]

    def is_identity(self) -> bool:
        return self.infimum == 0 and not self.factors

    def letters(self) -> tuple[int, ...]:
        """Spelling of the left fraction ``N^{-1} P`` read off this form."""
        n = self.strands
        inf, fac = self.infimum, self.factors
        out: list[int] = []
        if inf >= 0:
            out.extend(_simple_word(_delta(n)) * inf)
            for a in fac:
                out.extend(_simple_word(a))
            return tuple(out)
        r = -inf
        m = min(r, len(fac))
        # Δ^{-m} A_1..A_m = (Δ^{-1} A'_1) ... (Δ^{-1} A'_m) with A'_k = flip^{m-k}(A_k),
        # and Δ^{-1} A' = (A'^{-1} Δ)^{-1}; the denominator is N = ∂A'_m ... ∂A'_1 Δ^{r-m}.
        denom: list[int] = []
        for k in range(m - 1, -1, -1):
            a = fac[k]
            if (m - 1 - k) % 2:
                a = _flip(a)
            denom.extend(_simple_word(_right_complement(a)))
        denom.extend(_simple_word(_delta(n)) * (r - m))
        # respell the denominator through its own normal form
        nden = normal_form(BraidWord(n, tuple(denom)))
        out.extend(-x for x in reversed(nden.letters()))
        for a in fac[m:]:
            out.extend(_simple_word(a))
        return tuple(out)


def _positive_factors(n: int, letters: Sequence[int]) -> tuple[list[Perm], int]:
    """Write the word as ``Δ^{-k}`` times a product of simple braids.

    Letters are grouped greedily into runs that spell a simple braid ``A``
    (positive runs) or its inverse (negative runs).  A negative run is
    ``Δ^{-1} (Δ A^{-1})`` with ``Δ A^{-1}`` simple, and every ``Δ^{-1}`` is
    pushed to the far left, flipping the simples it passes.
    """
    runs: list[tuple[bool, list[int]]] = []  # (negative, perm)
    cur: list[int] | None = None
    cur_inv: list[int] | None = None
    neg = False
    for x in letters:
        i = abs(x)
        if cur is not None and (x < 0) == neg:
            if neg:
                # prepend σ_i below A: positions i-1, i must not have crossed yet
                if cur[i - 1] < cur[i]:
                    cur[i - 1], cur[i] = cur[i], cur[i - 1]
                    continue
            elif cur_inv[i - 1] < cur_inv[i]:
                u, v = cur_inv[i - 1], cur_inv[i]
                cur[u], cur[v] = i, i - 1
                cur_inv[i - 1], cur_inv[i] = v, u
                continue
        if cur is not None:
            runs.append((neg, cur))
        neg = x < 0
        cur = list(range(n))
        cur[i - 1], cur[i] = i, i - 1
        cur_inv = list(cur)
    if cur is not None:
        runs.append((neg, cur))

    total = sum(1 for r, _ in runs if r)
    after = total
    out: list[Perm] = []
    for r, a in runs:
        if r:
            after -= 1
            ainv = [0] * n
            for x, y in enumerate(a):
                ainv[y] = x
            s = tuple(ainv[n - 1 - x] for x in range(n))
        else:
            s = tuple(a)
        out.append(_flip(s) if after % 2 else s)
    return out, total


def _normalize(n: int, simples: Iterable[Perm]) -> tuple[int, tuple[Perm, ...]]:
    ident = tuple(range(n))
    delta = _delta(n)
    nf: list[Perm] = []
    for s in simples:
        if s == ident:
            continue
        nf.append(s)
        for j in range(len(nf) - 2, -1, -1):
            a, b = _left_weight(nf[j], nf[j + 1])
            if a == nf[j]:
                break
            nf[j], nf[j + 1] = a, b
        while nf and nf[-1] == ident:
            nf.pop()
    lead = 0
    while lead < len(nf) and nf[lead] == delta:
        lead += 1
    rest = tuple(nf[lead:])
    assert ident not in rest
    return lead, rest


def normal_form(b: BraidWord) -> BraidNormalForm:
    n = b.strands
    simples, k = _positive_factors(n, b.letters)
    lead, factors = _normalize(n, simples)
    return BraidNormalForm(n, lead - k, factors)


@lru_cache(maxsize=65536)
def _window_canonical(m: int, letters: tuple[int, ...]) -> tuple[int, ...]:
    return free_reduce(normal_form(BraidWord(m, letters)).letters())


def canonical_letters(n: int, letters: Sequence[int]) -> tuple[int, ...]:
    """Canonical spelling of the braid, computed on the window of touched positions."""
    letters = free_reduce(letters)
    if not letters:
        return ()
    lo = min(abs(x) for x in letters)
    hi = max(abs(x) for x in letters)
    off = lo - 1
    m = hi - lo + 2
    shifted = tuple(x - off if x > 0 else x + off for x in letters)
    res = _window_canonical(m, shifted)
    return tuple(x + off if x > 0 else x - off for x in res)
