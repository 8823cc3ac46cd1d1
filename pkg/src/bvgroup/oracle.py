"""
Brute-force ground truth in the Cayley graph of BV over ``{x0, x1, s1, t1}``.

Everything here is breadth-first search keyed by the canonical key of the
reduced diagram, so it is only meant for small radii.  Budgets are node
counts; a search that runs out returns what it has with ``complete=False``.
"""

from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .braids import crossing_count
from .diagrams import IDENTITY, TreeBraidTree, multiply, n_carets
from .generators import FINITE_ALPHABET, GenWord, letter_diagram

__all__ = [
    "Ball",
    "ball",
    "word_length",
    "SpotcheckReport",
    "divergence_spotcheck",
    "CaretLengthReport",
    "caret_length_consistency",
    "DEFAULT_NODE_BUDGET",
]

DEFAULT_NODE_BUDGET = 200_000

_STEPS = tuple((a, letter_diagram(a)) for a in FINITE_ALPHABET)


@dataclass
class Ball:
    """Elements of length at most ``radius`` with their lengths and witness words."""

    radius: int
    table: dict[bytes, tuple[int, GenWord]]
    elements: dict[bytes, TreeBraidTree]
    complete: bool = True

    def __len__(self) -> int:
        return len(self.table)

    def __contains__(self, d: TreeBraidTree) -> bool:
        return d.key in self.table

    def length(self, d: TreeBraidTree) -> int | None:
        hit = self.table.get(d.key)
        return None if hit is None else hit[0]

    def sphere(self, r: int) -> list[bytes]:
        return [k for k, (n, _) in self.table.items() if n == r]

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["key", "length", "witness"])
        for key, (n, w) in self.table.items():
            out.writerow([key.decode(), n, str(w)])
        return buf.getvalue()


@lru_cache(maxsize=8)
def ball(r: int, node_budget: int = DEFAULT_NODE_BUDGET) -> Ball:
    """BFS ball of radius ``r`` around the identity.

    Generators are tried in a fixed order, so tables and witnesses are
    reproducible from run to run.  Cached; treat the result as read-only.
    """
    if r < 0:
        raise ValueError("radius must be non-negative")
    table = {IDENTITY.key: (0, GenWord())}
    elements = {IDENTITY.key: IDENTITY}
    frontier = [IDENTITY.key]
    complete = True
    for dist in range(1, r + 1):
        nxt = []
        for key in frontier:
            d = elements[key]
            w = table[key][1]
            for a, step in _STEPS:
                e = multiply(d, step)
                k = e.key
                if k in table:
                    continue
                if len(table) >= node_budget:
                    complete = False
                    break
                table[k] = (dist, w + (a,))
                elements[k] = e
                nxt.append(k)
            if not complete:
                break
        if not complete:
            return Ball(dist - 1, table, elements, False)
        frontier = nxt
    return Ball(r, table, elements, complete)


def word_length(d: TreeBraidTree, max_r: int, node_budget: int = DEFAULT_NODE_BUDGET) -> int | None:
    """Exact word length of ``d`` if it is at most ``max_r``, else ``None``."""
    b = ball(max_r, node_budget)
    n = b.length(d)
    if n is None and not b.complete:
        return None
    return n


# ---------------------------------------------------------------------------
# divergence spot checks


@dataclass
class SpotcheckReport:
    x: int
    delta: Fraction
    excluded_radius: int
    pairs_checked: int
    max_path_length: int | None
    unreachable: list[tuple[str, str]] = field(default_factory=list)
    budget_exceeded: bool = False

    @property
    def ok(self) -> bool:
        return not self.unreachable and not self.budget_exceeded

    def summary(self) -> str:
        state = "ok" if self.ok else "FAIL"
        return (
            f"spotcheck x={self.x} delta={self.delta} excluded_radius={self.excluded_radius} "
            f"pairs={self.pairs_checked} max_path={self.max_path_length} "
            f"unreachable={len(self.unreachable)} budget_exceeded={self.budget_exceeded} {state}"
        )


class _Graph:
    """Cayley graph neighbourhoods, computed lazily and shared across searches."""

    def __init__(self, elements: dict[bytes, TreeBraidTree], forbidden: set[bytes]):
        self.elements = dict(elements)
        self.forbidden = forbidden
        self.adj: dict[bytes, list[bytes]] = {}

    def neighbours(self, key: bytes) -> list[bytes]:
        out = self.adj.get(key)
        if out is None:
            d = self.elements[key]
            out = []
            for _, step in _STEPS:
                e = multiply(d, step)
                k = e.key
                if k not in self.forbidden:
                    self.elements.setdefault(k, e)
                    out.append(k)
            self.adj[key] = out
        return out

    def distance(self, p: bytes, q: bytes, max_depth: int, node_budget: int) -> tuple[int | None, bool]:
        """Shortest path length from ``p`` to ``q`` outside ``forbidden`` (bidirectional BFS)."""
        if p == q:
            return 0, False
        dist = ({p: 0}, {q: 0})
        fronts = ([p], [q])
        depth = [0, 0]
        while fronts[0] and fronts[1] and depth[0] + depth[1] < max_depth:
            side = 0 if len(fronts[0]) <= len(fronts[1]) else 1
            mine, other = dist[side], dist[1 - side]
            nxt = []
            best = None
            for key in fronts[side]:
                for k in self.neighbours(key):
                    if k in mine:
                        continue
                    mine[k] = depth[side] + 1
                    if k in other:
                        total = mine[k] + other[k]
                        best = total if best is None else min(best, total)
                    nxt.append(k)
                if len(mine) + len(other) > node_budget:
                    return best, best is None
            if best is not None:
                return best, False
            fronts = (nxt, fronts[1]) if side == 0 else (fronts[0], nxt)
            depth[side] += 1
        return None, False


def divergence_spotcheck(
    x: int,
    delta: Fraction | float | str,
    node_budget: int = DEFAULT_NODE_BUDGET,
    max_pairs: int | None = None,
    max_depth: int | None = None,
    seed: int = 0,
) -> SpotcheckReport:
    """Join pairs on the sphere of radius ``x`` by paths avoiding the closed ball of radius ``floor(delta*x)``.

    Reports the longest shortest avoiding path over the checked pairs.  With
    ``max_pairs`` the pairs are a seeded sample; otherwise all pairs are used.
    """
    delta = Fraction(delta)
    rho = math.floor(delta * x)
    b = ball(max(x, rho), node_budget)
    if not b.complete:
        return SpotcheckReport(x, delta, rho, 0, None, budget_exceeded=True)
    sphere = sorted(b.sphere(x))
    pairs = [(p, q) for i, p in enumerate(sphere) for q in sphere[i + 1:]]
    if max_pairs is not None and len(pairs) > max_pairs:
        pairs = sorted(random.Random(seed).sample(pairs, max_pairs))
    forbidden = {k for k, (n, _) in b.table.items() if n <= rho}
    depth = max_depth if max_depth is not None else 4 * x + 4

    report = SpotcheckReport(x, delta, rho, len(pairs), 0)
    graph = _Graph(b.elements, forbidden)
    for p, q in pairs:
        if p in forbidden or q in forbidden:
            report.unreachable.append((p.decode(), q.decode()))
            continue
        n, over = graph.distance(p, q, depth, node_budget)
        report.budget_exceeded |= over
        if n is None:
            report.unreachable.append((p.decode(), q.decode()))
        else:
            report.max_path_length = max(report.max_path_length, n)
    if not pairs:
        report.max_path_length = None
    return report


# ---------------------------------------------------------------------------
# caret counts against word length


@dataclass
class CaretLengthReport:
    radius: int
    elements: int
    max_carets_ratio: float
    max_crossing_ratio: float
    c1_upper_bound: float
    worst_witness: str

    def summary(self) -> str:
        return (
            f"radius={self.radius} elements={self.elements} "
            f"max N/|g|={self.max_carets_ratio:.4f} "
            f"max cbrt(crossings)/|g|={self.max_crossing_ratio:.4f} "
            f"C1 <= {self.c1_upper_bound:.4f} (witness: {self.worst_witness})"
        )


def caret_length_consistency(r: int, node_budget: int = DEFAULT_NODE_BUDGET) -> CaretLengthReport:
    """Largest ``N(g)/|g|`` and ``cbrt(crossings)/|g|`` over the ball of radius ``r``.

    ``c1_upper_bound`` is ``min |g| / max(N(g), cbrt(crossings))``: no constant
    above it can satisfy the caret/crossing lower bound on word length.
    """
    b = ball(r, node_budget)
    best_n = best_c = 0.0
    bound = math.inf
    witness = ""
    for key, (n, w) in b.table.items():
        if n == 0:
            continue
        d = b.elements[key]
        carets = n_carets(d)
        cr = crossing_count(d.canonical.braid) ** (1 / 3)
        best_n = max(best_n, carets / n)
        best_c = max(best_c, cr / n)
        ratio = n / max(carets, cr)
        if ratio < bound:
            bound, witness = ratio, str(w)
    return CaretLengthReport(b.radius, len(b), best_n, best_c, bound, witness)
