"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -s`` or
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from bvgroup.braids import BraidWord
from bvgroup.diagrams import IDENTITY, TreeBraidTree, ell0, ell1, n_carets
from bvgroup.divergence import (
    TEST_SCALE,
    DivergenceConfig,
    br_h_diagram,
    br_h_word,
    build_path,
    p_word,
    v_word,
    verify_certificate,
)
from bvgroup.generators import (
    FINITE_ALPHABET,
    FINITE_RELATORS,
    GenLetter,
    GenWord,
    eval_word,
    finite_relator_words,
    infinite_relators,
    sigma_gen,
    subscript_copy,
    x_gen,
)
from bvgroup.oracle import ball, divergence_spotcheck
from bvgroup.trees import all_right

X0, X1 = x_gen(0), x_gen(1)


def _say(n: int, ok: bool, detail: str) -> None:
    print(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print()
            _say(n, ok, detail)
        assert ok, detail

    return emit


def _rand_word(rng, lo, hi, alphabet=FINITE_ALPHABET):
    return GenWord(rng.choice(alphabet) for _ in range(rng.randint(lo, hi)))


def _strictly_below(d: TreeBraidTree, p: str) -> bool:
    return d.reduced.t_minus.has_strict_extension(p)


# ---------------------------------------------------------------------------


def test_c01_finite_relators(report):
    t = time.perf_counter()
    words = finite_relator_words()
    bad = [name for name, w in words if eval_word(w) != IDENTITY]
    dt = time.perf_counter() - t
    report(1, not bad and len(words) == len(FINITE_RELATORS) and dt < 5,
           f"{len(words)} finite relators, failures={bad}, {dt:.2f}s (< 5s)")


def test_c02_infinite_relators(report):
    t = time.perf_counter()
    rels = infinite_relators(8)
    bad = [name for name, lhs, rhs in rels if eval_word(lhs) != eval_word(rhs)]
    dt = time.perf_counter() - t
    report(2, not bad and dt < 30, f"{len(rels)} relators up to index 8, failures={bad[:5]}, {dt:.2f}s (< 30s)")


def test_c03_caret_counts_under_x0(report):
    rng = random.Random(3)
    viol: dict[str, int] = {}
    x0i = ~X0

    def v(tag):
        viol[tag] = viol.get(tag, 0) + 1

    count = 0
    while count < 500:
        g = eval_word(_rand_word(rng, 1, 10))
        N = n_carets(g)
        if N < 3:
            continue
        count += 1
        below1 = _strictly_below(g, "1") or _strictly_below(g, "01")
        below0 = _strictly_below(g, "0") or _strictly_below(g, "10")

        a, l0 = g * X0, ell0(g)
        Na = n_carets(a)
        if not N - 1 <= Na <= N + 1:
            v("trichotomy")
        if l0 == 1 and not (Na == N + 1 and ell0(a) == 1):
            v("case l0=1")
        if l0 != 1 and not (Na in (N, N - 1) and ell0(a) == l0 - 1):
            v("case l0>1")
        if l0 != 1 and below1 and not (Na == N and _strictly_below(a, "1")):
            v("case right side occupied")

        b, l1 = g * x0i, ell1(g)
        Nb = n_carets(b)
        if not N - 1 <= Nb <= N + 1:
            v("mirror trichotomy")
        if l1 == 1 and not (Nb == N + 1 and ell1(b) == 1):
            v("mirror l1=1")
        if l1 != 1 and not (Nb in (N, N - 1) and ell1(b) == l1 - 1):
            v("mirror l1>1")
        if l1 != 1 and below0 and not (Nb == N and _strictly_below(b, "0")):
            v("mirror left side occupied")

        # exact caret count along powers of x0 against repeated multiplication
        if below1:
            c = g
            for i in range(2 * l0 + 4):
                if n_carets(c) != max(N, N + i - (l0 - 1)):
                    v("power formula")
                    break
                c = c * X0
        if below0:
            c = g
            for i in range(2 * l1 + 4):
                if n_carets(c) != max(N, N + i - (l1 - 1)):
                    v("mirror power formula")
                    break
                c = c * x0i
    report(3, not viol, f"{count} diagrams with N >= 3, violations={viol or 0}")


def test_c04_copy_adds_carets(report):
    rng = random.Random(4)
    f_alpha = [a for a in FINITE_ALPHABET if a.family == "x"]
    bad = count = 0
    while count < 200:
        g = eval_word(_rand_word(rng, 1, 8)).reduced
        h = eval_word(_rand_word(rng, 1, 5, f_alpha))
        if g == IDENTITY or h == IDENTITY:
            continue
        u = rng.choice(g.t_minus.branches)
        count += 1
        if n_carets(g * subscript_copy(h, u)) != n_carets(g) + n_carets(h):
            bad += 1
    report(4, bad == 0, f"{count} (g, h, branch) triples, violations={bad}")


def test_c05_escape_step_gains_carets(report):
    b = ball(4)
    small = [d for d in b.elements.values() if n_carets(d) <= 2]
    bad = [str(d) for d in small if n_carets(d * X1) < 3]
    report(5, not bad and b.complete, f"{len(small)} elements with N <= 2 in ball(4), violations={len(bad)}")


def test_c06_br_h_rewriting(report):
    bad = []
    for n in range(3, 13):
        if len(br_h_word(n, n)) > 2 * n:
            bad.append(("length", n))
        for k in range(n + 1):
            if eval_word(br_h_word(n, k)) != br_h_diagram(n, k):
                bad.append(("value", n, k))
    # the crossing braid really is one strand sweeping over all others
    t = all_right(3)
    explicit = TreeBraidTree(t, BraidWord(4, (3, 2, 1)), t)
    w3 = br_h_word(3, 3).spelled()
    ok = not bad and w3 == "x0^-1 s1^-1 t1 x0 s1 x1" and br_h_diagram(3, 3) == explicit
    report(6, ok, f"n=3..12, k=0..n, failures={bad[:5]}, n=3 word '{w3}'")


def test_c07_end_to_end_paths(report):
    rng = random.Random(7)
    cfg = TEST_SCALE
    t = time.perf_counter()
    failures, done = [], 0
    while done < 50:
        w = _rand_word(rng, 1, 8)
        if eval_word(w) == IDENTITY:
            continue
        done += 1
        cert = build_path(w, cfg, with_log=False)
        rep = verify_certificate(cert, prefix_checks=False)
        for name in ("terminal_equality", "w4_commutes_with_g3", "segment_bound", "total_bound"):
            if not rep.get(name).passed:
                failures.append((str(w), name))
        if not rep.ok:
            failures.append((str(w), [c.name for c in rep.failed()]))
    dt = time.perf_counter() - t
    report(7, not failures and dt < 120, f"{done} random g, failures={failures[:3]}, {dt:.1f}s (< 120s)")


def test_c08_patch_paths(report):
    bad = [
        (k, Q)
        for Q in (2, 8)
        for k in range(1, 7)
        if eval_word(v_word(k, Q) + p_word(k, Q)) != eval_word(v_word(k + 1, Q))
    ]
    report(8, not bad, f"k=1..6, Q in (2, 8), failures={bad}")


def test_c09_metric_spot_checks(report):
    t = time.perf_counter()
    b3 = ball(3)
    replay = ball.__wrapped__(3)
    same = b3.table == replay.table
    witnesses = all(
        len(w) == n and eval_word(w).key == key for key, (n, w) in b3.table.items()
    )
    b4 = ball(4)
    lip = [
        str(w) for key, (n, w) in b3.table.items()
        if not n - 1 <= b4.length(b3.elements[key] * X1) <= n + 1
    ]
    spot = divergence_spotcheck(2, Fraction(1, 3))
    dt = time.perf_counter() - t
    ok = same and witnesses and not lip and spot.ok and dt < 300
    report(9, ok, f"ball(3)={len(b3)} replay={'same' if same else 'DIFFERENT'} witnesses={'ok' if witnesses else 'BAD'}, "
                  f"|g x1| violations={len(lip)}, {spot.summary()}, {dt:.1f}s (< 300s)")


def test_c10_negative_controls(report):
    cert = build_path("x0 s1 x1^-1 t1", TEST_SCALE, with_log=False)
    caught = []
    # the three x0/x1 exponents of w4, each moved by one in both directions
    Qk = TEST_SCALE.Q * cert.inner_k
    for exps in [(Qk + 1, -1, -Qk + 1), (Qk - 1, -1, -Qk + 1), (Qk, 1, -Qk + 1),
                 (Qk, -2, -Qk + 1), (Qk, -1, -Qk + 2), (Qk, -1, -Qk)]:
        cert.w4 = GenWord.power("x", 0, exps[0]) + GenWord.power("x", 1, exps[1]) + GenWord.power("x", 0, exps[2])
        rep = verify_certificate(cert, prefix_checks=False)
        caught.append(rep.get("terminal_equality").passed is False)

    s1 = sigma_gen(1)
    flipped = TreeBraidTree(s1.t_plus, BraidWord(3, (-s1.braid.letters[0],)), s1.t_minus)
    s2 = sigma_gen(2)
    b2_fails = flipped * s2 * flipped != s2 * flipped * s2
    b2_holds = s1 * s2 * s1 == s2 * s1 * s2
    ok = all(caught) and b2_fails and b2_holds
    report(10, ok, f"w4 corruptions caught {sum(caught)}/{len(caught)}, "
                   f"b2 with flipped sigma1 {'fails' if b2_fails else 'HOLDS'}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
