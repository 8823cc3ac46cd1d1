"""
Explicit paths in the Cayley graph of BV that stay away from the identity.

For ``g`` with at least three carets the path is ``w = w1 w2 w3 w4 w5``:

* ``w1`` moves the branch ``0`` of the range tree one level down;
* ``w2`` is a conjugate of ``x1`` equal to a high-index ``x_m``, which inflates
  the caret count;
* ``w3`` realises the diagram ``h`` that untwists the strand ending at the
  leftmost range leaf (two F words around a short braid word ``Br_h``);
* ``w4 = v(k) = x0^{Qk} x1^-1 x0^{-Qk+1}`` commutes with ``g w1 w2 w3``;
* ``w5`` undoes ``g w1 w2 w3``.

So ``g w = v(k)``.  Elements with at most two carets first take one step along
``x1``; if that step changed the length parameter, a patch word ``p(k)``
moves between neighbouring terminals ``v(k)`` and ``v(k+1)``.

:func:`build_path` returns a :class:`PathCertificate`;
:func:`verify_certificate` re-derives every checkable claim from scratch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .braids import BraidWord
from .diagrams import (
    IDENTITY,
    TreeBraidTree,
    ell0,
    ell1,
    multiply,
    n_carets,
)
from .generators import (
    GenLetter,
    GenWord,
    eval_prefixes,
    eval_word,
    positive_word,
    to_finite,
    trees_word,
    x_gen,
)
from .trees import all_right
from . import conventions

__all__ = [
    "DivergenceConfig",
    "TEST_SCALE",
    "PAPER",
    "subpath1",
    "subpath2",
    "br_h_word",
    "br_h_diagram",
    "strand_target",
    "h_diagram",
    "subpath3",
    "v_word",
    "subpath4",
    "subpath5",
    "p_word",
    "PathCertificate",
    "build_path",
    "Check",
    "VerificationReport",
    "verify_certificate",
]

X0 = GenLetter("x", 0)
X1 = GenLetter("x", 1)


@dataclass(frozen=True)
class DivergenceConfig:
    """Constants of the construction.

    ``paper-faithful`` enforces ``M >= 100/C1`` and ``Q >= 12M/C1^2``;
    ``test-scale`` accepts any positive ``M`` and ``Q`` and relies on the
    build-time validity check instead.
    """

    C1: Fraction = Fraction(1, 3)
    M: int = 25
    Q: int = 8
    mode: str = "test-scale"

    def __post_init__(self):
        object.__setattr__(self, "C1", Fraction(self.C1))
        if not 0 < self.C1 <= 1:
            raise ValueError("C1 must lie in (0, 1]")
        if self.M < 1 or self.Q < 1:
            raise ValueError("M and Q must be positive")
        if self.mode == "paper-faithful":
            if self.M < 100 / self.C1:
                raise ValueError(f"paper-faithful mode needs M >= 100/C1 = {100 / self.C1}")
            if self.Q < 12 * self.M / self.C1**2:
                raise ValueError(f"paper-faithful mode needs Q >= 12M/C1^2 = {12 * self.M / self.C1**2}")
        elif self.mode != "test-scale":
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def D(self) -> Fraction:
        return 10 * self.M / self.C1 + 3 * self.Q

    @property
    def D_BV(self) -> Fraction:
        return 2 * self.D + 4 * self.Q + 1

    @property
    def delta(self) -> Fraction:
        return self.C1 / (10 * self.M)

    @property
    def delta_BV(self) -> Fraction:
        return min(self.delta / 2, self.C1 * self.Q / 2)

    def to_text(self) -> str:
        return f"C1={self.C1}\nM={self.M}\nQ={self.Q}\nmode={self.mode}\n"


TEST_SCALE = DivergenceConfig()
PAPER = DivergenceConfig(Fraction(1), 100, 1200, "paper-faithful")


# ---------------------------------------------------------------------------
# subpaths


def _need_three(g: TreeBraidTree) -> None:
    if n_carets(g) < 3:
        raise ValueError(f"the main path needs N(g) >= 3, got {n_carets(g)}")


def subpath1(g: TreeBraidTree) -> GenWord:
    _need_three(g)
    if g.reduced.t_minus.has_branch("0"):
        return GenWord.parse("x0^2 x1^-1 x0^-1")
    return GenWord()


def _m(g1: TreeBraidTree, cfg: DivergenceConfig) -> int:
    return cfg.M * (n_carets(g1) + 1) + 1


def subpath2(g1: TreeBraidTree, cfg: DivergenceConfig) -> GenWord:
    e = cfg.M * (n_carets(g1) + 1)
    return GenWord.power("x", 0, -e) + GenWord([X1]) + GenWord.power("x", 0, e)


def br_h_word(n: int, k: int) -> GenWord:
    """Word over ``{x0, x1, s1, t1}`` for ``(T_n, br_h, T_n)``.

    ``br_h`` takes the strand starting at position ``k`` over the strands at
    ``k-1, ..., 0`` to the far left.  It is ``tau_n sigma_{n-1} ... sigma_1``
    for ``k = n`` and ``sigma_k ... sigma_1`` for ``0 < k < n``.
    """
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"need n >= 1 and 0 <= k <= n, got n={n}, k={k}")
    if k == 0:
        return GenWord()
    s2 = GenWord.parse("x0^-1 s1 x1 s1^-1")
    t2 = GenWord.parse("s1^-1 t1 x0")

    def conj(inner: GenWord, e: int) -> GenWord:
        return GenWord.power("x", 0, -e) + inner + GenWord.power("x", 0, e)

    def sigma(i: int) -> GenWord:
        if i == 1:
            return GenWord.parse("s1")
        return conj(s2, i - 2)

    def tau(i: int) -> GenWord:
        if i == 1:
            return GenWord.parse("t1")
        return conj(t2, i - 2)

    out = GenWord()
    if k == n:
        out += tau(n)
        top = n - 1
    else:
        top = k
    for i in range(top, 0, -1):
        out += sigma(i)
    return out.free_reduce()


def br_h_diagram(n: int, k: int) -> TreeBraidTree:
    """``(T_n, br_h, T_n)`` built directly from the crossing sequence."""
    t = all_right(n)
    letters = tuple(conventions.SIGMA_TAU_SIGN * i for i in range(k, 0, -1))
    return TreeBraidTree(t, BraidWord(n + 1, letters), t)


def strand_target(g1: TreeBraidTree) -> int:
    """Range leaf reached by the strand leaving domain leaf 0."""
    return g1.reduced.perm[0]


def h_diagram(g1: TreeBraidTree) -> TreeBraidTree:
    g1 = g1.reduced
    n = g1.n_leaves - 1
    letters = tuple(conventions.SIGMA_TAU_SIGN * i for i in range(strand_target(g1), 0, -1))
    return TreeBraidTree(g1.t_minus, BraidWord(n + 1, letters), g1.t_plus)


def subpath3(g1: TreeBraidTree) -> GenWord:
    g1 = g1.reduced
    _need_three(g1)
    n = n_carets(g1)
    t = all_right(n)
    w = trees_word(g1.t_minus, t) + br_h_word(n, strand_target(g1)) + trees_word(t, g1.t_plus)
    return w.free_reduce()


def v_word(k: int, Q: int) -> GenWord:
    if k < 1 or Q < 1:
        raise ValueError("v(k) needs k >= 1 and Q >= 1")
    return GenWord.power("x", 0, Q * k) + GenWord([X1.inverse()]) + GenWord.power("x", 0, -Q * k + 1)


subpath4 = v_word


def subpath5(g_word: GenWord, *segments: GenWord) -> GenWord:
    """Formal inverse of ``g_word`` followed by ``segments``."""
    w = GenWord(g_word)
    for s in segments:
        w = w + s
    return w.inverse()


def p_word(k: int, Q: int) -> GenWord:
    """Label of a path from ``v(k)`` to ``v(k+1)``."""
    if k < 1 or Q < 1:
        raise ValueError("p(k) needs k >= 1 and Q >= 1")
    return (
        GenWord.power("x", 0, Q * k - 1)
        + GenWord([X1])
        + GenWord.power("x", 0, Q)
        + GenWord([X1.inverse()])
        + GenWord.power("x", 0, -Q * (k + 1) + 1)
    )


# ---------------------------------------------------------------------------
# certificates

SEGMENTS = ("lead", "w1", "w2", "w3", "w4", "w5", "patch")


@dataclass
class PathCertificate:
    g_word: GenWord
    k: int
    config: DivergenceConfig
    case: int | None  # None: main path; -1/0/+1: |g x1| - |g| in the escape route
    lead: GenWord
    w1: GenWord
    w2: GenWord
    w3: GenWord
    w4: GenWord
    w5: GenWord
    patch: GenWord
    terminal: GenWord
    prefix_log: list[tuple[int, int, int | None]] = field(default_factory=list)
    case_source: str = ""

    @property
    def inner_k(self) -> int:
        return self.k + (self.case or 0)

    @property
    def word(self) -> GenWord:
        return self.lead + self.w1 + self.w2 + self.w3 + self.w4 + self.w5 + self.patch

    def segment_lengths(self) -> dict[str, int]:
        return {name: len(getattr(self, name)) for name in SEGMENTS}

    def to_text(self) -> str:
        lines = ["# BV divergence path certificate v1", "[config]", self.config.to_text().rstrip()]
        lines += ["[path]", f"g_word={self.g_word}", f"k={self.k}"]
        lines.append(f"case={'none' if self.case is None else self.case}")
        lines.append(f"case_source={self.case_source}")
        for name in SEGMENTS:
            lines.append(f"{name}={getattr(self, name)}")
        lines.append(f"terminal={self.terminal}")
        lines += ["[prefix_log]", "prefix_len,carets,oracle_len"]
        for n, c, o in self.prefix_log:
            lines.append(f"{n},{c},{'' if o is None else o}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PathCertificate":
        section = None
        cfg: dict[str, str] = {}
        path: dict[str, str] = {}
        log: list[tuple[int, int, int | None]] = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("[") and line.endswith("]"):
                section = line[1:-1]
                continue
            if section in ("config", "path"):
                key, sep, value = line.partition("=")
                if not sep:
                    raise ValueError(f"line {lineno}: expected key=value")
                (cfg if section == "config" else path)[key.strip()] = value.strip()
            elif section == "prefix_log":
                if line.startswith("prefix_len"):
                    continue
                parts = line.split(",")
                if len(parts) != 3:
                    raise ValueError(f"line {lineno}: expected three CSV columns")
                log.append((int(parts[0]), int(parts[1]), int(parts[2]) if parts[2] else None))
            else:
                raise ValueError(f"line {lineno}: content outside a section")
        try:
            config = DivergenceConfig(Fraction(cfg["C1"]), int(cfg["M"]), int(cfg["Q"]), cfg["mode"])
            case = None if path["case"] == "none" else int(path["case"])
            words = {name: GenWord.parse(path[name]) for name in SEGMENTS}
            return cls(
                GenWord.parse(path["g_word"]),
                int(path["k"]),
                config,
                case,
                terminal=GenWord.parse(path["terminal"]),
                prefix_log=log,
                case_source=path.get("case_source", ""),
                **words,
            )
        except KeyError as exc:
            raise ValueError(f"certificate is missing field {exc.args[0]!r}") from None


def _main_segments(start: TreeBraidTree, start_word: GenWord, k: int, cfg: DivergenceConfig):
    w1 = subpath1(start)
    g1 = multiply(start, eval_word(w1))
    w2 = subpath2(g1, cfg)
    w3 = subpath3(g1)
    w4 = v_word(k, cfg.Q)
    w5 = subpath5(start_word, w1, w2, w3)
    return w1, w2, w3, w4, w5


def _prefix_log(g: TreeBraidTree, w: GenWord, radius: int | None):
    from .oracle import ball

    table = ball(radius) if radius is not None else None
    out = []
    for i, d in enumerate(eval_prefixes(g, w)):
        o = table.length(d) if table is not None else None
        out.append((i, n_carets(d), o))
    return out


def build_path(
    g_word: GenWord | str,
    cfg: DivergenceConfig = TEST_SCALE,
    k: int | None = None,
    case: int | None = None,
    oracle_radius: int = 3,
    with_log: bool = True,
    log_oracle_radius: int | None = None,
) -> PathCertificate:
    """Assemble the path from ``g`` to ``v(k)``.

    ``k`` defaults to the word length of ``g`` when the ball of radius
    ``oracle_radius`` contains ``g``, else to the length of ``g_word``.  For
    ``N(g) <= 2`` the step ``case = |g x1| - |g|`` comes from the oracle when
    both lengths are known, else from the ``case`` argument (default 0).
    """
    if isinstance(g_word, str):
        g_word = GenWord.parse(g_word)
    g_word = to_finite(g_word) if not g_word.is_finite() else GenWord(g_word)
    g = eval_word(g_word)
    if g == IDENTITY:
        raise ValueError("the path is defined for non-identity g only")

    from .oracle import word_length

    if k is None:
        k = word_length(g, oracle_radius) if oracle_radius > 0 else None
        if k is None:
            k = len(g_word)
    if k < 1:
        raise ValueError("k must be positive")

    if n_carets(g) >= 3:
        chosen, source = None, "main"
        lead, start, start_word = GenWord(), g, g_word
    else:
        lead = GenWord([X1])
        start_word = g_word + lead
        start = multiply(g, x_gen(1))
        chosen, source = case, "parameter"
        if oracle_radius > 0:
            a = word_length(g, oracle_radius)
            b = word_length(start, oracle_radius + 1)
            if a is not None and b is not None and a == k:
                chosen, source = b - a, "oracle"
        if chosen is None:
            chosen, source = 0, "default"
        if chosen not in (-1, 0, 1):
            raise ValueError("case must be -1, 0 or +1")
    inner_k = k + (chosen or 0)
    if inner_k < 1:
        raise ValueError(f"k={k} with case {chosen} leaves no valid terminal v({inner_k})")

    w1, w2, w3, w4, w5 = _main_segments(start, start_word, inner_k, cfg)
    g3 = eval_word(start_word + w1 + w2 + w3)
    if not ell0(g3) - 1 < cfg.Q * inner_k - 2:
        raise ValueError(
            f"validity condition l0(g3) - 1 < Qk - 2 fails ({ell0(g3) - 1} >= {cfg.Q * inner_k - 2}); "
            "increase Q or k"
        )
    if chosen == -1:
        patch = p_word(k - 1, cfg.Q)
    elif chosen == 1:
        patch = p_word(k, cfg.Q).inverse()
    else:
        patch = GenWord()
    cert = PathCertificate(
        g_word, k, cfg, chosen, lead, w1, w2, w3, w4, w5, patch, v_word(k, cfg.Q), case_source=source
    )
    if with_log:
        cert.prefix_log = _prefix_log(g, cert.word, log_oracle_radius)
    return cert


# ---------------------------------------------------------------------------
# verification


@dataclass
class Check:
    name: str
    passed: bool | None  # None: skipped
    detail: str = ""

    def line(self) -> str:
        state = {True: "PASS", False: "FAIL", None: "SKIP"}[self.passed]
        return f"{state} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class VerificationReport:
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.passed is False]

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __str__(self) -> str:
        return "\n".join(c.line() for c in self.checks)


def _head_x0(d: TreeBraidTree) -> int | None:
    # exponent of x0 in the positive part of the F normal form, None outside F
    d = d.canonical
    if d.braid.letters:
        return None
    w = positive_word(d.t_plus)
    return sum(1 for a in w if a.index == 0)


def verify_certificate(
    cert: PathCertificate,
    cfg: DivergenceConfig | None = None,
    oracle_radius: int = 2,
    prefix_checks: bool = True,
) -> VerificationReport:
    """Recheck every claim of the construction that can be decided exactly.

    ``oracle_radius`` caps the BFS ball used for the avoidance check: it runs
    only when ``floor(delta * k)`` fits in the cap.  ``prefix_checks=False``
    skips everything that walks the path prefix by prefix (the caret
    inequalities and the avoidance check), which is the slow part.
    """
    cfg = cfg or cert.config
    checks: list[Check] = []

    def add(name, ok, detail=""):
        checks.append(Check(name, None if ok is None else bool(ok), detail))

    g = eval_word(cert.g_word)
    k, ik = cert.k, cert.inner_k
    add("g_nontrivial", g != IDENTITY)
    escape = n_carets(g) <= 2
    add("route", (cert.case is None) != escape and (len(cert.lead) > 0) == escape,
        f"N(g)={n_carets(g)}, case={cert.case}")

    # terminal equality
    gw = eval_word(cert.g_word + cert.word)
    add("terminal_equality", gw == eval_word(v_word(k, cfg.Q)) and cert.terminal == v_word(k, cfg.Q))

    start_word = cert.g_word + cert.lead
    start = eval_word(start_word)
    if escape:
        add("escape_caret_bound", n_carets(start) >= 3, f"N(g x1)={n_carets(start)}")
    n0 = n_carets(start)
    if n0 < 3:
        return VerificationReport(checks)

    # subpath 1
    g1 = multiply(start, eval_word(cert.w1))
    add("w1_rule", cert.w1 == subpath1(start))
    add("w1_branch0_removed", not g1.reduced.t_minus.has_branch("0"))
    n1 = n_carets(g1)
    add("w1_caret_growth", n0 <= n1 <= n0 + 2, f"N(g)={n0}, N(g1)={n1}")

    # subpath 2
    m = _m(g1, cfg)
    g2 = multiply(g1, eval_word(cert.w2))
    add("w2_rule", cert.w2 == subpath2(g1, cfg))
    add("w2_equals_x_m", eval_word(cert.w2) == x_gen(m), f"m={m}")
    n2 = n_carets(g2)
    add("w2_caret_lower_bound", n2 >= cfg.M * n1, f"N(g2)={n2} >= M N(g1)={cfg.M * n1}")
    add("w2_caret_exact", n2 == n1 + m - ell1(g1) + 2)

    # subpath 3
    g3 = multiply(g2, eval_word(cert.w3))
    add("w3_equals_h", eval_word(cert.w3) == h_diagram(g1))
    add("w3_length", len(cert.w3) <= 14 * n1, f"{len(cert.w3)} <= {14 * n1}")
    n3 = n_carets(g3)
    add("w3_caret_lower_bound", n3 >= (cfg.M - 1) * n1 + cfg.M + 3)
    l0 = ell0(g3)
    same = "0" * l0
    r3 = g3.reduced
    branch_ok = r3.t_plus.has_branch(same) and r3.perm[r3.t_plus.leaf_index(same)] == 0
    add("w3_left_branch", l0 <= n1 + 1 and branch_ok, f"l0(g3)={l0}")
    add("validity_condition", l0 - 1 < cfg.Q * ik - 2, f"{l0 - 1} < {cfg.Q * ik - 2}")

    # subpath 4
    add("w4_rule", cert.w4 == v_word(ik, cfg.Q))
    w4 = eval_word(cert.w4)
    add("w4_commutes_with_g3", multiply(g3, w4) == multiply(w4, g3))

    # subpath 5
    add("w5_inverts_g3", eval_word(start_word + cert.w1 + cert.w2 + cert.w3 + cert.w5) == IDENTITY)

    # patch
    if cert.case == -1:
        add("patch_rule", cert.patch == p_word(k - 1, cfg.Q))
    elif cert.case == 1:
        add("patch_rule", cert.patch == p_word(k, cfg.Q).inverse())
    else:
        add("patch_rule", len(cert.patch) == 0)
    if cert.patch:
        add("patch_length", len(cert.patch) <= 2 * cfg.Q * (max(k, ik)), f"{len(cert.patch)}")

    # lengths
    seg = len(cert.w1) + len(cert.w2) + len(cert.w3)
    add("segment_bound", seg <= 5 * cfg.M * n0, f"|w1w2w3|={seg} <= 5MN={5 * cfg.M * n0}")
    bound = cfg.D_BV if escape else cfg.D
    total = len(cert.word)
    add("total_bound", total <= bound * k, f"|w|={total} <= {bound}*{k}={float(bound * k):.1f}")

    if not prefix_checks:
        add("avoidance", None, "skipped with the prefix checks")
        return VerificationReport(checks)

    prefixes = list(eval_prefixes(g, cert.word))
    _prefix_checks(cert, cfg, prefixes, n0, n1, n3, ik, add)

    # avoidance, as far as the oracle reaches
    delta = cfg.delta_BV if escape else cfg.delta
    rho = math.floor(delta * k)
    if rho <= oracle_radius:
        from .oracle import ball

        b = ball(rho)
        # nothing in the ball has more carets than this, so most prefixes need no key
        cap = max(n_carets(e) for e in b.elements.values())
        inside = [i for i, d in enumerate(prefixes) if n_carets(d) <= cap and d.key in b.table]
        add("avoidance", not inside, f"excluded radius {rho}; prefixes inside: {inside[:5]}")
    else:
        add("avoidance", None, f"excluded radius {rho} exceeds oracle radius {oracle_radius}")
    return VerificationReport(checks)


def _prefix_checks(cert, cfg, prefixes, n0, n1, n3, ik, add):
    logged = None
    if cert.prefix_log:
        logged = [c for _, c, _ in cert.prefix_log]

    carets = [n_carets(d) for d in prefixes]
    if logged is not None:
        add("prefix_log_matches", logged == carets)
    off = len(cert.lead)
    a = off + len(cert.w1)
    b = a + len(cert.w2)
    c = b + len(cert.w3)
    d = c + len(cert.w4)
    add("w1_prefixes", all(x >= n0 for x in carets[off:a + 1]))
    add("w2_prefixes", all(x >= n1 for x in carets[a:b + 1]))
    bad = [
        i - c for i in range(c, d + 1)
        if not carets[i] >= n3 + Fraction(i - c, 2) - 2 * n1 - 1
    ]
    add("w4_prefixes", not bad, f"violations at {bad[:5]}" if bad else "")
    if cert.patch:
        base = eval_word(v_word(ik, cfg.Q))
        floor_exp = cfg.Q * min(cert.k, ik)
        heads = [_head_x0(e) for e in eval_prefixes(base, cert.patch)]
        add("patch_prefix_heads", all(h is not None and h >= floor_exp for h in heads),
            f"min head {min(h for h in heads if h is not None)} >= {floor_exp}")
