from fractions import Fraction

import pytest

from bvgroup.diagrams import IDENTITY, ell0, multiply, n_carets
from bvgroup.divergence import (
    PAPER,
    TEST_SCALE,
    DivergenceConfig,
    PathCertificate,
    br_h_diagram,
    br_h_word,
    build_path,
    h_diagram,
    p_word,
    strand_target,
    subpath1,
    subpath2,
    subpath3,
    subpath5,
    v_word,
    verify_certificate,
)
from bvgroup.generators import GenWord, eval_word


def test_config_constants():
    assert TEST_SCALE.D == 10 * 25 * 3 + 3 * 8
    assert TEST_SCALE.delta == Fraction(1, 750)
    assert PAPER.D == 1000 + 3600
    with pytest.raises(ValueError):
        DivergenceConfig(Fraction(1), 50, 1200, "paper-faithful")
    with pytest.raises(ValueError):
        DivergenceConfig(Fraction(1), 100, 100, "paper-faithful")
    with pytest.raises(ValueError):
        DivergenceConfig(Fraction(2), 25, 8)
    with pytest.raises(ValueError):
        DivergenceConfig(mode="fast")


def test_terminal_and_patch_words():
    assert str(v_word(2, 3)) == "x0^6 x1^-1 x0^-5"
    assert len(p_word(2, 3)) == 5 + 1 + 3 + 1 + 8
    for k in range(1, 4):
        assert eval_word(v_word(k, 4) + p_word(k, 4)) == eval_word(v_word(k + 1, 4))
    with pytest.raises(ValueError):
        v_word(0, 3)


def test_br_h_small_cases():
    assert br_h_word(4, 0) == GenWord()
    # sigma_2 sigma_1 with the trailing s1^-1 s1 cancelled
    assert br_h_word(4, 2).spelled() == "x0^-1 s1 x1"
    for n in (1, 2, 5):
        for k in range(n + 1):
            assert eval_word(br_h_word(n, k)) == br_h_diagram(n, k)
    with pytest.raises(ValueError):
        br_h_word(3, 4)


def test_subpaths_individually():
    g = eval_word("x0 s1 x1^-1 t1")
    assert n_carets(g) >= 3
    w1 = subpath1(g)
    g1 = multiply(g, eval_word(w1))
    assert not g1.reduced.t_minus.has_branch("0")
    w2 = subpath2(g1, TEST_SCALE)
    g2 = multiply(g1, eval_word(w2))
    assert n_carets(g2) >= TEST_SCALE.M * n_carets(g1)
    w3 = subpath3(g1)
    assert eval_word(w3) == h_diagram(g1)
    g3 = multiply(g2, eval_word(w3))
    r3 = g3.reduced
    assert r3.perm[r3.t_plus.leaf_index("0" * ell0(g3))] == 0
    assert 0 <= strand_target(g1) < g1.reduced.n_leaves
    w5 = subpath5(GenWord.parse("x0 s1 x1^-1 t1"), w1, w2, w3)
    assert eval_word(GenWord.parse("x0 s1 x1^-1 t1") + w1 + w2 + w3 + w5) == IDENTITY
    with pytest.raises(ValueError):
        subpath1(eval_word("t1"))


@pytest.mark.parametrize("text", ["x0 x0", "x0 s1 x1^-1 t1"])
def test_main_path_full_verification(text):
    cert = build_path(text)
    assert cert.case is None and not cert.lead
    assert cert.prefix_log and cert.prefix_log[0][0] == 0
    rep = verify_certificate(cert)
    assert rep.ok, str(rep)
    assert rep.get("avoidance").passed is not False
    assert eval_word(cert.g_word + cert.word) == eval_word(v_word(cert.k, TEST_SCALE.Q))


def test_escape_route_uses_oracle():
    cert = build_path("t1", with_log=False)
    assert cert.lead == GenWord.parse("x1") and cert.case_source == "oracle"
    assert cert.case in (-1, 0, 1)
    assert verify_certificate(cert).ok


@pytest.mark.parametrize("case", [-1, 0, 1])
def test_escape_route_with_forced_case(case):
    cert = build_path("t1", k=3, case=case, oracle_radius=0, with_log=False)
    assert cert.case == case and cert.case_source == "parameter"
    assert bool(cert.patch) == (case != 0)
    rep = verify_certificate(cert)
    assert rep.ok, str(rep)


def test_certificate_text_round_trip(tmp_path):
    cert = build_path("x0 x0")
    text = cert.to_text()
    back = PathCertificate.from_text(text)
    assert back.to_text() == text
    assert back.word == cert.word and back.prefix_log == cert.prefix_log
    with pytest.raises(ValueError, match="missing field"):
        PathCertificate.from_text(text.replace("w2=", "w9="))
    with pytest.raises(ValueError, match="line"):
        PathCertificate.from_text("stray\n")


def test_verification_catches_tampering():
    cert = build_path("x0 x0", with_log=False)
    cert.w2 = cert.w2 + GenWord.parse("x0 x0^-1")
    rep = verify_certificate(cert, prefix_checks=False)
    assert not rep.ok and "w2_rule" in [c.name for c in rep.failed()]
    assert rep.get("avoidance").passed is None


def test_identity_has_no_path():
    with pytest.raises(ValueError):
        build_path("x0 x0^-1")


def test_infinite_letters_are_rewritten():
    cert = build_path("x2", with_log=False)
    assert cert.g_word.is_finite()
    assert verify_certificate(cert, prefix_checks=False).ok
