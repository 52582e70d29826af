import json
from fractions import Fraction
from math import gcd

import pytest

from localbrauer import brauer, extensions, padic, symbols, verifier
from localbrauer.brauer import BrauerInv
from localbrauer.verifier import (Certificate, TameConstruction,
                                  TwoAdicConstruction)

PLUS = symbols.SymbolValue.PLUS
MINUS = symbols.SymbolValue.MINUS


def test_plain_serialization():
    assert verifier._plain(True) is True
    assert verifier._plain(MINUS) == -1
    assert not isinstance(verifier._plain(MINUS), bool)
    assert verifier._plain(Fraction(1, 2)) == "1/2"
    assert verifier._plain(BrauerInv(1, 4)) == "1/4"
    assert verifier._plain((1, (2, 3))) == [1, [2, 3]]
    assert verifier._plain({2: Fraction(5)}) == {"2": "5"}
    assert verifier._plain(None) is None
    assert verifier._plain(extensions.RootOfUnityElt(8, 1, 3)) == "zeta_8^1"


def test_certificate_plumbing():
    cert = Certificate("Demo", {"x": Fraction(1, 2), "flag": True})
    assert cert.verdict == "pass"  # vacuously, with no steps yet
    assert cert.check("ints", 3, 3)
    assert not cert.check("mix", PLUS, MINUS)
    cert.check("fractions", Fraction(1, 2), Fraction(2, 4))
    cert.check("tuples", (1, 2), (1, 2))
    assert cert.verdict == "fail"
    cert.conclude("GOOD")
    assert cert.conclusion == "NOT VERIFIED"
    d = cert.to_dict()
    assert d["inputs"] == {"x": "1/2", "flag": True}
    assert d["steps"][0] == {"desc": "ints", "claimed": 3, "checked": 3,
                             "pass": True}
    assert d["steps"][1]["claimed"] == 1
    assert d["steps"][1]["checked"] == -1
    assert d["steps"][3]["claimed"] == [1, 2]
    assert json.loads(cert.to_json()) == d
    text = cert.to_text()
    assert "[ok] ints" in text
    assert "[FAIL] mix" in text
    assert "verdict: fail" in text
    assert text.endswith("conclusion: NOT VERIFIED")


def test_certificate_conclude_on_pass():
    cert = Certificate("Demo", {})
    cert.check("trivial", 1, 1)
    cert.conclude("GOOD", "BAD")
    assert cert.conclusion == "GOOD"
    assert cert.verdict == "pass"


def test_deg4_certificate():
    cert = verifier.noncyclic_certificate_deg4()
    assert cert.verdict == "pass"
    assert cert.conclusion.startswith("NONCYCLIC")
    assert len(cert.steps) == 30
    assert all(step.passed for step in cert.steps)
    assert cert.steps[0].claimed == [1, -1, 2, -2, 5, -5, 10, -10]
    assert cert.steps[2].claimed is MINUS
    assert cert.steps[4].claimed == [2, 5, 10]
    assert cert.steps[5].claimed == 4
    for a in (2, 5, 10):
        assert any(f"candidate sqrt({a})" in s.description for s in cert.steps)
    residuals = [s for s in cert.steps
                 if s.description.endswith("restricted invariant")]
    assert len(residuals) == 3
    assert all(s.claimed == BrauerInv(1, 2) for s in residuals)
    sweeps = [s for s in cert.steps if "twists by square classes" in s.description]
    assert len(sweeps) == 3
    assert all(s.checked == [1, -1, 2, -2, 5, -5, 10, -10] for s in sweeps)


def test_certificates_deterministic():
    a = verifier.noncyclic_certificate_deg4()
    b = verifier.noncyclic_certificate_deg4()
    assert a.to_json() == b.to_json()
    assert a.to_text() == b.to_text()
    c = verifier.cyclic_construct_tame(TameConstruction(7, 3, 9))
    d = verifier.cyclic_construct_tame(TameConstruction(7, 3, 9))
    assert c.to_json() == d.to_json()


def test_deg8_built_in():
    cert = verifier.noncyclic_reduction_deg8()
    assert cert.verdict == "pass"
    assert cert.conclusion.startswith("REDUCTION VERIFIED")
    assert len(cert.steps) == 9
    assert cert.inputs["built_in"] is True
    assert cert.inputs["middle_radicand"] == "2+1r"
    assert cert.inputs["v"] == "(2+0r)+(1+0r)s"
    frozen = {s.description: s for s in cert.steps}
    assert frozen["relative norm of v to the middle field"].claimed == "2+-1r"
    assert frozen["norm of v down to Q_2"].claimed == Fraction(2)


def test_deg8_degenerate_input_fails():
    mid = extensions.TowerElement.quadratic(2, 2, 2, 1)
    u = extensions.TowerElement.tower(2, 2, mid, 1, 1)
    cert = verifier.noncyclic_reduction_deg8(u * u)
    assert cert.verdict == "fail"
    assert cert.conclusion == "NOT VERIFIED"
    assert len(cert.steps) == 7  # no frozen built-in steps
    bad = [s for s in cert.steps if not s.passed]
    assert any("degenerate" in s.description for s in bad)


def test_deg8_twisted_input_passes():
    mid = extensions.TowerElement.quadratic(2, 2, 2, 1)
    cert = verifier.noncyclic_reduction_deg8(
        extensions.TowerElement.tower(2, 2, mid, 10, 5))
    assert cert.verdict == "pass"
    assert cert.inputs["built_in"] is False


def test_deg8_rejects_bad_input():
    mid = extensions.TowerElement.quadratic(2, 2, 2, 1)
    with pytest.raises(ValueError):
        verifier.noncyclic_reduction_deg8(mid)  # level 1
    with pytest.raises(ValueError):
        verifier.noncyclic_reduction_deg8(Fraction(2))
    off = extensions.TowerElement.quadratic(2, -1, -1, 1)
    bad_tower = extensions.TowerElement.tower(2, -1, off, 1, 1)
    with pytest.raises(ValueError):
        verifier.noncyclic_reduction_deg8(bad_tower)  # ambient not cyclic


TAME_GRID = ((7, 3, 9), (13, 3, 9), (5, 2, 4), (11, 5, 25), (13, 2, 4))


def test_tame_defaults():
    assert TameConstruction(7, 3, 9).e == 3
    assert TameConstruction(11, 5, 25).e == 5
    assert TameConstruction(5, 2, 4).e == 2
    assert TameConstruction(13, 2, 4).m == 12


def test_tame_single_certificate():
    cert = verifier.cyclic_construct_tame(TameConstruction(7, 3, 9, i=2, j=2))
    assert cert.verdict == "pass"
    assert cert.conclusion.startswith("CYCLIC")
    assert cert.inputs == {"p": 7, "l": 3, "n": 9, "m": 6, "e": 3, "i": 2, "j": 2}
    descriptions = [s.description for s in cert.steps]
    assert "degree of the unramified layer" in descriptions


def test_tame_grid_all_parameters():
    total = 0
    for p, l, n in TAME_GRID:
        e = TameConstruction(p, l, n).e
        for i in (i for i in range(1, n) if gcd(i, n) == 1):
            for j in (j for j in range(1, e + 1) if gcd(j, e) == 1):
                cert = verifier.cyclic_construct_tame(
                    TameConstruction(p, l, n, e=e, i=i, j=j))
                assert cert.verdict == "pass", (p, l, n, e, i, j)
                total += 1
    assert total == 108


def test_tame_validation():
    with pytest.raises(ValueError):
        TameConstruction(3, 3, 9)  # p == l
    with pytest.raises(ValueError):
        TameConstruction(7, 3, 10)  # n not a power of l
    with pytest.raises(ValueError):
        TameConstruction(7, 3, 3)  # no room for a ramified layer
    with pytest.raises(ValueError):
        TameConstruction(7, 2, 4)  # l = 2 needs p = 1 mod 4
    with pytest.raises(ValueError):
        TameConstruction(7, 3, 9, e=9)  # e too big
    with pytest.raises(ValueError):
        TameConstruction(13, 3, 9, e=4)  # e not a power of l
    with pytest.raises(ValueError):
        TameConstruction(7, 3, 9, i=3)  # gcd(i, n) > 1
    with pytest.raises(ValueError):
        TameConstruction(7, 3, 9, i=0)
    with pytest.raises(ValueError):
        TameConstruction(7, 3, 9, j=3)  # gcd(j, e) > 1
    with pytest.raises(ValueError):
        TameConstruction(2, 3, 9)  # m = 2 admits no power of 3
    with pytest.raises(ValueError):
        TameConstruction(7, 4, 16)  # l not prime


def test_2adic_grid():
    expected_s = {3: 3, 7: 4, 11: 3, 19: 3, 23: 4}
    for p, s in expected_s.items():
        for r in (2, 3, 4):
            c = TwoAdicConstruction(p, r)
            assert c.s == s
            cert = verifier.cyclic_construct_2adic(c)
            assert cert.verdict == "pass", (p, r)
            assert cert.conclusion.startswith("CYCLIC")


def test_2adic_validation():
    with pytest.raises(ValueError):
        TwoAdicConstruction(5, 2)  # p = 1 mod 4
    with pytest.raises(ValueError):
        TwoAdicConstruction(2, 2)
    with pytest.raises(ValueError):
        TwoAdicConstruction(3, 1)  # r too small
    with pytest.raises(ValueError):
        TwoAdicConstruction(3, "2")


def test_eta_splitting():
    for n in range(2, 13):
        cert = verifier.eta_splitting_check(n)
        assert cert.verdict == "pass", n
        assert cert.conclusion.startswith("SPLIT")
    assert f"2^{13}" in verifier.eta_splitting_check(12).conclusion
    with pytest.raises(ValueError):
        verifier.eta_splitting_check(1)
    with pytest.raises(ValueError):
        verifier.eta_splitting_check(13)
    with pytest.raises(ValueError):
        verifier.eta_splitting_check("4")


def test_length_table():
    for n in (2, 3, 4, 8, 9, 12, 16):
        assert verifier.cyclic_length_table(2, n) == (2 if n % 4 == 0 else 1)
        for p in (3, 5, 7):
            assert verifier.cyclic_length_table(p, n) == 1
    with pytest.raises(ValueError):
        verifier.cyclic_length_table(2, 1)
    with pytest.raises(ValueError):
        verifier.cyclic_length_table(2, "4")
    with pytest.raises(ValueError):
        verifier.cyclic_length_table(1, 4)


def test_mu_split():
    cert = verifier.mu_split_check(5, 4)
    assert cert.verdict == "pass"
    assert cert.conclusion.startswith("CYCLIC")
    cert = verifier.mu_split_check(2, 4)
    assert cert.verdict == "pass"
    assert cert.conclusion.startswith("NOT APPLICABLE")
    assert verifier.mu_split_check(13, 3).conclusion.startswith("CYCLIC")
    assert verifier.mu_split_check(7, 4).conclusion.startswith("NOT APPLICABLE")
    with pytest.raises(ValueError):
        verifier.mu_split_check(5, 0)
    with pytest.raises(ValueError):
        verifier.mu_split_check(6, 2)


def test_mu_split_kummer_cross_check():
    cert = verifier.mu_split_check(2, 2)
    assert cert.verdict == "pass"
    assert len(cert.steps) == 8  # root count plus 7 nontrivial classes
    cert = verifier.mu_split_check(3, 2)
    assert cert.verdict == "pass"
    assert len(cert.steps) == 4


def test_length_table_matches_constructions():
    assert verifier.cyclic_length_table(7, 9) == 1
    assert verifier.cyclic_construct_tame(TameConstruction(7, 3, 9)).verdict == "pass"
    assert verifier.cyclic_length_table(3, 4) == 1
    assert verifier.cyclic_construct_2adic(TwoAdicConstruction(3, 2)).verdict == "pass"
    assert verifier.cyclic_length_table(5, 2) == 1
    assert verifier.mu_split_check(5, 2).verdict == "pass"
    assert verifier.cyclic_length_table(2, 4) == 2
    assert verifier.noncyclic_certificate_deg4().verdict == "pass"


# Each mutation below perturbs one arithmetic primitive; a certificate that
# recomputes its claims must notice.  monkeypatch restores the original
# afterwards, and the clean runs above prove the unperturbed verdicts.

def test_mutated_hilbert_fails_deg4(monkeypatch):
    real = symbols.hilbert

    def flipped(a, b, prime):
        return symbols.SymbolValue(-int(real(a, b, prime)))

    monkeypatch.setattr(symbols, "hilbert", flipped)
    assert verifier.noncyclic_certificate_deg4().verdict == "fail"


def test_mutated_quad_norm_fails_deg4(monkeypatch):
    def wrong(v):
        x, y = v.coords
        return x * x + v.base_class * y * y

    monkeypatch.setattr(extensions, "quad_norm", wrong)
    assert verifier.noncyclic_certificate_deg4().verdict == "fail"


def test_mutated_is_square_fails_deg4(monkeypatch):
    monkeypatch.setattr(padic, "is_square", lambda x: False)
    assert verifier.noncyclic_certificate_deg4().verdict == "fail"


def test_mutated_unram_norm_fails_2adic(monkeypatch):
    real = extensions.unram_norm

    def shifted(z, degree):
        out = real(z, degree)
        return extensions.RootOfUnityElt(
            out.modulus, (out.exponent + out.modulus // 2) % out.modulus,
            out.prime, out.degree)

    monkeypatch.setattr(extensions, "unram_norm", shifted)
    cert = verifier.cyclic_construct_2adic(TwoAdicConstruction(3, 2))
    assert cert.verdict == "fail"


def test_mutated_eta_norm_fails_eta_check(monkeypatch):
    real = extensions.eta_norm
    monkeypatch.setattr(extensions, "eta_norm", lambda j: -real(j))
    assert verifier.eta_splitting_check(4).verdict == "fail"
