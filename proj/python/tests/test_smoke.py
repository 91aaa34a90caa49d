import math

import pytest

import lossblockade as lb


def test_presets_and_hep():
    assert lb.preset_names() == ["paper_fig1", "paper_fig2", "paper_fig3"]
    p = lb.preset("paper_fig2")
    assert p.J == 2.0
    assert lb.hep(p) == pytest.approx(8.9)


def test_backends_agree_at_weak_drive():
    p = lb.preset("paper_fig2")
    p.omega_drive = 1e-2
    p.gamma_tip = 3.0
    p.delta = lb.upper_branch_detuning(p)
    a = lb.analytic(p)
    m = lb.lindblad(p, cutoff=(4, 4))
    assert a["ok"] and m["ok"]
    assert a["N1"] == pytest.approx(m["N1"], rel=1e-2)
    assert a["g2"] == pytest.approx(m["g2"], rel=2e-2)


def test_sweep_rows():
    p = lb.preset("paper_fig2")
    rows = lb.sweep_loss(p, [0.0, 4.0, 8.0], backends="analytic")
    assert [r["gamma_tip"] for r in rows] == [0.0, 4.0, 8.0]
    assert all(not r["failed"] for r in rows)
    assert rows[0]["delta_used"] == pytest.approx(-math.sqrt(4.0 - 0.225**2))


def test_invalid_input_raises():
    p = lb.SystemParams()
    p.gamma_2 = -1.0
    with pytest.raises(ValueError):
        lb.analytic(p)
    with pytest.raises(ValueError):
        lb.preset("nope")


def test_spectrum_peaks():
    p = lb.preset("paper_fig2")
    s1, peaks = lb.excitation_spectrum(p, [x * 0.02 - 6.0 for x in range(601)])
    assert len(s1) == 601
    assert len(peaks) == 2
