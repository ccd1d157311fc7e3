import os

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from logbern import denoise
from logbern.errors import InputError
from logbern.functions import reference_signal
from logbern.grid import uniform_grid
from logbern.operators import logarithmic


def test_constant_signal_endpoints_exact():
    sig = denoise.synthesize_noisy(lambda x: np.full_like(x, 2.5), 0.7, 12)
    res = denoise.denoise(sig, uniform_grid(101))
    v = res.reconstruction.values
    assert v[0] == pytest.approx(2.5, rel=1e-15) and v[-1] == pytest.approx(2.5, rel=1e-15)


@given(st.floats(0.05, 5.0), st.integers(1, 200), st.floats(0.1, 10.0))
def test_noise_factor_alone_is_removed_exactly(mu, n, c):
    # ln g = ln c + ln_mu, and L_n reproduces ln_mu, so only ln c is approximated
    sig = denoise.synthesize_noisy(lambda x: np.full_like(x, c), mu, n)
    x = uniform_grid(101)
    rec = denoise.denoise(sig, x).reconstruction.values
    lc = np.log(c)
    expect = np.exp(logarithmic(lambda t: np.full_like(t, lc), mu, n, x))
    np.testing.assert_allclose(rec, expect, rtol=1e-12)


def test_reference_cases():
    rows = denoise.reference_suite()
    assert len(rows) == 6
    for r in rows:
        assert abs(r["max_error"] - r["reference_error"]) <= 0.005
        assert r["min_reconstruction"] > 0.0
    by = {(r["mu"], r["n"]): r["max_error"] for r in rows}
    for mu in denoise.REFERENCE_MUS:
        assert by[(mu, 30)] < by[(mu, 10)]


def test_reference_cases_write_csv(tmp_path):
    rows = denoise.reference_suite(grid_points=11, out_dir=tmp_path)
    assert sorted(os.listdir(tmp_path)) == sorted(os.path.basename(r["path"]) for r in rows)
    text = (tmp_path / "case_mu1_n10.csv").read_text().splitlines()
    assert text[0] == "x,truth,noisy,reconstruction" and len(text) == 12


def test_reconstruction_improves_with_degree():
    f = reference_signal()
    errs = [denoise.denoise(denoise.synthesize_noisy(f, 1.0, n), truth=f).max_error for n in (5, 20, 80, 320)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_nonpositive_sample_reports_index():
    with pytest.raises(InputError, match="sample 3"):
        denoise.NoisySignal(4, [1.0, 2.0, 3.0, 0.0, 1.0], 0.5)
    with pytest.raises(InputError):
        denoise.NoisySignal(4, [1.0, 2.0], 0.5)


def test_zero_signal_rejected():
    with pytest.raises(InputError):
        denoise.synthesize_noisy(lambda x: x * x, 0.5, 30)


def test_noise_levels_seeded(monkeypatch):
    monkeypatch.setenv(denoise.SEED_ENV, "123")
    a = denoise.sample_noise_levels(5)
    b = denoise.sample_noise_levels(5)
    assert a == b and all(v > 0 for v in a)
    assert denoise.sample_noise_levels(5, seed=124) != a
