import numpy as np
import pytest

from pauli_lab import constructions as con
from pauli_lab import fourier
from pauli_lab.sequences import SampledSet, SmoothSpec, generate_smooth

X_GRID = np.linspace(-3.0, 3.0, 241)
XI_GRID = np.linspace(-3.0, 3.0, 241)


def half_profile(density, count=512, seed=7, jitter=0.0):
    return generate_smooth(SmoothSpec(p=2.0, density=density, count=count,
                                      jitter=jitter, seed=seed, halves="+"))


@pytest.fixture(scope="module")
def freq_pair():
    return con.build_frequency_matched_pair(half_profile(0.9), 0.5)


@pytest.fixture(scope="module")
def nonweak_pair():
    lam = generate_smooth(SmoothSpec(p=2.0, density=1.2, count=512, halves="±", seed=3))
    mu = generate_smooth(SmoothSpec(p=2.0, density=1.2, count=512, halves="±", seed=4))
    return con.build_nonweak_pair(lam, mu, 0.5, nodes=2048)


class TestFrequencyMatchedPair:
    def test_discrete_residuals_exact(self, freq_pair):
        lam = half_profile(0.9).points[:256]
        pts = np.concatenate([-lam[::-1], lam])
        gap = np.abs(np.abs(freq_pair.f(pts)) - np.abs(freq_pair.g(pts)))
        assert np.max(gap) == 0.0

    def test_frequency_moduli_match_everywhere(self, freq_pair):
        xi = np.linspace(-4.0, 4.0, 401)
        gap = np.abs(np.abs(freq_pair.f_hat(xi)) - np.abs(freq_pair.g_hat(xi)))
        assert np.max(gap) <= 1e-8

    def test_time_witness(self, freq_pair):
        gap = np.abs(np.abs(freq_pair.f(X_GRID)) - np.abs(freq_pair.g(X_GRID)))
        assert np.max(gap) >= 1e-3

    def test_gaussian_class_membership(self, freq_pair):
        x = np.linspace(-6.0, 6.0, 401)
        xi = np.linspace(-4.0, 4.0, 321)
        rep = fourier.hardy_check(freq_pair.f(x), freq_pair.f_hat(xi), 0.5, x, xi)
        assert rep.passed

    def test_pair_identities(self, freq_pair):
        # f + g = 2 phi and f - g = 2 e^{i theta} psi as evaluators
        rot = np.exp(1j * freq_pair.vartheta)
        lhs_sum = freq_pair.f(X_GRID) + freq_pair.g(X_GRID)
        lhs_diff = freq_pair.f(X_GRID) - freq_pair.g(X_GRID)
        assert np.allclose(lhs_sum, 2 * freq_pair.phi.eval(X_GRID), rtol=1e-12, atol=1e-300)
        assert np.allclose(lhs_diff, 2 * rot * freq_pair.psi.eval(X_GRID), rtol=1e-12, atol=1e-300)

    def test_polarization_identity(self, freq_pair):
        rot = np.exp(1j * freq_pair.vartheta)
        lhs = np.abs(freq_pair.f(X_GRID)) ** 2 - np.abs(freq_pair.g(X_GRID)) ** 2
        rhs = 4 * np.real(freq_pair.phi.eval(X_GRID) * np.conj(rot * freq_pair.psi.eval(X_GRID)))
        scale = np.max(np.abs(lhs)) + 1e-300
        assert np.max(np.abs(lhs - rhs)) / scale < 1e-12

    def test_even_odd_parity(self, freq_pair):
        phi_vals = freq_pair.phi.eval(X_GRID)
        psi_vals = freq_pair.psi.eval(X_GRID)
        assert np.array_equal(phi_vals, freq_pair.phi.eval(-X_GRID))
        assert np.array_equal(psi_vals, -freq_pair.psi.eval(-X_GRID))
        assert np.all(phi_vals.imag == 0) and np.all(psi_vals.imag == 0)

    def test_eps_condition_recorded(self, freq_pair):
        prov = freq_pair.provenance
        gamma = prov["gamma"]
        d_half = prov["half_density"]
        assert gamma == pytest.approx(1.0 + prov["eps"])
        assert (d_half / 2) * 1.1 < np.sqrt(gamma * (2.0 - gamma))

    def test_requires_nonnegative_set(self):
        two_sided = generate_smooth(SmoothSpec(p=2.0, density=0.9, count=64, halves="±"))
        with pytest.raises(ValueError):
            con.build_frequency_matched_pair(two_sided, 0.5)

    def test_infeasible_density(self):
        with pytest.raises(con.ParameterInfeasibleError):
            con.build_frequency_matched_pair(half_profile(2.5), 0.5)

    def test_null_space_branch(self):
        pair = con.build_frequency_matched_pair(half_profile(0.8, count=256), 0.95)
        assert pair.provenance["branch"] == "null_space"
        # g vanishes identically, f vanishes on the set
        assert np.all(pair.g(X_GRID) == 0)
        lam = half_profile(0.8, count=256).points
        lam = lam[lam <= 3.0]
        assert np.max(np.abs(pair.f(np.concatenate([-lam[::-1], lam])))) < 1e-7
        assert np.max(np.abs(pair.f(X_GRID))) > 1e-3

    @pytest.mark.parametrize("decay,density", [(0.1, 8.0), (0.3, 2.5), (0.82, 0.8)])
    def test_across_decay_range(self, decay, density):
        lam = half_profile(density, count=1024)
        pair = con.build_frequency_matched_pair(lam, decay)
        pts = lam.points[lam.points <= 6.0]
        pts = np.concatenate([-pts[::-1], pts])
        assert np.max(np.abs(np.abs(pair.f(pts)) - np.abs(pair.g(pts)))) == 0.0
        xi = np.linspace(-4, 4, 201)
        assert np.max(np.abs(np.abs(pair.f_hat(xi)) - np.abs(pair.g_hat(xi)))) < 1e-12
        xh = np.linspace(-6, 6, 301)
        # drop transform values at the quadrature noise floor before weighting
        rep = fourier.hardy_check(pair.f(xh), pair.f_hat(xi), decay, xh, xi, floor=1e-13)
        assert rep.passed

    def test_serialization_round_trip(self, freq_pair):
        back = con.pair_from_json(freq_pair.to_json())
        assert np.allclose(back.f(X_GRID), freq_pair.f(X_GRID), rtol=0, atol=0)
        xi = np.linspace(-2, 2, 41)
        assert np.allclose(back.f_hat(xi), freq_pair.f_hat(xi), rtol=1e-12)


class TestTimePair:
    def test_basic(self):
        lam = generate_smooth(SmoothSpec(p=2.0, density=1.5, count=512, halves="±", seed=5))
        pair = con.build_time_pair(lam, 0.5)
        pts = lam.points[np.abs(lam.points) <= 8.0]
        gap = np.abs(np.abs(pair.f(pts)) - np.abs(pair.g(pts)))
        assert np.max(gap) == 0.0
        assert np.max(np.abs(np.abs(pair.f(X_GRID)) - np.abs(pair.g(X_GRID)))) >= 1e-3
        assert pair.provenance["gamma"] > 1.0

    def test_empty_set_pure_gaussians(self):
        pair = con.build_time_pair(SampledSet(points=np.empty(0)), 0.5)
        assert len(pair.phi.model.zeros) == 0 and len(pair.psi.model.zeros) == 0
        gap = np.max(np.abs(np.abs(pair.f(X_GRID)) - np.abs(pair.g(X_GRID))))
        assert gap > 1e-3

    def test_density_too_high(self):
        lam = generate_smooth(SmoothSpec(p=2.0, density=2.5, count=512, halves="±", seed=5))
        with pytest.raises(con.DensityTooHighError) as err:
            con.build_time_pair(lam, 0.5)
        assert "envelope rate" in str(err.value)

    def test_hardy_membership(self):
        lam = generate_smooth(SmoothSpec(p=2.0, density=1.5, count=512, halves="±", seed=5))
        pair = con.build_time_pair(lam, 0.5)
        x = np.linspace(-6, 6, 401)
        xi = np.linspace(-4, 4, 321)
        rep = fourier.hardy_check(pair.f(x), pair.f_hat(xi), 0.5, x, xi)
        assert rep.passed


class TestNonWeakPair:
    def test_discrete_residuals(self, nonweak_pair):
        lam = generate_smooth(SmoothSpec(p=2.0, density=1.2, count=512, halves="±", seed=3))
        mu = generate_smooth(SmoothSpec(p=2.0, density=1.2, count=512, halves="±", seed=4))
        lam_w = lam.points[np.abs(lam.points) <= 3.3]
        mu_w = mu.points[np.abs(mu.points) <= 3.3]
        rt = np.max(np.abs(np.abs(nonweak_pair.f(lam_w)) - np.abs(nonweak_pair.g(lam_w))))
        rf = np.max(np.abs(np.abs(nonweak_pair.f_hat(mu_w)) - np.abs(nonweak_pair.g_hat(mu_w))))
        assert rt <= 1e-6 and rf <= 1e-6

    def test_both_witnesses(self, nonweak_pair):
        wt = np.max(np.abs(np.abs(nonweak_pair.f(X_GRID)) - np.abs(nonweak_pair.g(X_GRID))))
        wf = np.max(np.abs(np.abs(nonweak_pair.f_hat(XI_GRID)) - np.abs(nonweak_pair.g_hat(XI_GRID))))
        assert wt >= 1e-4 and wf >= 1e-4

    def test_gaussian_class_membership(self, nonweak_pair):
        x = np.linspace(-3.2, 3.2, 321)
        rep = fourier.hardy_check(nonweak_pair.f(x), nonweak_pair.f_hat(x), 0.5, x, x)
        assert rep.passed

    def test_split_rates_recorded(self, nonweak_pair):
        # at decay 0.5 the split argmax is 0.25, so every rate equals 0.5
        assert nonweak_pair.provenance["rates"] == [0.5, 0.5, 0.5, 0.5]

    def test_density_check(self):
        lam = generate_smooth(SmoothSpec(p=2.0, density=3.6, count=512, halves="±", seed=3))
        mu = generate_smooth(SmoothSpec(p=2.0, density=1.2, count=512, halves="±", seed=4))
        with pytest.raises(con.DensityTooHighError):
            con.build_nonweak_pair(lam, mu, 0.5)

    def test_empty_sets_vacuous(self):
        empty = SampledSet(points=np.empty(0))
        pair = con.build_nonweak_pair(empty, empty, 0.5)
        assert pair.provenance["branch"] == "vacuous"
        rates = pair.provenance["rates"]
        assert rates[0] != rates[1]
        wt = np.max(np.abs(np.abs(pair.f(X_GRID)) - np.abs(pair.g(X_GRID))))
        wf = np.max(np.abs(np.abs(pair.f_hat(XI_GRID)) - np.abs(pair.g_hat(XI_GRID))))
        assert wt > 1e-3 and wf > 1e-3

    def test_null_space_branch_high_decay(self):
        lam = generate_smooth(SmoothSpec(p=2.0, density=0.55, count=384, halves="±", seed=8))
        mu = generate_smooth(SmoothSpec(p=2.0, density=0.55, count=384, halves="±", seed=9))
        pair = con.build_nonweak_pair(lam, mu, 0.9, nodes=2048)
        assert pair.provenance["branch"] == "null_space"
        assert np.all(pair.g(X_GRID) == 0)
        lam_w = lam.points[np.abs(lam.points) <= 3.0]
        mu_w = mu.points[np.abs(mu.points) <= 3.0]
        assert np.max(np.abs(pair.f(lam_w))) < 1e-6
        assert np.max(np.abs(pair.f_hat(mu_w))) < 1e-6
        assert np.max(np.abs(pair.f(X_GRID))) > 1e-3


class _Wrap:
    def __init__(self, fn, fn_hat=None):
        self._fn = fn
        self._fn_hat = fn_hat or fn

    def eval(self, z):
        return self._fn(np.asarray(z, dtype=complex))

    def eval_hat(self, xi):
        return self._fn_hat(np.asarray(xi, dtype=complex))


class TestSelectPhase:
    def test_real_pair_prefers_zero(self):
        phi = _Wrap(lambda x: np.exp(-np.pi * x * x))
        psi = _Wrap(lambda x: x * np.exp(-np.pi * x * x))
        assert con.select_phase(phi, psi, X_GRID) == 0.0

    def test_imaginary_partner(self):
        phi = _Wrap(lambda x: np.exp(-np.pi * x * x))
        psi = _Wrap(lambda x: 1j * x * np.exp(-np.pi * x * x))
        theta = con.select_phase(phi, psi, X_GRID)
        assert theta == pytest.approx(np.pi / 2, abs=1e-6)

    def test_degenerate(self):
        phi = _Wrap(lambda x: np.exp(-np.pi * x * x))
        zero = _Wrap(lambda x: np.zeros_like(x))
        with pytest.raises(con.DegeneratePhaseError):
            con.select_phase(phi, zero, X_GRID)

    def test_random_complex_witness(self):
        rng = np.random.default_rng(12)
        c1, c2 = rng.normal(size=2) + 1j * rng.normal(size=2)
        phi = _Wrap(lambda x: c1 * np.exp(-np.pi * x * x))
        psi = _Wrap(lambda x: c2 * x * np.exp(-0.8 * np.pi * x * x))
        theta = con.select_phase(phi, psi, X_GRID, XI_GRID)
        rot = np.exp(-1j * theta)
        wit = np.max(np.abs(np.real(rot * phi.eval(X_GRID) * np.conj(psi.eval(X_GRID)))))
        assert wit > 0.01
