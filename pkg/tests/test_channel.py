"""
Tests for array geometry, path loss, path sampling and channel assembly
"""

import numpy as np
import pytest

from conftest import crandn
from channel import (
    BAND_PRESETS,
    LinkConfig,
    PathLossModel,
    PathSet,
    UpaGeometry,
    assemble_channel,
    cascade,
    get_band,
    path_loss_db,
    sample_paths,
    upa_response,
    upa_responses,
)
from numerics import ConstraintViolationError, DimensionMismatchError, SimulationError


class TestUpa:
    def test_single_element(self):
        np.testing.assert_allclose(upa_response(UpaGeometry(1, 1), 1.2, 0.4), [1.0])

    def test_broadside(self):
        geom = UpaGeometry(4, 4)
        np.testing.assert_allclose(upa_response(geom, 0.0, np.pi / 2), np.full(16, 0.25), atol=1e-12)

    def test_flat_index_order(self):
        geom = UpaGeometry(3, 2)
        az, el = 0.7, 1.1
        a = upa_response(geom, az, el)
        for i_v in range(2):
            for i_h in range(3):
                phase = np.pi * (i_h * np.sin(az) * np.sin(el) + i_v * np.cos(el))
                assert a[i_v * 3 + i_h] == pytest.approx(np.exp(1j * phase) / np.sqrt(6))

    def test_unit_norm(self, rng):
        for _ in range(200):
            geom = UpaGeometry(*rng.integers(1, 20, size=2))
            a = upa_response(geom, rng.uniform(0, 2 * np.pi), rng.uniform(0, np.pi))
            assert np.linalg.norm(a) == pytest.approx(1.0, abs=1e-12)

    def test_stacked_responses_match(self, rng):
        geom = UpaGeometry(5, 3)
        az, el = rng.uniform(0, 2 * np.pi, 4), rng.uniform(0, np.pi, 4)
        stacked = upa_responses(geom, az, el)
        for n in range(4):
            np.testing.assert_allclose(stacked[:, n], upa_response(geom, az[n], el[n]), atol=1e-14)

    def test_random_directions_nearly_orthogonal(self):
        rng = np.random.default_rng(7)
        geom = UpaGeometry(16, 16)
        overlaps = []
        for _ in range(100):
            a = upa_response(geom, rng.uniform(0, 2 * np.pi), rng.uniform(0, np.pi))
            b = upa_response(geom, rng.uniform(0, 2 * np.pi), rng.uniform(0, np.pi))
            overlaps.append(abs(np.vdot(a, b)))
        assert np.mean(overlaps) <= 0.2

    def test_parse(self):
        geom = UpaGeometry.parse("16x8")
        assert (geom.horiz, geom.vert, geom.n_elements) == (16, 8, 128)
        assert str(geom) == "16x8"

    @pytest.mark.parametrize("text", ["8by8", "8x", "x8", "0x8"])
    def test_parse_rejects(self, text):
        with pytest.raises(SimulationError):
            UpaGeometry.parse(text)


class TestPathLoss:
    def test_mmwave_los(self):
        assert path_loss_db(get_band("mmwave28").los, 35.0) == pytest.approx(92.281, abs=1e-3)

    def test_thz_los(self):
        # 75.44 + 21 log10(15)
        assert path_loss_db(get_band("thz142").los, 15.0) == pytest.approx(100.138, abs=1e-3)

    @pytest.mark.parametrize("band", sorted(BAND_PRESETS))
    def test_unit_distance_gives_alpha(self, band):
        model = get_band(band).nlos
        assert path_loss_db(model, 1.0) == model.alpha_db

    def test_shadow_draw_is_additive(self):
        model = PathLossModel(alpha_db=70.0, beta=2.0, shadow_sigma_db=4.0)
        assert path_loss_db(model, 10.0, -3.5) == pytest.approx(86.5)

    def test_unknown_band_names_valid_ones(self):
        with pytest.raises(SimulationError, match="mmwave28, thz142"):
            get_band("sub6")

    def test_rejects_non_positive_distance(self):
        with pytest.raises(SimulationError):
            path_loss_db(get_band("mmwave28").los, 0.0)


def _link(n_path=4, shadowing=True, rx=UpaGeometry(4, 4), tx=UpaGeometry(2, 2)):
    band = get_band("mmwave28")
    return LinkConfig(
        n_path=n_path,
        distance_m=35.0,
        los_model=band.los,
        nlos_model=band.nlos,
        rx_geometry=rx,
        tx_geometry=tx,
        shadowing=shadowing,
    )


class TestSamplePaths:
    def test_deterministic(self):
        a = sample_paths(np.random.default_rng(11), _link())
        b = sample_paths(np.random.default_rng(11), _link())
        for field in ("gains", "aoa_az", "aoa_el", "aod_az", "aod_el"):
            np.testing.assert_array_equal(getattr(a, field), getattr(b, field))

    def test_sorted_and_in_range(self, rng):
        for _ in range(50):
            paths = sample_paths(rng, _link())
            assert paths.n_paths == 4
            assert np.all(np.diff(np.abs(paths.gains)) <= 0)
            for az in (paths.aoa_az, paths.aod_az):
                assert np.all((az >= 0) & (az < 2 * np.pi))
            for el in (paths.aoa_el, paths.aod_el):
                assert np.all((el >= 0) & (el < np.pi))

    def test_los_gain_variance(self):
        link = _link(n_path=1, shadowing=False)
        rng = np.random.default_rng(5)
        power = np.mean([abs(sample_paths(rng, link).gains[0]) ** 2 for _ in range(10_000)])
        expected = 16 * 4 * 10 ** (-0.1 * path_loss_db(link.los_model, 35.0))
        assert power == pytest.approx(expected, rel=0.05)

    def test_rejects_empty_link(self):
        with pytest.raises(SimulationError):
            _link(n_path=0)


class TestAssembleChannel:
    def test_single_unit_path(self, make_paths):
        paths = make_paths([1.0], [0.9])
        h = assemble_channel(paths, UpaGeometry(4, 4), UpaGeometry(2, 3))
        assert h.shape == (16, 6)
        assert np.linalg.matrix_rank(h) == 1
        assert np.linalg.norm(h) == pytest.approx(1.0)

    def test_mean_energy_matches_path_loss(self):
        band = get_band("mmwave28")
        rx, tx = UpaGeometry(4, 4), UpaGeometry(2, 2)
        link = LinkConfig(
            n_path=4,
            distance_m=35.0,
            los_model=band.nlos,
            nlos_model=band.nlos,
            rx_geometry=rx,
            tx_geometry=tx,
            shadowing=False,
        )
        rng = np.random.default_rng(21)
        energy = np.mean([
            np.linalg.norm(assemble_channel(sample_paths(rng, link), rx, tx)) ** 2 for _ in range(10_000)
        ])
        expected = rx.n_elements * tx.n_elements * 10 ** (-0.1 * path_loss_db(band.nlos, 35.0))
        assert 0.9 <= energy / expected <= 1.1

    def test_zero_gains(self, make_paths):
        h = assemble_channel(make_paths([0.0, 0.0], [0.5, 1.5]), UpaGeometry(3, 3), UpaGeometry(2, 2))
        np.testing.assert_array_equal(h, np.zeros((9, 4)))

    def test_matches_entrywise_sum(self, rng):
        rx, tx = UpaGeometry(3, 2), UpaGeometry(2, 2)
        paths = PathSet(
            gains=crandn(rng, 4),
            aoa_az=rng.uniform(0, 2 * np.pi, 4),
            aoa_el=rng.uniform(0, np.pi, 4),
            aod_az=rng.uniform(0, 2 * np.pi, 4),
            aod_el=rng.uniform(0, np.pi, 4),
        )
        h = assemble_channel(paths, rx, tx)
        expected = np.zeros((6, 4), dtype=complex)
        for q in range(4):
            a_r = upa_response(rx, paths.aoa_az[q], paths.aoa_el[q])
            a_t = upa_response(tx, paths.aod_az[q], paths.aod_el[q])
            for row in range(6):
                for col in range(4):
                    expected[row, col] += paths.gains[q] * a_r[row] * np.conj(a_t[col])
        np.testing.assert_allclose(h, expected, atol=1e-14)


class TestCascade:
    def test_scalar(self):
        np.testing.assert_allclose(cascade([[2.0]], [1.0], [[3.0]]), [[6.0]])

    def test_zero_ts_channel(self, rng):
        h_sr = crandn(rng, 4, 8)
        phases = np.exp(1j * rng.uniform(0, 2 * np.pi, 8))
        np.testing.assert_array_equal(cascade(h_sr, phases, np.zeros((8, 3))), np.zeros((4, 3)))

    def test_matches_diagonal_product(self, rng):
        h_sr, h_ts = crandn(rng, 4, 8), crandn(rng, 8, 3)
        phases = np.exp(1j * rng.uniform(0, 2 * np.pi, 8))
        np.testing.assert_allclose(cascade(h_sr, phases, h_ts), h_sr @ np.diag(phases) @ h_ts, atol=1e-13)

    def test_rejects_non_unit_modulus(self):
        with pytest.raises(ConstraintViolationError, match="Phi = diag"):
            cascade(np.ones((2, 2)), [1.0, 0.5], np.ones((2, 2)))

    def test_rejects_size_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            cascade(np.ones((2, 3)), [1.0, 1.0], np.ones((2, 2)))
