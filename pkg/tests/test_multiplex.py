"""Tests for the multiplex/demultiplex codec."""

import math

import numpy as np
import pytest

from polyberg.errors import AccuracyError, InvalidArgumentError
from polyberg.halfplane import make_grid
from polyberg.multiplex import (MuxField, decode, decode_samples, encode,
                                roundtrip)
from polyberg.transforms import ChannelSet, RPlusCoeffs


@pytest.fixture(scope="module")
def codec_grid():
    # compact grid: the Gram solve cancels its quadrature bias, so decode
    # accuracy survives coarse resolution as long as the system is well posed
    return make_grid(30.0, 384, 1e-3, 100.0, 160)


@pytest.fixture(scope="module")
def random_channels():
    rng = np.random.default_rng(11)
    return ChannelSet([rng.standard_normal(16) + 1j * rng.standard_normal(16)
                       for _ in range(3)])


class TestEncode:
    def test_single_mode(self):
        fld = encode(ChannelSet([[1.0]]))
        assert fld.n == 1 and fld.M == 1
        assert fld.coeffs[0, 0] == 1.0

    def test_two_channels_definitional(self):
        fld = encode(ChannelSet([[1.0], [0.0, 1.0]]))
        want = np.zeros((2, 2), dtype=complex)
        want[0, 0] = 1.0
        want[1, 1] = 1.0
        assert np.allclose(fld.coeffs, want)

    def test_sampled_value_at_i(self):
        # channels (l_0^1, l_0^1): value 4/9 - 20/27 = -8/27 under the
        # unitary normalization of the order-1 transform
        fld = encode(ChannelSet([[1.0], [1.0]]))
        assert fld(np.array([1j]))[0] == pytest.approx(-8.0 / 27.0, rel=1e-12)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            encode(ChannelSet([]))


class TestMuxField:
    def test_json_roundtrip(self):
        fld = MuxField([[1.0 + 2.0j, 0.0], [0.5, -1.0j]])
        back = MuxField.from_json(fld.to_json())
        assert np.allclose(back.coeffs, fld.coeffs)

    def test_json_shape_guard(self):
        with pytest.raises(ValueError):
            MuxField.from_json({"n": 3, "M": 1, "coeffs": [[[1.0, 0.0]]]})

    def test_norm_sq(self):
        fld = MuxField([[1.0], [2.0]])
        assert fld.norm_sq == pytest.approx(math.pi * 5.0)

    def test_bounds(self):
        with pytest.raises(ValueError):
            MuxField(np.ones((9, 1)))
        with pytest.raises(ValueError):
            MuxField(np.ones((1, 65)))
        with pytest.raises(ValueError):
            MuxField([[np.nan]])


class TestDecode:
    def test_coefficient_inverse(self, random_channels):
        out = decode(encode(random_channels))
        for a, b in zip(random_channels.channels, out.channels):
            assert np.allclose(a.coeffs, b.coeffs)

    def test_declared_shape_mismatch(self):
        fld = encode(ChannelSet([[1.0], [1.0]]))
        with pytest.raises(ValueError):
            decode(fld, n=3)
        with pytest.raises(ValueError):
            decode(fld, M=7)

    def test_sampled_mode(self, random_channels, codec_grid):
        fld = encode(random_channels)
        out = decode(fld.as_field(), n=3, M=16, grid=codec_grid)
        for a, b in zip(random_channels.channels, out.channels):
            err = math.sqrt(RPlusCoeffs(b.coeffs - a.coeffs).norm_sq / a.norm_sq)
            assert err < 1e-3

    def test_decode_samples_shape_guard(self, codec_grid):
        with pytest.raises(ValueError):
            decode_samples(np.zeros(5), 1, 1, codec_grid)

    def test_ill_conditioned_grid_raises(self):
        tiny = make_grid(2.0, 4, 0.5, 2.0, 4)
        fld = encode(ChannelSet([np.ones(8), np.ones(8)]))
        with pytest.raises(AccuracyError) as exc:
            decode(fld.as_field(), n=2, M=8, grid=tiny)
        assert "condition_number" in exc.value.details

    def test_sampled_needs_declared_shape(self, codec_grid):
        fld = encode(ChannelSet([[1.0]]))
        with pytest.raises(ValueError):
            decode(fld.as_field(), grid=codec_grid)


class TestRoundtrip:
    def test_coefficient_mode_exact(self, random_channels):
        rep = roundtrip(random_channels, "coefficient")
        assert rep.max_error < 1e-14
        assert np.allclose(np.diag(rep.crosstalk), 1.0)
        off = rep.crosstalk - np.diag(np.diag(rep.crosstalk))
        assert np.max(np.abs(off)) < 1e-14

    def test_sampled_mode(self, random_channels, codec_grid):
        rep = roundtrip(random_channels, "sampled", grid=codec_grid)
        assert rep.max_error < 1e-3
        assert np.allclose(np.diag(rep.crosstalk), 1.0, atol=1e-3)
        off = rep.crosstalk - np.diag(np.diag(rep.crosstalk))
        assert np.max(np.abs(off)) < 1e-3

    def test_superposition(self):
        rng = np.random.default_rng(4)
        f = ChannelSet([rng.standard_normal(4) for _ in range(2)])
        g = ChannelSet([rng.standard_normal(4) for _ in range(2)])
        fg = ChannelSet([a.coeffs + b.coeffs
                         for a, b in zip(f.channels, g.channels)])
        d = decode(encode(fg))
        df, dg = decode(encode(f)), decode(encode(g))
        for x, y, z in zip(d.channels, df.channels, dg.channels):
            assert np.allclose(x.coeffs, y.coeffs + z.coeffs)

    def test_report_json(self, random_channels):
        rep = roundtrip(random_channels, "coefficient")
        d = rep.to_json()
        assert d["mode"] == "coefficient"
        assert len(d["channel_errors"]) == 3
        assert len(d["crosstalk"]) == 3

    def test_rejects_unknown_mode(self, random_channels):
        with pytest.raises(ValueError):
            roundtrip(random_channels, "analog")
