"""Smoke tests for the _fuzex extension module."""

import pytest

try:
    import fuzex as fx
except ImportError:  # running against the raw build tree
    import _fuzex as fx


def test_field_arithmetic():
    f = fx.Field(8)
    assert f.mul(0x53, 0xCA) == 0x01
    assert f.add(0xA7, 0x1C) == 0xA7 ^ 0x1C
    assert f.pow(0x02, 1) == 0x02
    a = 0x57
    assert f.mul(a, f.inverse(a)) == 1

    f128 = fx.Field(128)
    x = (1 << 127) | 0x1234
    assert f128.mul(x, f128.inverse(x)) == 1


def test_encode_message():
    f = fx.Field(8)
    p = fx.BitString.from_string("1" * 8)
    assert f.encode_message(p, 7) == [0xFF, 0, 0]


def test_extract_linearity():
    rng = fx.Rng(1)
    seed = fx.make_toeplitz_seed(16, 8, rng)
    a = rng.bits(16)
    b = rng.bits(16)
    assert fx.extract(a, seed) ^ fx.extract(b, seed) == fx.extract(a ^ b, seed)
    assert len(fx.extract(a, seed)) == 8


def test_params_engine():
    assert fx.max_key_length(180.0, 256, 2.0 ** -32, 64, 0, fx.Construction.C1) == 36
    feasible, ell, _ = fx.solve_ell(1024, 64, 16, 32, 0.001)
    assert feasible and ell == 19
    assert fx.mac_degree(8, 48, 16) == 31


def test_rfe_round_trip():
    p = fx.Params()
    p.n, p.m, p.ell, p.t, p.t_prime, p.xi = 256, 32, 4, 8, 4, 8
    fx.finalize_params(p, fx.Construction.C1)
    rng = fx.Rng(7)
    w = fx.SourceModel.uniform(p.n).draw(rng)
    z = fx.make_toeplitz_seed(p.m, p.nu, rng)
    key, helper = fx.rfe_gen(w, z, p, rng)
    w2 = fx.perturb(w, fx.NoiseModel.random_t(p.t_prime), rng)
    back = fx.rfe_rep(w2, helper, z)
    assert back is not None and back == key


def test_srrfe_round_trip_and_tamper():
    p = fx.Params()
    p.n, p.m, p.ell, p.t, p.t_prime, p.xi, p.lam = 256, 32, 4, 8, 4, 8, 16
    fx.finalize_params(p, fx.Construction.C2)
    rng = fx.Rng(9)
    crs = fx.generate_crs(p, rng)
    w = fx.SourceModel.uniform(p.n).draw(rng)
    key, helper = fx.srrfe_gen(w, crs, p, rng)
    assert fx.srrfe_rep(w, helper, crs) == key

    blob = bytearray(fx.serialize_helper_c2(helper))
    blob[40] ^= 0x10  # payload byte
    tampered = fx.parse_helper_c2(bytes(blob))
    assert fx.srrfe_rep(w, tampered, crs) is None


def test_serialization_round_trip():
    p = fx.Params()
    p.n, p.m, p.ell, p.t, p.t_prime, p.xi, p.lam = 300, 18, 3, 7, 5, 5, 16
    fx.finalize_params(p, fx.Construction.C2)
    rng = fx.Rng(11)
    crs = fx.generate_crs(p, rng)
    blob = fx.serialize_crs(crs, p)
    crs2 = fx.parse_crs(blob)
    assert fx.serialize_crs(crs2, p) == blob

    w = rng.bits(300)
    assert fx.parse_sample(fx.serialize_sample(w)) == w

    with pytest.raises(fx.ParseError):
        fx.parse_crs(b"FECR\x01junk")


def test_certified_alpha():
    assert fx.SourceModel.uniform(64).certified_alpha(16, 48) == 16.0
    b = fx.SourceModel.biased(64, 0.25).certified_alpha(8, 0)
    assert abs(b - 8 * 0.41503749927884376) < 1e-9
