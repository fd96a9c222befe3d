import random

import pytest

from chipmunkring import codec, hots
from chipmunkring.hots import ChipmunkSignature, keygen, keypair_from_secrets, sign, verify
from chipmunkring.params import Q, RingParams
from chipmunkring.errors import ParameterError
from chipmunkring.polyring import (
    add,
    expand_matrix,
    hash_to_poly,
    infinity_norm,
    mul,
    sample_secret,
    zero,
)

rng = random.Random(0x4075)


def test_keygen_deterministic(single_params):
    sk1, pk1 = keygen(b"\x42" * 32, single_params)
    sk2, pk2 = keygen(b"\x42" * 32, single_params)
    assert codec.encode_private_key(sk1) == codec.encode_private_key(sk2)
    assert codec.encode_public_key(pk1) == codec.encode_public_key(pk2)


def test_keygen_entropy_length(single_params):
    with pytest.raises(ValueError):
        keygen(b"\x42" * 31, single_params)


def test_keygen_unsupported_params():
    # mathematically valid parameter set the arithmetic layer has no tables for
    exotic = RingParams(n=256, q=7681)
    with pytest.raises(ParameterError):
        keygen(b"\x00" * 32, exotic)


def test_public_key_construction(key_pool):
    sk, pk = key_pool[0]
    a = expand_matrix(pk.rho_seed).a
    assert pk.v0 == mul(a, sk.s0)
    assert pk.v1 == mul(a, sk.s1)


def test_rho_seed_collision_scan(single_params):
    seeds = set()
    for i in range(100):
        _, pk = keygen(rng.randbytes(32), single_params)
        seeds.add(pk.rho_seed)
    assert len(seeds) == 100


def test_sign_s1_zero_reduction(single_params):
    # with s1 = 0 the signing equation collapses to s0 * H(M)
    s0 = sample_secret(b"\x31" * 32, b"s0")
    sk, _ = keypair_from_secrets(b"\x30" * 32, s0, zero())
    msg = b"identity reduction"
    assert sign(sk, msg, single_params).sigma == mul(s0, hash_to_poly(msg))


def test_sign_norm_bound(key_pool, single_params):
    # |sigma| <= 64*4 + 4 = 260 by the sampler tail cuts; the 1000-pair
    # sweep lives in test_completeness_and_norm_1000
    for i, (sk, _) in enumerate(key_pool[:20]):
        sig = sign(sk, b"norm trial %d" % i, single_params)
        assert infinity_norm(sig.sigma) <= 260


def test_completeness_and_norm_1000(single_params):
    keys = [keygen(rng.randbytes(32), single_params) for _ in range(200)]
    for i, (sk, pk) in enumerate(keys):
        for j in range(5):
            msg = b"completeness %d %d" % (i, j)
            sig = sign(sk, msg, single_params)
            assert infinity_norm(sig.sigma) <= 260
            assert verify(pk, msg, sig, single_params)


def test_verify_message_bitflip(key_pool, single_params):
    sk, pk = key_pool[0]
    sig = sign(sk, b"original message", single_params)
    assert verify(pk, b"original message", sig, single_params)
    assert not verify(pk, b"priginal message", sig, single_params)


def test_verify_norm_violation(key_pool, single_params):
    sk, pk = key_pool[1]
    msg = b"norm violation"
    sig = sign(sk, msg, single_params)
    coeffs = list(sig.sigma.coeffs)
    coeffs[0] = Q // 2
    big = ChipmunkSignature(sigma=sig.sigma.__class__(coeffs=tuple(coeffs)))
    assert hots.verify_detail(pk, msg, big, single_params) == "norm"


def test_verify_wrong_key(key_pool, single_params):
    sk, _ = key_pool[2]
    _, other_pk = key_pool[3]
    msg = b"wrong key"
    sig = sign(sk, msg, single_params)
    assert hots.verify_detail(other_pk, msg, sig, single_params) == "identity"


def test_zero_signature_never_accepted(key_pool, single_params):
    z = ChipmunkSignature(sigma=zero())
    for sk, pk in key_pool[:20]:
        assert not verify(pk, b"zero signature probe", z, single_params)


def test_homomorphic_linearity(single_params):
    rho = b"\x77" * 32
    s0a = sample_secret(b"\x01" * 32, b"la0")
    s1a = sample_secret(b"\x01" * 32, b"la1")
    s0b = sample_secret(b"\x02" * 32, b"lb0")
    s1b = sample_secret(b"\x02" * 32, b"lb1")
    ska, _ = keypair_from_secrets(rho, s0a, s1a)
    skb, _ = keypair_from_secrets(rho, s0b, s1b)
    skc, _ = keypair_from_secrets(rho, add(s0a, s0b), add(s1a, s1b))
    msg = b"linearity"
    siga = sign(ska, msg, single_params)
    sigb = sign(skb, msg, single_params)
    sigc = sign(skc, msg, single_params)
    assert sigc.sigma == add(siga.sigma, sigb.sigma)


def test_verify_matches_literal_identity(key_pool, single_params):
    # the transform-domain check equals the plain product identity
    sk, pk = key_pool[4]
    a = expand_matrix(pk.rho_seed).a
    for j in range(5):
        msg = b"literal identity %d" % j
        sig = sign(sk, msg, single_params)
        lhs = mul(a, sig.sigma)
        rhs = add(mul(pk.v0, hash_to_poly(msg)), pk.v1)
        assert (lhs == rhs) == verify(pk, msg, sig, single_params)
        bad = ChipmunkSignature(sigma=add(sig.sigma, hash_to_poly(b"noise %d" % j)))
        lhs_bad = mul(a, bad.sigma)
        assert (lhs_bad == rhs) == verify(pk, msg, bad, single_params)
