"""Deterministic, versioned byte encodings for every public object.

All multi-byte integers are little-endian; variable-length fields are
length-prefixed. Every object starts with an 8-byte wire header:

    magic "CHRS" | u16 version | u8 kind | u8 mode

kinds: pk=1, sk=2, ringsig=3, share=4, partial=5; modes: single=1, multi=2.
Polynomials pack 512 coefficients at a fixed 22 bits each (q < 2^22),
little-endian bit order, 1408 bytes total.

Object layouts (after the header):

    pk       rho_seed(32) | v0(1408) | v1(1408)
    sk       seed(32) | tr(48) | s0(1408) | s1(1408) | encoded pk
    ringsig  u16 ring_size | u16 required_signers | challenge(32)
             | per member: randomness(32) | proof(p) | linkability(32)
             | sigma(1408) | u32 threshold block length | block
    share    u16 participant_x | u16 threshold_t | u16 n_participants
             | s0_share(1408) | s1_share(1408) | encoded master pk
    partial  u16 participant_x | u16 proof length | sigma_share(1408) | proof

Unknown version or kind is rejected, never skipped. decode(encode(x)) == x
for every object kind.
"""

import hashlib
import struct
from functools import lru_cache

from .errors import (
    BadKindError,
    BadMagicError,
    BadVersionError,
    FieldError,
    TruncatedDataError,
)
from .params import N, Q

MAGIC = b"CHRS"
VERSION = 1

KIND_PUBLIC_KEY = 1
KIND_PRIVATE_KEY = 2
KIND_RING_SIGNATURE = 3
KIND_KEY_SHARE = 4
KIND_PARTIAL_SIGNATURE = 5
_KINDS = (1, 2, 3, 4, 5)

MODE_SINGLE = 1
MODE_MULTI = 2
_PROOF_SIZES = {MODE_SINGLE: 64, MODE_MULTI: 96}

POLYNOMIAL_BYTES = N * 22 // 8  # 1408
HEADER_BYTES = 8

_MASK22 = (1 << 22) - 1


class _Reader:
    __slots__ = ("data", "pos")

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise TruncatedDataError(
                f"need {n} bytes at offset {self.pos}, have {len(self.data) - self.pos}"
            )
        out = self.data[self.pos:self.pos + n]
        self.pos += n
        return out

    def u16(self) -> int:
        return struct.unpack("<H", self.take(2))[0]

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def expect_end(self):
        if self.pos != len(self.data):
            raise FieldError(f"{len(self.data) - self.pos} unexpected trailing bytes")


def pack_header(kind: int, mode: int) -> bytes:
    return MAGIC + struct.pack("<HBB", VERSION, kind, mode)


def _read_header(r: _Reader, expected_kind: int) -> int:
    """Validate the header and return the mode byte."""
    magic = r.take(4)
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}")
    version = r.u16()
    if version != VERSION:
        raise BadVersionError(f"unsupported version {version}")
    kind, mode = struct.unpack("<BB", r.take(2))
    if kind not in _KINDS:
        raise BadKindError(f"unknown object kind {kind}")
    if kind != expected_kind:
        raise BadKindError(f"expected kind {expected_kind}, got {kind}")
    if mode not in _PROOF_SIZES:
        raise FieldError(f"unknown params mode {mode}")
    return mode


def encode_polynomial(p) -> bytes:
    """Pack 512 coefficients at 22 bits each: 1408 bytes, bijective."""
    c = p.coeffs
    out = bytearray()
    # 4 coefficients fill exactly 11 bytes (lcm of 22 and 8 is 88 bits)
    for i in range(0, N, 4):
        v = c[i] | (c[i + 1] << 22) | (c[i + 2] << 44) | (c[i + 3] << 66)
        out += v.to_bytes(11, "little")
    return bytes(out)


def decode_polynomial(data: bytes):
    from .polyring import Polynomial

    if len(data) != POLYNOMIAL_BYTES:
        raise TruncatedDataError(
            f"polynomial needs {POLYNOMIAL_BYTES} bytes, got {len(data)}"
        )
    coeffs = []
    for i in range(0, POLYNOMIAL_BYTES, 11):
        v = int.from_bytes(data[i:i + 11], "little")
        for k in range(4):
            c = (v >> (22 * k)) & _MASK22
            if c >= Q:
                raise FieldError(f"coefficient {c} out of range [0, {Q})")
            coeffs.append(c)
    return Polynomial(coeffs=tuple(coeffs))


@lru_cache(maxsize=512)
def encode_public_key(pk) -> bytes:
    return (
        pack_header(KIND_PUBLIC_KEY, MODE_SINGLE)
        + pk.rho_seed
        + encode_polynomial(pk.v0)
        + encode_polynomial(pk.v1)
    )


def decode_public_key(data: bytes):
    from .hots import PublicKey

    r = _Reader(data)
    _read_header(r, KIND_PUBLIC_KEY)
    rho_seed = r.take(32)
    v0 = decode_polynomial(r.take(POLYNOMIAL_BYTES))
    v1 = decode_polynomial(r.take(POLYNOMIAL_BYTES))
    r.expect_end()
    return PublicKey(rho_seed=rho_seed, v0=v0, v1=v1)


def encode_private_key(sk) -> bytes:
    return (
        pack_header(KIND_PRIVATE_KEY, MODE_SINGLE)
        + sk.seed
        + sk.tr
        + encode_polynomial(sk.s0)
        + encode_polynomial(sk.s1)
        + encode_public_key(sk.pk)
    )


def decode_private_key(data: bytes):
    from .hots import PrivateKey

    r = _Reader(data)
    _read_header(r, KIND_PRIVATE_KEY)
    seed = r.take(32)
    tr = r.take(48)
    s0 = decode_polynomial(r.take(POLYNOMIAL_BYTES))
    s1 = decode_polynomial(r.take(POLYNOMIAL_BYTES))
    pk = decode_public_key(r.take(len(r.data) - r.pos))
    if tr != hashlib.sha3_384(encode_public_key(pk)).digest():
        raise FieldError("tr digest does not match the embedded public key")
    return PrivateKey(seed=seed, tr=tr, s0=s0, s1=s1, pk=pk)


def signature_mode(sig) -> int:
    """Infer the params mode from the per-member proof length."""
    plen = len(sig.per_member[0].acorn_proof) if sig.per_member else 64
    for mode, size in _PROOF_SIZES.items():
        if size == plen:
            return mode
    raise FieldError(f"proof length {plen} matches no params mode")


def encode_signature(sig) -> bytes:
    if len(sig.per_member) != sig.ring_size:
        raise FieldError("per-member record count does not match ring_size")
    mode = signature_mode(sig)
    p = _PROOF_SIZES[mode]
    t = sig.required_signers
    block = sig.threshold_zk_proofs
    if t == 1 and block != b"":
        raise FieldError("single-signer signature carries a threshold block")
    if t > 1 and len(block) != t * p:
        raise FieldError(f"threshold block must be {t * p} bytes, got {len(block)}")
    out = bytearray()
    out += pack_header(KIND_RING_SIGNATURE, mode)
    out += struct.pack("<HH", sig.ring_size, sig.required_signers)
    out += sig.challenge
    for entry in sig.per_member:
        out += entry.randomness
        out += entry.acorn_proof
        out += entry.linkability
    out += encode_polynomial(sig.chipmunk_sig.sigma)
    out += struct.pack("<I", len(block))
    out += block
    return bytes(out)


def decode_signature(data: bytes):
    from .hots import ChipmunkSignature
    from .ringsig import MemberEntry, RingSignature

    r = _Reader(data)
    mode = _read_header(r, KIND_RING_SIGNATURE)
    p = _PROOF_SIZES[mode]
    ring_size = r.u16()
    required = r.u16()
    if not 2 <= ring_size <= 64:
        raise FieldError(f"ring_size {ring_size} out of range [2, 64]")
    if not 1 <= required <= 64:
        raise FieldError(f"required_signers {required} out of range [1, 64]")
    challenge = r.take(32)
    entries = []
    for _ in range(ring_size):
        randomness = r.take(32)
        proof = r.take(p)
        linkability = r.take(32)
        entries.append(
            MemberEntry(randomness=randomness, acorn_proof=proof, linkability=linkability)
        )
    sigma = decode_polynomial(r.take(POLYNOMIAL_BYTES))
    block_len = r.u32()
    expected = 0 if required == 1 else required * p
    if block_len != expected:
        raise FieldError(f"threshold block length {block_len}, expected {expected}")
    block = r.take(block_len)
    r.expect_end()
    return RingSignature(
        ring_size=ring_size,
        required_signers=required,
        challenge=challenge,
        per_member=tuple(entries),
        chipmunk_sig=ChipmunkSignature(sigma=sigma),
        threshold_zk_proofs=block,
    )


def encode_share(share) -> bytes:
    return (
        pack_header(KIND_KEY_SHARE, MODE_MULTI)
        + struct.pack("<HHH", share.participant_x, share.threshold_t, share.n_participants)
        + encode_polynomial(share.s0_share)
        + encode_polynomial(share.s1_share)
        + encode_public_key(share.pk)
    )


def decode_share(data: bytes):
    from .threshold import KeyShare

    r = _Reader(data)
    _read_header(r, KIND_KEY_SHARE)
    x, t, n_participants = struct.unpack("<HHH", r.take(6))
    if not 1 <= t <= n_participants <= 64:
        raise FieldError(f"invalid threshold configuration t={t}, n={n_participants}")
    if not 1 <= x <= n_participants:
        raise FieldError(f"participant_x {x} out of range [1, {n_participants}]")
    s0 = decode_polynomial(r.take(POLYNOMIAL_BYTES))
    s1 = decode_polynomial(r.take(POLYNOMIAL_BYTES))
    pk = decode_public_key(r.take(len(r.data) - r.pos))
    return KeyShare(
        participant_x=x,
        s0_share=s0,
        s1_share=s1,
        pk=pk,
        n_participants=n_participants,
        threshold_t=t,
    )


def encode_partial(partial) -> bytes:
    return (
        pack_header(KIND_PARTIAL_SIGNATURE, MODE_MULTI)
        + struct.pack("<HH", partial.participant_x, len(partial.acorn_proof))
        + encode_polynomial(partial.sigma_share)
        + partial.acorn_proof
    )


def decode_partial(data: bytes):
    from .threshold import PartialSignature

    r = _Reader(data)
    mode = _read_header(r, KIND_PARTIAL_SIGNATURE)
    x, proof_len = struct.unpack("<HH", r.take(4))
    if not 1 <= x <= 64:
        raise FieldError(f"participant_x {x} out of range [1, 64]")
    if proof_len != _PROOF_SIZES[mode]:
        raise FieldError(f"proof length {proof_len} inconsistent with mode {mode}")
    sigma = decode_polynomial(r.take(POLYNOMIAL_BYTES))
    proof = r.take(proof_len)
    r.expect_end()
    return PartialSignature(participant_x=x, sigma_share=sigma, acorn_proof=proof)
