"""Single-signer ring signatures.

Signing builds one commitment per ring member from public data plus
caller-supplied entropy, hashes everything into a 32-byte challenge, and
signs the challenge with the signer's core key. Verification recomputes
the challenge, requires at least one valid per-member commitment, checks
the linkability tags, and accepts if the core signature verifies under at
least one ring key. Which key verified is never exposed by the API.

Challenge serialization (hashed with SHA3-256):

    u32 message length | message | ring_hash
    | per member: randomness(32) | proof(p)

Note the construction's verifier-side caveat: anyone can re-run the core
verification loop against each member key and learn which one validates,
so anonymity holds only against verifiers that follow the API contract.
"""

import hashlib
import struct
from dataclasses import dataclass
from functools import lru_cache

from . import codec, hots
from .acorn import create_proof, derive_randomness, linkability_tag, verify_proof
from .errors import RingSizeError, SignerNotInRingError
from .params import RingParams

MIN_RING = 2
MAX_RING = 64


@dataclass(frozen=True)
class Ring:
    """Ordered sequence of member public keys; order is significant."""

    members: tuple

    def __post_init__(self):
        if not MIN_RING <= len(self.members) <= MAX_RING:
            raise RingSizeError(
                f"ring size {len(self.members)} outside [{MIN_RING}, {MAX_RING}]"
            )

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class MemberEntry:
    """Per-member record carried in a signature."""

    randomness: bytes
    acorn_proof: bytes
    linkability: bytes


@dataclass(frozen=True)
class RingSignature:
    ring_size: int
    required_signers: int
    challenge: bytes
    per_member: tuple
    chipmunk_sig: hots.ChipmunkSignature
    threshold_zk_proofs: bytes


@dataclass(frozen=True)
class VerifyReport:
    """Accept/reject with a diagnostic class; no signer index."""

    ok: bool
    reason: str  # ok | structural | challenge | acorn | linkability | core
    #            | threshold_size | threshold_acorn
    detail: str = ""


@lru_cache(maxsize=256)
def ring_hash(ring: Ring) -> bytes:
    """SHA3-256 over the in-order concatenation of encoded member keys."""
    h = hashlib.sha3_256()
    for pk in ring.members:
        h.update(codec.encode_public_key(pk))
    return h.digest()


def challenge_digest(message: bytes, rhash: bytes, pairs) -> bytes:
    """SHA3-256 of the serialized challenge input; pairs is (randomness, proof)."""
    h = hashlib.sha3_256()
    h.update(struct.pack("<I", len(message)))
    h.update(message)
    h.update(rhash)
    for randomness, proof in pairs:
        h.update(randomness)
        h.update(proof)
    return h.digest()


def build_member_entries(message: bytes, ring: Ring, seed: bytes,
                         params: RingParams):
    """Commitments, tags, and challenge for all members from one seed.

    Everything here is a function of public data plus the seed, which is
    why per-member records are byte-identical no matter who signs.
    """
    rhash = ring_hash(ring)
    randomness = [derive_randomness(seed, i) for i in range(ring.size)]
    proofs = [
        create_proof(pk, message, randomness[i], i, params)
        for i, pk in enumerate(ring.members)
    ]
    challenge = challenge_digest(message, rhash, zip(randomness, proofs))
    tag = linkability_tag(rhash, message, challenge)
    entries = tuple(
        MemberEntry(randomness=randomness[i], acorn_proof=proofs[i], linkability=tag)
        for i in range(ring.size)
    )
    return entries, challenge


def ring_sign(sk: hots.PrivateKey, signer_index: int, message: bytes, ring: Ring,
              entropy: bytes, params: RingParams) -> RingSignature:
    """Produce a single-signer ring signature; deterministic in its inputs."""
    if len(message) == 0:
        raise ValueError("message must be nonempty")
    if len(entropy) != 32:
        raise ValueError("entropy must be 32 bytes")
    if not 0 <= signer_index < ring.size:
        raise SignerNotInRingError(f"signer index {signer_index} out of range")
    if ring.members[signer_index] != sk.pk:
        raise SignerNotInRingError(
            f"public key at ring position {signer_index} is not the signer's"
        )
    entries, challenge = build_member_entries(message, ring, entropy, params)
    core = hots.sign(sk, challenge, params)
    return RingSignature(
        ring_size=ring.size,
        required_signers=1,
        challenge=challenge,
        per_member=entries,
        chipmunk_sig=core,
        threshold_zk_proofs=b"",
    )


def check_structure(sig: RingSignature, ring: Ring, params: RingParams) -> str:
    """Shape checks shared by both verification branches; '' when clean."""
    if sig.ring_size != ring.size:
        return f"ring_size {sig.ring_size} != ring of {ring.size}"
    if len(sig.per_member) != sig.ring_size:
        return "per-member record count mismatch"
    if len(sig.challenge) != params.challenge_size:
        return "challenge length mismatch"
    for i, entry in enumerate(sig.per_member):
        if len(entry.randomness) != params.randomness_size:
            return f"randomness length mismatch at member {i}"
        if len(entry.acorn_proof) != params.proof_size:
            return f"proof length mismatch at member {i}"
        if len(entry.linkability) != params.linkability_tag_size:
            return f"linkability tag length mismatch at member {i}"
    return ""


def recompute_challenge(sig: RingSignature, message: bytes, ring: Ring) -> bytes:
    pairs = ((e.randomness, e.acorn_proof) for e in sig.per_member)
    return challenge_digest(message, ring_hash(ring), pairs)


def check_linkability(sig: RingSignature, message: bytes, ring: Ring) -> bool:
    expected = linkability_tag(ring_hash(ring), message, sig.challenge)
    ok = True
    for entry in sig.per_member:
        ok &= entry.linkability == expected
    return ok


def core_matches(sig: RingSignature, ring: Ring, params: RingParams):
    """Indices of ring members whose key verifies the core signature.

    Internal: callers expose only accept/reject, never the index.
    """
    return [
        j
        for j, pk in enumerate(ring.members)
        if hots.verify(pk, sig.challenge, sig.chipmunk_sig, params)
    ]


def ring_verify_report(sig: RingSignature, message: bytes, ring: Ring,
                       params: RingParams) -> VerifyReport:
    """Verify a single-signer ring signature with a diagnostic reason."""
    if sig.required_signers != 1:
        return VerifyReport(False, "structural", "required_signers != 1")
    problem = check_structure(sig, ring, params)
    if not problem and sig.threshold_zk_proofs != b"":
        problem = "unexpected threshold block"
    if problem:
        return VerifyReport(False, "structural", problem)
    if recompute_challenge(sig, message, ring) != sig.challenge:
        return VerifyReport(False, "challenge", "challenge mismatch")
    valid = 0
    for i, (pk, entry) in enumerate(zip(ring.members, sig.per_member)):
        if verify_proof(entry.acorn_proof, pk, message, entry.randomness, i, params):
            valid += 1
    if valid < 1:
        return VerifyReport(False, "acorn", "no valid per-member proof")
    if not check_linkability(sig, message, ring):
        return VerifyReport(False, "linkability", "linkability tag mismatch")
    if not core_matches(sig, ring, params):
        return VerifyReport(False, "core", "core signature matches no ring key")
    return VerifyReport(True, "ok")


def ring_verify(sig: RingSignature, message: bytes, ring: Ring,
                params: RingParams) -> bool:
    return ring_verify_report(sig, message, ring, params).ok
