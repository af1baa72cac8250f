"""Schnorr-group arithmetic and Pedersen commitments.

All protocol phases work inside the unique order-q subgroup G of Z_p*,
where p = q*r + 1 and both p, q are prime.  Exponents (scalars) live in
Z_q, group elements in [1, p-1].  gmpy2 supplies the modular arithmetic;
values are plain Python ints at every interface.
"""

import hashlib
import random
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpz

DEFAULT_Q_BITS = 160
DEFAULT_P_BITS = 1024

_H_DERIVATION_TAG = b"vldp/generator-h/v1"


class GroupGenerationError(Exception):
    """Prime search exhausted its attempt budget."""


class InvalidCandidateSetError(Exception):
    """Candidate exponents collide mod q, decoding is ambiguous."""


def powmod(base, exp, mod):
    return int(gmpy2.powmod(base, exp, mod))


def invert(x, mod):
    return int(gmpy2.invert(x, mod))


@dataclass(frozen=True)
class GroupParams:
    p: int          # prime modulus
    q: int          # prime order of the subgroup G
    g: int          # generator of G
    h: int          # second generator, log_g(h) unknown by construction

    def validate(self) -> None:
        """Check the public invariants; raises ValueError on any failure."""
        if not gmpy2.is_prime(self.p) or not gmpy2.is_prime(self.q):
            raise ValueError("p and q must both be prime")
        if (self.p - 1) % self.q != 0:
            raise ValueError("q must divide p-1")
        for name, x in (("g", self.g), ("h", self.h)):
            if not 1 < x < self.p:
                raise ValueError(f"{name} out of range")
            if powmod(x, self.q, self.p) != 1:
                raise ValueError(f"{name}^q != 1 mod p")
        if self.g == self.h:
            raise ValueError("g and h must differ")

    def is_element(self, x: int) -> bool:
        return 1 <= x < self.p and powmod(x, self.q, self.p) == 1

    def element_bytes(self) -> int:
        """Fixed serialized width of one group element."""
        return (self.p.bit_length() + 7) // 8

    def scalar_bytes(self) -> int:
        return (self.q.bit_length() + 7) // 8


def random_scalar(params: GroupParams, rng) -> int:
    return rng.randrange(params.q)


def _random_prime(bits: int, rng) -> int:
    # Top bit forced so the size is exact, low bit forced odd.
    for _ in range(40 * bits):
        cand = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if gmpy2.is_prime(cand):
            return cand
    raise GroupGenerationError(f"no {bits}-bit prime found in budget")


def _derive_h(p: int, q: int, g: int) -> int:
    """Hash a fixed public string into G.

    Nothing-up-my-sleeve derivation: neither side chooses h, so nobody
    knows log_g(h) short of solving discrete log.
    """
    cofactor = (p - 1) // q
    seed = _H_DERIVATION_TAG + p.to_bytes(-(-p.bit_length() // 8), "big")
    ctr = 0
    while True:
        digest = hashlib.sha256(seed + ctr.to_bytes(4, "big")).digest()
        x = int.from_bytes(digest + hashlib.sha256(digest).digest(), "big") % p
        if x > 1:
            h = powmod(x, cofactor, p)
            if h != 1 and h != g:
                return h
        ctr += 1


def generate_group(q_bits: int = DEFAULT_Q_BITS, p_bits: int = DEFAULT_P_BITS,
                   rng=None) -> GroupParams:
    """Generate a fresh Schnorr group (p = q*r + 1, both prime).

    Args:
        q_bits: subgroup order size; 16 is the test-scale floor.
        p_bits: modulus size, must exceed q_bits.
        rng: seedable random.Random-style source; defaults to the OS RNG.
            A fixed seed reproduces the same group.

    Raises:
        GroupGenerationError if the bounded prime search fails.
    """
    if q_bits < 16:
        raise ValueError("q_bits must be at least 16")
    if p_bits <= q_bits:
        raise ValueError("p_bits must exceed q_bits")
    if rng is None:
        rng = random.SystemRandom()

    q = _random_prime(q_bits, rng)
    r_bits = p_bits - q_bits
    p = None
    for _ in range(60 * p_bits):
        r = rng.getrandbits(r_bits) | (1 << (r_bits - 1))
        cand = q * r + 1
        if cand.bit_length() == p_bits and gmpy2.is_prime(cand):
            p = int(cand)
            break
    if p is None:
        raise GroupGenerationError(f"no {p_bits}-bit modulus found for q")

    cofactor = (p - 1) // q
    while True:
        g = powmod(rng.randrange(2, p - 1), cofactor, p)
        if g != 1:
            break
    h = _derive_h(p, q, g)
    params = GroupParams(p=p, q=int(q), g=g, h=h)
    params.validate()
    return params


def commit(params: GroupParams, m: int, r: int) -> int:
    """Pedersen commitment g^m * h^r mod p."""
    p = params.p
    return int(gmpy2.powmod(params.g, m, p) * gmpy2.powmod(params.h, r, p) % p)


def decode_small_exponent(params: GroupParams, target: int, candidates):
    """Resolve target = g^x against a small known exponent set.

    Returns the index j with g^candidates[j] == target, or None when no
    candidate matches.  Candidates must be distinct mod q (otherwise the
    preimage would be ambiguous).
    """
    if not candidates:
        raise ValueError("candidate set is empty")
    q = params.q
    reduced = [c % q for c in candidates]
    if len(set(reduced)) != len(reduced):
        raise InvalidCandidateSetError("candidate exponents collide mod q")
    for j, c in enumerate(reduced):
        if powmod(params.g, c, params.p) == target:
            return j
    return None


# --- serialization -------------------------------------------------------

def _pack(value: int) -> bytes:
    raw = value.to_bytes(-(-value.bit_length() // 8) or 1, "big")
    return len(raw).to_bytes(4, "big") + raw


def group_to_bytes(params: GroupParams) -> bytes:
    """Length-prefixed big-endian fields, in the order p, q, g, h."""
    return b"".join(_pack(v) for v in (params.p, params.q, params.g, params.h))


def group_from_bytes(data: bytes) -> GroupParams:
    fields = []
    off = 0
    for _ in range(4):
        if off + 4 > len(data):
            raise ValueError("truncated group serialization")
        ln = int.from_bytes(data[off:off + 4], "big")
        off += 4
        if off + ln > len(data):
            raise ValueError("truncated group serialization")
        fields.append(int.from_bytes(data[off:off + ln], "big"))
        off += ln
    if off != len(data):
        raise ValueError("trailing bytes after group serialization")
    params = GroupParams(*fields)
    params.validate()
    return params


def group_to_hex(params: GroupParams) -> str:
    return ":".join(format(v, "x") for v in (params.p, params.q, params.g, params.h))


def group_from_hex(text: str) -> GroupParams:
    parts = text.strip().split(":")
    if len(parts) != 4:
        raise ValueError("expected p:q:g:h hex fields")
    params = GroupParams(*(int(s, 16) for s in parts))
    params.validate()
    return params
