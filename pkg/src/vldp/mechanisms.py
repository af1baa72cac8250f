"""Plain (non-verifiable) kRR, OUE and OLH, plus the pure-LDP estimator.

The estimator is shared by plain and secure collections; secure runs feed
it the discretized probabilities (l/n etc.) because that is the mechanism
actually executed on the wire.
"""

import hashlib
import math
from dataclasses import dataclass
from typing import Optional, Sequence

KRR = "krr"
OUE = "oue"
OLH = "olh"
MECHANISMS = (KRR, OUE, OLH)


class EstimatorError(Exception):
    """p_hat <= q_hat leaves Eq-style normalization undefined."""


@dataclass(frozen=True)
class MechanismKind:
    tag: str
    d: int
    epsilon: float
    g: Optional[int] = None          # OLH hash range
    hash_seed: Optional[int] = None  # OLH shared seed (single-collection use)

    def __post_init__(self):
        if self.tag not in MECHANISMS:
            raise ValueError(f"unknown mechanism {self.tag!r}")
        if self.d < 2:
            raise ValueError("d must be at least 2")
        if self.tag == OLH:
            if self.g is None or not 2 <= self.g < self.d:
                raise ValueError("OLH needs 2 <= g < d")


@dataclass(frozen=True)
class Report:
    """One client's randomized output.

    kRR carries a category index, OUE a d-length bit tuple, OLH a hashed
    index together with the seed of the hash that produced it (seeds are
    per-client, the estimator needs them to recompute supports).
    """
    tag: str
    value: Optional[int] = None
    bits: Optional[tuple] = None
    hash_seed: Optional[int] = None


def olh_hash(seed: int, category: int, g: int) -> int:
    """Keyed hash [d] -> [g]: digest of (seed || category) reduced mod g."""
    raw = seed.to_bytes(8, "big", signed=False) + category.to_bytes(4, "big")
    return int.from_bytes(hashlib.sha256(raw).digest()[:8], "big") % g


def krr_probabilities(epsilon: float, d: int):
    e = math.exp(epsilon)
    return e / (e + d - 1), 1.0 / (e + d - 1)


def oue_probabilities(epsilon: float):
    return 0.5, 1.0 / (math.exp(epsilon) + 1)


def olh_probabilities(epsilon: float, g: int):
    e = math.exp(epsilon)
    return e / (e + g - 1), 1.0 / g


def perturb_krr(v: int, epsilon: float, d: int, rng) -> Report:
    if not 0 <= v < d:
        raise ValueError("category out of range")
    p, _ = krr_probabilities(epsilon, d)
    if rng.random() < p:
        out = v
    else:
        out = rng.randrange(d - 1)
        if out >= v:
            out += 1
    return Report(tag=KRR, value=out)


def perturb_oue(v: int, epsilon: float, d: int, rng) -> Report:
    if not 0 <= v < d:
        raise ValueError("category out of range")
    if d < 2:
        raise ValueError("d must be at least 2")
    _, q = oue_probabilities(epsilon)
    bits = tuple(
        1 if rng.random() < (0.5 if k == v else q) else 0
        for k in range(d)
    )
    return Report(tag=OUE, bits=bits)


def perturb_olh(v: int, epsilon: float, d: int, g: int, seed: int, rng) -> Report:
    if not 0 <= v < d:
        raise ValueError("category out of range")
    if not 2 <= g < d:
        raise ValueError("need 2 <= g < d")
    hashed = olh_hash(seed, v, g)
    p, _ = krr_probabilities(epsilon, g)
    if rng.random() < p:
        out = hashed
    else:
        out = rng.randrange(g - 1)
        if out >= hashed:
            out += 1
    return Report(tag=OLH, value=out, hash_seed=seed)


def support(kind: MechanismKind, report: Report, k: int) -> bool:
    """Does this report count toward category k?"""
    if kind.tag == KRR:
        return report.value == k
    if kind.tag == OUE:
        return report.bits[k] == 1
    seed = report.hash_seed if report.hash_seed is not None else kind.hash_seed
    return olh_hash(seed, k, kind.g) == report.value


def support_counts(kind: MechanismKind, reports: Sequence[Report]):
    counts = [0] * kind.d
    if kind.tag == KRR:
        for rep in reports:
            if 0 <= rep.value < kind.d:
                counts[rep.value] += 1
    elif kind.tag == OUE:
        for rep in reports:
            for k, bit in enumerate(rep.bits):
                counts[k] += bit
    else:
        for rep in reports:
            seed = rep.hash_seed if rep.hash_seed is not None else kind.hash_seed
            for k in range(kind.d):
                if olh_hash(seed, k, kind.g) == rep.value:
                    counts[k] += 1
    return counts


def estimate_frequencies(kind: MechanismKind, reports: Sequence[Report],
                         p_hat: float, q_hat: float):
    """Unbiased frequency estimate per category (as counts, not fractions).

    F_k = (#supporting reports - N*q_hat) / (p_hat - q_hat)
    """
    if p_hat <= q_hat:
        raise EstimatorError(f"degenerate probabilities p={p_hat} q={q_hat}")
    n_reports = len(reports)
    counts = support_counts(kind, reports)
    denom = p_hat - q_hat
    return [(c - n_reports * q_hat) / denom for c in counts]


# --- report wire forms ----------------------------------------------------

def report_to_bytes(report: Report) -> bytes:
    if report.tag in (KRR, OLH):
        return report.value.to_bytes(4, "big")
    length = len(report.bits)
    packed = bytearray((length + 7) // 8)
    for i, bit in enumerate(report.bits):
        if bit:
            packed[i // 8] |= 1 << (7 - i % 8)
    return length.to_bytes(4, "big") + bytes(packed)


def report_from_bytes(tag: str, data: bytes, hash_seed: Optional[int] = None) -> Report:
    if tag in (KRR, OLH):
        if len(data) != 4:
            raise ValueError("index report must be 4 bytes")
        return Report(tag=tag, value=int.from_bytes(data, "big"), hash_seed=hash_seed)
    if len(data) < 4:
        raise ValueError("truncated bit-vector report")
    length = int.from_bytes(data[:4], "big")
    body = data[4:]
    if len(body) != (length + 7) // 8:
        raise ValueError("bit-vector length mismatch")
    bits = tuple((body[i // 8] >> (7 - i % 8)) & 1 for i in range(length))
    return Report(tag=tag, bits=bits)
