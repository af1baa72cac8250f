"""1-out-of-n oblivious transfer over the shared Schnorr group.

The verifier queries with (A, B, C) = (g^a, g^b, g^(ab-sigma+1)); the
prover derives per-slot keys PK_i = C*g^(i-1), so only slot sigma has
PK_sigma = g^(ab).  The mask element e_i = B^r * PK_i^s equals w_i^b
exactly at i = sigma and is DDH-random elsewhere.  Following the CRRT
construction, the *integer value* of e_i (reduced mod q) becomes the
h-exponent of the slot's Pedersen commitment, which means the prover
knows the opening of every y_i and can run the standard disjunctive
proofs over them.
"""

from dataclasses import dataclass

from gmpy2 import mpz, powmod

from .group import GroupParams, decode_small_exponent


class OtDecodeError(Exception):
    """Decrypted payload matched no candidate exponent."""


@dataclass(frozen=True)
class OtQuery:
    a_el: int  # g^a
    b_el: int  # g^b
    c_el: int  # g^(ab - sigma + 1)


@dataclass(frozen=True)
class OtSecret:
    a: int
    b: int
    sigma: int  # 1-based slot index, matching the g^(i-1) offset


@dataclass(frozen=True)
class CipherPair:
    w: int  # g^(r + a*s)
    y: int  # g^payload * h^(mask value mod q)


def ot_query(params: GroupParams, sigma: int, rng):
    """Verifier side: build the query for slot sigma (1-based)."""
    if sigma < 1:
        raise ValueError("sigma is 1-based")
    p, q, g = params.p, params.q, params.g
    a = rng.randrange(q)
    b = rng.randrange(q)
    query = OtQuery(
        a_el=int(powmod(g, a, p)),
        b_el=int(powmod(g, b, p)),
        c_el=int(powmod(g, (a * b - sigma + 1) % q, p)),
    )
    return query, OtSecret(a=a, b=b, sigma=sigma)


def ot_encrypt_slot(params: GroupParams, query: OtQuery, i: int,
                    payload_exponent: int, rng):
    """Prover side: encrypt one payload exponent into slot i (1-based).

    Returns (CipherPair, hmask) where hmask is the h-exponent of y,
    i.e. the integer value of the mask element reduced mod q.
    """
    p, q = params.p, params.q
    pk = powmod(params.g, i - 1, p) * query.c_el % p
    return _encrypt_with_key(params, query, pk, payload_exponent, rng)


def _encrypt_with_key(params: GroupParams, query: OtQuery, pk,
                      payload_exponent: int, rng):
    p, q = params.p, params.q
    r = rng.randrange(q)
    s = rng.randrange(q)
    w = powmod(params.g, r, p) * powmod(query.a_el, s, p) % p
    mask = powmod(query.b_el, r, p) * powmod(pk, s, p) % p
    hmask = int(mask % q)
    y = powmod(params.g, payload_exponent, p) * powmod(params.h, hmask, p) % p
    return CipherPair(w=int(w), y=int(y)), hmask


def encrypt_vector(params: GroupParams, query: OtQuery, exponents, rng,
                   g_pows=None):
    """Encrypt a whole slot vector; slot keys advance by one g factor each.

    g_pows may carry precomputed g^exponent values keyed by exponent,
    which the protocol engine shares across slots of a session.

    Returns (pairs, hmasks).
    """
    p, q, h = mpz(params.p), params.q, mpz(params.h)
    g = mpz(params.g)
    a_el, b_el = mpz(query.a_el), mpz(query.b_el)
    pk = mpz(query.c_el)
    pairs = []
    hmasks = []
    randrange = rng.randrange
    for m in exponents:
        r = randrange(q)
        s = randrange(q)
        w = powmod(g, r, p) * powmod(a_el, s, p) % p
        mask = powmod(b_el, r, p) * powmod(pk, s, p) % p
        t = int(mask % q)
        gm = g_pows[m] if g_pows is not None else powmod(g, m, p)
        y = gm * powmod(h, t, p) % p
        pairs.append(CipherPair(w=int(w), y=int(y)))
        hmasks.append(t)
        pk = pk * g % p
    return pairs, hmasks


def ot_decrypt(params: GroupParams, secret: OtSecret, pair: CipherPair,
               candidates):
    """Verifier side: strip the mask of the sigma-th pair and decode.

    Raises OtDecodeError when no candidate matches (out-of-domain payload
    or wrong slot).
    """
    p, q = params.p, params.q
    t = int(powmod(pair.w, secret.b, p) % q)
    gm = pair.y * powmod(params.h, q - t if t else 0, p) % p
    idx = decode_small_exponent(params, int(gm), candidates)
    if idx is None:
        raise OtDecodeError("payload outside candidate set")
    return idx
