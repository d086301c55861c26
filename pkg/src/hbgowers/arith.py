"""Exact integer arithmetic: sieve tables, Ramanujan sums, real characters.

Everything downstream (weight models, cube counts, averages) consumes the
functions here, so this layer is kept exact: sieve tables are integer arrays,
Ramanujan sums are evaluated by the divisor formula

    c_q(n) = sum_{d | gcd(q, n)} mu(q/d) * d,

which is an integer identity, and the defining exponential sum

    c_q(n) = sum_{1 <= a <= q, (a,q)=1} e(-a n / q)

is kept alongside as an independent (floating-point) oracle.  Standard facts
used as test anchors: c_q(n) = phi(q) when q | n, c_q(1) = mu(q), and
multiplicativity in q for coprime moduli.

Provides:
    build_sieve / save_sieve / load_sieve  -- dense mu/phi/Lambda/spf tables
    ramanujan_sum / ramanujan_sum_direct / ramanujan_table
    factorize / divisors / rad / tau / omega / vp / mobius_int / totient_int
    real_character  -- Jacobi symbol for odd squarefree modulus
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from math import gcd, isqrt
from pathlib import Path

import numpy as np

_CACHE_MAGIC = b"HBG1"

# Hard cap on sieve size: four 8-byte arrays beyond this would not fit in any
# desk machine, and the cache format stores the limit as an unsigned 64-bit
# field well below this.
_SIEVE_LIMIT_MAX = 2**31


@dataclass
class SieveTables:
    """Dense multiplicative-function tables on [0, limit].

    Index n holds mu(n), phi(n), Lambda(n), spf(n); index 0 is a zero filler
    and spf(1) = 1 by convention.
    """

    limit: int
    mobius: np.ndarray      # int8
    totient: np.ndarray     # int64
    vonmangoldt: np.ndarray  # float64, log p at prime powers p^k
    spf: np.ndarray         # int64, smallest prime factor


@dataclass
class FactorList:
    """Prime factorization of a single integer n = prod p_i^{e_i}."""

    n: int
    factors: list[tuple[int, int]]  # (p, e), p increasing


def build_sieve(limit: int) -> SieveTables:
    """Sieve mu, phi, Lambda and smallest-prime-factor up to ``limit``.

    Args:
        limit: inclusive upper bound, 1 <= limit <= 2^31.

    Returns:
        SieveTables with arrays of length limit + 1.
    """
    if limit < 1:
        raise ValueError(f"sieve limit must be >= 1, got {limit}")
    if limit > _SIEVE_LIMIT_MAX:
        raise ValueError(f"sieve limit {limit} exceeds memory guard {_SIEVE_LIMIT_MAX}")

    n = limit
    idx = np.arange(n + 1, dtype=np.int64)
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in range(2, isqrt(n) + 1):
        if spf[p] == 0:
            view = spf[p * p :: p]
            view[view == 0] = p
    unmarked = spf == 0
    spf[unmarked] = idx[unmarked]  # remaining entries >= 2 are prime
    if n >= 1:
        spf[1] = 1
    spf[0] = 0

    # Peel one prime factor per pass; log2(limit) passes of full-array numpy
    # work instead of a per-integer Python loop.
    m = idx.copy()
    mu = np.ones(n + 1, dtype=np.int8)
    phi = np.ones(n + 1, dtype=np.int64)
    last_p = np.zeros(n + 1, dtype=np.int64)
    mu[0] = 0
    phi[0] = 0
    active = np.nonzero(m > 1)[0]
    while active.size:
        p = spf[m[active]]
        repeated = last_p[active] == p
        rep_idx = active[repeated]
        new_idx = active[~repeated]
        phi[rep_idx] *= p[repeated]
        mu[rep_idx] = 0
        phi[new_idx] *= p[~repeated] - 1
        mu[new_idx] = -mu[new_idx]
        last_p[active] = p
        m[active] //= p
        active = active[m[active] > 1]

    vm = np.zeros(n + 1, dtype=np.float64)
    primes = idx[(spf == idx) & (idx >= 2)]
    vm[primes] = np.log(primes.astype(np.float64))
    k = 2
    while (1 << k) <= n:
        root = int(round(n ** (1.0 / k))) + 2
        base = primes[primes <= root]
        powers = base**k
        ok = (powers > 0) & (powers <= n)
        vm[powers[ok]] = np.log(base[ok].astype(np.float64))
        k += 1

    return SieveTables(limit=n, mobius=mu, totient=phi, vonmangoldt=vm, spf=spf)


def save_sieve(tables: SieveTables, path: str | Path) -> None:
    """Write tables in the binary cache format.

    Layout: magic ``HBG1``, unsigned 64-bit little-endian limit, then the four
    arrays (each limit + 1 entries, 64-bit little-endian): mu signed, phi
    unsigned, Lambda as IEEE-754 doubles, spf unsigned.
    """
    path = Path(path)
    with open(path, "wb") as fh:
        fh.write(_CACHE_MAGIC)
        fh.write(struct.pack("<Q", tables.limit))
        fh.write(tables.mobius.astype("<i8").tobytes())
        fh.write(tables.totient.astype("<u8").tobytes())
        fh.write(tables.vonmangoldt.astype("<f8").tobytes())
        fh.write(tables.spf.astype("<u8").tobytes())


def load_sieve(path: str | Path) -> SieveTables:
    """Read tables written by :func:`save_sieve`; raises ValueError on corruption."""
    path = Path(path)
    raw = path.read_bytes()
    if raw[:4] != _CACHE_MAGIC:
        raise ValueError(f"{path}: bad magic {raw[:4]!r}")
    (limit,) = struct.unpack_from("<Q", raw, 4)
    count = limit + 1
    need = 4 + 8 + 4 * 8 * count
    if len(raw) != need:
        raise ValueError(f"{path}: expected {need} bytes for limit {limit}, got {len(raw)}")
    off = 12

    def take(dtype):
        nonlocal off
        arr = np.frombuffer(raw, dtype=dtype, count=count, offset=off)
        off += 8 * count
        return arr

    mobius = take("<i8").astype(np.int8)
    totient = take("<u8").astype(np.int64)
    vonmangoldt = take("<f8").astype(np.float64)
    spf = take("<u8").astype(np.int64)
    return SieveTables(limit=int(limit), mobius=mobius, totient=totient,
                       vonmangoldt=vonmangoldt, spf=spf)


def factorize(n: int) -> FactorList:
    """Trial-division factorization of n >= 1."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return FactorList(n=n, factors=out)


def divisors(n: int) -> list[int]:
    """All divisors of n >= 1, ascending."""
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def rad(n: int) -> int:
    """Squarefree kernel prod_{p | n} p; rad(1) = 1."""
    out = 1
    for p, _ in factorize(n).factors:
        out *= p
    return out


def tau(n: int) -> int:
    """Number of divisors."""
    out = 1
    for _, e in factorize(n).factors:
        out *= e + 1
    return out


def omega(n: int) -> int:
    """Number of distinct prime factors."""
    return len(factorize(n).factors)


def vp(n: int, p: int) -> int:
    """p-adic valuation of n >= 1 at a prime p."""
    if p < 2:
        raise ValueError(f"vp needs a prime p >= 2, got {p}")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def mobius_int(n: int) -> int:
    """mu(n) for a single integer (no sieve)."""
    out = 1
    for _, e in factorize(n).factors:
        if e > 1:
            return 0
        out = -out
    return out


def totient_int(n: int) -> int:
    """phi(n) for a single integer (no sieve)."""
    out = n
    for p, _ in factorize(n).factors:
        out -= out // p
    return out


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n).factors)


def ramanujan_sum(q: int, n: int) -> int:
    """c_q(n) by the exact divisor formula sum_{d | (q,n)} mu(q/d) d.

    Args:
        q: modulus >= 1.
        n: any integer; only n mod q matters and c_q(-n) = c_q(n).

    Returns:
        The integer value of the Ramanujan sum.
    """
    if q < 1:
        raise ValueError(f"ramanujan_sum needs q >= 1, got {q}")
    g = gcd(q, n)  # gcd(q, 0) == q covers q | n
    total = 0
    for d in divisors(g):
        mu = mobius_int(q // d)
        if mu:
            total += mu * d
    return total


def ramanujan_sum_direct(q: int, n: int) -> complex:
    """c_q(n) by the defining exponential sum over residues coprime to q.

    Floating-point oracle for :func:`ramanujan_sum`; the imaginary part is
    zero up to roundoff because the coprime residues pair up as a <-> q - a.
    """
    if q < 1:
        raise ValueError(f"ramanujan_sum_direct needs q >= 1, got {q}")
    a = np.arange(1, q + 1)
    a = a[np.gcd(a, q) == 1]
    return complex(np.exp(-2j * np.pi * a * (n % q) / q).sum())


def ramanujan_table(q: int) -> np.ndarray:
    """Int64 array T with T[r] = c_q(r) for r in [0, q)."""
    g = np.gcd(np.arange(q, dtype=np.int64), q)
    lookup = {d: ramanujan_sum(q, d) for d in divisors(q)}
    return np.array([lookup[int(x)] for x in g], dtype=np.int64)


def real_character(q0: int, n: int) -> int:
    """Jacobi symbol (n | q0) for odd squarefree q0 >= 1.

    Completely multiplicative in n, periodic with period q0, and zero exactly
    on gcd(n, q0) > 1.  Moduli that are even or carry a square factor are
    rejected: those do not define the intended real character.
    """
    if q0 < 1 or q0 % 2 == 0:
        raise ValueError(f"real_character needs odd q0 >= 1, got {q0}")
    if not is_squarefree(q0):
        raise ValueError(f"real_character needs squarefree q0, got {q0}")
    a = n % q0
    q = q0
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if q % 8 in (3, 5):
                result = -result
        a, q = q, a
        if a % 4 == 3 and q % 4 == 3:
            result = -result
        a %= q
    return result if q == 1 else 0


def character_table(q0: int, length: int) -> np.ndarray:
    """chi_{q0}(n) for n = 0 .. length - 1 as an int8 array."""
    period = np.array([real_character(q0, r) for r in range(q0)], dtype=np.int8)
    reps = (length + q0 - 1) // q0
    return np.tile(period, reps)[:length]
