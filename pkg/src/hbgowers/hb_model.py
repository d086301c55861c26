"""Heath-Brown style Ramanujan-sum models for the von Mangoldt weight.

The dyadic block weight and its running total are

    Lambda_Q(n)    = sum_{Q/2 < q <= Q} (mu(q) / phi(q)) c_q(n),
    Lambda_{<=T}   = sum_{Q <= T dyadic} Lambda_Q        (Q = 1 included)
                   = sum_{q <= T} (mu(q) / phi(q)) c_q(n)   for T a power of two.

Lambda_Q is periodic with period P_Q = lcm(Q/2 < q <= Q), has mean zero over
a full period for Q >= 2 (each c_q with q > 1 averages to zero), and mean one
for the trivial block Q = 1.

Expanding c_q by its divisor formula turns the running total into type-I
shape: Lambda_{<=Q}(n) = sum_{d | n} alpha_d with

    alpha_d = 1_{d <= Q} (d mu(d) / phi(d)) sum_{q <= Q/d, (q,d)=1} mu(q)^2 / phi(q),

an identity in Q that the tests verify with exact rationals.  A synthetic
Siegel-type twist multiplies a weight by (1 - n^{sigma-1} chi_{q0}(n)) with
chi the Jacobi character; progression sums of the twisted part have the
closed-form main term (1/phi(q)) chi(a) (N')^sigma / sigma on progressions
a mod q with q0 | q and (a, q) = 1.

Supporting exact identity: sum_{t | q} mu(t)^2 / phi(t) = q / phi(q).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm, log
from pathlib import Path

import numpy as np

from hbgowers.arith import (
    SieveTables,
    character_table,
    divisors,
    is_squarefree,
    mobius_int,
    ramanujan_table,
    totient_int,
)

_Q_MAX = 64  # period lcm fits comfortably; larger blocks are refused


@dataclass
class Weight:
    """Real weight sequence w(n) for n = start .. start + len(values) - 1."""

    label: str
    values: np.ndarray
    start: int = 1
    meta: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return self.values.shape[0]


@dataclass
class TwistParams:
    """Synthetic Siegel-type twist: modulus q0 (odd squarefree), sigma in (0, 1]."""

    q0: int
    sigma: float

    def __post_init__(self):
        if self.q0 < 1 or self.q0 % 2 == 0 or not is_squarefree(self.q0):
            raise ValueError(f"twist modulus must be odd squarefree, got {self.q0}")
        if not 0.0 < self.sigma <= 1.0:
            raise ValueError(f"sigma must lie in (0, 1], got {self.sigma}")


@dataclass
class HBModel:
    """Dyadic block structure up to T: block tops, periods, type-I coefficients."""

    T: int
    blocks: list[int]
    periods: dict[int, int]
    type1: dict[int, float]


def _check_dyadic(Q: int, name: str = "Q") -> None:
    if Q < 1 or Q & (Q - 1):
        raise ValueError(f"{name} must be a power of two >= 1, got {Q}")


def block_range(Q: int) -> range:
    """Integers in the dyadic block (Q/2, Q]."""
    _check_dyadic(Q)
    return range(Q // 2 + 1, Q + 1)


def hb_period(Q: int) -> int:
    """P_Q = lcm of the block (Q/2, Q]; P_1 = 1.  Refuses Q > 64."""
    _check_dyadic(Q)
    if Q > _Q_MAX:
        raise ValueError(f"period of block Q={Q} exceeds the supported range (Q <= {_Q_MAX})")
    return lcm(*block_range(Q)) if Q > 1 else 1


def lambda_Q(Q: int, N: int) -> Weight:
    """The block weight Lambda_Q on n = 1 .. N.

    Each q in the block contributes (mu(q)/phi(q)) c_q(n) through its exact
    integer residue table; term order is fixed (q ascending), so values at n
    and n + P_Q are bitwise equal.
    """
    _check_dyadic(Q)
    if Q > _Q_MAX:
        raise ValueError(f"block Q={Q} refused (Q <= {_Q_MAX})")
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    n = np.arange(1, N + 1, dtype=np.int64)
    out = np.zeros(N, dtype=np.float64)
    for q in block_range(Q):
        mu = mobius_int(q)
        if mu == 0:
            continue
        table = ramanujan_table(q).astype(np.float64)
        out += (mu / totient_int(q)) * table[n % q]
    return Weight(label=f"hb:Q={Q}", values=out, meta={"Q": Q, "period": hb_period(Q)})


def lambda_leq(T: int, N: int, workers: int = 1) -> Weight:
    """Running total Lambda_{<=T} on n = 1 .. N; T a power of two.

    Blocks are built independently (optionally in parallel) and summed in
    fixed dyadic order, so the output is bitwise identical for any
    ``workers``.
    """
    _check_dyadic(T, "T")
    if T > _Q_MAX:
        raise ValueError(f"T={T} refused (T <= {_Q_MAX})")
    blocks = dyadic_blocks(T)
    if workers <= 1 or len(blocks) == 1:
        parts = [lambda_Q(Q, N).values for Q in blocks]
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda Q: lambda_Q(Q, N).values, blocks))
    out = np.zeros(N, dtype=np.float64)
    for part in parts:
        out += part
    return Weight(label=f"hbsum:T={T}", values=out, meta={"T": T})


def lambda_leq_direct(T: int, N: int) -> np.ndarray:
    """Oracle path: sum_{q <= T} (mu(q)/phi(q)) c_q(n) without block structure."""
    _check_dyadic(T, "T")
    n = np.arange(1, N + 1, dtype=np.int64)
    out = np.zeros(N, dtype=np.float64)
    for q in range(1, T + 1):
        mu = mobius_int(q)
        if mu == 0:
            continue
        table = ramanujan_table(q).astype(np.float64)
        out += (mu / totient_int(q)) * table[n % q]
    return out


def dyadic_blocks(T: int) -> list[int]:
    """Block tops [1, 2, 4, ..., T] for T a power of two."""
    _check_dyadic(T, "T")
    return [1 << j for j in range(T.bit_length())]


def build_model(T: int) -> HBModel:
    blocks = dyadic_blocks(T)
    return HBModel(
        T=T,
        blocks=blocks,
        periods={Q: hb_period(Q) for Q in blocks},
        type1={d: float(a) for d, a in type1_coefficients_exact(T).items()},
    )


def type1_coefficients_exact(Q: int) -> dict[int, Fraction]:
    """Exact alpha_d for d <= Q (squarefree d only; others vanish)."""
    _check_dyadic(Q)
    out: dict[int, Fraction] = {}
    for d in range(1, Q + 1):
        mu_d = mobius_int(d)
        if mu_d == 0:
            continue
        inner = Fraction(0)
        for q in range(1, Q // d + 1):
            if gcd(q, d) == 1 and mobius_int(q) != 0:
                inner += Fraction(1, totient_int(q))
        out[d] = Fraction(d * mu_d, totient_int(d)) * inner
    return out


def type1_coefficients(Q: int) -> dict[int, float]:
    """alpha_d as floats; Lambda_{<=Q}(n) = sum_{d | n} alpha_d."""
    return {d: float(a) for d, a in type1_coefficients_exact(Q).items()}


def lambda_leq_type1(Q: int, N: int) -> np.ndarray:
    """Reconstruct Lambda_{<=Q} on [1, N] by divisor accumulation of alpha_d."""
    out = np.zeros(N + 1, dtype=np.float64)
    for d, alpha in type1_coefficients(Q).items():
        out[d::d] += alpha
    return out[1:]


def twist(w: Weight, params: TwistParams) -> Weight:
    """w(n) -> w(n) (1 - n^{sigma - 1} chi_{q0}(n))."""
    n = w.start + np.arange(w.length, dtype=np.float64)
    chi = character_table(params.q0, w.start + w.length)[w.start :].astype(np.float64)
    factor = 1.0 - n ** (params.sigma - 1.0) * chi
    meta = dict(w.meta, twist_q0=params.q0, twist_sigma=params.sigma)
    return Weight(label=f"{w.label}|twist:q={params.q0},sigma={params.sigma}",
                  values=w.values * factor, start=w.start, meta=meta)


def twisted_part(w: Weight, params: TwistParams) -> Weight:
    """The subtracted piece w(n) n^{sigma-1} chi_{q0}(n), kept for direct sums."""
    n = w.start + np.arange(w.length, dtype=np.float64)
    chi = character_table(params.q0, w.start + w.length)[w.start :].astype(np.float64)
    meta = dict(w.meta, twist_q0=params.q0, twist_sigma=params.sigma, part="twisted")
    return Weight(label=f"{w.label}|twistpart:q={params.q0},sigma={params.sigma}",
                  values=w.values * n ** (params.sigma - 1.0) * chi, start=w.start, meta=meta)


def vonmangoldt_weight(tables: SieveTables, N: int) -> Weight:
    if N > tables.limit:
        raise ValueError(f"sieve limit {tables.limit} < N={N}")
    return Weight(label="vonmangoldt", values=tables.vonmangoldt[1 : N + 1].copy(),
                  meta={"N": N})


def ap_sum(w: Weight, a: int, q: int, n_prime: int) -> float:
    """sum_{n <= n_prime, n = a mod q} w(n); requires 1 <= a <= q."""
    if not 1 <= a <= q:
        raise ValueError(f"need 1 <= a <= q, got a={a}, q={q}")
    if w.start != 1:
        raise ValueError("ap_sum expects weights starting at n = 1")
    if n_prime > w.length:
        raise ValueError(f"n_prime={n_prime} exceeds weight length {w.length}")
    return float(w.values[a - 1 : n_prime : q].sum())


def ap_main_term(a: int, q: int, n_prime: int) -> float:
    """N'/phi(q) on residues coprime to q, else 0."""
    if not 1 <= a <= q:
        raise ValueError(f"need 1 <= a <= q, got a={a}, q={q}")
    return n_prime / totient_int(q) if gcd(a, q) == 1 else 0.0


def ap_twisted_main_term(a: int, q: int, n_prime: int, params: TwistParams) -> float:
    """Closed-form main term (1/phi(q)) chi(a) (N')^sigma / sigma of the twisted part.

    Nonzero only when q0 | q (the character is constant on the progression)
    and (a, q) = 1.
    """
    if not 1 <= a <= q:
        raise ValueError(f"need 1 <= a <= q, got a={a}, q={q}")
    if q % params.q0 != 0 or gcd(a, q) != 1:
        return 0.0
    from hbgowers.arith import real_character

    chi_a = real_character(params.q0, a)
    return chi_a * n_prime**params.sigma / (params.sigma * totient_int(q))


def totient_divisor_identity(q: int) -> tuple[Fraction, Fraction]:
    """Exact (sum_{t | q} mu(t)^2 / phi(t), q / phi(q)); the two are equal."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    lhs = Fraction(0)
    for t in divisors(q):
        if mobius_int(t) != 0:
            lhs += Fraction(1, totient_int(t))
    return lhs, Fraction(q, totient_int(q))


def q_schedule(N: int) -> int:
    """Dyadic proxy scale 2^ceil(log2 exp((log N)^{1/10})) used for Lambda_{<=Q_N}."""
    if N < 3:
        return 1
    target = np.exp(log(N) ** 0.1)
    k = int(np.ceil(np.log2(target)))
    return max(1, 1 << k)


def moment(w: Weight, k: float) -> float:
    """E_{n} |w(n)|^k over the weight's support."""
    return float(np.mean(np.abs(w.values) ** k))


def export_weight(w: Weight, path: str | Path) -> None:
    """Write ``n,value`` CSV plus a JSON metadata sidecar (same stem)."""
    path = Path(path)
    n = w.start + np.arange(w.length)
    with open(path, "w") as fh:
        fh.write("n,value\n")
        for i in range(w.length):
            fh.write(f"{n[i]},{float(w.values[i])!r}\n")
    sidecar = path.with_suffix(".json")
    sidecar.write_text(json.dumps(
        {"label": w.label, "start": w.start, "length": w.length, "meta": w.meta},
        indent=2, sort_keys=True) + "\n")
