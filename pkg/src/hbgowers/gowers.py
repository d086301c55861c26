"""Gowers uniformity norms U^s (s <= 3) for finitely supported series.

For f: Z -> C with finite support, the multiplicative difference operator is
Delta_h f(x) = f(x) * conj(f(x + h)), iterated as
Delta_{h_1,...,h_s} = Delta_{h_s}(Delta_{h_1,...,h_{s-1}}), and

    ||f||_{U^s(Z)}^{2^s} = sum_{x, h_1..h_s} Delta_{h_1..h_s} f(x)
                         = sum_{x, h} prod_{w in {0,1}^s} C^{|w|} f(x + w.h),

a nonnegative real.  The interval-normalized norm divides by the same raw
functional on the indicator 1_{[N]} before taking the 2^s-th root, so that
||1_{[N]}||_{U^s[N]} == 1 holds exactly (same code path, same floats).

Fast paths:
    * U^2 raw = sum_h |A_f(h)|^2 with A_f the autocorrelation; evaluated as
      (1/n) sum_j |fhat_j|^4 on a zero-padded length-n FFT (exact Parseval
      identity once n >= 2L - 1).
    * U^3 raw = sum_{h} U^2raw(Delta_h f), batched FFTs over h, one FFT
      length for every h so padding never changes the value.

The brute-force evaluator walks the h-tuples of the definition literally and
is the oracle the fast paths are tested against.

Modulation invariance anchor: the raw U^3 functional is unchanged under
f(n) -> f(n) e(alpha n^2 + beta n + gamma), since every second difference of
a quadratic phase cancels in the 8-fold product.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

_BRUTE_LEN_MAX = {1: 8192, 2: 2048, 3: 128}
_CYCLIC_P_MAX = 4096
_CYCLIC_BRUTE_P_MAX = 32
_GCS_LEN_MAX = 32


@dataclass
class Series:
    """Finitely supported f: Z -> C; values[i] is f(offset + i)."""

    values: np.ndarray
    offset: int = 1

    def __post_init__(self):
        self.values = np.asarray(self.values)
        if self.values.ndim != 1:
            raise ValueError("Series values must be one-dimensional")

    @property
    def length(self) -> int:
        return self.values.shape[0]

    def total(self) -> complex:
        return complex(self.values.sum()) if self.length else 0.0 + 0.0j


@dataclass
class GowersResult:
    """Raw functional, 1_{[N]} normalizer, and the normalized norm value.

    ``normalized`` is (raw / normalizer) ** (1 / 2^s); the pre-root ratio is
    kept as :attr:`ratio`.
    """

    s: int
    raw: float
    normalizer: float
    normalized: float

    @property
    def ratio(self) -> float:
        return self.raw / self.normalizer


def diff_op(f: Series, h: int) -> Series:
    """Delta_h f(x) = f(x) * conj(f(x + h)); possibly empty when |h| >= length."""
    L = f.length
    if h >= 0:
        if h >= L:
            return Series(np.empty(0, dtype=complex), f.offset)
        return Series(f.values[: L - h] * np.conj(f.values[h:]), f.offset)
    k = -h
    if k >= L:
        return Series(np.empty(0, dtype=complex), f.offset)
    return Series(f.values[k:] * np.conj(f.values[: L - k]), f.offset + k)


def _check_s(s: int) -> None:
    if s not in (1, 2, 3):
        raise ValueError(f"s must be 1, 2 or 3, got {s}")


def gowers_raw_bruteforce(f: Series, s: int) -> float:
    """Literal evaluation of the raw U^s functional from the definition.

    Walks h_1, ..., h_{s-1} explicitly (every integer shift with any support
    overlap) and closes the innermost (x, h_s) double sum through the exact
    index substitution sum_{x,h} g(x) conj g(x+h) = |sum_x g(x)|^2, which
    keeps every term of the definition and introduces no transform machinery.
    O(L^{s+1}) work; guarded accordingly.
    """
    _check_s(s)
    L = f.length
    if L == 0:
        return 0.0
    if L > _BRUTE_LEN_MAX[s]:
        raise ValueError(f"brute force at s={s} limited to length {_BRUTE_LEN_MAX[s]}, got {L}")
    if s == 1:
        return abs(f.total()) ** 2
    total = 0.0
    for h1 in range(-(L - 1), L):
        g1 = diff_op(f, h1)
        if s == 2:
            total += abs(g1.total()) ** 2
            continue
        L1 = g1.length
        for h2 in range(-(L1 - 1), L1):
            g2 = diff_op(g1, h2)
            total += abs(g2.total()) ** 2
    return float(total)


def _abs_pow4_spectrum(values: np.ndarray, n: int) -> float:
    """(1/n) * sum_j |FFT_n(values)_j|^4 using rfft when the input is real."""
    if np.iscomplexobj(values):
        spec = np.abs(np.fft.fft(values, n))
        return float(np.sum(spec**4) / n)
    spec = np.abs(np.fft.rfft(values, n))
    pw = spec**4
    # rfft halves the spectrum; interior bins appear twice in the full sum
    interior = pw[1 : -1 if n % 2 == 0 else None]
    return float((pw[0] + (pw[-1] if n % 2 == 0 else 0.0) + 2.0 * interior.sum()) / n)


def _fft_length(L: int) -> int:
    return 1 << max(1, (2 * L - 1)).bit_length()


def gowers_u2_fast(f: Series) -> float:
    """Raw U^2 functional sum_h |A_f(h)|^2 via one zero-padded FFT."""
    L = f.length
    if L == 0:
        return 0.0
    return _abs_pow4_spectrum(f.values, _fft_length(L))


def _u3_row_batch(values: np.ndarray, hs: np.ndarray, n: int) -> np.ndarray:
    """Per-h raw U^2 of Delta_h(values) for a batch of nonnegative shifts."""
    L = values.shape[0]
    rows = np.zeros((hs.shape[0], L), dtype=values.dtype)
    for i, h in enumerate(hs):
        rows[i, : L - h] = values[: L - h] * np.conj(values[h:])
    if np.iscomplexobj(rows):
        spec = np.abs(np.fft.fft(rows, n, axis=1))
        return np.sum(spec**4, axis=1) / n
    spec = np.abs(np.fft.rfft(rows, n, axis=1))
    pw = spec**4
    if n % 2 == 0:
        return (pw[:, 0] + pw[:, -1] + 2.0 * pw[:, 1:-1].sum(axis=1)) / n
    return (pw[:, 0] + 2.0 * pw[:, 1:].sum(axis=1)) / n


def gowers_u3_fast(f: Series, workers: int = 1) -> float:
    """Raw U^3 functional sum_h U^2raw(Delta_h f), batched FFTs, O(L^2 log L).

    Work is split over nonnegative shifts only (U^2raw(Delta_{-h} f) equals
    U^2raw(Delta_h f): Delta_{-h} f is a conjugated translate of Delta_h f).
    Per-h values land in a preallocated array and are reduced in fixed order,
    so the result is bitwise identical for any ``workers``.
    """
    L = f.length
    if L == 0:
        return 0.0
    values = f.values
    if not np.iscomplexobj(values):
        values = values.astype(np.float64)
    n = _fft_length(L)
    per_h = np.zeros(L, dtype=np.float64)
    batch = max(1, (1 << 22) // n)
    chunks = [np.arange(lo, min(lo + batch, L)) for lo in range(0, L, batch)]

    def run(chunk: np.ndarray) -> None:
        per_h[chunk] = _u3_row_batch(values, chunk, n)

    if workers <= 1 or len(chunks) == 1:
        for chunk in chunks:
            run(chunk)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, chunks))
    return float(per_h[0] + 2.0 * np.sum(per_h[1:]))


def gowers_raw_fast(f: Series, s: int, workers: int = 1) -> float:
    _check_s(s)
    if s == 1:
        return abs(f.total()) ** 2
    if s == 2:
        return gowers_u2_fast(f)
    return gowers_u3_fast(f, workers=workers)


@lru_cache(maxsize=64)
def interval_normalizer(N: int, s: int) -> float:
    """Raw U^s functional of 1_{[N]}, computed by the same fast path."""
    return gowers_raw_fast(Series(np.ones(N, dtype=np.float64)), s)


def gowers_normalized(f: Series, N: int, s: int, workers: int = 1) -> GowersResult:
    """Interval-normalized ||f||_{U^s[N]} for f supported in a length-N window."""
    _check_s(s)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if f.length > N:
        raise ValueError(f"series length {f.length} exceeds normalization window N={N}")
    raw = gowers_raw_fast(f, s, workers=workers)
    normalizer = interval_normalizer(N, s)
    return GowersResult(s=s, raw=raw, normalizer=normalizer,
                        normalized=(raw / normalizer) ** (1.0 / (1 << s)))


def gowers_cyclic(values: np.ndarray, s: int) -> float:
    """||f||_{U^s(Z_P)} for one period of a P-periodic f, expectation form.

    E_{x,h_1..h_s in Z_P} of the 2^s-fold product, then the 2^s-th root; the
    constant function 1 comes out exactly 1.  s=2 is sum_k |fhat(k)|^4 with
    the expectation-normalized DFT; s=3 averages the s=2 value of the cyclic
    Delta_h f over h in Z_P (O(P^2 log P), guarded at P = 4096).
    """
    _check_s(s)
    v = np.asarray(values, dtype=complex)
    P = v.shape[0]
    if P < 1:
        raise ValueError("need at least one period value")
    if P > _CYCLIC_P_MAX:
        raise ValueError(f"cyclic norm guarded at P <= {_CYCLIC_P_MAX}, got {P}")
    if s == 1:
        return float(abs(v.mean()))
    if s == 2:
        spec = np.abs(np.fft.fft(v)) / P
        return float(np.sum(spec**4) ** 0.25)
    acc = 0.0
    block = max(1, (1 << 21) // P)
    for lo in range(0, P, block):
        hs = np.arange(lo, min(lo + block, P))
        idx = (np.arange(P)[None, :] + hs[:, None]) % P
        rows = v[None, :] * np.conj(v[idx])
        spec = np.abs(np.fft.fft(rows, axis=1)) / P
        acc += float(np.sum(spec**4))
    return float((acc / P) ** (1.0 / 8.0))


def gowers_cyclic_bruteforce(values: np.ndarray, s: int) -> float:
    """Literal O(P^{s+1}) cyclic expectation; oracle for :func:`gowers_cyclic`."""
    _check_s(s)
    v = np.asarray(values, dtype=complex)
    P = v.shape[0]
    if P > _CYCLIC_BRUTE_P_MAX:
        raise ValueError(f"cyclic brute force guarded at P <= {_CYCLIC_BRUTE_P_MAX}, got {P}")
    total = 0.0 + 0.0j
    shifts = range(P)
    for tup in _tuples(shifts, s):
        prod = np.ones(P, dtype=complex)
        for mask in range(1 << s):
            shift = sum(tup[i] for i in range(s) if mask >> i & 1)
            term = np.roll(v, -shift % P)
            if bin(mask).count("1") % 2:
                term = np.conj(term)
            prod = prod * term
        total += prod.sum()
    return float(max(total.real, 0.0) / P ** (s + 1)) ** (1.0 / (1 << s))


def _tuples(rng, s):
    if s == 1:
        return ((h,) for h in rng)
    if s == 2:
        return ((h1, h2) for h1 in rng for h2 in rng)
    return ((h1, h2, h3) for h1 in rng for h2 in rng for h3 in rng)


def quadratic_phase(f: Series, alpha: float, beta: float, gamma: float = 0.0) -> Series:
    """f(n) * e(alpha n^2 + beta n + gamma) on the same support."""
    n = f.offset + np.arange(f.length, dtype=np.float64)
    phase = np.exp(2j * np.pi * (alpha * n * n + beta * n + gamma))
    return Series(f.values * phase, f.offset)


def gcs_inner(family: list[Series], s: int) -> complex:
    """Multilinear box inner product sum_{x,h} prod_w C^{|w|} f_w(x + w.h).

    ``family`` lists the 2^s series indexed by the vertex w with
    index = w_1 + 2 w_2 (+ 4 w_3).  Brute force; supports length <= 32.
    The Cauchy-Schwarz bound |<(f_w)>| <= prod_w rawU^s(f_w)^{1/2^s} is the
    property tests hold it to.
    """
    if s not in (2, 3):
        raise ValueError(f"gcs_inner supports s in {{2, 3}}, got {s}")
    if len(family) != (1 << s):
        raise ValueError(f"need {1 << s} series for s={s}, got {len(family)}")
    if any(f.length > _GCS_LEN_MAX for f in family):
        raise ValueError(f"gcs_inner guarded at length <= {_GCS_LEN_MAX}")
    if any(f.length == 0 for f in family):
        return 0.0 + 0.0j
    lo = min(f.offset for f in family)
    hi = max(f.offset + f.length for f in family)
    span = hi - lo
    total = 0.0 + 0.0j
    for tup in _tuples(range(-span, span + 1), s):
        # x must satisfy x + w.tup inside supp f_w for every vertex w
        x_lo, x_hi = lo - 2 * span, hi + 2 * span
        for w in range(1 << s):
            shift = sum(tup[i] for i in range(s) if w >> i & 1)
            f = family[w]
            x_lo = max(x_lo, f.offset - shift)
            x_hi = min(x_hi, f.offset + f.length - shift)
        if x_lo >= x_hi:
            continue
        prod = np.ones(x_hi - x_lo, dtype=complex)
        for w in range(1 << s):
            shift = sum(tup[i] for i in range(s) if w >> i & 1)
            f = family[w]
            start = x_lo + shift - f.offset
            seg = f.values[start : start + (x_hi - x_lo)]
            if bin(w).count("1") % 2:
                seg = np.conj(seg)
            prod = prod * seg
        total += prod.sum()
    return complex(total)
