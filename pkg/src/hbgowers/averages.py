"""Weighted averages along orbits and the U^s transfer inequalities.

Orbits are finite sequences (f_n)_{n <= N} from three shipped systems:

    rotation(alpha, x):  f_n = e(x + n alpha)
    doubling(x):         f_n = e(frac(2^n x)), with x held as an exact
                         fixed-point integer of N + 64 fractional bits so the
                         shift never runs out of digits (iterating 2x mod 1
                         in doubles dies after 52 steps; a fixed 1024-bit pool
                         dies after 1024)
    signs(seed):         f_n = +-1 from a splitmix64 stream, reproducible
                         bit-for-bit across platforms

The modulated average E_{n<=N} w(n) e(n theta) f_n is scanned over the grid
theta_j = j / (K N) by one zero-padded FFT; the grid sup sits within
Lip / (2KN) of the true sup, Lip = (2 pi / N) sum_n n |w(n) f_n|, an O(1/K)
error reported with each result.

Inequalities (lhs and rhs both computed with exact interval normalizers):

    u2:      E_{x in [2N]} |E_n f(x-n) w(n)|^2        <= ||w||_{U^2[N]}^2
    u3mod:   E_x sup_theta |E_n w(n) f(x-n) e(n theta)|^4  <= C3 ||w||_{U^3[N]}^4
    u4conv:  E_x |E_n f(x-n) w(n)|^4                  <= C4 ||w||_{U^3[N]}^4
    rtt:     E_x |E_y |E_n w(n) f(x-n) g_x(y-n)|^2|^2 <= CR ||w||_{U^3[N]}^4
    double:  E_x |E_n w(n) f(x-n) g(x+n)|^2           <= CD ||w||_{U^3[N]}^2

The u2 constant is 1 (the Hausdorff-Young chain closes at sqrt(2/3)/2 < 1
with these normalizers); C3, C4, CR, CD are measured by the calibration
sweep in scripts/calibrate_ineq.py and frozen in calibration.py.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from hbgowers.gowers import Series, gowers_normalized
from hbgowers.hb_model import Weight, hb_period, lambda_Q

_SPLITMIX_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


@dataclass
class SystemDescriptor:
    """One of the shipped measure-preserving systems plus its parameters."""

    kind: str  # "rotation" | "doubling" | "signs"
    params: dict = field(default_factory=dict)
    observable: str = "e"  # point-to-complex map tag; "identity" for signs

    def label(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.kind}:{inner}"


@dataclass
class OrbitSequence:
    """Observable values f_1 .. f_N along one orbit."""

    values: np.ndarray
    system: SystemDescriptor

    @property
    def length(self) -> int:
        return self.values.shape[0]


def rotation(alpha: float, x: float = 0.0) -> SystemDescriptor:
    return SystemDescriptor(kind="rotation", params={"alpha": alpha, "x": x})


def doubling(x: str | float = "sqrt2") -> SystemDescriptor:
    return SystemDescriptor(kind="doubling", params={"x": x})


def random_signs(seed: int) -> SystemDescriptor:
    return SystemDescriptor(kind="signs", params={"seed": int(seed)},
                            observable="identity")


def splitmix64(seed: int, count: int) -> np.ndarray:
    """First ``count`` outputs of the splitmix64 stream as uint64."""
    idx = np.arange(1, count + 1, dtype=np.uint64)
    z = (np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + idx * _SPLITMIX_GAMMA).astype(np.uint64)
    z ^= z >> np.uint64(30)
    z *= _MIX1
    z ^= z >> np.uint64(27)
    z *= _MIX2
    z ^= z >> np.uint64(31)
    return z


def _doubling_fixed_point(x: str | float, bits: int) -> int:
    """frac(x) as a big integer X with ``bits`` fractional bits."""
    if isinstance(x, str):
        name = x.strip()
        if name == "sqrt2":
            return isqrt(1 << (2 * bits + 1)) - (1 << bits)
        if name == "sqrt3":
            return isqrt(3 << (2 * bits)) - (1 << bits)
        if name == "sqrt5":
            return isqrt(5 << (2 * bits)) - (2 << bits)
        if name == "golden":
            return (isqrt(5 << (2 * bits)) - (1 << bits)) >> 1
        if "/" in name:
            p_str, q_str = name.split("/")
            p, q = int(p_str), int(q_str)
            if q <= 0:
                raise ValueError(f"invalid rational {name}")
            return ((p % q) << bits) // q
        x = float(name)
    frac = float(x) % 1.0
    return int(frac * (1 << 53)) << (bits - 53)


def orbit(system: SystemDescriptor, N: int) -> OrbitSequence:
    """Evaluate the observable along the first N orbit points."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if system.kind == "rotation":
        alpha = float(system.params["alpha"])
        x0 = float(system.params.get("x", 0.0))
        n = np.arange(1, N + 1, dtype=np.float64)
        vals = np.exp(2j * np.pi * ((x0 + n * alpha) % 1.0))
    elif system.kind == "doubling":
        bits = 8 * ((N + 71) // 8)  # N + 64 rounded up to a byte boundary
        X = _doubling_fixed_point(system.params.get("x", "sqrt2"), bits)
        # exact left alignment (bits is a multiple of 8) plus right padding
        data = X.to_bytes(bits // 8, "big") + b"\x00" * 9
        win = np.empty(N, dtype=np.uint64)
        for n in range(1, N + 1):
            k, r = n >> 3, n & 7
            chunk = int.from_bytes(data[k : k + 9], "big")
            win[n - 1] = (chunk >> (8 - r)) & 0xFFFFFFFFFFFFFFFF
        vals = np.exp(2j * np.pi * (win.astype(np.float64) / 2.0**64))
    elif system.kind == "signs":
        z = splitmix64(int(system.params["seed"]), N)
        vals = (1.0 - 2.0 * (z >> np.uint64(63)).astype(np.float64)).astype(complex)
    else:
        raise ValueError(f"unknown system kind {system.kind!r}")
    return OrbitSequence(values=vals, system=system)


@dataclass
class WWResult:
    """Grid supremum of the modulated average and its location."""

    N: int
    oversample: int
    theta_star: float
    sup_modulus: float
    grid_error_bound: float


def ww_average(w: Weight, f: OrbitSequence, theta: float, N: int) -> complex:
    """E_{n <= N} w(n) e(n theta) f_n."""
    if N > w.length or N > f.length:
        raise ValueError(f"need weight and orbit of length >= N={N}")
    n = np.arange(1, N + 1, dtype=np.float64)
    return complex(np.mean(w.values[:N] * f.values[:N] * np.exp(2j * np.pi * theta * n)))


def ww_sup_grid(w: Weight, f: OrbitSequence, N: int, oversample: int = 8) -> WWResult:
    """Max over theta_j = j/(KN) of |E_{n<=N} w(n) e(n theta_j) f_n|.

    One inverse FFT of length K N evaluates every grid frequency; K >= 2
    keeps the grid finer than the trig-polynomial degree.
    """
    if oversample < 2:
        raise ValueError(f"oversample must be >= 2, got {oversample}")
    if N > w.length or N > f.length:
        raise ValueError(f"need weight and orbit of length >= N={N}")
    x = w.values[:N] * f.values[:N]
    L = oversample * N
    padded = np.zeros(L, dtype=complex)
    padded[1 : N + 1] = x  # entry n carries e(n theta) after the transform
    spectrum = np.fft.ifft(padded) * L  # S_j = sum_n x_n e(+2 pi i n j / L)
    mods = np.abs(spectrum) / N
    j_star = int(np.argmax(mods))
    n = np.arange(1, N + 1, dtype=np.float64)
    lip = 2.0 * np.pi * float(np.sum(n * np.abs(x))) / N
    return WWResult(N=N, oversample=oversample, theta_star=j_star / L,
                    sup_modulus=float(mods[j_star]),
                    grid_error_bound=lip / (2.0 * L))


def lq_average_periodic(Q: int, f: OrbitSequence, theta: float, N: int) -> complex:
    """E_{n<=N} Lambda_Q(n) e(n theta) f_n via the period decomposition.

    Splits n = m + jP, P = P_Q: the weight factor Lambda_Q(m) e(m theta) is
    tabulated on one period (O(P) weight evaluations instead of O(N)) and the
    block phases e(j P theta) close the sum in one pass over the data.
    """
    if N > f.length:
        raise ValueError(f"orbit shorter than N={N}")
    P = hb_period(Q)
    w_period = lambda_Q(Q, P).values
    m = np.arange(1, P + 1, dtype=np.float64)
    w_theta = w_period * np.exp(2j * np.pi * theta * m)
    blocks = (N + P - 1) // P
    padded = np.zeros(blocks * P, dtype=complex)
    padded[:N] = f.values[:N]
    grid = padded.reshape(blocks, P)
    row = grid @ w_theta
    j = np.arange(blocks, dtype=np.float64)
    return complex(np.sum(row * np.exp(2j * np.pi * theta * P * j)) / N)


def rtt_average(w: Weight, f: OrbitSequence, g: OrbitSequence, N: int) -> complex:
    """Finite return-times pairing E_{n <= N} w(n) f_n g_n of two orbits."""
    if N > w.length or N > f.length or N > g.length:
        raise ValueError(f"need weight and both orbits of length >= N={N}")
    return complex(np.mean(w.values[:N] * f.values[:N] * g.values[:N]))


# ---------------------------------------------------------------------------
# transfer inequalities


@dataclass
class IneqResult:
    name: str
    N: int
    lhs: float
    rhs: float

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs else np.inf


def _fft_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = len(a) + len(b) - 1
    size = 1 << n.bit_length()
    out = np.fft.ifft(np.fft.fft(a, size) * np.fft.fft(b, size))[:n]
    if not (np.iscomplexobj(a) or np.iscomplexobj(b)):
        return out.real
    return out


def _norm_pow(w: np.ndarray, N: int, s: int, power: int) -> float:
    res = gowers_normalized(Series(np.asarray(w), offset=1), N, s)
    return float(res.normalized**power)


def ineq_u2(f: np.ndarray, w: np.ndarray, N: int) -> IneqResult:
    """E_{x in [2N]} |E_n f(x-n) w(n)|^2 against ||w||^2_{U^2[N]}; constant 1."""
    f, w = np.asarray(f), np.asarray(w)
    conv = _fft_convolve(f[:N], w[:N])  # x = 2 .. 2N
    lhs = float(np.sum(np.abs(conv / N) ** 2) / (2 * N))
    return IneqResult("u2", N, lhs, _norm_pow(w[:N], N, 2, 2))


def _shift_matrix(f: np.ndarray, N: int, xs: np.ndarray) -> np.ndarray:
    """Rows u_x(n) = f(x - n), n = 1..N, for 1-based x in xs; zero outside [N]."""
    fpad = np.zeros(2 * N + 2, dtype=f.dtype)
    fpad[1 : N + 1] = f[:N]
    idx = xs[:, None] - np.arange(1, N + 1)[None, :]
    idx = np.where((idx >= 1) & (idx <= N), idx, 2 * N + 1)
    return fpad[idx]


def ineq_u3_modulated(f: np.ndarray, w: np.ndarray, N: int,
                      oversample: int = 4) -> IneqResult:
    """Adversarially modulated fourth-moment control by ||w||^4_{U^3[N]}.

    The inner sup picks, for every x separately, the grid frequency
    maximizing |E_n w(n) f(x-n) e(n theta)| -- the worst theta(x) the bound
    must absorb.
    """
    f, w = np.asarray(f), np.asarray(w)
    L = oversample * N
    acc = 0.0
    for lo in range(1, 2 * N + 1, 256):
        xs = np.arange(lo, min(lo + 256, 2 * N + 1))
        rows = _shift_matrix(f, N, xs) * w[None, :N]
        padded = np.zeros((rows.shape[0], L), dtype=complex)
        padded[:, 1 : N + 1] = rows
        sup = np.max(np.abs(np.fft.ifft(padded, axis=1) * L), axis=1) / N
        acc += float(np.sum(sup**4))
    lhs = acc / (2 * N)
    return IneqResult("u3mod", N, lhs, _norm_pow(w[:N], N, 3, 4))


def ineq_u4_convolution(f: np.ndarray, w: np.ndarray, N: int) -> IneqResult:
    """Plain fourth-moment of the convolution against ||w||^4_{U^3[N]}."""
    f, w = np.asarray(f), np.asarray(w)
    conv = _fft_convolve(f[:N], w[:N])
    lhs = float(np.sum(np.abs(conv / N) ** 4) / (2 * N))
    return IneqResult("u4conv", N, lhs, _norm_pow(w[:N], N, 3, 4))


def ineq_rtt(f: np.ndarray, w: np.ndarray, g_family: np.ndarray, N: int) -> IneqResult:
    """Return-times control: E_x |E_y |E_n w(n) f(x-n) g_x(y-n)|^2|^2.

    ``g_family`` holds one 1-bounded row g_x per x in [2N] (shape (2N, N)).
    """
    f, w = np.asarray(f), np.asarray(w)
    g_family = np.asarray(g_family)
    if g_family.shape != (2 * N, N):
        raise ValueError(f"g_family must have shape (2N, N) = {(2 * N, N)}")
    xs = np.arange(1, 2 * N + 1)
    u = _shift_matrix(f, N, xs) * w[None, :N]  # rows u_x
    size = 1 << (2 * N - 1).bit_length()
    U = np.fft.fft(u, size, axis=1)
    G = np.fft.fft(g_family, size, axis=1)
    conv = np.fft.ifft(U * G, axis=1)[:, : 2 * N - 1]  # index y-2 over y = 2..2N
    inner = np.sum(np.abs(conv[:, : N - 1] / N) ** 2, axis=1) / N  # y <= N
    lhs = float(np.mean(inner**2))
    return IneqResult("rtt", N, lhs, _norm_pow(w[:N], N, 3, 4))


def ineq_double_recurrence(f: np.ndarray, g: np.ndarray, w: np.ndarray,
                           N: int) -> IneqResult:
    """Double recurrence: E_x |E_n w(n) f(x-n) g(x+n)|^2 vs ||w||^2_{U^3[N]}."""
    f, g, w = np.asarray(f), np.asarray(g), np.asarray(w)
    acc = np.zeros(2 * N + 1, dtype=complex)  # index x = 0 .. 2N
    for n in range(1, N // 2 + 1):
        lo, hi = n + 1, N - n
        if lo > hi:
            break
        x = np.arange(lo, hi + 1)
        acc[lo : hi + 1] += w[n - 1] * f[x - n - 1] * g[x + n - 1]
    lhs = float(np.sum(np.abs(acc[1:] / N) ** 2) / (2 * N))
    return IneqResult("double", N, lhs, _norm_pow(w[:N], N, 3, 2))


def sparse_scales(epsilon: float, n_max: int, n_min: int = 1) -> list[int]:
    """Fluctuation grid ceil((1 + epsilon^{1/3})^k), deduplicated, within range."""
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    base = 1.0 + epsilon ** (1.0 / 3.0)
    out: list[int] = []
    val = 1.0
    while True:
        n = int(np.ceil(val))
        if n > n_max:
            break
        if n >= n_min and (not out or n > out[-1]):
            out.append(n)
        val *= base
    return out
