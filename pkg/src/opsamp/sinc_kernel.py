"""Exact sinc derivatives and the sampling-series coefficient families.

The derivative of a bandlimited function can be written as an absolutely
convergent series of shifted samples.  The weights of that series come from
derivatives of sinc at integer and half-integer points; this module evaluates
them through stable closed forms and packages a truncated slice of the series
(weights together with sample offsets) as a :class:`CoefficientTable`.

Two independent evaluation paths exist for every coefficient: a closed
polynomial-sum form (the canonical path) and direct differentiation of sinc.
They must agree to high relative accuracy, which the test-suite enforces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from .errors import BandwidthRangeError, DomainError, UnsupportedOrderError

#: Largest supported derivative order for :func:`sinc_derivative`.
MAX_DERIVATIVE_ORDER = 64


def _factorial(n: int) -> float:
    """n! as a float; exact below 21, via log-gamma above (no integer overflow)."""
    if n < 21:
        return float(math.factorial(n))
    return math.exp(math.lgamma(n + 1))


def sinc(x):
    """Normalized sinc: sin(pi x)/(pi x), extended by 1 at x = 0.

    Accepts a scalar or array; raises :class:`DomainError` on non-finite
    input.  Even, and bounded by 1 in absolute value.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("sinc requires finite input")
    out = np.sinc(arr)
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out


def _sinc_derivative_taylor(n: int, x: np.ndarray) -> np.ndarray:
    # n-th derivative of the Maclaurin series of sinc; converges everywhere,
    # used near 0 where the trigonometric closed form cancels catastrophically.
    # Extended precision keeps the alternating sum accurate for larger |x|.
    xl = x.astype(np.longdouble)
    pi_l = np.longdouble(np.pi)
    p0 = (n + 1) // 2
    # first nonzero term: p = p0, exponent 2*p0 - n in {0, 1}
    term = (
        ((-1.0) ** p0)
        * pi_l ** (2 * p0)
        * xl ** (2 * p0 - n)
        / np.longdouble((2 * p0 + 1) * _factorial(2 * p0 - n))
    )
    acc = term.copy()
    p = p0
    while p < p0 + 220:
        ratio = (
            -(pi_l * xl) ** 2
            * np.longdouble(2 * p + 1)
            / np.longdouble((2 * p + 3) * (2 * p - n + 2) * (2 * p - n + 1))
        )
        term = term * ratio
        acc += term
        p += 1
        if np.max(np.abs(term)) <= 1e-24 * max(np.max(np.abs(acc)), 1e-300):
            break
    return acc.astype(float)


def _sinc_derivative_closed(n: int, x: np.ndarray) -> np.ndarray:
    # Leibniz expansion of d^n/dx^n [sin(pi x) * 1/(pi x)]; stable away from 0.
    s = np.sin(np.pi * x)
    c = np.cos(np.pi * x)
    quadrant = (s, c, -s, -c)
    xinv = 1.0 / x
    xpow = xinv ** (n + 1)
    acc = np.zeros_like(x)
    for j in range(n + 1):
        coef = math.comb(n, j) * np.pi ** (j - 1) * ((-1.0) ** (n - j)) * _factorial(n - j)
        acc += coef * quadrant[j % 4] * xpow
        xpow = xpow * x
    return acc


def sinc_derivative(n: int, x):
    """n-th derivative of sinc at x.

    Uses the trigonometric closed form away from the origin and a truncated
    Maclaurin expansion near it (the closed form has a removable singularity
    at 0).  The switch radius grows with n because the closed form loses
    precision once ``(pi |x|)^n`` falls far below ``n!``.

    Parameters
    ----------
    n : int
        Derivative order, ``0 <= n <= MAX_DERIVATIVE_ORDER``.
    x : float or array
        Evaluation points, finite.

    Returns
    -------
    float or ndarray
        ``sinc^(n)(x)``; ``n = 0`` reduces to :func:`sinc`.
    """
    if n < 0 or int(n) != n:
        raise UnsupportedOrderError("derivative order must be a nonnegative integer")
    if n > MAX_DERIVATIVE_ORDER:
        raise UnsupportedOrderError(
            f"derivative order {n} above supported maximum {MAX_DERIVATIVE_ORDER}"
        )
    n = int(n)
    if n == 0:
        return sinc(x)
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if not np.all(np.isfinite(arr)):
        raise DomainError("sinc_derivative requires finite input")
    out = np.empty_like(arr)
    near = np.abs(arr) < max(0.5, n / 8.0)
    if np.any(near):
        out[near] = _sinc_derivative_taylor(n, arr[near])
    if np.any(~near):
        out[~near] = _sinc_derivative_closed(n, arr[~near])
    return float(out[0]) if np.isscalar(x) or np.asarray(x).ndim == 0 else out


def coeff_A(m: int, k):
    """Odd-order sample weight A_{m,k} for derivative order 2m - 1.

    Closed form: ``(2m-1)!/(pi (k-1/2)^{2m}) * sum_{j<m} (-1)^j (pi(k-1/2))^{2j}/(2j)!``.
    Equal to ``(-1)^{k+1} sinc^{(2m-1)}(1/2 - k)``, which the tests cross-check.
    """
    if m < 1 or int(m) != m:
        raise DomainError("m must be a positive integer")
    m = int(m)
    ks = np.asarray(k, dtype=float)
    half = ks - 0.5
    # alternating polynomial sum, built by term recurrence
    term = np.ones_like(half)
    total = term.copy()
    z2 = (np.pi * half) ** 2
    for j in range(1, m):
        term = term * (-z2) / ((2 * j - 1) * (2 * j))
        total = total + term
    lead = _factorial(2 * m - 1) / (np.pi * half ** (2 * m))
    out = lead * total
    return float(out) if np.isscalar(k) or np.asarray(k).ndim == 0 else out


def coeff_B(m: int, k):
    """Even-order sample weight B_{m,k} for derivative order 2m.

    Closed form for k != 0:
    ``(2m)!/(pi k^{2m+1}) * sum_{j<m} (-1)^j (pi k)^{2j+1}/(2j+1)!``;
    at k = 0 the value is ``(-1)^{m+1} pi^{2m}/(2m+1)``.
    Equal to ``(-1)^{k+1} sinc^{(2m)}(-k)`` away from 0.
    """
    if m < 1 or int(m) != m:
        raise DomainError("m must be a positive integer")
    m = int(m)
    ks = np.asarray(k, dtype=float)
    safe = np.where(ks == 0.0, 1.0, ks)
    z = np.pi * safe
    term = z.copy()
    total = term.copy()
    for j in range(1, m):
        term = term * (-(z ** 2)) / ((2 * j) * (2 * j + 1))
        total = total + term
    lead = _factorial(2 * m) / (np.pi * safe ** (2 * m + 1))
    center = ((-1.0) ** (m + 1)) * np.pi ** (2 * m) / (2 * m + 1)
    out = np.where(ks == 0.0, center, lead * total)
    return float(out) if np.isscalar(k) or np.asarray(k).ndim == 0 else out


@dataclass(frozen=True)
class CoefficientTable:
    """A truncated, signed, bandwidth-scaled slice of derivative-series weights.

    ``weights[i]`` multiplies the group translate of the input by
    ``offsets[i]``; summing the terms approximates the derivative of order
    ``order`` for vectors of exponential type at most ``bandwidth``.

    Canonical tables built by :func:`build_table` index entries by
    ``ks = -N..N``; composed tables (:func:`compose_tables`) reuse ``ks`` for
    lattice positions in units of ``pi/(2 sigma)``.
    """

    order: int
    bandwidth: float
    half_width: int
    ks: np.ndarray
    weights: np.ndarray
    offsets: np.ndarray

    def __post_init__(self):
        for arr in (self.ks, self.weights, self.offsets):
            arr.setflags(write=False)

    @property
    def entries(self):
        """Ordered (k, weight, offset) triples."""
        return list(zip(self.ks.tolist(), self.weights.tolist(), self.offsets.tolist()))

    def __len__(self):
        return self.weights.size


def build_table(r: int, sigma: float, half_width: int) -> CoefficientTable:
    """Build the truncated coefficient table for derivative order r.

    Entries run over ``k = -half_width .. half_width``.  Odd orders sample at
    ``(pi/sigma)(k - 1/2)``, even orders at ``pi k / sigma``; each weight
    carries the alternating sign and the ``(sigma/pi)^r`` scale.
    """
    if r < 1 or int(r) != r:
        raise DomainError("derivative order must be a positive integer")
    if not (sigma > 0 and math.isfinite(sigma)):
        raise DomainError("bandwidth must be positive and finite")
    if half_width < 1 or int(half_width) != half_width:
        raise DomainError("half_width must be a positive integer")
    r, half_width = int(r), int(half_width)
    scale = (sigma / np.pi) ** r
    if not (math.isfinite(scale) and math.isfinite(sigma ** r)):
        raise BandwidthRangeError(f"(sigma/pi)^r overflows for sigma={sigma}, r={r}")
    ks = np.arange(-half_width, half_width + 1)
    sign = np.where(ks % 2 == 0, -1.0, 1.0)  # (-1)^(k+1)
    if r % 2 == 1:
        m = (r + 1) // 2
        weights = scale * sign * coeff_A(m, ks)
        offsets = (np.pi / sigma) * (ks - 0.5)
    else:
        m = r // 2
        weights = scale * sign * coeff_B(m, ks)
        offsets = (np.pi / sigma) * ks
    return CoefficientTable(r, float(sigma), half_width, ks, weights, offsets)


def table_mass(table: CoefficientTable) -> float:
    """Sum of absolute weights; bounded by sigma^order, approaching it as N grows."""
    return float(np.sum(np.abs(table.weights)))


def table_tail(table: CoefficientTable) -> float:
    """Absolute mass of the discarded tail, ``sigma^order - table_mass``.

    Scaled by the norm of the input this bounds the truncation error of the
    series on certified vectors.
    """
    return max(0.0, table.bandwidth ** table.order - table_mass(table))


def compose_tables(a: CoefficientTable, b: CoefficientTable) -> CoefficientTable:
    """Table of the composition of two sampling operators at equal bandwidth.

    Because translates compose additively, applying table ``a`` after table
    ``b`` equals applying a single table whose weights are the convolution of
    the two weight sequences on the offset lattice ``pi/(2 sigma) * Z``.  The
    result approximates the derivative of order ``a.order + b.order``.
    """
    if not math.isclose(a.bandwidth, b.bandwidth, rel_tol=1e-12):
        raise DomainError("tables must share a bandwidth to compose")
    sigma = a.bandwidth
    step = np.pi / (2.0 * sigma)
    out_idx = []
    for t in (a, b):
        idx = np.rint(t.offsets / step).astype(int)
        if np.max(np.abs(t.offsets - idx * step)) > 1e-9 * step:
            raise DomainError("table offsets are not on the composition lattice")
        out_idx.append(idx)
    ia, ib = out_idx
    dense_a = np.zeros(ia[-1] - ia[0] + 1)
    dense_a[ia - ia[0]] = a.weights
    dense_b = np.zeros(ib[-1] - ib[0] + 1)
    dense_b[ib - ib[0]] = b.weights
    if dense_a.size * dense_b.size <= 1 << 18:
        dense = np.convolve(dense_a, dense_b)
    else:
        dense = fftconvolve(dense_a, dense_b)
    base = ia[0] + ib[0]
    idx = np.arange(base, base + dense.size)
    # offsets of each factor sit on a single parity class of the lattice, so
    # every second slot of the convolution is structurally zero: drop them
    parity = (ia[0] + ib[0]) % 2
    keep = (idx % 2) == parity
    idx, weights = idx[keep], dense[keep]
    return CoefficientTable(
        order=a.order + b.order,
        bandwidth=sigma,
        half_width=(idx.size - 1) // 2,
        ks=idx,
        weights=weights,
        offsets=idx * step,
    )
