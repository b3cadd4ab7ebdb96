"""Brute-force zero finders used as oracles against the closed forms.

Real zeros come from sign changes on a dense grid refined with ``brentq``.
Complex zeros come from recursive rectangle subdivision, counting zeros in
each cell by the winding number of ``f`` around its boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

Func = Callable[[np.ndarray], np.ndarray]

EDGE_SAMPLES = 256
MAX_EDGE_SAMPLES = 1 << 14
# Split fractions tried in order when a cut passes too close to a zero.
SPLITS = (0.4871, 0.5309, 0.4437, 0.5741, 0.4013)


class ZeroOnContour(ArithmeticError):
    pass


def real_zeros(f: Func, lo: float, hi: float, step: float) -> list[float]:
    """Zeros of a real function on ``[lo, hi]`` with grid spacing at most ``step``."""
    n = max(16, int(math.ceil((hi - lo) / step)))
    x = np.linspace(lo, hi, n + 1)
    y = np.asarray(f(x), dtype=float)
    out = [float(xi) for xi, yi in zip(x, y) if yi == 0.0]
    sign = np.sign(y)
    for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
        out.append(brentq(lambda t: float(f(np.asarray(t))), x[i], x[i + 1], xtol=1e-15, rtol=1e-15))
    return sorted(out)


@dataclass(frozen=True)
class Rect:
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float

    @property
    def center(self) -> complex:
        return complex((self.re_lo + self.re_hi) / 2, (self.im_lo + self.im_hi) / 2)

    @property
    def size(self) -> float:
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def boundary(self, n: int) -> np.ndarray:
        t = np.linspace(0.0, 1.0, n, endpoint=False)
        a, b, c, d = self.re_lo, self.re_hi, self.im_lo, self.im_hi
        bottom = (a + (b - a) * t) + 1j * c
        right = b + 1j * (c + (d - c) * t)
        top = (b - (b - a) * t) + 1j * d
        left = a + 1j * (d - (d - c) * t)
        z = np.concatenate([bottom, right, top, left])
        return np.append(z, z[0])

    def split(self, frac: float) -> tuple["Rect", "Rect"]:
        if self.re_hi - self.re_lo >= self.im_hi - self.im_lo:
            m = self.re_lo + frac * (self.re_hi - self.re_lo)
            return Rect(self.re_lo, m, self.im_lo, self.im_hi), Rect(m, self.re_hi, self.im_lo, self.im_hi)
        m = self.im_lo + frac * (self.im_hi - self.im_lo)
        return Rect(self.re_lo, self.re_hi, self.im_lo, m), Rect(self.re_lo, self.re_hi, m, self.im_hi)


def winding_number(f: Func, rect: Rect, samples: int = EDGE_SAMPLES) -> int:
    """Zeros of ``f`` inside ``rect`` by the argument principle.

    Samples per edge double until no single step turns the argument by more
    than ``pi / 2``.
    """
    n = samples
    while True:
        w = f(rect.boundary(n))
        mag = np.abs(w)
        if not np.all(np.isfinite(w)):
            raise ZeroOnContour("non-finite value on contour")
        if mag.min() <= 1e-10 * np.median(mag):
            raise ZeroOnContour("zero too close to contour")
        d = np.angle(w[1:] / w[:-1])
        if np.abs(d).max() < math.pi / 2:
            break
        if n >= MAX_EDGE_SAMPLES:
            raise ZeroOnContour("argument increments stay ambiguous")
        n *= 2
    return int(round(d.sum() / (2 * math.pi)))


def _isolate(f: Func, rect: Rect, count: int, min_size: float, out: list[tuple[Rect, int]]) -> None:
    if count == 0:
        return
    if rect.size <= min_size:
        out.append((rect, count))
        return
    for frac in SPLITS:
        left, right = rect.split(frac)
        try:
            cl = winding_number(f, left)
            cr = winding_number(f, right)
        except ZeroOnContour:
            continue
        if cl + cr == count:
            _isolate(f, left, cl, min_size, out)
            _isolate(f, right, cr, min_size, out)
            return
    raise ZeroOnContour(f"could not split {rect}")


def complex_zeros(
    f: Func,
    fprime: Func | None,
    rect: Rect,
    min_size: float = 1e-4,
) -> list[complex]:
    """Zeros of an analytic function inside ``rect``, each listed once per multiplicity."""
    cells: list[tuple[Rect, int]] = []
    _isolate(f, rect, winding_number(f, rect), min_size, cells)
    out = []
    for cell, count in cells:
        z = cell.center
        if fprime is not None and count == 1:
            for _ in range(50):
                step = complex(f(np.asarray(z))) / complex(fprime(np.asarray(z)))
                z -= step
                if abs(step) < 1e-15 * max(1.0, abs(z)):
                    break
        out.extend([z] * count)
    out.sort(key=lambda c: (round(c.real, 9), round(c.imag, 9)))
    return out


def _jacobi(lam: float, mu: float) -> tuple[Func, Func]:
    from .focal import jacobi_coeff, jacobi_coeff_prime

    return (lambda s: jacobi_coeff(s, lam, mu)), (lambda s: jacobi_coeff_prime(s, lam, mu))


def scan_block_real(lam: float, mu: float, window: tuple[float, float], step: float = 1e-3) -> list[float]:
    """Real zeros of the Jacobi coefficient in ``(lo, hi]`` by grid scan."""
    lo, hi = window
    f, _ = _jacobi(lam, mu)
    pad = 7.3e-4 * max(1.0, hi - lo)
    zs = real_zeros(f, lo - pad, hi + pad, step)
    return [z for z in zs if lo + 1e-9 < z <= hi + 1e-9]


def scan_block_complex(
    lam: float,
    mu: float,
    re_window: tuple[float, float],
    im_window: tuple[float, float],
) -> list[complex]:
    """Complex zeros of the Jacobi coefficient, ``Re`` in ``(lo, hi]``, ``Im`` in ``[lo, hi]``."""
    f, fp = _jacobi(lam, mu)
    pad = 1.37e-3 * max(1.0, re_window[1] - re_window[0], im_window[1] - im_window[0])
    rect = Rect(re_window[0] - pad, re_window[1] + pad * 1.13, im_window[0] - pad * 0.91, im_window[1] + pad * 1.07)
    zs = complex_zeros(f, fp, rect)
    return [
        z
        for z in zs
        if re_window[0] + 1e-9 < z.real <= re_window[1] + 1e-9 and im_window[0] - 1e-9 <= z.imag <= im_window[1] + 1e-9
    ]
