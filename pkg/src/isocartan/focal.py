"""Focal kernels and closed-form focal radius enumeration.

A block ``(lam, mu)`` contributes a focal radius ``s`` exactly where the
Jacobi-field coefficient ``jacobi_coeff(s, lam, mu)`` vanishes.  For the
compact kernel that is ``lam = tau(s, mu)``, for the non-compact one
``lam = tau_hat(s, mu)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .model import HypersurfaceModel, is_proper

POLE_TOL = 1e-12
MERGE_TOL = 1e-9


class PoleError(ZeroDivisionError):
    pass


class EmptyWindow(ValueError):
    pass


class NotProper(ValueError):
    def __init__(self, blocks: Sequence[int]):
        super().__init__(f"blocks {list(blocks)} have lambda = +-sqrt(-mu)")
        self.blocks = tuple(blocks)


def tau(r: float, s: float, tol: float = POLE_TOL) -> float:
    """``sqrt(s) / tan(r sqrt(s))`` for ``s > 0`` and ``1/r`` at ``s = 0``."""
    if r == 0:
        raise ValueError("r must be nonzero")
    if s < 0:
        raise ValueError("tau is defined for s >= 0")
    if s == 0:
        return 1.0 / r
    k = math.sqrt(s)
    x = r * k
    sn = math.sin(x)
    if abs(sn) <= tol:
        raise PoleError(f"tau_{r}({s}): sin(r sqrt(s)) = 0")
    return k * math.cos(x) / sn


def tau_hat(z: complex, s: float, tol: float = POLE_TOL) -> complex:
    """``i sqrt(-s) / tan(i z sqrt(-s))`` for ``s < 0`` and ``1/z`` at ``s = 0``.

    Evaluated as ``sqrt(-s) / tanh(z sqrt(-s))``.
    """
    z = complex(z)
    if z == 0:
        raise ValueError("z must be nonzero")
    if s > 0:
        raise ValueError("tau_hat is defined for s <= 0")
    if s == 0:
        return 1.0 / z
    b = math.sqrt(-s)
    th = cmath.tanh(z * b)
    if abs(th) <= tol:
        raise PoleError(f"tau_hat_{z}({s}): tanh(z sqrt(-s)) = 0")
    return b / th


def jacobi_coeff(s, lam: float, mu: float):
    """Coefficient of the Jacobi field with ``Y(0) = X``, ``Y'(0) = -lam X``.

    Accepts scalars or numpy arrays, real or complex.
    """
    arr = np.asarray(s)
    if mu > 0:
        k = math.sqrt(mu)
        out = np.cos(k * arr) - lam * np.sin(k * arr) / k
    elif mu < 0:
        b = math.sqrt(-mu)
        out = np.cosh(b * arr) - lam * np.sinh(b * arr) / b
    else:
        out = 1 - lam * arr
    if arr.ndim == 0:
        return complex(out) if np.iscomplexobj(out) else float(out)
    return out


def jacobi_coeff_prime(s, lam: float, mu: float):
    """Derivative in ``s`` of :func:`jacobi_coeff`."""
    arr = np.asarray(s)
    if mu > 0:
        k = math.sqrt(mu)
        out = -k * np.sin(k * arr) - lam * np.cos(k * arr)
    elif mu < 0:
        b = math.sqrt(-mu)
        out = b * np.sinh(b * arr) - lam * np.cosh(b * arr)
    else:
        out = -lam * np.ones_like(arr)
    if arr.ndim == 0:
        return complex(out) if np.iscomplexobj(out) else float(out)
    return out


@dataclass(frozen=True)
class FocalRadius:
    value: complex
    blocks: tuple[int, ...]
    multiplicity: int

    @property
    def is_real(self) -> bool:
        return self.value.imag == 0

    def focal_blocks(self, model: HypersurfaceModel):
        return [model.blocks[i] for i in self.blocks]

    def to_dict(self) -> dict:
        return {
            "re": self.value.real,
            "im": self.value.imag,
            "mult": self.multiplicity,
            "blocks": list(self.blocks),
        }


def _slack(x: float) -> float:
    return 1e-12 * max(1.0, abs(x))


def _in_open_closed(x: float, lo: float, hi: float) -> bool:
    return lo + _slack(lo) < x <= hi + _slack(hi)


def _lattice(base: float, step: float, lo: float, hi: float) -> list[int]:
    """Integers ``j`` with ``lo <= base + j*step <= hi`` (with slack)."""
    j0 = math.ceil((lo - _slack(lo) - base) / step)
    j1 = math.floor((hi + _slack(hi) - base) / step)
    return list(range(j0, j1 + 1))


def block_radii_real(lam: float, mu: float, window: tuple[float, float]) -> list[float]:
    """Real zeros of the Jacobi coefficient in ``(lo, hi]``."""
    lo, hi = window
    if mu > 0:
        k = math.sqrt(mu)
        base = math.atan2(k, lam) / k
        step = math.pi / k
        out = [base + j * step for j in _lattice(base, step, lo, hi)]
    elif mu == 0:
        out = [1.0 / lam] if lam != 0 else []
    else:
        b = math.sqrt(-mu)
        out = [math.atanh(b / lam) / b] if abs(lam) > b else []
    return [r for r in out if _in_open_closed(r, lo, hi)]


def block_radii_complex(
    lam: float,
    mu: float,
    re_window: tuple[float, float],
    im_window: tuple[float, float],
    proper_tol: float = 1e-9,
) -> list[complex]:
    """Complex zeros of the Jacobi coefficient, ``Re`` in ``(lo, hi]`` and ``Im`` in ``[lo, hi]``."""
    if mu > 0:
        raise ValueError("complex focal radii need mu <= 0")
    if mu == 0:
        if lam == 0:
            return []
        r = 1.0 / lam
        ok = _in_open_closed(r, *re_window) and im_window[0] - _slack(im_window[0]) <= 0 <= im_window[1] + _slack(im_window[1])
        return [complex(r)] if ok else []
    b = math.sqrt(-mu)
    if abs(abs(lam) - b) <= proper_tol:
        return []
    if abs(lam) > b:
        re = math.atanh(b / lam) / b
        im0 = 0.0
    else:
        re = math.atanh(lam / b) / b
        im0 = math.pi / (2 * b)
    if not _in_open_closed(re, *re_window):
        return []
    step = math.pi / b
    return [complex(re, im0 + j * step) for j in _lattice(im0, step, *im_window)]


def _merge(found: Iterable[tuple[complex, int, int]], tol: float) -> list[FocalRadius]:
    clusters: list[list[tuple[complex, int, int]]] = []
    for item in sorted(found, key=lambda t: (t[0].real, t[0].imag, t[1])):
        for cl in clusters:
            if abs(cl[0][0] - item[0]) <= tol:
                cl.append(item)
                break
        else:
            clusters.append([item])
    out = []
    for cl in clusters:
        idx = tuple(sorted({i for _, i, _ in cl}))
        out.append(FocalRadius(cl[0][0], idx, sum(m for _, _, m in cl)))
    out.sort(key=lambda r: (r.value.real, r.value.imag))
    return out


def default_windows(model: HypersurfaceModel) -> tuple[tuple[float, float], tuple[float, float]]:
    """``Re`` in ``(0, 4 P]`` and ``|Im| <= 2 P`` with ``P`` the longest period.

    The real window is stretched to cover every finite closed-form real part.
    """
    periods = [math.pi / math.sqrt(abs(b.mu)) for b in model.blocks if b.mu != 0]
    lams = [abs(1.0 / b.lam) for b in model.blocks if b.mu == 0 and b.lam != 0]
    p = max(periods) if periods else max(lams, default=1.0)
    re_hi = 4 * p
    for b in model.blocks:
        if b.mu < 0:
            beta = math.sqrt(-b.mu)
            if abs(abs(b.lam) - beta) > 1e-9:
                x = b.lam / beta
                re = math.atanh(1 / x if abs(x) > 1 else x) / beta
                re_hi = max(re_hi, 1.5 * abs(re))
    re_hi = max([re_hi] + [1.5 * v for v in lams])
    return (0.0, re_hi), (-2 * p, 2 * p)


def focal_radii_real(
    model: HypersurfaceModel,
    window: tuple[float, float] | None = None,
    tol: float = MERGE_TOL,
) -> list[FocalRadius]:
    amb = model.ambient
    if not (amb.is_compact_like or (amb.kind == "spaceform")):
        raise ValueError("real focal radii are enumerated for compact type and space forms")
    if window is None:
        window = default_windows(model)[0]
    found = []
    for i, b in enumerate(model.blocks):
        for r in block_radii_real(b.lam, b.mu, window):
            found.append((complex(r), i, b.mult))
    if not found:
        raise EmptyWindow(f"no real focal radius in {window}")
    return _merge(found, tol)


def focal_radii_complex(
    model: HypersurfaceModel,
    re_window: tuple[float, float] | None = None,
    im_window: tuple[float, float] | None = None,
    tol: float = MERGE_TOL,
    strict: bool = False,
) -> list[FocalRadius]:
    """Complex focal radii of a non-compact model.

    Blocks with ``lam = +-sqrt(-mu)`` have none and are skipped, unless
    ``strict`` asks for :class:`NotProper`.
    """
    if not model.ambient.is_noncompact_like:
        raise ValueError("complex focal radii are enumerated for non-compact type")
    report = is_proper(model)
    if strict and not report.proper:
        raise NotProper(report.witnesses)
    dre, dim = default_windows(model)
    re_window = re_window or dre
    im_window = im_window or dim
    found = []
    for i, b in enumerate(model.blocks):
        for r in block_radii_complex(b.lam, b.mu, re_window, im_window):
            found.append((r, i, b.mult))
    if not found:
        raise EmptyWindow(f"no complex focal radius in Re {re_window}, Im {im_window}")
    return _merge(found, tol)


def focal_radii(model: HypersurfaceModel, re_window=None, im_window=None, tol: float = MERGE_TOL) -> list[FocalRadius]:
    """Real radii for compact-like models, complex radii otherwise."""
    if model.ambient.is_compact_like:
        return focal_radii_real(model, re_window, tol)
    return focal_radii_complex(model, re_window, im_window, tol)
