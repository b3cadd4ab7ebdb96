"""Cartan-type identity sums, focal eigenvalue maps and structural checkers.

For a focal radius ``r0`` the summand of a block ``(lam, mu)`` is
``w = (mu + lam*T) / (lam - T)`` with ``T = tau_{r0}(mu)`` on compact type
and ``T = tau_hat_{r0}(mu)`` on non-compact type.  Blocks with ``lam = T``
span the focal space and are left out of the sum.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Sequence

from .focal import (
    MERGE_TOL,
    EmptyWindow,
    FocalRadius,
    PoleError,
    default_windows,
    focal_radii,
    focal_radii_complex,
    jacobi_coeff,
    jacobi_coeff_prime,
    tau,
    tau_hat,
)
from .model import AmbientKind, CurvatureBlock, HypersurfaceModel, is_proper
from .rootsys import RootProjection

MEMBERSHIP_TOL = 1e-7
ACCEPT_TOL = 1e-9


class UnknownEigenvalue(ValueError):
    pass


class FocalBlock(ValueError):
    pass


class CaseUndefined(ValueError):
    pass


class DegenerateLattice(ValueError):
    pass


def _fmt(x) -> str:
    if isinstance(x, complex):
        if x.imag == 0:
            return f"{x.real:.12g}"
        return f"{x.real:.12g}{x.imag:+.12g}i"
    return f"{x:.12g}"


@dataclass(frozen=True)
class Term:
    index: int
    block: CurvatureBlock
    weight: complex
    in_S: bool

    @property
    def contribution(self) -> complex:
        return self.weight * self.block.mult if self.in_S else 0j


@dataclass(frozen=True)
class IdentityReport:
    radius: complex
    terms: tuple[Term, ...]
    total: complex
    passed: bool
    tol: float = ACCEPT_TOL
    membership_tol: float = MEMBERSHIP_TOL

    def recomputed_total(self) -> complex:
        return complex(math.fsum(t.contribution.real for t in self.terms), math.fsum(t.contribution.imag for t in self.terms))

    def to_dict(self) -> dict:
        return {
            "radius": {"re": self.radius.real, "im": self.radius.imag},
            "terms": [
                {
                    "block": t.index,
                    "lambda": t.block.lam,
                    "mu": t.block.mu,
                    "mult": t.block.mult,
                    "in_S": t.in_S,
                    "weight": None if not t.in_S else {"re": t.weight.real, "im": t.weight.imag},
                }
                for t in self.terms
            ],
            "total": {"re": self.total.real, "im": self.total.imag},
            "abs_total": abs(self.total),
            "passed": self.passed,
            "tol": self.tol,
            "membership_tol": self.membership_tol,
        }

    def to_text(self) -> str:
        head = f"r0 = {_fmt(complex(self.radius))}"
        cols = ("lambda", "mu", "m", "in_S", "term", "|total|", "verdict")
        rows = [cols]
        verdict = "PASS" if self.passed else "FAIL"
        for t in self.terms:
            term = _fmt(t.contribution) if t.in_S else "-"
            rows.append((_fmt(t.block.lam), _fmt(t.block.mu), str(t.block.mult), "yes" if t.in_S else "no", term, "", ""))
        rows.append(("", "", "", "", "", f"{abs(self.total):.12g}", verdict))
        widths = [max(len(r[i]) for r in rows) for i in range(len(cols))]
        lines = [head] + ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        return "\n".join(lines)


def _kernel(r0: complex, mu: float, ambient: AmbientKind) -> complex:
    if ambient.is_compact_like:
        r = complex(r0)
        if abs(r.imag) > 1e-12:
            raise ValueError("compact type focal radii are real")
        return complex(tau(r.real, mu))
    return tau_hat(r0, mu)


def _summand(lam: float, mu: float, T: complex) -> complex:
    return (mu + lam * T) / (lam - T)


def _radius_value(r0) -> complex:
    return complex(r0.value if isinstance(r0, FocalRadius) else r0)


def cartan_sum(
    model: HypersurfaceModel,
    r0: FocalRadius | complex,
    tol: float = ACCEPT_TOL,
    membership_tol: float = MEMBERSHIP_TOL,
) -> IdentityReport:
    """Sum of ``(mu + lam T)/(lam - T) * m`` over the non-focal blocks at ``r0``."""
    r = _radius_value(r0)
    terms = []
    for i, b in enumerate(model.blocks):
        try:
            T = _kernel(r, b.mu, model.ambient)
        except PoleError as exc:
            raise PoleError(f"blocks[{i}] (lambda={b.lam}, mu={b.mu}): {exc}") from exc
        in_S = abs(b.lam - T) > membership_tol
        w = _summand(b.lam, b.mu, T) if in_S else 0j
        terms.append(Term(i, b, w, in_S))
    terms_t = tuple(terms)
    total = complex(
        math.fsum(t.contribution.real for t in terms_t),
        math.fsum(t.contribution.imag for t in terms_t),
    )
    return IdentityReport(r, terms_t, total, abs(total) < tol, tol, membership_tol)


def cartan_sum_spaceform(model: HypersurfaceModel, lambda0: float, tol: float = 1e-12) -> IdentityReport:
    """Classical identity ``sum_{lam != lam0} (c + lam lam0)/(lam - lam0) m_lam``."""
    if model.ambient.kind != "spaceform":
        raise ValueError("classical identity needs a space form model")
    c = model.ambient.c
    if not any(b.lam == lambda0 for b in model.blocks):
        raise UnknownEigenvalue(f"{lambda0} is not a principal curvature of the model")
    terms = []
    for i, b in enumerate(model.blocks):
        in_S = b.lam != lambda0
        w = complex((c + b.lam * lambda0) / (b.lam - lambda0)) if in_S else 0j
        terms.append(Term(i, b, w, in_S))
    total = complex(math.fsum(t.contribution.real for t in terms))
    return IdentityReport(complex(lambda0), tuple(terms), total, abs(total) < tol, tol, 0.0)


def kappa(lam: float, mu: float, r0: complex, ambient: AmbientKind, tol: float = MEMBERSHIP_TOL) -> complex:
    """Eigenvalue of the focal submanifold's shape operator on the image of a block."""
    r = complex(r0)
    T = _kernel(r, mu, ambient)
    if abs(lam - T) <= tol:
        raise FocalBlock(f"(lambda={lam}, mu={mu}) is focal at r0={r}")
    w = _summand(lam, mu, T)
    if ambient.is_compact_like:
        return -w
    return -(r / abs(r)) * w


def kappa_total(model: HypersurfaceModel, r0: FocalRadius | complex, membership_tol: float = MEMBERSHIP_TOL) -> complex:
    """``sum kappa * m`` over the non-focal blocks."""
    r = _radius_value(r0)
    acc = 0j
    for b in model.blocks:
        try:
            acc += kappa(b.lam, b.mu, r, model.ambient, membership_tol) * b.mult
        except FocalBlock:
            continue
    return acc


def total_from_kappa(model: HypersurfaceModel, r0: FocalRadius | complex, membership_tol: float = MEMBERSHIP_TOL) -> complex:
    """Identity total rebuilt from the focal eigenvalues."""
    r = _radius_value(r0)
    s = kappa_total(model, r, membership_tol)
    if model.ambient.is_compact_like:
        return -s
    return -(r / abs(r)).conjugate() * s


def c_value(lam: float, mu: float, r0: complex) -> complex:
    """``c_{lam,mu} = -(mu + lam T)/(lam - T)`` with the hyperbolic kernel, no unit factor."""
    return -_summand(lam, mu, tau_hat(r0, mu))


def re_c_closed_form(lam: float, mu: float, r: complex, r0: complex, tol: float = 1e-12) -> float:
    """Real part of ``c_{lam,mu}`` in terms of the block's own focal radius ``r``."""
    if mu >= 0:
        raise ValueError("closed form needs mu < 0")
    b = math.sqrt(-mu)
    if abs(abs(lam) - b) <= tol:
        raise CaseUndefined("lambda = +-sqrt(-mu) has no focal radius")
    r, r0 = complex(r), complex(r0)
    th = math.tanh(b * (r.real - r0.real))
    tn = math.tan(b * r0.imag)
    num = b * (1 + tn * tn) * th
    if abs(lam) > b:
        return num / (th * th + tn * tn)
    return num / (1 + th * th * tn * tn)


@dataclass(frozen=True)
class TheoremCReport:
    passed: bool
    classes_ok: bool
    spectra_ok: bool
    bound_ok: bool | None
    s0: float | None
    spread: float | None
    n_spec: int
    bound: int | None
    messages: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "classes_ok": self.classes_ok,
            "spectra_ok": self.spectra_ok,
            "bound_ok": self.bound_ok,
            "s0": self.s0,
            "spread": self.spread,
            "n_spec": self.n_spec,
            "bound": self.bound,
            "messages": list(self.messages),
        }


def _distinct(values: Sequence[float], tol: float) -> list[float]:
    out: list[float] = []
    for v in sorted(values):
        if not out or abs(v - out[-1]) > tol:
            out.append(v)
    return out


def allowed_spectrum(mu: float, s0: float) -> tuple[float, float]:
    """Vertical and horizontal principal curvatures of a tube of radius ``s0``."""
    if mu == 0:
        return (1.0 / s0, 0.0)
    b = math.sqrt(-mu)
    return (b / math.tanh(b * s0), b * math.tanh(b * s0))


def check_theorem_c(
    model: HypersurfaceModel,
    proj: RootProjection | None = None,
    tol: float = ACCEPT_TOL,
    re_window: tuple[float, float] | None = None,
    im_window: tuple[float, float] | None = None,
) -> TheoremCReport:
    msgs: list[str] = []
    if not model.ambient.is_noncompact_like:
        return TheoremCReport(False, False, False, None, None, None, 0, None, ("model is not of non-compact type",))
    prop = is_proper(model)
    if not prop.proper:
        msgs.append(f"model is not proper: blocks {list(prop.witnesses)}")
    by_mu: dict[float, list[float]] = {}
    for mu in _distinct([b.mu for b in model.blocks], tol):
        by_mu[mu] = _distinct([b.lam for b in model.blocks if abs(b.mu - mu) <= tol], tol)
    classes_ok = True
    for mu, lams in by_mu.items():
        if len(lams) > 2:
            classes_ok = False
            msgs.append(f"mu={mu:.12g} carries {len(lams)} distinct lambda")

    dre, dim = default_windows(model)
    re_window = re_window or (-dre[1], dre[1])
    im_window = im_window or dim
    s0 = spread = None
    spectra_ok = False
    try:
        radii = focal_radii_complex(model, re_window, im_window, tol=MERGE_TOL)
        res = [r.value.real for r in radii]
        s0 = statistics.median(res)
        spread = max(res) - min(res)
    except EmptyWindow:
        msgs.append("no complex focal radius found")
    if s0 is not None:
        if spread >= tol:
            msgs.append(f"focal radii real parts spread {spread:.3g}")
        elif s0 <= 0:
            msgs.append(f"common real part {s0:.12g} is not positive")
        else:
            spectra_ok = True
            for mu, lams in by_mu.items():
                allowed = allowed_spectrum(mu, s0)
                for lam in lams:
                    if min(abs(lam - a) for a in allowed) > tol * max(1.0, abs(lam)):
                        spectra_ok = False
                        msgs.append(f"lambda={lam:.12g} on mu={mu:.12g} not in {{{allowed[0]:.12g}, {allowed[1]:.12g}}}")
    n_spec = len(_distinct([b.lam for b in model.blocks], tol))
    bound = bound_ok = None
    if proj is not None:
        bound = proj.spec_bound()
        bound_ok = n_spec <= bound
        if not bound_ok:
            msgs.append(f"#Spec A = {n_spec} exceeds bound {bound}")
    passed = prop.proper and classes_ok and spectra_ok and bound_ok is not False
    return TheoremCReport(passed, classes_ok, spectra_ok, bound_ok, s0, spread, n_spec, bound, tuple(msgs))


def tube_flow(model: HypersurfaceModel, s: float) -> HypersurfaceModel:
    """Parallel hypersurface at distance ``s``: ``lam^s = -f'(s)/f(s)`` per block."""
    blocks = []
    for b in model.blocks:
        f = jacobi_coeff(s, b.lam, b.mu)
        if abs(f) < 1e-14:
            raise PoleError(f"block (lambda={b.lam}, mu={b.mu}) is focal at s={s}")
        blocks.append(CurvatureBlock(-jacobi_coeff_prime(s, b.lam, b.mu) / f, b.mu, b.mult))
    return model.with_blocks(blocks, name=f"{model.name}@{s:.12g}" if model.name else "")


def flow_closed_form(mu: float, s0: float, s: float, vertical: bool) -> float:
    d = s0 - s
    if mu == 0:
        return 1.0 / d if vertical else 0.0
    b = math.sqrt(-mu)
    return b / math.tanh(b * d) if vertical else b * math.tanh(b * d)


@dataclass(frozen=True)
class TheoremDReport:
    passed: bool
    s0: float | None
    real_radii: tuple[float, ...]
    vertical: tuple[int, ...]
    horizontal: tuple[int, ...]
    max_kappa: float | None
    flow_error: float | None
    flow_radius: float | None
    messages: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "s0": self.s0,
            "real_radii": list(self.real_radii),
            "vertical": list(self.vertical),
            "horizontal": list(self.horizontal),
            "max_kappa": self.max_kappa,
            "flow_error": self.flow_error,
            "flow_radius": self.flow_radius,
            "messages": list(self.messages),
        }


def check_theorem_d(model: HypersurfaceModel, tol: float = ACCEPT_TOL, membership_tol: float = MEMBERSHIP_TOL) -> TheoremDReport:
    c = check_theorem_c(model, tol=tol)
    if not c.passed:
        return TheoremDReport(False, None, (), (), (), None, None, None, ("counting or spectrum checks fail",) + c.messages)
    msgs: list[str] = []
    dre, _ = default_windows(model)
    try:
        real = focal_radii_complex(model, (0.0, dre[1]), (0.0, 0.0))
    except EmptyWindow:
        real = []
    real_vals = tuple(r.value.real for r in real)
    if len(real_vals) != 1:
        msgs.append(f"expected one positive real focal radius, found {len(real_vals)}")
        return TheoremDReport(False, c.s0, real_vals, (), (), None, None, None, tuple(msgs))
    s0 = real_vals[0]
    vert, hor = [], []
    max_k = 0.0
    for i, b in enumerate(model.blocks):
        try:
            k = kappa(b.lam, b.mu, s0, model.ambient, membership_tol)
        except FocalBlock:
            vert.append(i)
            continue
        hor.append(i)
        max_k = max(max_k, abs(k))
    if max_k >= tol:
        msgs.append(f"max |kappa| at s0 is {max_k:.3g}")

    flow_err = 0.0
    for frac in (0.0, 0.25, 0.5, 0.75):
        s = frac * s0
        flowed = tube_flow(model, s)
        for i, (b, fb) in enumerate(zip(model.blocks, flowed.blocks)):
            want = flow_closed_form(b.mu, s0, s, i in vert)
            flow_err = max(flow_err, abs(fb.lam - want) / max(1.0, abs(want)))
    for eps in (1e-3, 1e-6):
        flowed = tube_flow(model, s0 - eps)
        for i in hor:
            b = flowed.blocks[i]
            flow_err = max(flow_err, abs(b.lam) - (-b.mu) * eps * (1 + eps))
    if flow_err >= tol:
        msgs.append(f"tube flow deviates by {flow_err:.3g}")

    half = tube_flow(model, s0 / 2)
    try:
        hr = focal_radii_complex(half, (0.0, dre[1]), (0.0, 0.0))
    except EmptyWindow:
        hr = []
    flow_radius = hr[0].value.real if len(hr) == 1 else None
    if flow_radius is None or abs(flow_radius - s0 / 2) >= tol:
        msgs.append("flowed model does not have unique focal radius s0/2")
    passed = not msgs
    return TheoremDReport(passed, s0, real_vals, tuple(vert), tuple(hor), max_k, max(flow_err, 0.0), flow_radius, tuple(msgs))


def lattice_point(r1: float, r2: float, k: int) -> float:
    return k * r1 + (1 - k) * r2


def lifted_trace(
    r1: float,
    r2: float,
    m1: int,
    m2: int,
    i0: int,
    K: int,
    truncation: str = "symmetric",
) -> float:
    """Partial sum of ``m_k / (r_k - r_{i0})`` over the focal lattice ``r_k = k r1 + (1-k) r2``.

    ``symmetric`` sums ``0 < |k - i0| <= K``; ``ordered`` sums ``k`` in
    ``[1-K, K]`` with ``k != i0``.  Odd ``k`` carry ``m1``, even ``k`` ``m2``.
    """
    if r1 == r2:
        raise DegenerateLattice("r1 = r2")
    if not (r2 < 0 < r1):
        raise ValueError("need r2 < 0 < r1")
    if K < 1:
        raise ValueError("K must be >= 1")
    mult = lambda k: m1 if k % 2 else m2  # noqa: E731
    d = r1 - r2
    if truncation == "symmetric":
        ks = [i0 + j for j in range(1, K + 1)] + [i0 - j for j in range(1, K + 1)]
    elif truncation == "ordered":
        if not (1 - K <= i0 <= K):
            raise ValueError("i0 outside the ordered window")
        ks = [k for k in range(1 - K, K + 1) if k != i0]
    else:
        raise ValueError(f"unknown truncation {truncation!r}")
    # r_k - r_i0 = (k - i0)(r1 - r2), so antipodal terms cancel exactly.
    return math.fsum(mult(k) / ((k - i0) * d) for k in ks)


def verify_model(
    model: HypersurfaceModel,
    re_window: tuple[float, float] | None = None,
    im_window: tuple[float, float] | None = None,
    tol: float = ACCEPT_TOL,
    membership_tol: float = MEMBERSHIP_TOL,
    merge_tol: float = MERGE_TOL,
) -> list[IdentityReport]:
    """Identity reports at every focal radius in the window."""
    radii = focal_radii(model, re_window, im_window, merge_tol)
    return [cartan_sum(model, r, tol, membership_tol) for r in radii]
