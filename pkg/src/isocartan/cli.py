"""Command-line entry point.

Exit status: 0 when every check passes, 1 when an identity or theorem check
fails, 2 on malformed input.
"""

from __future__ import annotations

import functools
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

import click

from . import cartan, census
from .focal import MERGE_TOL, EmptyWindow, PoleError, default_windows, focal_radii
from .fixtures import CATALOG, BUILDERS, FixtureSpec, PoleParams, build, parse_params
from .model import HypersurfaceModel, ModelError, validate

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    tol: float = cartan.ACCEPT_TOL
    membership_tol: float = cartan.MEMBERSHIP_TOL
    merge_tol: float = MERGE_TOL
    re_window: tuple[float, float] | None = None
    im_window: tuple[float, float] | None = None
    fmt: str = "text"
    out: str | None = None

    def __post_init__(self) -> None:
        for name in ("tol", "membership_tol", "merge_tol"):
            if not getattr(self, name) > 0:
                raise click.BadParameter(f"{name.replace('_', '-')} must be positive")
        for name in ("re_window", "im_window"):
            w = getattr(self, name)
            if w is not None and not w[0] < w[1] and not (name == "im_window" and w[0] == w[1]):
                raise click.BadParameter(f"{name.replace('_', '-')} must be a non-empty interval")


def _g(x: float) -> str:
    return f"{x:.12g}"


def _z(z: complex) -> str:
    z = complex(z)
    return _g(z.real) if z.imag == 0 else f"{_g(z.real)}{z.imag:+.12g}i"


def _emit(cfg: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        click.echo(text, nl=False)


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _fail_input(msg: str) -> None:
    click.echo(f"error: {msg}", err=True)
    sys.exit(EXIT_INPUT)


def _load(path: str) -> HypersurfaceModel:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        _fail_input(f"{path}: {exc.strerror}")
    try:
        return HypersurfaceModel.from_json(text)
    except ModelError as exc:
        _fail_input(f"{path}: {exc}")


def _load_valid(path: str) -> HypersurfaceModel:
    model = _load(path)
    rep = validate(model)
    if not rep.ok:
        _fail_input(f"{path}: " + "; ".join(rep.violations))
    return rep.model


def common(fn: Callable) -> Callable:
    opts = [
        click.option("--tol", type=float, default=cartan.ACCEPT_TOL, show_default=True, help="Acceptance tolerance."),
        click.option("--membership-tol", type=float, default=cartan.MEMBERSHIP_TOL, show_default=True, help="Focal exclusion tolerance."),
        click.option("--merge-tol", type=float, default=MERGE_TOL, show_default=True, help="Radius merge tolerance."),
        click.option("--re-window", type=float, nargs=2, default=None, help="Real-part window (lo, hi]."),
        click.option("--im-window", type=float, nargs=2, default=None, help="Imaginary-part window [lo, hi]."),
        click.option("--format", "fmt", type=click.Choice(["text", "json", "md", "csv"]), default="text", show_default=True),
        click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write output here."),
    ]

    @functools.wraps(fn)
    def wrapper(tol, membership_tol, merge_tol, re_window, im_window, fmt, out, **kw):
        cfg = RunConfig(tol, membership_tol, merge_tol, re_window or None, im_window or None, fmt, out)
        return fn(cfg, **kw)

    for opt in reversed(opts):
        wrapper = opt(wrapper)
    return wrapper


@click.group()
@click.version_option(package_name="artifact")
def main() -> None:
    """Verify Cartan-type identities on curvature-adapted hypersurface models."""


@main.command()
@common
def tables(cfg: RunConfig) -> None:
    """Census of restricted root data, diffed against the stored published values."""
    lines = census.compute_census()
    if cfg.fmt == "json":
        text = census.render_json(lines)
    elif cfg.fmt == "csv":
        text = census.render_csv(lines)
    else:
        text = census.render_markdown(lines)
        diffs = [ln for ln in lines if not ln.matches]
        text += f"\n{len(lines)} instances, {len(diffs)} differ"
        if diffs:
            text += ": " + "; ".join(f"{ln.quotient} [{','.join(ln.diff_columns)}]{' flagged' if ln.flagged else ''}" for ln in diffs)
    _emit(cfg, text)
    unexpected = [ln for ln in lines if not ln.matches and not ln.flagged]
    sys.exit(EXIT_FAIL if unexpected else EXIT_OK)


@main.command("validate")
@click.argument("model_path", type=click.Path())
@click.option("--dim", type=int, default=None, help="Expected hypersurface dimension.")
@common
def validate_cmd(cfg: RunConfig, model_path: str, dim: int | None) -> None:
    """Check block invariants of a model file."""
    model = _load(model_path)
    rep = validate(model, dim)
    if cfg.fmt == "json":
        text = _dump({"ok": rep.ok, "violations": list(rep.violations), "warnings": list(rep.warnings), "model": rep.model.to_dict()})
    else:
        out = [f"{model_path}: {'valid' if rep.ok else 'invalid'} (dim {rep.model.dim})"]
        out += [f"violation: {v}" for v in rep.violations]
        out += [f"warning: {w}" for w in rep.warnings]
        text = "\n".join(out)
    if rep.ok:
        _emit(cfg, text)
        sys.exit(EXIT_OK)
    click.echo(text, err=True)
    sys.exit(EXIT_INPUT)


def _radii(cfg: RunConfig, model: HypersurfaceModel):
    try:
        return focal_radii(model, cfg.re_window, cfg.im_window, cfg.merge_tol)
    except EmptyWindow as exc:
        _fail_input(str(exc))


@main.command()
@click.argument("model_path", type=click.Path())
@common
def focal(cfg: RunConfig, model_path: str) -> None:
    """List focal radii in the window."""
    model = _load_valid(model_path)
    radii = _radii(cfg, model)
    if cfg.fmt == "json":
        text = _dump([r.to_dict() for r in radii])
    else:
        rows = [f"{_z(r.value):>40}  mult {r.multiplicity:<3d} blocks {list(r.blocks)}" for r in radii]
        text = "\n".join([f"{len(radii)} focal radii"] + rows)
    _emit(cfg, text)


@main.command()
@click.argument("model_path", type=click.Path())
@click.option("--classical", is_flag=True, help="Also evaluate the space form identity at every principal curvature.")
@common
def verify(cfg: RunConfig, model_path: str, classical: bool) -> None:
    """Evaluate the identity at every focal radius in the window."""
    model = _load_valid(model_path)
    radii = _radii(cfg, model)
    try:
        reports = [cartan.cartan_sum(model, r, cfg.tol, cfg.membership_tol) for r in radii]
    except PoleError as exc:
        _fail_input(str(exc))
    if classical:
        if model.ambient.kind != "spaceform":
            _fail_input("--classical needs a space form model")
        reports += [cartan.cartan_sum_spaceform(model, lam, cfg.tol) for lam in model.spec_a]
    ok = all(r.passed for r in reports)
    if cfg.fmt == "json":
        text = _dump({"passed": ok, "reports": [r.to_dict() for r in reports]})
    else:
        worst = max(abs(r.total) for r in reports)
        text = "\n\n".join(r.to_text() for r in reports)
        text += f"\n\n{len(reports)} radii, max |total| = {worst:.12g}: {'PASS' if ok else 'FAIL'}"
    _emit(cfg, text)
    sys.exit(EXIT_OK if ok else EXIT_FAIL)


def _kv_text(title: str, d: dict) -> str:
    out = [title]
    for k, v in d.items():
        if isinstance(v, float):
            v = _g(v)
        out.append(f"  {k}: {v}")
    return "\n".join(out)


@main.command("check-c")
@click.argument("model_path", type=click.Path())
@common
def check_c(cfg: RunConfig, model_path: str) -> None:
    """Principal curvature counting and spectra against the common real part s0."""
    model = _load_valid(model_path)
    if not model.ambient.is_noncompact_like:
        _fail_input("check-c needs a non-compact model")
    rep = cartan.check_theorem_c(model, model.projection, cfg.tol, cfg.re_window, cfg.im_window)
    text = _dump(rep.to_dict()) if cfg.fmt == "json" else _kv_text(f"check-c: {'PASS' if rep.passed else 'FAIL'}", rep.to_dict())
    _emit(cfg, text)
    sys.exit(EXIT_OK if rep.passed else EXIT_FAIL)


@main.command("check-d")
@click.argument("model_path", type=click.Path())
@common
def check_d(cfg: RunConfig, model_path: str) -> None:
    """Unique focal radius, totally geodesic focal set and tube flow."""
    model = _load_valid(model_path)
    if not model.ambient.is_noncompact_like:
        _fail_input("check-d needs a non-compact model")
    rep = cartan.check_theorem_d(model, cfg.tol, cfg.membership_tol)
    text = _dump(rep.to_dict()) if cfg.fmt == "json" else _kv_text(f"check-d: {'PASS' if rep.passed else 'FAIL'}", rep.to_dict())
    _emit(cfg, text)
    sys.exit(EXIT_OK if rep.passed else EXIT_FAIL)


@main.group()
def fixtures() -> None:
    """Catalog of test models."""


@fixtures.command("list")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def fixtures_list(fmt: str) -> None:
    if fmt == "json":
        data = {name: {"family": s.family, "params": dict(s.params), "verified": s.verified} for name, s in CATALOG.items()}
        click.echo(_dump(data))
        return
    for name, s in CATALOG.items():
        params = " ".join(f"{k}={_g(v) if isinstance(v, float) else v}" for k, v in s.params.items())
        flag = "" if s.verified else "  [unverified]"
        click.echo(f"{name:24} {s.family:34} {params}{flag}")
    click.echo("families: " + ", ".join(BUILDERS))


@fixtures.command("build")
@click.argument("name")
@click.option("--param", "params", multiple=True, help="Override a parameter, key=value.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def fixtures_build(name: str, params: tuple[str, ...], out: str | None) -> None:
    """Emit a model JSON for a catalog entry or a family name."""
    try:
        overrides = parse_params(list(params))
        if name in CATALOG:
            spec = CATALOG[name].with_params(**overrides)
        elif name in BUILDERS:
            spec = FixtureSpec(name, overrides, name)
        else:
            _fail_input(f"unknown fixture {name!r}")
        model = build(spec)
    except (PoleParams, ValueError, KeyError) as exc:
        _fail_input(f"{name}: {exc}")
    text = model.to_json() + "\n"
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


@main.command("lifted-trace")
@click.option("--r1", type=float, required=True)
@click.option("--r2", type=float, required=True)
@click.option("--m1", type=int, required=True)
@click.option("--m2", type=int, required=True)
@click.option("--i0", type=int, default=1, show_default=True)
@click.option("-K", "--K", "ks", type=int, multiple=True, default=(1, 10, 100, 1000), show_default=True)
@click.option("--truncation", type=click.Choice(["symmetric", "ordered"]), default="symmetric", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def lifted_trace(r1, r2, m1, m2, i0, ks, truncation, fmt) -> None:
    """Partial sums of the lifted trace over the focal lattice."""
    try:
        rows = [(k, cartan.lifted_trace(r1, r2, m1, m2, i0, k, truncation)) for k in ks]
    except ValueError as exc:
        _fail_input(str(exc))
    if fmt == "json":
        click.echo(_dump([{"K": k, "sum": v} for k, v in rows]))
    else:
        for k, v in rows:
            click.echo(f"K={k:<8d} {_g(v)}")


@main.command()
@click.argument("model_path", type=click.Path())
@common
def scan(cfg: RunConfig, model_path: str) -> None:
    """Cross-check closed-form radii per block against a brute-force root scan."""
    from .focal import block_radii_complex, block_radii_real
    from .rootscan import scan_block_complex, scan_block_real

    model = _load_valid(model_path)
    dre, dim = default_windows(model)
    rw = cfg.re_window or dre
    iw = cfg.im_window or dim
    results = []
    for i, b in enumerate(model.blocks):
        if model.ambient.is_compact_like:
            closed = [complex(x) for x in block_radii_real(b.lam, b.mu, rw)]
            found = [complex(x) for x in scan_block_real(b.lam, b.mu, rw)]
        else:
            closed = block_radii_complex(b.lam, b.mu, rw, iw)
            found = scan_block_complex(b.lam, b.mu, rw, iw)
        missed = [z for z in closed if min((abs(z - w) for w in found), default=math.inf) > 1e-8]
        spurious = [w for w in found if min((abs(z - w) for z in closed), default=math.inf) > 1e-8]
        results.append({"block": i, "closed": len(closed), "scanned": len(found), "missed": [_z(z) for z in missed], "spurious": [_z(z) for z in spurious]})
    ok = all(not r["missed"] and not r["spurious"] for r in results)
    if cfg.fmt == "json":
        text = _dump({"passed": ok, "blocks": results})
    else:
        text = "\n".join(f"block {r['block']}: closed {r['closed']}, scanned {r['scanned']}, missed {r['missed']}, spurious {r['spurious']}" for r in results)
        text += f"\n{'PASS' if ok else 'FAIL'}"
    _emit(cfg, text)
    sys.exit(EXIT_OK if ok else EXIT_FAIL)


if __name__ == "__main__":
    main()
