"""Block model of a curvature-adapted hypersurface at a point.

The tangent space splits into simultaneous eigenspaces of the shape
operator ``A`` and the Jacobi operator ``R(v)``.  Each eigenspace is a
:class:`CurvatureBlock` ``(lam, mu, mult)``; the list of blocks plus the
ambient kind is the whole model.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from .rootsys import RootProjection

NEAR_DUPLICATE = 1e-12
PROPER_TOL = 1e-9


class ModelError(ValueError):
    """Malformed model input; ``field`` names the offending entry."""

    def __init__(self, message: str, field: str = ""):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


class WrongAmbient(ValueError):
    pass


@dataclass(frozen=True)
class AmbientKind:
    kind: str
    c: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("compact", "noncompact", "spaceform"):
            raise ModelError(f"unknown ambient kind {self.kind!r}", "ambient.kind")
        if self.kind == "spaceform":
            if self.c is None or not math.isfinite(self.c):
                raise ModelError("space form needs a finite curvature c", "ambient.c")
        elif self.c is not None:
            raise ModelError(f"{self.kind} ambient takes no curvature", "ambient.c")

    @classmethod
    def compact(cls) -> "AmbientKind":
        return cls("compact")

    @classmethod
    def noncompact(cls) -> "AmbientKind":
        return cls("noncompact")

    @classmethod
    def spaceform(cls, c: float) -> "AmbientKind":
        return cls("spaceform", float(c))

    @property
    def is_compact_like(self) -> bool:
        """Real focal radii with the trigonometric kernel."""
        return self.kind == "compact" or (self.kind == "spaceform" and self.c > 0)

    @property
    def is_noncompact_like(self) -> bool:
        """Complex focal radii with the hyperbolic kernel."""
        return self.kind == "noncompact" or (self.kind == "spaceform" and self.c <= 0)

    def mu_ok(self, mu: float) -> bool:
        if self.kind == "compact":
            return mu >= 0
        if self.kind == "noncompact":
            return mu <= 0
        return mu == self.c

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"kind": self.kind}
        if self.c is not None:
            d["c"] = self.c
        return d


@dataclass(frozen=True)
class CurvatureBlock:
    lam: float
    mu: float
    mult: int

    @property
    def pair(self) -> tuple[float, float]:
        return (self.lam, self.mu)

    def to_dict(self) -> dict:
        return {"lambda": self.lam, "mu": self.mu, "mult": self.mult}


@dataclass(frozen=True)
class HypersurfaceModel:
    ambient: AmbientKind
    blocks: tuple[CurvatureBlock, ...]
    name: str = ""
    projection: RootProjection | None = field(default=None, compare=True)

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(self.blocks))

    @property
    def dim(self) -> int:
        return sum(b.mult for b in self.blocks)

    @property
    def spec_a(self) -> list[float]:
        return sorted({b.lam for b in self.blocks})

    @property
    def spec_r(self) -> list[float]:
        return sorted({b.mu for b in self.blocks})

    def merged(self) -> "HypersurfaceModel":
        """Blocks with identical ``(lam, mu)`` summed, first-seen order kept."""
        acc: dict[tuple[float, float], int] = {}
        for b in self.blocks:
            acc[b.pair] = acc.get(b.pair, 0) + b.mult
        blocks = tuple(CurvatureBlock(lam, mu, m) for (lam, mu), m in acc.items())
        return HypersurfaceModel(self.ambient, blocks, self.name, self.projection)

    def with_blocks(self, blocks: Iterable[CurvatureBlock], name: str | None = None) -> "HypersurfaceModel":
        return HypersurfaceModel(self.ambient, tuple(blocks), self.name if name is None else name, self.projection)

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "ambient": self.ambient.to_dict(),
            "blocks": [b.to_dict() for b in self.blocks],
        }
        if self.projection is not None:
            d["projection"] = self.projection.to_dict()
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping) -> "HypersurfaceModel":
        if not isinstance(data, Mapping):
            raise ModelError("model must be a JSON object")
        amb = data.get("ambient")
        if not isinstance(amb, Mapping) or "kind" not in amb:
            raise ModelError("missing or malformed", "ambient")
        c = amb.get("c")
        if c is not None and not isinstance(c, (int, float)):
            raise ModelError("must be a number", "ambient.c")
        ambient = AmbientKind(amb["kind"], None if c is None else float(c))
        raw = data.get("blocks")
        if not isinstance(raw, list):
            raise ModelError("must be a list", "blocks")
        blocks = []
        for i, b in enumerate(raw):
            where = f"blocks[{i}]"
            if not isinstance(b, Mapping):
                raise ModelError("must be an object", where)
            for key in ("lambda", "mu", "mult"):
                if key not in b:
                    raise ModelError("missing", f"{where}.{key}")
                if isinstance(b[key], bool) or not isinstance(b[key], (int, float)):
                    raise ModelError("must be a number", f"{where}.{key}")
            if int(b["mult"]) != b["mult"]:
                raise ModelError("must be an integer", f"{where}.mult")
            blocks.append(CurvatureBlock(float(b["lambda"]), float(b["mu"]), int(b["mult"])))
        proj = data.get("projection")
        try:
            projection = RootProjection.from_dict(proj) if proj is not None else None
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelError(str(exc), "projection") from exc
        return cls(ambient, tuple(blocks), str(data.get("name", "")), projection)

    @classmethod
    def from_json(cls, text: str) -> "HypersurfaceModel":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ModelError(f"invalid JSON ({exc.msg} at line {exc.lineno})") from exc
        return cls.from_dict(data)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]
    warnings: tuple[str, ...]
    model: HypersurfaceModel

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(model: HypersurfaceModel, expected_dim: int | None = None) -> ValidationReport:
    """Check block invariants and return the merged model alongside."""
    violations: list[str] = []
    warnings: list[str] = []
    if not model.blocks:
        violations.append("blocks: model has no blocks")
    for i, b in enumerate(model.blocks):
        if b.mult < 1:
            violations.append(f"blocks[{i}]: mult must be >= 1, got {b.mult}")
        if not (math.isfinite(b.lam) and math.isfinite(b.mu)):
            violations.append(f"blocks[{i}]: lambda and mu must be finite")
            continue
        if not model.ambient.mu_ok(b.mu):
            if model.ambient.kind == "spaceform":
                violations.append(f"blocks[{i}]: mu value {b.mu} differs from space form curvature {model.ambient.c}")
            else:
                violations.append(f"blocks[{i}]: mu sign {b.mu} not allowed for {model.ambient.kind} type")
    seen: dict[tuple[float, float], int] = {}
    for i, b in enumerate(model.blocks):
        if b.pair in seen:
            warnings.append(f"blocks[{i}]: duplicate of blocks[{seen[b.pair]}] merged")
        else:
            for pair, j in seen.items():
                if math.dist(pair, b.pair) < NEAR_DUPLICATE:
                    warnings.append(f"blocks[{i}]: near-duplicate of blocks[{j}] not merged")
            seen[b.pair] = i
    merged = model.merged()
    if expected_dim is not None and merged.dim != expected_dim:
        violations.append(f"dim: block multiplicities sum to {merged.dim}, expected {expected_dim}")
    return ValidationReport(tuple(violations), tuple(warnings), merged)


@dataclass(frozen=True)
class ProperReport:
    proper: bool
    witnesses: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.proper


def is_proper(model: HypersurfaceModel, tol: float = PROPER_TOL) -> ProperReport:
    """No block with ``mu < 0`` has ``lam = +-sqrt(-mu)``.

    Witnesses are indices of offending blocks.
    """
    if not model.ambient.is_noncompact_like:
        raise WrongAmbient("properness is defined for non-compact type only")
    bad = []
    for i, b in enumerate(model.blocks):
        if b.mu < 0:
            root = math.sqrt(-b.mu)
            if abs(b.lam - root) <= tol or abs(b.lam + root) <= tol:
                bad.append(i)
    return ProperReport(not bad, tuple(bad))
