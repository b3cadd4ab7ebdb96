"""Block models of classical isoparametric hypersurfaces used as test vectors.

Rank-one families use holomorphic (quaternionic, octonionic) curvature
``+-4 k**2`` so that ``mu`` takes the values ``+-k**2`` and ``+-4 k**2``.
``RootDataTube`` builds the principal curvatures of a tube of radius ``s0``
directly from a projected restricted root system.
"""

from __future__ import annotations

import ast
import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Mapping

from .model import AmbientKind, CurvatureBlock, HypersurfaceModel
from .rootsys import RootProjection, RootSystemData, project_roots


class PoleParams(ValueError):
    pass


class UnknownFamily(KeyError):
    pass


FAMILIES = (
    "SphereGeodesicSphere",
    "RealHyperbolicTube",
    "EuclideanCylinder",
    "CliffordTorus",
    "ComplexProjectiveGeodesicSphere",
    "ComplexHyperbolicGeodesicSphere",
    "QuaternionicGeodesicSphere",
    "CayleyGeodesicSphere",
    "RootDataTube",
)

# Families whose multiplicity split has no independent oracle here.
UNVERIFIED = frozenset({"CayleyGeodesicSphere"})

# Directions in a* given by the values of the simple roots on them.
PROJECTIONS: dict[str, tuple[str, int, tuple[int, ...]]] = {
    "A2": ("A", 2, (1, 1)),
    "B2": ("B", 2, (0, 1)),
    "G2": ("G", 2, (0, 1)),
    "G2-regular": ("G", 2, (1, 3)),
}


def _cot(x: float) -> float:
    return math.cos(x) / math.sin(x)


def _coth(x: float) -> float:
    return 1.0 / math.tanh(x)


def _check_trig(*angles: float) -> None:
    for a in angles:
        if abs(math.sin(a)) < 1e-12:
            raise PoleParams(f"angle {a} hits a pole of cot")


def _check_positive(t: float, name: str = "t") -> None:
    if not t > 0:
        raise PoleParams(f"{name} must be positive, got {t}")


def _rank_one(compact: bool, t: float, k: float, m_top: int, m_rest: int) -> tuple[AmbientKind, list[CurvatureBlock]]:
    _check_positive(t)
    if compact:
        _check_trig(k * t, 2 * k * t)
        amb = AmbientKind.compact()
        top = CurvatureBlock(2 * k * _cot(2 * k * t), 4 * k * k, m_top)
        rest = CurvatureBlock(k * _cot(k * t), k * k, m_rest)
    else:
        amb = AmbientKind.noncompact()
        top = CurvatureBlock(2 * k * _coth(2 * k * t), -4 * k * k, m_top)
        rest = CurvatureBlock(k * _coth(k * t), -k * k, m_rest)
    blocks = [top] + ([rest] if m_rest > 0 else [])
    return amb, blocks


def _sphere(p: Mapping) -> HypersurfaceModel:
    n, t, c = int(p.get("n", 2)), float(p["t"]), float(p.get("c", 1.0))
    _check_positive(t)
    if c > 0:
        k = math.sqrt(c)
        _check_trig(k * t)
        lam = k * _cot(k * t)
    elif c < 0:
        k = math.sqrt(-c)
        lam = k * _coth(k * t)
    else:
        lam = 1.0 / t
    return HypersurfaceModel(AmbientKind.spaceform(c), (CurvatureBlock(lam, c, n - 1),))


def _real_hyperbolic_tube(p: Mapping) -> HypersurfaceModel:
    n, k, t = int(p.get("n", 3)), int(p.get("k", 1)), float(p["t"])
    _check_positive(t)
    if not 0 <= k <= n - 2:
        raise PoleParams("tube core dimension k must lie in [0, n-2]")
    blocks = [CurvatureBlock(_coth(t), -1.0, n - 1 - k)]
    if k:
        blocks.append(CurvatureBlock(math.tanh(t), -1.0, k))
    return HypersurfaceModel(AmbientKind.spaceform(-1.0), tuple(blocks))


def _euclidean_cylinder(p: Mapping) -> HypersurfaceModel:
    n, k, t = int(p.get("n", 3)), int(p.get("k", 1)), float(p["t"])
    _check_positive(t)
    if not 0 <= k <= n - 2:
        raise PoleParams("flat factor dimension k must lie in [0, n-2]")
    blocks = [CurvatureBlock(1.0 / t, 0.0, n - 1 - k)]
    if k:
        blocks.append(CurvatureBlock(0.0, 0.0, k))
    return HypersurfaceModel(AmbientKind.spaceform(0.0), tuple(blocks))


def _clifford(p: Mapping) -> HypersurfaceModel:
    t, m1, m2 = float(p["t"]), int(p.get("m1", 1)), int(p.get("m2", 1))
    _check_trig(t)
    if not 0 < t < math.pi / 2:
        raise PoleParams("t must lie in (0, pi/2)")
    return HypersurfaceModel(
        AmbientKind.spaceform(1.0),
        (CurvatureBlock(_cot(t), 1.0, m1), CurvatureBlock(-math.tan(t), 1.0, m2)),
    )


def _bc1(compact: bool, short: int, long: int) -> RootProjection | None:
    """Projection of the rank-one root system ``{a, 2a}`` with ``a(v) = 1``."""
    if compact or short < 1:
        return None
    return project_roots(RootSystemData("BC", 1, {"short": short, "long": long}), (1,))


def _complex(compact: bool) -> Callable[[Mapping], HypersurfaceModel]:
    def build(p: Mapping) -> HypersurfaceModel:
        n = int(p.get("n", 2))
        amb, blocks = _rank_one(compact, float(p["t"]), float(p.get("scale", 1.0)), 1, 2 * n - 2)
        return HypersurfaceModel(amb, tuple(blocks), projection=_bc1(compact, 2 * n - 2, 1))

    return build


def _ambient_flag(p: Mapping) -> bool:
    kind = str(p.get("ambient", "compact"))
    if kind not in ("compact", "noncompact"):
        raise PoleParams(f"ambient must be compact or noncompact, got {kind!r}")
    return kind == "compact"


def _quaternionic(p: Mapping) -> HypersurfaceModel:
    n = int(p.get("n", 2))
    compact = _ambient_flag(p)
    amb, blocks = _rank_one(compact, float(p["t"]), float(p.get("scale", 1.0)), 3, 4 * n - 4)
    return HypersurfaceModel(amb, tuple(blocks), projection=_bc1(compact, 4 * n - 4, 3))


def _cayley(p: Mapping) -> HypersurfaceModel:
    compact = _ambient_flag(p)
    amb, blocks = _rank_one(compact, float(p["t"]), float(p.get("scale", 1.0)), 7, 8)
    return HypersurfaceModel(amb, tuple(blocks), projection=_bc1(compact, 8, 7))


def projection_for(name: str, mult: int = 1) -> RootProjection:
    family, rank, v = PROJECTIONS[name]
    return project_roots(RootSystemData.uniform(family, rank, mult), v)


def _as_betas(value: Any) -> frozenset[Fraction]:
    if value is None or value == "":
        return frozenset()
    if isinstance(value, (int, float, Fraction)):
        return frozenset({Fraction(str(value))})
    if isinstance(value, str):
        return frozenset(Fraction(x.strip()) for x in value.split(",") if x.strip())
    return frozenset(Fraction(str(x)) for x in value)


def root_data_tube(proj: RootProjection, s0: float, vertical: frozenset[Fraction], d0_vertical: int = 0) -> list[CurvatureBlock]:
    """Tube spectra: ``beta coth(beta s0)`` on vertical and ``beta tanh(beta s0)`` on horizontal classes."""
    _check_positive(s0, "s0")
    known = {c.beta for c in proj.classes}
    if not vertical <= known:
        raise PoleParams(f"vertical betas {sorted(map(str, vertical - known))} are not projection classes")
    if not 0 <= d0_vertical <= proj.kernel_dim:
        raise PoleParams(f"d0_vertical must lie in [0, {proj.kernel_dim}]")
    blocks = []
    for c in proj.classes:
        b = float(c.beta)
        lam = b * _coth(b * s0) if c.beta in vertical else b * math.tanh(b * s0)
        blocks.append(CurvatureBlock(lam, -b * b, c.total_mult))
    if d0_vertical:
        blocks.append(CurvatureBlock(1.0 / s0, 0.0, d0_vertical))
    if proj.kernel_dim - d0_vertical:
        blocks.append(CurvatureBlock(0.0, 0.0, proj.kernel_dim - d0_vertical))
    return blocks


def _root_data_tube(p: Mapping) -> HypersurfaceModel:
    name = str(p.get("projection", "A2"))
    if name not in PROJECTIONS:
        raise PoleParams(f"unknown projection {name!r}; known: {', '.join(PROJECTIONS)}")
    proj = projection_for(name, int(p.get("mult", 1)))
    vertical = _as_betas(p.get("vertical", "2"))
    blocks = root_data_tube(proj, float(p.get("s0", 0.7)), vertical, int(p.get("d0_vertical", 0)))
    return HypersurfaceModel(AmbientKind.noncompact(), tuple(blocks), projection=proj)


BUILDERS: dict[str, Callable[[Mapping], HypersurfaceModel]] = {
    "SphereGeodesicSphere": _sphere,
    "RealHyperbolicTube": _real_hyperbolic_tube,
    "EuclideanCylinder": _euclidean_cylinder,
    "CliffordTorus": _clifford,
    "ComplexProjectiveGeodesicSphere": _complex(True),
    "ComplexHyperbolicGeodesicSphere": _complex(False),
    "QuaternionicGeodesicSphere": _quaternionic,
    "CayleyGeodesicSphere": _cayley,
    "RootDataTube": _root_data_tube,
}


@dataclass(frozen=True)
class FixtureSpec:
    family: str
    params: Mapping[str, Any] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self) -> None:
        if self.family not in BUILDERS:
            raise UnknownFamily(self.family)

    @property
    def verified(self) -> bool:
        return self.family not in UNVERIFIED

    def with_params(self, **params: Any) -> "FixtureSpec":
        return FixtureSpec(self.family, {**self.params, **params}, self.name)


def build(spec: FixtureSpec) -> HypersurfaceModel:
    model = BUILDERS[spec.family](spec.params)
    label = spec.name or spec.family
    return HypersurfaceModel(model.ambient, model.blocks, label, model.projection)


PI = math.pi

CATALOG: dict[str, FixtureSpec] = {
    spec.name: spec
    for spec in [
        FixtureSpec("SphereGeodesicSphere", {"n": 3, "t": 1.0}, "s3-sphere"),
        FixtureSpec("SphereGeodesicSphere", {"n": 5, "t": PI / 3, "c": 4.0}, "s5-sphere-c4"),
        FixtureSpec("CliffordTorus", {"t": PI / 4, "m1": 2, "m2": 2}, "clifford-pi4"),
        FixtureSpec("CliffordTorus", {"t": 0.4, "m1": 1, "m2": 3}, "clifford-0.4"),
        FixtureSpec("RealHyperbolicTube", {"n": 4, "k": 1, "t": 0.8}, "rh4-tube"),
        FixtureSpec("RealHyperbolicTube", {"n": 3, "k": 0, "t": 1.2}, "rh3-sphere"),
        FixtureSpec("EuclideanCylinder", {"n": 4, "k": 2, "t": 1.5}, "e4-cylinder"),
        FixtureSpec("ComplexProjectiveGeodesicSphere", {"n": 2, "t": PI / 6}, "cp2-sphere"),
        FixtureSpec("ComplexProjectiveGeodesicSphere", {"n": 4, "t": 0.5}, "cp4-sphere"),
        FixtureSpec("ComplexHyperbolicGeodesicSphere", {"n": 2, "t": 1.0}, "ch2-sphere"),
        FixtureSpec("ComplexHyperbolicGeodesicSphere", {"n": 4, "t": 0.6}, "ch4-sphere"),
        FixtureSpec("QuaternionicGeodesicSphere", {"ambient": "compact", "n": 2, "t": PI / 5}, "hp2-sphere"),
        FixtureSpec("QuaternionicGeodesicSphere", {"ambient": "noncompact", "n": 2, "t": 0.9}, "hh2-sphere"),
        FixtureSpec("CayleyGeodesicSphere", {"ambient": "compact", "t": 0.5}, "op2-sphere"),
        FixtureSpec("CayleyGeodesicSphere", {"ambient": "noncompact", "t": 0.5}, "oh2-sphere"),
        FixtureSpec("RootDataTube", {"projection": "A2", "s0": 0.7, "vertical": "2"}, "a2-tube"),
        FixtureSpec("RootDataTube", {"projection": "B2", "s0": 0.7, "vertical": "1,2"}, "b2-tube"),
        FixtureSpec("RootDataTube", {"projection": "G2", "s0": 0.7, "vertical": "2"}, "g2-tube"),
        FixtureSpec("RootDataTube", {"projection": "G2-regular", "s0": 0.7, "vertical": ""}, "g2-regular-horizontal"),
    ]
}


def catalog_models() -> dict[str, HypersurfaceModel]:
    return {name: build(spec) for name, spec in CATALOG.items()}


_OPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}


def parse_value(text: str) -> Any:
    """Parse a ``--param`` value: numbers, ``pi`` arithmetic, or a bare string."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError:
        return text

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return node.value
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](walk(node.left), walk(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -walk(node.operand)
        raise ValueError

    try:
        return walk(tree)
    except ValueError:
        return text


def parse_params(items: list[str]) -> dict[str, Any]:
    out = {}
    for item in items:
        if "=" not in item:
            raise ValueError(f"parameter {item!r} is not of the form key=value")
        key, val = item.split("=", 1)
        out[key.strip()] = parse_value(val)
    return out
