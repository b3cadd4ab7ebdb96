"""Restricted root systems with multiplicities.

Roots are stored in simple-root coordinates (integer vectors of length
``rank``).  A direction ``v`` in the maximal abelian subspace is given by the
values ``alpha_i(v)`` of the simple roots on it, so that
``alpha(v) = sum(c_i * v_i)`` is exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

Vector = tuple[Fraction, ...]

FAMILIES = ("A", "B", "C", "D", "BC", "E", "F", "G")

# Labels of the root length classes, ordered by increasing squared length.
LENGTH_LABELS = {
    1: ("root",),
    2: ("short", "long"),
    3: ("short", "middle", "long"),
}


class ZeroVector(ValueError):
    pass


class RootDataError(ValueError):
    pass


def _e(n: int, i: int, scale: Fraction | int = 1) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(scale)
    return v


def _sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    return [x - y for x, y in zip(a, b)]


def _add(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    return [x + y for x, y in zip(a, b)]


def simple_roots(family: str, rank: int) -> list[list[Fraction]]:
    """Simple roots in orthonormal coordinates (Bourbaki numbering)."""
    n = rank
    if family == "A":
        return [_sub(_e(n + 1, i), _e(n + 1, i + 1)) for i in range(n)]
    if family in ("B", "BC"):
        return [_sub(_e(n, i), _e(n, i + 1)) for i in range(n - 1)] + [_e(n, n - 1)]
    if family == "C":
        return [_sub(_e(n, i), _e(n, i + 1)) for i in range(n - 1)] + [_e(n, n - 1, 2)]
    if family == "D":
        if n < 2:
            raise RootDataError("D_n needs n >= 2")
        return [_sub(_e(n, i), _e(n, i + 1)) for i in range(n - 1)] + [
            _add(_e(n, n - 2), _e(n, n - 1))
        ]
    if family == "G":
        if n != 2:
            raise RootDataError("G only exists in rank 2")
        return [[Fraction(x) for x in (1, -1, 0)], [Fraction(x) for x in (-2, 1, 1)]]
    if family == "F":
        if n != 4:
            raise RootDataError("F only exists in rank 4")
        h = Fraction(1, 2)
        return [
            [Fraction(x) for x in (0, 1, -1, 0)],
            [Fraction(x) for x in (0, 0, 1, -1)],
            [Fraction(x) for x in (0, 0, 0, 1)],
            [h, -h, -h, -h],
        ]
    if family == "E":
        if n not in (6, 7, 8):
            raise RootDataError("E only exists in ranks 6, 7, 8")
        h = Fraction(1, 2)
        roots = [[h, -h, -h, -h, -h, -h, -h, h], _add(_e(8, 0), _e(8, 1))]
        roots.append(_sub(_e(8, 1), _e(8, 0)))
        for i in range(1, 6):
            roots.append(_sub(_e(8, i + 1), _e(8, i)))
        return roots[:n]
    raise RootDataError(f"unknown root system family {family!r}")


def _gram(vectors: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    return [[sum((x * y for x, y in zip(a, b)), Fraction(0)) for b in vectors] for a in vectors]


def _reduced_positive_roots(gram: list[list[Fraction]]) -> list[tuple[int, ...]]:
    # Root strings: beta + alpha_i is a root iff q = p - <beta, alpha_i^v> > 0.
    n = len(gram)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    ordered = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                pairing = 2 * sum(beta[j] * gram[j][i] for j in range(n)) / gram[i][i]
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        nxt.sort()
        ordered.extend(nxt)
        layer = nxt
    return ordered


@lru_cache(maxsize=None)
def positive_roots(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Positive roots in simple-root coordinates, sorted by height."""
    if family not in FAMILIES:
        raise RootDataError(f"unknown root system family {family!r}")
    if rank < 1:
        raise RootDataError("rank must be positive")
    base = "B" if family == "BC" else family
    roots = _reduced_positive_roots(_gram(simple_roots(base, rank)))
    if family == "BC":
        # 2 * short root of B_n; the short roots are e_i = alpha_i + ... + alpha_n.
        sq = _squared_lengths(base, rank, roots)
        shortest = min(sq)
        roots = roots + [tuple(2 * c for c in r) for r, s in zip(roots, sq) if s == shortest]
    return tuple(sorted(roots, key=lambda r: (sum(r), r)))


def _squared_lengths(family: str, rank: int, roots: Iterable[Sequence[int]]) -> list[Fraction]:
    g = _gram(simple_roots("B" if family == "BC" else family, rank))
    out = []
    for r in roots:
        out.append(sum((r[i] * r[j] * g[i][j] for i in range(rank) for j in range(rank)), Fraction(0)))
    return out


@lru_cache(maxsize=None)
def root_length_classes(family: str, rank: int) -> tuple[str, ...]:
    """Length label of every positive root, aligned with :func:`positive_roots`."""
    sq = _squared_lengths(family, rank, positive_roots(family, rank))
    distinct = sorted(set(sq))
    by_len = dict(zip(distinct, LENGTH_LABELS[len(distinct)]))
    return tuple(by_len[s] for s in sq)


def length_labels(family: str, rank: int) -> tuple[str, ...]:
    classes = root_length_classes(family, rank)
    return tuple(label for label in ("root", "short", "middle", "long") if label in classes)


def expected_count(family: str, rank: int) -> int:
    n = rank
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "BC": n * (n + 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n, -1),
        "F": 24,
        "G": 6,
    }[family]


@dataclass(frozen=True)
class RootSystemData:
    """Positive restricted roots with multiplicities attached per length class.

    ``multiplicity`` maps the length labels of :data:`LENGTH_LABELS`
    (``"root"``; ``"short"``/``"long"``; ``"short"``/``"middle"``/``"long"``)
    to ``dim p_alpha``.
    """

    family: str
    rank: int
    multiplicity: Mapping[str, int]
    positive: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    classes: tuple[str, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        roots = positive_roots(self.family, self.rank)
        if len(roots) != expected_count(self.family, self.rank):
            raise RootDataError(f"{self.type_tag}: generated {len(roots)} positive roots")
        labels = length_labels(self.family, self.rank)
        object.__setattr__(self, "positive", roots)
        object.__setattr__(self, "classes", root_length_classes(self.family, self.rank))
        object.__setattr__(self, "multiplicity", dict(self.multiplicity))
        missing = set(labels) - set(self.multiplicity)
        if missing:
            raise RootDataError(f"{self.type_tag}: no multiplicity for {sorted(missing)}")
        extra = set(self.multiplicity) - set(labels)
        if extra:
            raise RootDataError(f"{self.type_tag}: unknown length classes {sorted(extra)}")
        for label, m in self.multiplicity.items():
            if int(m) != m or m < 1:
                raise RootDataError(f"{self.type_tag}: multiplicity of {label} roots must be >= 1")

    @classmethod
    def uniform(cls, family: str, rank: int, mult: int) -> "RootSystemData":
        """All roots carry the same multiplicity."""
        return cls(family, rank, {label: mult for label in length_labels(family, rank)})

    @property
    def type_tag(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        return self.positive

    def mult(self, index: int) -> int:
        return self.multiplicity[self.classes[index]]

    @property
    def mults(self) -> list[int]:
        return [self.multiplicity[c] for c in self.classes]

    @property
    def n_positive(self) -> int:
        return len(self.positive)

    @property
    def n_rank_one(self) -> int:
        return sum(1 for m in self.mults if m == 1)

    @property
    def dimension(self) -> int:
        """``dim G/K = rank + sum of root multiplicities``."""
        return self.rank + sum(self.mults)


def spec_count_bound(n_multi: int, n_single: int, rank: int) -> int:
    """``2 * #(multi) + #(single) + {0, 1, 2}`` for rank 1, 2, >= 3."""
    if rank < 1:
        raise ValueError("rank must be positive")
    extra = 2 if rank >= 3 else (1 if rank == 2 else 0)
    return 2 * n_multi + n_single + extra


@dataclass(frozen=True)
class SymmetricSpaceEntry:
    label: str
    quotient_name: str
    roots: RootSystemData
    ambient_dim: int | None = None

    def __post_init__(self) -> None:
        if self.ambient_dim is None:
            object.__setattr__(self, "ambient_dim", self.roots.dimension)
        elif self.ambient_dim != self.roots.dimension:
            raise RootDataError(
                f"{self.label}: ambient_dim {self.ambient_dim} != rank + sum(mult) = {self.roots.dimension}"
            )

    @property
    def rank(self) -> int:
        return self.roots.rank


@dataclass(frozen=True)
class CensusRow:
    sharp_dp: int
    sharp_dp1: int
    m: int
    dim_m: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.sharp_dp, self.sharp_dp1, self.m, self.dim_m)


def census_entry(entry: SymmetricSpaceEntry) -> CensusRow:
    rs = entry.roots
    n1 = rs.n_rank_one
    return CensusRow(
        sharp_dp=rs.n_positive,
        sharp_dp1=n1,
        m=spec_count_bound(rs.n_positive - n1, n1, rs.rank),
        dim_m=entry.ambient_dim - 1,
    )


@dataclass(frozen=True)
class RootClass:
    beta: Fraction
    total_mult: int

    @property
    def is_rank_one_class(self) -> bool:
        return self.total_mult == 1


@dataclass(frozen=True)
class RootProjection:
    """Positive roots restricted to the line through ``v``, grouped by ``|alpha(v)|``.

    ``kernel_mult`` collects the root spaces with ``alpha(v) = 0``; together
    with the ``rank - 1`` flat directions they make up ``Ker R(v)``.
    """

    classes: tuple[RootClass, ...]
    kernel_mult: int = 0
    rank: int = 1

    def __post_init__(self) -> None:
        betas = [c.beta for c in self.classes]
        if len(set(betas)) != len(betas):
            raise RootDataError("projection classes must have distinct beta")
        if any(b <= 0 for b in betas):
            raise RootDataError("projection classes need beta > 0")
        if any(c.total_mult < 1 for c in self.classes):
            raise RootDataError("projection class multiplicities must be >= 1")

    @property
    def n_rank_one(self) -> int:
        return sum(1 for c in self.classes if c.is_rank_one_class)

    @property
    def n_multi(self) -> int:
        return len(self.classes) - self.n_rank_one

    @property
    def kernel_dim(self) -> int:
        return self.rank - 1 + self.kernel_mult

    def spec_bound(self) -> int:
        """Upper bound on the number of distinct principal curvatures."""
        return spec_count_bound(self.n_multi, self.n_rank_one, self.rank)

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "kernel_mult": self.kernel_mult,
            "classes": [
                {"beta": str(c.beta), "mult": c.total_mult} for c in self.classes
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "RootProjection":
        classes = tuple(
            RootClass(Fraction(str(c["beta"])), int(c["mult"])) for c in data["classes"]
        )
        return cls(classes, int(data.get("kernel_mult", 0)), int(data.get("rank", 1)))


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    return Fraction(x)


def pairing(root: Sequence[int], v: Sequence[Fraction]) -> Fraction:
    return sum((c * x for c, x in zip(root, v)), Fraction(0))


def project_roots(roots: RootSystemData, v: Sequence) -> RootProjection:
    """Group positive roots by ``|alpha(v)|`` and sum their multiplicities."""
    vv = tuple(_as_fraction(x) for x in v)
    if len(vv) != roots.rank:
        raise RootDataError(f"v has {len(vv)} coordinates, rank is {roots.rank}")
    if all(x == 0 for x in vv):
        raise ZeroVector("v must be nonzero")
    groups: dict[Fraction, int] = {}
    kernel = 0
    for root, m in zip(roots.positive, roots.mults):
        b = abs(pairing(root, vv))
        if b == 0:
            kernel += m
        else:
            groups[b] = groups.get(b, 0) + m
    classes = tuple(RootClass(b, groups[b]) for b in sorted(groups))
    return RootProjection(classes, kernel, roots.rank)


def jacobi_spectrum(proj: RootProjection, ambient) -> list[tuple[float, int]]:
    """Eigenvalues of ``R(v)`` on the tangent space with multiplicities.

    Non-compact type gives ``-beta**2``; compact type uses ``+beta**2``.
    The zero eigenvalue carries ``rank - 1`` plus the kernel root spaces.
    """
    kind = getattr(ambient, "kind", ambient)
    if kind == "spaceform":
        kind = "compact" if ambient.c > 0 else "noncompact"
    if kind not in ("compact", "noncompact"):
        raise ValueError(f"unknown ambient kind {kind!r}")
    sign = 1 if kind == "compact" else -1
    out = [(float(sign * c.beta**2), c.total_mult) for c in proj.classes]
    out.sort()
    if proj.kernel_dim > 0:
        out.append((0.0, proj.kernel_dim))
        out.sort()
    return out
