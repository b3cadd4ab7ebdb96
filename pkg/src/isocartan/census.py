"""Census of irreducible symmetric spaces of non-compact type.

Computed rows come from hard-coded restricted root data; the published
values live in ``data/published_census.csv`` as closed-form expressions in the
family parameters and are compared instance by instance.
"""

from __future__ import annotations

import ast
import csv
import io
import json
import operator
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable, Iterable

from .rootsys import (
    CensusRow,
    RootSystemData,
    SymmetricSpaceEntry,
    census_entry,
)

COLUMNS = ("Type", "G/K", "#D+", "#D+^1", "m_G/K", "dim M")

# Rows whose case lies outside the published family's range: the computed
# root system (D_p, resp. D_2 = A_1 x A_1) differs from the B_p pattern.
FLAGGED = frozenset({("BDI", "q-p=0"), ("BDI2", "q=2")})


def _rs(family: str, rank: int, **mult: int) -> RootSystemData:
    return RootSystemData(family, rank, mult)


def _bdi(p: int, q: int) -> RootSystemData:
    if p == 1:
        return _uniform("A", 1, q - 1)
    if q == p:
        return _uniform("D", p, 1)
    if q - p == 1:
        return _uniform("B", p, 1)
    return _rs("B", p, short=q - p, long=1)


def _aiii(p: int, q: int) -> RootSystemData:
    if p == 1:
        return _rs("BC", 1, short=2 * (q - 1), long=1)
    return _rs("BC", p, short=2 * (q - p), middle=2, long=1)


def _cii(p: int, q: int) -> RootSystemData:
    if p == 1:
        return _rs("BC", 1, short=4 * (q - 1), long=3)
    return _rs("BC", p, short=4 * (q - p), middle=4, long=3)


def _diii(n: int) -> RootSystemData:
    k = n // 2
    if n % 2 == 0:
        return _rs("C", k, short=4, long=1)
    if k == 1:
        return _rs("BC", 1, short=4, long=1)
    return _rs("BC", k, short=4, middle=4, long=1)


def _iibd(n: int) -> RootSystemData:
    k = n // 2
    if n % 2:
        return _uniform("B", k, 2)
    return _uniform("D", k, 2)


_uniform = RootSystemData.uniform


BUILDERS: dict[str, Callable[..., RootSystemData]] = {
    "AI": lambda n: _uniform("A", n - 1, 1),
    "AII": lambda n: _uniform("A", n - 1, 4),
    "AIII": _aiii,
    "AIII_eq": lambda p: _rs("C", p, short=2, long=1),
    "BDI": _bdi,
    "BDI2": lambda q: _bdi(2, q),
    "BDI1": lambda q: _bdi(1, q),
    "DIII": _diii,
    "CI": lambda n: _uniform("C", n, 1),
    "CII": _cii,
    "CII_eq": lambda p: _rs("C", p, short=4, long=3),
    "EI": lambda: _uniform("E", 6, 1),
    "EII": lambda: _rs("F", 4, short=2, long=1),
    "EIII": lambda: _rs("BC", 2, short=8, middle=6, long=1),
    "EIV": lambda: _uniform("A", 2, 8),
    "EV": lambda: _uniform("E", 7, 1),
    "EVI": lambda: _rs("F", 4, short=4, long=1),
    "EVII": lambda: _rs("C", 3, short=8, long=1),
    "EVIII": lambda: _uniform("E", 8, 1),
    "EIX": lambda: _rs("F", 4, short=8, long=1),
    "FI": lambda: _uniform("F", 4, 1),
    "FII": lambda: _rs("BC", 1, short=8, long=7),
    "G": lambda: _uniform("G", 2, 1),
    "IIA": lambda n: _uniform("A", n - 1, 2),
    "IIBD": _iibd,
    "IIC": lambda n: _uniform("C", n, 2),
    "IIE6": lambda: _uniform("E", 6, 2),
    "IIE7": lambda: _uniform("E", 7, 2),
    "IIE8": lambda: _uniform("E", 8, 2),
    "IIF4": lambda: _uniform("F", 4, 2),
    "IIG2": lambda: _uniform("G", 2, 2),
}


_OPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}


def eval_expr(expr: str, params: dict[str, int]) -> Fraction:
    """Evaluate an arithmetic expression in the family parameters exactly."""

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            return Fraction(params[node.id])
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Pow):
                return left ** int(right)
            return _OPS[type(node.op)](left, right)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -walk(node.operand)
        raise ValueError(f"unsupported expression {expr!r}")

    return walk(ast.parse(expr, mode="eval"))


@dataclass(frozen=True)
class GoldenRow:
    table: int
    type: str
    quotient: str
    case: str
    family: str
    instances: tuple[dict[str, int], ...]
    exprs: tuple[str, str, str, str]


@dataclass(frozen=True)
class CensusLine:
    table: int
    type: str
    quotient: str
    case: str
    params: dict[str, int]
    computed: CensusRow
    published: tuple[int, int, int, int]
    family: str = ""

    @property
    def flagged(self) -> bool:
        return (self.family, self.case) in FLAGGED

    @property
    def matches(self) -> bool:
        return self.computed.as_tuple() == self.published

    @property
    def diff_columns(self) -> list[str]:
        return [
            name
            for name, a, b in zip(COLUMNS[2:], self.computed.as_tuple(), self.published)
            if a != b
        ]


def _parse_instances(text: str) -> tuple[dict[str, int], ...]:
    if not text.strip():
        return ({},)
    out = []
    for inst in text.split(";"):
        params = {}
        for pair in inst.split():
            key, val = pair.split("=")
            params[key] = int(val)
        out.append(params)
    return tuple(out)


def load_golden(text: str | None = None) -> list[GoldenRow]:
    if text is None:
        text = resources.files("isocartan").joinpath("data/published_census.csv").read_text()
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        rows.append(
            GoldenRow(
                table=int(rec["table"]),
                type=rec["type"],
                quotient=rec["quotient"],
                case=rec["case"],
                family=rec["family"],
                instances=_parse_instances(rec["instances"]),
                exprs=(rec["sharp_dp"], rec["sharp_dp1"], rec["m"], rec["dim_m"]),
            )
        )
    return rows


def build_entry(family: str, params: dict[str, int], label: str = "", quotient: str = "") -> SymmetricSpaceEntry:
    roots = BUILDERS[family](**params)
    name = quotient
    if "n" in params:
        name = name.replace("{2n}", str(2 * params["n"]))
    for key, val in params.items():
        name = name.replace("{" + key + "}", str(val))
    return SymmetricSpaceEntry(label or family, name, roots)


def compute_census(golden: Iterable[GoldenRow] | None = None) -> list[CensusLine]:
    lines = []
    for row in golden if golden is not None else load_golden():
        for params in row.instances:
            entry = build_entry(row.family, params, row.type, row.quotient)
            published = tuple(int(eval_expr(e, params)) for e in row.exprs)
            lines.append(
                CensusLine(row.table, row.type, entry.quotient_name, row.case, params, census_entry(entry), published, row.family)
            )
    return lines


def _cells(line: CensusLine) -> list[str]:
    c = line.computed
    return [line.type, line.quotient, str(c.sharp_dp), str(c.sharp_dp1), str(c.m), str(c.dim_m)]


def render_markdown(lines: list[CensusLine]) -> str:
    out = []
    for table in sorted({ln.table for ln in lines}):
        out.append(f"### Table {table}")
        out.append("")
        out.append("| " + " | ".join(COLUMNS) + " | published | status |")
        out.append("|" + "---|" * (len(COLUMNS) + 2))
        for ln in (x for x in lines if x.table == table):
            pub = ", ".join(str(v) for v in ln.published)
            status = "ok" if ln.matches else "DIFF " + ",".join(ln.diff_columns)
            if ln.flagged:
                status += " (flagged)"
            out.append("| " + " | ".join(_cells(ln)) + f" | {pub} | {status} |")
        out.append("")
    return "\n".join(out)


def render_csv(lines: list[CensusLine]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["Table", *COLUMNS, "published #D+", "published #D+^1", "published m_G/K", "published dim M", "match"])
    for ln in lines:
        w.writerow([ln.table, *_cells(ln), *ln.published, int(ln.matches)])
    return buf.getvalue()


def to_records(lines: list[CensusLine]) -> list[dict]:
    return [
        {
            "table": ln.table,
            "type": ln.type,
            "quotient": ln.quotient,
            "case": ln.case,
            "params": ln.params,
            "sharp_dp": ln.computed.sharp_dp,
            "sharp_dp1": ln.computed.sharp_dp1,
            "m": ln.computed.m,
            "dim_m": ln.computed.dim_m,
            "published": list(ln.published),
            "match": ln.matches,
            "flagged": ln.flagged,
        }
        for ln in lines
    ]


def render_json(lines: list[CensusLine]) -> str:
    return json.dumps(to_records(lines), indent=2, sort_keys=True)
