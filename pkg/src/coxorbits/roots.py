"""Classification labels and exact realization data for finite Coxeter groups.

A group is named by a product label such as ``"A3"``, ``"I2(30)"`` or
``"B2xA1"``; factors are separated by ``x``.  Supported irreducible families:

* ``A(n>=1)``, ``B(n>=2)``, ``D(n>=4)`` with the usual coordinate roots,
* ``E6``, ``E7``, ``E8``, ``F4`` with their crystallographic roots,
* ``H3``, ``H4`` realized through the cosine form over Q(sqrt 5),
* ``I2(m>=3)``, handled combinatorially (no coordinates needed).

``simple_root_data`` returns, for each vector-realized family, a tuple of
simple roots, the symmetric bilinear form of the ambient space, and the
ambient dimension.  All coordinates are exact scalars.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import ParseError
from .linalg import Matrix, Vector
from .scalars import HALF, Scalar

_ZERO = Scalar.zero()
_ONE = Scalar.one()

#: Families realized by explicit root coordinates (everything but dihedral).
VECTOR_FAMILIES = frozenset("ABDEFH")

_FACTOR_RE = re.compile(r"([ABDEFH])(\d+)|I2\((\d+)\)")

_RANK_RANGE = {
    "A": (1, None),
    "B": (2, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "H": (3, 4),
}


@dataclass(frozen=True)
class IrreducibleDatum:
    """One irreducible factor: a family letter, its rank, and the dihedral
    parameter ``m`` (``None`` except for family ``I``)."""

    family: str
    rank: int
    param: int | None = None

    @property
    def label(self) -> str:
        if self.family == "I":
            return f"I2({self.param})"
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class CoxeterDatum:
    """A finite Coxeter group presented as a product of irreducible factors."""

    factors: tuple[IrreducibleDatum, ...]

    @property
    def label(self) -> str:
        return "x".join(f.label for f in self.factors)

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)


def parse_datum(text: str) -> CoxeterDatum:
    """Parse a product label like ``"A3"`` or ``"A2xI2(5)"``."""
    factors = []
    pos = 0
    for i, part in enumerate(text.split("x")):
        if i > 0:
            pos += 1  # the separator
        m = _FACTOR_RE.fullmatch(part)
        if m is None:
            raise ParseError(text, f"bad factor {part!r}", position=pos)
        if m.group(3) is not None:
            mm = int(m.group(3))
            if mm < 3:
                raise ParseError(text, "dihedral parameter must be >= 3", position=pos)
            factors.append(IrreducibleDatum("I", 2, mm))
        else:
            family, rank = m.group(1), int(m.group(2))
            lo, hi = _RANK_RANGE[family]
            if rank < lo or (hi is not None and rank > hi):
                raise ParseError(
                    text, f"rank {rank} out of range for family {family}", position=pos
                )
            factors.append(IrreducibleDatum(family, rank))
        pos += len(part)
    return CoxeterDatum(tuple(factors))


_EXCEPTIONAL_CENSUS = {
    ("E", 6): (51840, 36),
    ("E", 7): (2903040, 63),
    ("E", 8): (696729600, 120),
    ("F", 4): (1152, 24),
    ("H", 3): (120, 15),
    ("H", 4): (14400, 60),
}


def census_irreducible(ir: IrreducibleDatum) -> tuple[int, int]:
    """Classical ``(|W|, |T|)`` for one irreducible factor."""
    n = ir.rank
    if ir.family == "A":
        return factorial(n + 1), n * (n + 1) // 2
    if ir.family == "B":
        return 2**n * factorial(n), n * n
    if ir.family == "D":
        return 2 ** (n - 1) * factorial(n), n * n - n
    if ir.family == "I":
        assert ir.param is not None
        return 2 * ir.param, ir.param
    return _EXCEPTIONAL_CENSUS[(ir.family, n)]


def census(datum: CoxeterDatum) -> tuple[int, int]:
    """``(|W|, |T|)``: orders multiply over factors, reflections add."""
    order, nrefl = 1, 0
    for ir in datum.factors:
        o, t = census_irreducible(ir)
        order *= o
        nrefl += t
    return order, nrefl


def _unit(i: int, dim: int) -> Vector:
    return tuple(_ONE if j == i else _ZERO for j in range(dim))


def _diff(i: int, j: int, dim: int) -> Vector:
    return tuple(
        _ONE if k == i else (-_ONE if k == j else _ZERO) for k in range(dim)
    )


def _cosine_form(rank: int, edges: dict[tuple[int, int], Scalar]) -> Matrix:
    """The symmetric form with 1 on the diagonal and ``-cos(pi/m_ij)`` values
    supplied for bonded pairs (zero elsewhere)."""
    rows = []
    for i in range(rank):
        row = []
        for j in range(rank):
            if i == j:
                row.append(_ONE)
            else:
                key = (min(i, j), max(i, j))
                row.append(-edges.get(key, _ZERO))
        rows.append(tuple(row))
    return Matrix(tuple(rows))


def simple_root_data(ir: IrreducibleDatum) -> tuple[list[Vector], Matrix, int]:
    """Simple roots, bilinear form and ambient dimension for a vector family."""
    family, n = ir.family, ir.rank
    if family == "A":
        dim = n + 1
        return [_diff(i, i + 1, dim) for i in range(n)], Matrix.identity(dim), dim
    if family == "B":
        simples = [_diff(i, i + 1, n) for i in range(n - 1)] + [_unit(n - 1, n)]
        return simples, Matrix.identity(n), n
    if family == "D":
        simples = [_diff(i, i + 1, n) for i in range(n - 1)]
        plus = tuple(
            _ONE if k in (n - 2, n - 1) else _ZERO for k in range(n)
        )
        return simples + [plus], Matrix.identity(n), n
    if family == "F":
        half = HALF
        simples = [
            _diff(1, 2, 4),
            _diff(2, 3, 4),
            _unit(3, 4),
            (half, -half, -half, -half),
        ]
        return simples, Matrix.identity(4), 4
    if family == "E":
        dim = 8
        half = HALF
        alpha1 = tuple(
            half if k in (0, 7) else -half for k in range(dim)
        )
        alpha2 = tuple(
            _ONE if k in (0, 1) else _ZERO for k in range(dim)
        )
        simples = [alpha1, alpha2]
        simples += [_diff(k - 2, k - 3, dim) for k in range(3, n + 1)]
        return simples, Matrix.identity(dim), dim
    if family == "H":
        cos_pi_5 = Scalar(Fraction(1, 4), Fraction(1, 4))  # (1 + sqrt5)/4
        edges = {(0, 1): cos_pi_5, (1, 2): HALF}
        if n == 4:
            edges[(2, 3)] = HALF
        form = _cosine_form(n, edges)
        return [_unit(i, n) for i in range(n)], form, n
    raise ValueError(f"no vector realization for family {family!r}")
