"""Finite Coxeter groups with exact element arithmetic.

A group is a product of irreducible factors.  Vector-realized factors store
their full root system once and represent each element as a permutation of the
root list, so multiplication is index chasing and never touches coordinates.
Dihedral factors ``I2(m)`` represent elements as (rotation, flip) pairs.  An
element of a product holds one component per factor.

Elements serialize to a canonical text form (images of the simple roots, or
the rotation/flip pair), which drives all deterministic ordering and the
content-addressed keys of subgroups.  Python's salted ``hash`` is never used
for anything observable.

Whole-group materialization is guarded by an element cap (default 200,000),
and E7/E8 are refused outright; their root systems still work, so reflections
and subgroup closures below the cap remain available.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

from . import linalg, roots
from .errors import (
    CapExceeded,
    GroupMismatch,
    IndexOutOfRange,
    NotInSubgroup,
    UnsupportedType,
)
from .linalg import Matrix, Vector, vec_scale, vec_sub
from .scalars import Scalar

DEFAULT_MAX_ELEMENTS = 200_000

_ZERO = Scalar.zero()
_TWO = Scalar.from_int(2)

#: One component of an element: a root permutation, or a (rotation, flip) pair.
Comp = Union[tuple[int, ...], tuple[int, int]]


class VectorFactor:
    """An irreducible factor realized by an explicit root system."""

    kind = "vector"

    def __init__(self, ir: roots.IrreducibleDatum):
        self.datum = ir
        simples, form, ambient = roots.simple_root_data(ir)
        self.rank = len(simples)
        self.ambient = ambient
        self.form = form
        self.simples = tuple(simples)
        self.roots: tuple[Vector, ...] = self._close(simples)
        self.root_index = {v: i for i, v in enumerate(self.roots)}
        self.neg_of = tuple(
            self.root_index[tuple(-c for c in v)] for v in self.roots
        )
        self._classify_roots()
        self.num_reflections = len(self.positive_roots)
        self._refl_perms = [None] * self.num_reflections
        self._matrix_cache: dict = {}

    # -- construction ------------------------------------------------------

    def bilinear(self, u: Vector, v: Vector) -> Scalar:
        return sum(
            (a * b for a, b in zip(u, self.form.apply(v), strict=True)), _ZERO
        )

    def _reflect(self, alpha: Vector, norm: Scalar, v: Vector) -> Vector:
        c = (self.bilinear(alpha, v) + self.bilinear(alpha, v)) / norm
        return vec_sub(v, vec_scale(c, alpha))

    def _close(self, simples: Sequence[Vector]) -> tuple[Vector, ...]:
        norms = [self.bilinear(a, a) for a in simples]
        found: dict[Vector, int] = {v: i for i, v in enumerate(simples)}
        queue = list(simples)
        i = 0
        while i < len(queue):
            v = queue[i]
            i += 1
            for alpha, norm in zip(simples, norms):
                w = self._reflect(alpha, norm, v)
                if w not in found:
                    found[w] = len(queue)
                    queue.append(w)
        return tuple(queue)

    def _classify_roots(self) -> None:
        gram = Matrix.from_rows(
            [[self.bilinear(a, b) for b in self.simples] for a in self.simples]
        )
        positive = []
        for idx, v in enumerate(self.roots):
            rhs = tuple(self.bilinear(a, v) for a in self.simples)
            coords = linalg.solve_square(gram, rhs)
            if all(c.sign() >= 0 for c in coords):
                positive.append(idx)
        self.positive_roots = tuple(positive)
        refl_of = [0] * len(self.roots)
        for t, idx in enumerate(positive):
            refl_of[idx] = t
            refl_of[self.neg_of[idx]] = t
        self.refl_of_root = tuple(refl_of)
        # simple roots were seeded first, so they open the positive list and
        # the first `rank` reflection ids are the simple reflections
        assert self.positive_roots[: self.rank] == tuple(range(self.rank))
        self.simple_root_idx = tuple(range(self.rank))
        self.simple_refl_local = tuple(range(self.rank))

    # -- element components ------------------------------------------------

    def identity_comp(self) -> Comp:
        return tuple(range(len(self.roots)))

    def mult_comp(self, p: Comp, q: Comp) -> Comp:
        return tuple(map(p.__getitem__, q))

    def inv_comp(self, p: Comp) -> Comp:
        out = [0] * len(p)
        for i, pi in enumerate(p):
            out[pi] = i
        return tuple(out)

    def refl_comp(self, t: int) -> Comp:
        perm = self._refl_perms[t]
        if perm is None:
            alpha = self.roots[self.positive_roots[t]]
            norm = self.bilinear(alpha, alpha)
            perm = tuple(
                self.root_index[self._reflect(alpha, norm, v)] for v in self.roots
            )
            self._refl_perms[t] = perm
        return perm

    def conj_refl(self, a: int, b: int) -> int:
        """Local id of ``t_b t_a t_b``: the reflection at ``t_b``'s image of
        ``t_a``'s root."""
        return self.refl_of_root[self.refl_comp(b)[self.positive_roots[a]]]

    def serialize_comp(self, p: Comp) -> str:
        return ",".join(str(p[i]) for i in self.simple_root_idx)

    def fixed_codim_comp(self, p: Comp) -> int:
        return linalg.rank(self._difference_matrix(p))

    def _difference_matrix(self, p: Comp) -> Matrix:
        cols = [
            vec_sub(self.roots[p[i]], self.roots[i]) for i in self.simple_root_idx
        ]
        return Matrix.from_columns(cols)

    def kernel_x_basis(self, p: Comp) -> list[Vector]:
        """Basis, in simple-root coordinates, of the fixed essential space."""
        return linalg.kernel_basis(self._difference_matrix(p))

    @cached_property
    def _root_simple_gram(self) -> list[tuple[Scalar, ...]]:
        return [
            tuple(self.bilinear(self.roots[idx], a) for a in self.simples)
            for idx in self.positive_roots
        ]

    def refl_fixes_space(self, t: int, x_basis: Iterable[Vector]) -> bool:
        """Whether reflection ``t`` fixes every vector of an essential-space
        basis given in simple-root coordinates."""
        row = self._root_simple_gram[t]
        return all(
            not sum((x * g for x, g in zip(xv, row, strict=True)), _ZERO)
            for xv in x_basis
        )

    @cached_property
    def _basis_inverse(self) -> tuple[list[Vector], Matrix]:
        orth_rows = Matrix.from_rows(
            [self.form.apply(a) for a in self.simples]
        )
        complement = linalg.kernel_basis(orth_rows)
        basis = Matrix.from_columns(list(self.simples) + complement)
        return complement, linalg.inverse(basis)

    def matrix_comp(self, p: Comp) -> Matrix:
        complement, basis_inv = self._basis_inverse
        image_cols = [self.roots[p[i]] for i in self.simple_root_idx] + complement
        return Matrix.from_columns(image_cols) * basis_inv

    def root_vector(self, t: int) -> Vector:
        return self.roots[self.positive_roots[t]]


class DihedralFactor:
    """The dihedral group I2(m), handled without coordinates.

    Components are pairs ``(a, f)``: the rotation by ``2*pi*a/m`` when
    ``f == 0``, and the reflection whose line has angle ``pi*a/m`` when
    ``f == 1``.
    """

    kind = "dihedral"

    def __init__(self, ir: roots.IrreducibleDatum):
        self.datum = ir
        assert ir.param is not None
        self.m = ir.param
        self.rank = 2
        self.num_reflections = self.m
        self.simple_refl_local = (0, 1)

    def identity_comp(self) -> Comp:
        return (0, 0)

    def mult_comp(self, p: Comp, q: Comp) -> Comp:
        a, f = p
        b, g = q
        return ((a + b) % self.m if f == 0 else (a - b) % self.m, f ^ g)

    def inv_comp(self, p: Comp) -> Comp:
        a, f = p
        return p if f else ((-a) % self.m, 0)

    def refl_comp(self, t: int) -> Comp:
        return (t, 1)

    def conj_refl(self, a: int, b: int) -> int:
        return (2 * b - a) % self.m

    def serialize_comp(self, p: Comp) -> str:
        return f"{p[0]},{p[1]}"

    def fixed_codim_comp(self, p: Comp) -> int:
        a, f = p
        if f:
            return 1
        return 0 if a == 0 else 2


Factor = Union[VectorFactor, DihedralFactor]


def _make_factor(ir: roots.IrreducibleDatum) -> Factor:
    return DihedralFactor(ir) if ir.family == "I" else VectorFactor(ir)


class GroupElement:
    """An element of a :class:`CoxeterGroup`: one component per factor."""

    __slots__ = ("group", "comps")

    def __init__(self, group: CoxeterGroup, comps: tuple[Comp, ...]):
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "comps", comps)

    def __setattr__(self, name, value):
        raise AttributeError("GroupElement is immutable")

    def _check(self, other: GroupElement) -> None:
        if self.group is not other.group:
            raise GroupMismatch(
                f"elements of {self.group.name} and {other.group.name} cannot mix"
            )

    def __mul__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(self.group, self.group.multiply_comps(self.comps, other.comps))

    def inverse(self) -> GroupElement:
        return GroupElement(self.group, self.group.invert_comps(self.comps))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.group is other.group and self.comps == other.comps

    def __hash__(self) -> int:
        return hash((id(self.group), self.comps))

    @property
    def is_identity(self) -> bool:
        return self.comps == self.group.identity.comps

    def serialize(self) -> str:
        return self.group.serialize_comps(self.comps)

    def order(self) -> int:
        k = 1
        g = self
        while not g.is_identity:
            g = g * self
            k += 1
        return k

    def matrix(self) -> Matrix:
        """Block-diagonal ambient matrix (vector-realized factors only)."""
        blocks = []
        for f, c in zip(self.group.factors, self.comps):
            if f.kind != "vector":
                raise UnsupportedType(
                    "dihedral factors have no matrix realization; "
                    "use the component directly"
                )
            blocks.append(f.matrix_comp(c))
        total = sum(b.n_rows for b in blocks)
        rows = []
        offset = 0
        for b in blocks:
            for r in b.rows:
                rows.append(
                    (_ZERO,) * offset + r + (_ZERO,) * (total - offset - b.n_rows)
                )
            offset += b.n_rows
        return Matrix(tuple(rows))

    def __repr__(self) -> str:
        return f"<{self.group.name}: {self.serialize()}>"


class CoxeterGroup:
    """A finite Coxeter group built from a classification label."""

    def __init__(
        self,
        datum: roots.CoxeterDatum | str,
        cap: int = DEFAULT_MAX_ELEMENTS,
    ):
        if isinstance(datum, str):
            datum = roots.parse_datum(datum)
        self.datum = datum
        self.cap = cap
        self.factors: tuple[Factor, ...] = tuple(
            _make_factor(ir) for ir in datum.factors
        )
        self.census_order, self.num_reflections = roots.census(datum)
        built = sum(f.num_reflections for f in self.factors)
        assert built == self.num_reflections, (built, self.num_reflections)
        self._offsets = []
        off = 0
        for f in self.factors:
            self._offsets.append(off)
            off += f.num_reflections
        self._locate = tuple(
            (fi, local)
            for fi, f in enumerate(self.factors)
            for local in range(f.num_reflections)
        )
        self.identity = GroupElement(
            self, tuple(f.identity_comp() for f in self.factors)
        )
        self._cache: dict = {}

    # -- basics ------------------------------------------------------------

    @property
    def name(self) -> str:
        return self.datum.label

    @property
    def rank(self) -> int:
        return self.datum.rank

    def multiply_comps(self, g: tuple[Comp, ...], h: tuple[Comp, ...]) -> tuple[Comp, ...]:
        return tuple(
            f.mult_comp(a, b) for f, a, b in zip(self.factors, g, h)
        )

    def invert_comps(self, g: tuple[Comp, ...]) -> tuple[Comp, ...]:
        return tuple(f.inv_comp(c) for f, c in zip(self.factors, g))

    def serialize_comps(self, comps: tuple[Comp, ...]) -> str:
        return ";".join(
            f.serialize_comp(c) for f, c in zip(self.factors, comps)
        )

    def element(self, comps: tuple[Comp, ...]) -> GroupElement:
        return GroupElement(self, comps)

    # -- reflections -------------------------------------------------------

    def reflection_ids(self) -> range:
        return range(self.num_reflections)

    def reflection(self, t: int) -> GroupElement:
        if not 0 <= t < self.num_reflections:
            raise IndexOutOfRange(
                f"reflection index {t} not in [0, {self.num_reflections})"
            )
        fi, local = self._locate[t]
        comps = list(self.identity.comps)
        comps[fi] = self.factors[fi].refl_comp(local)
        return GroupElement(self, tuple(comps))

    def locate_reflection(self, t: int) -> tuple[int, int]:
        """Global reflection id -> (factor index, local id)."""
        return self._locate[t]

    def global_reflection_id(self, fi: int, local: int) -> int:
        return self._offsets[fi] + local

    @cached_property
    def simple_reflection_ids(self) -> tuple[int, ...]:
        out = []
        for fi, f in enumerate(self.factors):
            out.extend(self._offsets[fi] + s for s in f.simple_refl_local)
        return tuple(out)

    def conj_refl(self, a: int, b: int) -> int:
        """Global id of ``t_b t_a t_b``."""
        fa, la = self._locate[a]
        fb, lb = self._locate[b]
        if fa != fb:
            return a  # reflections in different factors commute
        return self._offsets[fa] + self.factors[fa].conj_refl(la, lb)

    @cached_property
    def reflection_serializations(self) -> tuple[str, ...]:
        return tuple(
            self.reflection(t).serialize() for t in range(self.num_reflections)
        )

    @cached_property
    def refl_conj_table(self) -> tuple[tuple[int, ...], ...]:
        """``table[a][b]`` is the global id of ``t_b t_a t_b``."""
        n = self.num_reflections
        return tuple(
            tuple(self.conj_refl(a, b) for b in range(n)) for a in range(n)
        )

    @cached_property
    def refl_class_labels(self) -> tuple[int, ...]:
        """W-conjugacy class of each reflection, labelled by its least member."""
        table = self.refl_conj_table
        simples = self.simple_reflection_ids
        labels = [-1] * self.num_reflections
        for t in range(self.num_reflections):
            if labels[t] >= 0:
                continue
            orbit = {t}
            frontier = [t]
            while frontier:
                new = []
                for a in frontier:
                    for s in simples:
                        b = table[a][s]
                        if b not in orbit:
                            orbit.add(b)
                            new.append(b)
                frontier = new
            label = min(orbit)
            for a in orbit:
                labels[a] = label
        return tuple(labels)

    # -- materialization ---------------------------------------------------

    def _forbid_whole_group(self) -> None:
        for ir in self.datum.factors:
            if ir.family == "E" and ir.rank >= 7:
                raise UnsupportedType(
                    f"whole-group computations are not supported for {ir.label}; "
                    "root-level operations still work"
                )

    def elements(self) -> tuple[GroupElement, ...]:
        """All elements, in canonical (serialization) order."""
        if "elements" not in self._cache:
            self._forbid_whole_group()
            if self.census_order > self.cap:
                raise CapExceeded("max_elements", self.cap, self.census_order)
            gens = [self.reflection(t).comps for t in self.simple_reflection_ids]
            seen = {self.identity.comps}
            frontier = [self.identity.comps]
            while frontier:
                new = []
                for g in frontier:
                    for s in gens:
                        h = self.multiply_comps(g, s)
                        if h not in seen:
                            seen.add(h)
                            new.append(h)
                frontier = new
            assert len(seen) == self.census_order, (len(seen), self.census_order)
            ordered = sorted(seen, key=self.serialize_comps)
            self._cache["elements"] = tuple(
                GroupElement(self, c) for c in ordered
            )
        return self._cache["elements"]

    def element_ids(self) -> dict[tuple[Comp, ...], int]:
        if "element_ids" not in self._cache:
            self._cache["element_ids"] = {
                g.comps: i for i, g in enumerate(self.elements())
            }
        return self._cache["element_ids"]

    @cached_property
    def refl_mult_table(self) -> list[list[int]]:
        """``table[t][e]`` is the element id of ``reflection(t) * element(e)``."""
        elems = self.elements()
        ids = self.element_ids()
        table = []
        for t in range(self.num_reflections):
            rc = self.reflection(t).comps
            table.append(
                [ids[self.multiply_comps(rc, g.comps)] for g in elems]
            )
        return table

    # -- subgroups ---------------------------------------------------------

    def closure(
        self, gens: Iterable[GroupElement], cap: int | None = None
    ) -> Subgroup:
        """The subgroup generated by ``gens`` (BFS closure, cap-guarded)."""
        limit = self.cap if cap is None else cap
        gens = tuple(gens)
        for g in gens:
            if g.group is not self:
                raise GroupMismatch("generator belongs to a different group")
        comps = self._closure_comps([g.comps for g in gens], limit)
        return Subgroup(
            self, gens, frozenset(GroupElement(self, c) for c in comps)
        )

    def _closure_comps(
        self, gen_comps: list[tuple[Comp, ...]], limit: int
    ) -> set[tuple[Comp, ...]]:
        seen = {self.identity.comps}
        seen.update(gen_comps)
        if len(seen) > limit:
            raise CapExceeded("max_elements", limit)
        frontier = list(seen)
        while frontier:
            new = []
            for g in frontier:
                for s in gen_comps:
                    h = self.multiply_comps(g, s)
                    if h not in seen:
                        seen.add(h)
                        new.append(h)
            if len(seen) > limit:
                raise CapExceeded("max_elements", limit)
            frontier = new
        return seen

    def generates_whole(self, refl_ids: Iterable[int]) -> bool:
        """Whether the given reflections generate the full group.

        Stops early: a proper subgroup has order at most half the group order,
        so the closure can be abandoned as soon as it passes that bound.
        """
        gen_comps = [self.reflection(t).comps for t in refl_ids]
        half = self.census_order // 2
        if len(self.factors) == 1 and self.factors[0].kind == "vector":
            # bare-permutation walk, skipping per-step tuple packing
            gens = [c[0] for c in gen_comps]
            seen = {self.identity.comps[0]}
            seen.update(gens)
            frontier = list(seen)
            while frontier:
                if len(seen) > half:
                    return True
                new = []
                for g in frontier:
                    for s in gens:
                        h = tuple(map(g.__getitem__, s))
                        if h not in seen:
                            seen.add(h)
                            new.append(h)
                frontier = new
            return len(seen) > half
        seen = {self.identity.comps}
        seen.update(gen_comps)
        frontier = list(seen)
        while frontier:
            if len(seen) > half:
                return True
            new = []
            for g in frontier:
                for s in gen_comps:
                    h = self.multiply_comps(g, s)
                    if h not in seen:
                        seen.add(h)
                        new.append(h)
            frontier = new
        return len(seen) > half

    def conjugacy_class(
        self, h: GroupElement, sub: Subgroup | None = None
    ) -> frozenset[GroupElement]:
        """Conjugacy class of ``h`` under a subgroup (default: whole group)."""
        if sub is None:
            gens = [self.reflection(t) for t in self.simple_reflection_ids]
        else:
            if h not in sub:
                raise NotInSubgroup(
                    f"{h!r} is not in the subgroup"
                )
            gens = list(sub.generators)
        orbit = {h}
        frontier = [h]
        gen_pairs = [(g, g.inverse()) for g in gens]
        while frontier:
            new = []
            for x in frontier:
                for g, ginv in gen_pairs:
                    y = g * x * ginv
                    if y not in orbit:
                        orbit.add(y)
                        new.append(y)
            frontier = new
        return frozenset(orbit)

    def subgroup_key(self, elements: Iterable[GroupElement]) -> str:
        """Content-addressed key: SHA-256 over sorted element serializations."""
        payload = "|".join(sorted(g.serialize() for g in elements))
        return hashlib.sha256(payload.encode()).hexdigest()

    def __repr__(self) -> str:
        return f"CoxeterGroup({self.name!r})"


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup given by its generators and full element set.

    Identity is by element set: two subgroups with the same elements are equal
    regardless of how they were generated.
    """

    group: CoxeterGroup
    generators: tuple[GroupElement, ...]
    elements: frozenset[GroupElement] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.elements

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group is other.group and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((id(self.group), self.elements))

    @property
    def is_whole_group(self) -> bool:
        return self.order == self.group.census_order

    @cached_property
    def canonical_key(self) -> str:
        return self.group.subgroup_key(self.elements)

    @cached_property
    def reflection_ids(self) -> tuple[int, ...]:
        """Global ids of the reflections lying in this subgroup."""
        return tuple(
            t
            for t in self.group.reflection_ids()
            if self.group.reflection(t) in self.elements
        )

    def conjugacy_class(self, h: GroupElement) -> frozenset[GroupElement]:
        return self.group.conjugacy_class(h, self)


def build_group(spec: str, cap: int = DEFAULT_MAX_ELEMENTS) -> CoxeterGroup:
    """Build the group named by a label such as ``"B3"`` or ``"A2xI2(5)"``."""
    return CoxeterGroup(roots.parse_datum(spec), cap=cap)
