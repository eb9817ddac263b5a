"""Reflection length, absolute order and the quasi-Coxeter classification.

Reflection length is computed geometrically as the codimension of the fixed
space, never by graph search; the Cayley-graph distance is kept in a separate
module as an independent check.  Absolute order is the partial order
``u <= v  iff  l(u) + l(u^-1 v) = l(v)``.

The parabolic closure of an element is the pointwise stabilizer of its fixed
space, realized here as the subgroup generated by every reflection whose
hyperplane contains that fixed space.  An element is quasi-Coxeter when some
reduced reflection factorization of it generates the whole group, and
parabolic quasi-Coxeter when some reduced factorization generates a parabolic
subgroup; that subgroup is then necessarily the parabolic closure, since a
reduced factorization always generates a subgroup of the closure with the
same fixed space.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from . import linalg
from .budget import Budget
from .errors import GroupMismatch
from .groups import CoxeterGroup, GroupElement, Subgroup


def reflection_length(g: GroupElement) -> int:
    """Codimension of the fixed space of ``g`` (factor by factor, exact)."""
    return sum(
        f.fixed_codim_comp(c) for f, c in zip(g.group.factors, g.comps)
    )


def length_table(w: CoxeterGroup) -> list[int]:
    """Reflection length of every element, indexed by canonical element id."""
    if "length_table" not in w._cache:
        w._cache["length_table"] = [
            reflection_length(g) for g in w.elements()
        ]
    return w._cache["length_table"]


def absolute_leq(u: GroupElement, v: GroupElement) -> bool:
    """Absolute order: ``u`` lies on a geodesic from the identity to ``v``."""
    if u.group is not v.group:
        raise GroupMismatch("absolute order compares elements of one group")
    return reflection_length(u) + reflection_length(u.inverse() * v) == reflection_length(v)


def _fixing_reflections(w: CoxeterGroup, comps_list: list[tuple]) -> list[int]:
    """Global ids of all reflections fixing (pointwise) the common fixed
    space of the given elements."""
    out: list[int] = []
    for fi, f in enumerate(w.factors):
        if f.kind == "vector":
            comps = [c[fi] for c in comps_list] or [f.identity_comp()]
            stacked = f._difference_matrix(comps[0])
            for c in comps[1:]:
                stacked = stacked.stack(f._difference_matrix(c))
            x_basis = linalg.kernel_basis(stacked)
            out.extend(
                w.global_reflection_id(fi, t)
                for t in range(f.num_reflections)
                if f.refl_fixes_space(t, x_basis)
            )
        else:
            # dihedral: the fixed space is the plane, a line, or the origin
            space: tuple = ("full",)
            for c in comps_list:
                a, flip = c[fi]
                this = ("line", a) if flip else (("full",) if a == 0 else ("point",))
                if this == ("full",) or this == space:
                    continue
                if space == ("full",):
                    space = this
                else:
                    space = ("point",)
            if space == ("point",):
                out.extend(
                    w.global_reflection_id(fi, t) for t in range(f.m)
                )
            elif space[0] == "line":
                out.append(w.global_reflection_id(fi, space[1]))
    return out


def reflections_fixing(g: GroupElement) -> tuple[int, ...]:
    """Reflections whose hyperplane contains the fixed space of ``g``,
    decided by linear algebra on the fixed spaces alone."""
    return tuple(_fixing_reflections(g.group, [g.comps]))


def parabolic_closure(g: GroupElement) -> Subgroup:
    """The smallest parabolic subgroup containing ``g``: the subgroup
    generated by the reflections fixing ``Fix(g)`` pointwise."""
    w = g.group
    ids = _fixing_reflections(w, [g.comps])
    return w.closure([w.reflection(t) for t in ids])


def is_parabolic(sub: Subgroup) -> bool:
    """Whether a reflection subgroup is the pointwise stabilizer of its own
    fixed space."""
    w = sub.group
    gen_comps = [g.comps for g in sub.generators]
    ids = _fixing_reflections(w, gen_comps)
    stab = w.closure([w.reflection(t) for t in ids])
    return stab == sub


def reduced_factorizations(
    g: GroupElement, budget: Budget | None = None
) -> Iterator[tuple[int, ...]]:
    """All reduced reflection factorizations of ``g``, in lexicographic order
    of the global reflection indices."""
    w = g.group
    lengths = length_table(w)
    mult = w.refl_mult_table
    ids = w.element_ids()
    n_refl = w.num_reflections

    start = ids[g.comps]
    prefix: list[int] = []

    def walk(q: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield tuple(prefix)
            return
        if budget is not None:
            budget.charge("max_tuples", n_refl)
        for t in range(n_refl):
            nq = mult[t][q]
            if lengths[nq] == remaining - 1:
                prefix.append(t)
                yield from walk(nq, remaining - 1)
                prefix.pop()

    yield from walk(start, lengths[start])


@dataclass(frozen=True)
class Classification:
    """Outcome of classifying one element against the quasi-Coxeter notions."""

    element: GroupElement
    length: int
    closure: Subgroup
    closure_is_whole: bool
    is_parabolic_quasi_coxeter: bool
    is_quasi_coxeter: bool
    witness: tuple[int, ...] | None
    all_factorizations_agree: bool | None

    @property
    def closure_order(self) -> int:
        return self.closure.order


def classify_element(
    g: GroupElement, strict: bool = False, budget: Budget | None = None
) -> Classification:
    """Decide the quasi-Coxeter properties of ``g``.

    By default the search stops at the first reduced factorization that
    generates the parabolic closure.  With ``strict=True`` every reduced
    factorization is closed and the report also states whether they all
    agreed (they provably do, which makes this a useful cross-check).
    """
    w = g.group
    target = parabolic_closure(g)
    target_order = target.order
    witness = None
    outcomes: set[bool] = set()
    for fact in reduced_factorizations(g, budget):
        gens = [w.reflection(t) for t in fact]
        generated = w.closure(gens)
        hit = generated.order == target_order
        outcomes.add(hit)
        if hit and witness is None:
            witness = fact
            if not strict:
                break
    is_pqc = witness is not None
    return Classification(
        element=g,
        length=reflection_length(g),
        closure=target,
        closure_is_whole=target.is_whole_group,
        is_parabolic_quasi_coxeter=is_pqc,
        is_quasi_coxeter=is_pqc and target.is_whole_group,
        witness=witness,
        all_factorizations_agree=(len(outcomes) <= 1) if strict else None,
    )


def is_parabolic_quasi_coxeter(
    g: GroupElement, strict: bool = False, budget: Budget | None = None
) -> bool:
    return classify_element(g, strict=strict, budget=budget).is_parabolic_quasi_coxeter


def is_quasi_coxeter(
    g: GroupElement, strict: bool = False, budget: Budget | None = None
) -> bool:
    return classify_element(g, strict=strict, budget=budget).is_quasi_coxeter


def quasi_coxeter_elements(w: CoxeterGroup) -> tuple[GroupElement, ...]:
    """All quasi-Coxeter elements, in canonical order (cached per group)."""
    if "qc_elements" not in w._cache:
        n = w.rank
        found = [
            g
            for g in w.elements()
            if reflection_length(g) == n and is_quasi_coxeter(g)
        ]
        w._cache["qc_elements"] = tuple(found)
    return w._cache["qc_elements"]


def below_some_quasi_coxeter(g: GroupElement) -> bool:
    """Whether ``g`` is below some quasi-Coxeter element in absolute order."""
    return any(absolute_leq(g, c) for c in quasi_coxeter_elements(g.group))


def _root_rank_tracker(w: CoxeterGroup):
    """Incremental rank of the span of chosen reflections' roots.

    Returns (state0, insert) where ``insert(state, t)`` gives the new state
    and whether the rank grew.  Vector factors keep an echelonized basis of
    root vectors; dihedral factors only count up to two distinct lines.
    """
    def insert(state, t: int):
        fi, local = w.locate_reflection(t)
        f = w.factors[fi]
        part = state[fi]
        if f.kind == "vector":
            v = list(f.root_vector(local))
            for lead, pivot in part:
                if v[lead]:
                    c = v[lead] / pivot[lead]
                    v = [a - c * b for a, b in zip(v, pivot)]
            lead = next((i for i, a in enumerate(v) if a), None)
            if lead is None:
                return state, False
            new_part = part + ((lead, tuple(v)),)
        else:
            if local in part:
                return state, False
            if len(part) >= 2:
                return state, False
            new_part = part + (local,)
        return state[:fi] + (new_part,) + state[fi + 1 :], True

    state0 = tuple(() for _ in w.factors)
    return state0, insert


def full_reflection_length(
    g: GroupElement, budget: Budget | None = None
) -> int:
    """Length of the shortest reflection factorization of ``g`` whose factors
    generate the whole group.

    Searches lengths ``l(g), l(g)+2, ...`` (parity is forced) by depth-first
    search.  Pruning: the remaining quotient must still factor into the
    remaining slots, and the roots chosen so far plus one per remaining slot
    must be able to span.  A branch succeeds as soon as its chosen
    reflections already generate the group, because the quotient-length
    check guarantees the remaining slots can be filled.
    """
    w = g.group
    n = w.rank
    lengths = length_table(w)
    mult = w.refl_mult_table
    ids = w.element_ids()
    n_refl = w.num_reflections
    whole = w.census_order
    start = ids[g.comps]
    base = lengths[start]
    state0, insert = _root_rank_tracker(w)

    closure_memo: dict[frozenset[int], bool] = {}

    def generates(chosen: frozenset[int]) -> bool:
        if chosen not in closure_memo:
            closure_memo[chosen] = w.generates_whole(chosen)
        return closure_memo[chosen]

    def search(q: int, remaining: int, chosen: frozenset[int], rank_state, rank_now: int) -> bool:
        if rank_now == n and generates(chosen):
            return True
        if remaining == 0:
            return False
        if budget is not None:
            budget.charge("max_tuples", n_refl)
        for t in range(n_refl):
            nq = mult[t][q]
            need = lengths[nq]
            if need > remaining - 1 or (remaining - 1 - need) % 2:
                continue
            new_state, grew = insert(rank_state, t)
            new_rank = rank_now + grew
            if new_rank + (remaining - 1) < n:
                continue
            if search(nq, remaining - 1, chosen | {t}, new_state, new_rank):
                return True
        return False

    target = base
    while True:
        if search(start, target, frozenset(), state0, 0):
            return target
        target += 2
        # a reduced factorization extended by generator pairs always works
        assert target <= base + 2 * n, "no full factorization found in bound"
