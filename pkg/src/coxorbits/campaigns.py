"""Verification campaigns: sweep a whole group and report per-item verdicts.

A campaign pairs one group with one named check (length formulas, orbit
bijections, generating-set classification, and so on) and emits a JSON-lines
report: a versioned header, a timestamp, one record per item in canonical
order, and a summary footer.  Reports are deterministic for a fixed config,
including under a worker pool, because items are enumerated up front and
records are emitted in item order no matter when workers finish.  Per-item
budget caps mark items skipped instead of aborting the run.
"""
from __future__ import annotations

import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from math import gcd
from typing import Callable

from . import absorder, gensets, hurwitz
from .budget import Budget
from .errors import CapExceeded, TypeMismatch
from .groups import CoxeterGroup, DihedralFactor, build_group

CAMPAIGN_NAMES = (
    "carter",
    "pqc-characterization",
    "conjecture",
    "min-full-transitivity",
    "lr-normal-form",
    "min-equals-min",
    "dihedral-crt",
    "class-multiset",
)

FORMAT_VERSION = 1

#: (item key fields, worker returning (passed, payload))
Item = tuple[dict, Callable[[Budget | None], tuple[bool, dict]]]


@dataclass(frozen=True)
class CampaignConfig:
    """One campaign invocation: the group, the check, and the knobs."""

    group: str
    campaign: str
    offsets: tuple[int, ...] = (0, 2)
    max_elements: int | None = None
    max_tuples: int | None = None
    max_mem_mb: float | None = None
    timeout_s: float | None = None
    jobs: int = 1
    out: str | None = None

    def __post_init__(self):
        if self.campaign not in CAMPAIGN_NAMES:
            raise ValueError(
                f"unknown campaign {self.campaign!r}; choose from {CAMPAIGN_NAMES}"
            )
        for cap in ("max_elements", "max_tuples", "max_mem_mb", "timeout_s"):
            value = getattr(self, cap)
            if value is not None and value <= 0:
                raise ValueError(f"{cap} must be positive, got {value}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be at least 1, got {self.jobs}")

    def item_budget(self) -> Budget | None:
        """A fresh budget per item, or None when every cap is unlimited."""
        if all(
            x is None
            for x in (self.max_tuples, self.max_mem_mb, self.timeout_s)
        ) and self.max_elements is None:
            return None
        return Budget(
            max_tuples=self.max_tuples,
            max_states=self.max_tuples,
            max_elements=self.max_elements,
            max_mem_mb=self.max_mem_mb,
            timeout_s=self.timeout_s,
        )

    def config_record(self) -> dict:
        """The semantic config echoed into the report header.  Parallelism
        and output location are excluded: they must not change the bytes."""
        return {
            "group": self.group,
            "campaign": self.campaign,
            "offsets": list(self.offsets),
            "max_elements": self.max_elements,
            "max_tuples": self.max_tuples,
            "max_mem_mb": self.max_mem_mb,
            "timeout_s": self.timeout_s,
        }


@dataclass(frozen=True)
class Report:
    """A finished campaign: the emitted lines plus the tallies."""

    lines: tuple[str, ...]
    checked: int
    passed: int
    failed: int
    skipped: int

    @property
    def exit_status(self) -> int:
        return 0 if self.failed == 0 else 1

    @property
    def text(self) -> str:
        return "\n".join(self.lines) + "\n"

    def write(self, path: str) -> None:
        with open(path, "w") as f:
            f.write(self.text)


def _encode(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def comparable_lines(text: str) -> list[str]:
    """Report lines that participate in golden comparison: everything except
    the timestamp record."""
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError:
            out.append(line)
            continue
        if isinstance(record, dict) and "timestamp" in record:
            continue
        out.append(line)
    return out


def golden_diff(report_text: str, golden_text: str) -> str | None:
    """None when the two reports agree outside their timestamps, otherwise a
    short description of the first difference."""
    got = comparable_lines(report_text)
    want = comparable_lines(golden_text)
    if got == want:
        return None
    for i, (a, b) in enumerate(zip(got, want)):
        if a != b:
            return f"line {i + 1} differs:\n  got:  {a}\n  want: {b}"
    return f"line count differs: got {len(got)}, want {len(want)}"


# -- shared helpers --------------------------------------------------------


def _bfs_lengths(w: CoxeterGroup) -> list[int]:
    """Cayley-graph distances from the identity over the reflection
    generators, independent of the rank-based length formula."""
    elems = w.elements()
    table = w.refl_mult_table
    ids = w.element_ids()
    dist = [-1] * len(elems)
    start = ids[w.identity.comps]
    dist[start] = 0
    frontier = [start]
    d = 0
    while frontier:
        d += 1
        new = []
        for e in frontier:
            for row in table:
                x = row[e]
                if dist[x] < 0:
                    dist[x] = d
                    new.append(x)
        frontier = new
    return dist


def _charge(budget: Budget | None, cap: str, amount: int = 1) -> None:
    if budget is not None:
        budget.charge(cap, amount)


def _warm_tables(w: CoxeterGroup) -> None:
    """Materialize the shared lazy tables before workers fan out, so threads
    only read them."""
    w.refl_conj_table
    w.reflection_serializations
    w.simple_reflection_ids


# -- campaign item builders ------------------------------------------------


def _items_carter(w: CoxeterGroup, cfg: CampaignConfig) -> list[Item]:
    elems = w.elements()
    ids = w.element_ids()
    table = w.refl_mult_table
    dist = _bfs_lengths(w)
    absorder.length_table(w)
    n_refl = w.num_reflections

    def make(index, g):
        def work(budget):
            _charge(budget, "max_states", n_refl)
            length = absorder.reflection_length(g)
            e = ids[g.comps]
            bfs = dist[e]
            below_by_length = {
                t for t in range(n_refl) if dist[table[t][e]] == dist[e] - 1
            }
            below_by_space = set(absorder.reflections_fixing(g))
            below_by_closure = set(absorder.parabolic_closure(g).reflection_ids)
            ok = (
                length == bfs
                and below_by_length == below_by_space == below_by_closure
            )
            return ok, {
                "length": length,
                "bfs_length": bfs,
                "reflections_below": len(below_by_length),
            }

        return {"item": index, "element": g.serialize()}, work

    return [make(i, g) for i, g in enumerate(elems)]


def _items_pqc(w: CoxeterGroup, cfg: CampaignConfig) -> list[Item]:
    elems = w.elements()
    _warm_tables(w)
    absorder.length_table(w)
    absorder.quasi_coxeter_elements(w)
    n = w.rank

    def make(index, g):
        def work(budget):
            cls = absorder.classify_element(g, budget=budget)
            pqc = cls.is_parabolic_quasi_coxeter
            transitive = hurwitz.hurwitz_transitive_on_reduced(g, budget=budget)
            below = absorder.below_some_quasi_coxeter(g)
            full = absorder.full_reflection_length(g, budget=budget)
            by_full = full == 2 * n - cls.length
            ok = pqc == transitive == below == by_full
            return ok, {
                "length": cls.length,
                "pqc": pqc,
                "hurwitz_transitive_reduced": transitive,
                "below_quasi_coxeter": below,
                "full_length": full,
            }

        return {"item": index, "element": g.serialize()}, work

    return [make(i, g) for i, g in enumerate(elems)]


def _pqc_elements(w: CoxeterGroup):
    absorder.length_table(w)
    return [
        g
        for g in w.elements()
        if absorder.classify_element(g).is_parabolic_quasi_coxeter
    ]


def _orbit_record(length: int, orbit: hurwitz.HurwitzOrbit) -> dict:
    return {
        "length": length,
        "orbit_size": orbit.size,
        "subgroup_order": orbit.invariant.subgroup_order,
        "subgroup_key": orbit.invariant.subgroup_key,
        "class_multiset": list(orbit.invariant.class_multiset),
        "representative": list(orbit.representative.factors),
    }


def _items_conjecture(w: CoxeterGroup, cfg: CampaignConfig) -> list[Item]:
    _warm_tables(w)
    items = []
    index = 0
    for g in _pqc_elements(w):
        base = absorder.reflection_length(g)
        for offset in cfg.offsets:
            length = base + offset

            def work(budget, g=g, length=length):
                report = hurwitz.verify_conjecture(g, length, budget=budget)
                return report.bijection, {
                    "num_factorizations": report.num_factorizations,
                    "num_orbits": len(report.orbits),
                    "orbits": [_orbit_record(length, o) for o in report.orbits],
                }

            items.append(
                (
                    {"item": index, "element": g.serialize(), "length": length},
                    work,
                )
            )
            index += 1
    return items


def _items_min_full(w: CoxeterGroup, cfg: CampaignConfig) -> list[Item]:
    elems = w.elements()
    _warm_tables(w)
    absorder.length_table(w)

    def make(index, g):
        def work(budget):
            full = absorder.full_reflection_length(g, budget=budget)
            orbits = hurwitz.partition_into_orbits(
                g, full, budget=budget, full_only=True
            )
            total = sum(o.size for o in orbits)
            return len(orbits) == 1, {
                "full_length": full,
                "num_orbits": len(orbits),
                "num_factorizations": total,
            }

        return {"item": index, "element": g.serialize()}, work

    return [make(i, g) for i, g in enumerate(elems)]


def _items_lr(w: CoxeterGroup, cfg: CampaignConfig) -> list[Item]:
    _warm_tables(w)
    items = []
    index = 0
    for g in _pqc_elements(w):
        base = absorder.reflection_length(g)
        for offset in cfg.offsets:
            length = base + offset

            def work(budget, g=g, length=length):
                orbits = hurwitz.partition_into_orbits(g, length, budget=budget)
                with_witness = sum(
                    1 for o in orbits if o.lr_witness is not None
                )
                total = sum(o.size for o in orbits)
                return with_witness == len(orbits), {
                    "num_factorizations": total,
                    "num_orbits": len(orbits),
                    "orbits_with_witness": with_witness,
                }

            items.append(
                (
                    {"item": index, "element": g.serialize(), "length": length},
                    work,
                )
            )
            index += 1
    return items


def _min_min_expected(w: CoxeterGroup) -> bool:
    """The classification's prediction: false exactly when some dihedral
    factor has three or more distinct prime factors."""
    for f, ir in zip(w.factors, w.datum.factors):
        if isinstance(f, DihedralFactor):
            m = f.m
            primes = 0
            d = 2
            while d * d <= m:
                if m % d == 0:
                    primes += 1
                    while m % d == 0:
                        m //= d
                d += 1
            if m > 1:
                primes += 1
            if primes >= 3:
                return False
    return True


def _items_min_min(w: CoxeterGroup, cfg: CampaignConfig) -> list[Item]:
    def work(budget):
        report = gensets.check_min_equals_min(w, budget=budget)
        expected = _min_min_expected(w)
        return report.holds == expected, {
            "holds": report.holds,
            "expected": expected,
            "mode": report.mode,
            "counterexamples": [list(c) for c in report.counterexamples],
            "orbits_checked": report.orbits_checked,
        }

    return [({"item": 0, "group": w.name}, work)]


def _coprime_splits(m: int) -> list[tuple[int, int, int]]:
    """All ways to write m as a product of three pairwise-coprime parts > 1,
    as ascending triples: the prime-power components distributed over three
    nonempty blocks."""
    powers = []
    rest = m
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            pk = 1
            while rest % d == 0:
                pk *= d
                rest //= d
            powers.append(pk)
        d += 1
    if rest > 1:
        powers.append(rest)
    splits = set()
    for assignment in itertools.product(range(3), repeat=len(powers)):
        if set(assignment) != {0, 1, 2}:
            continue
        parts = [1, 1, 1]
        for pk, block in zip(powers, assignment):
            parts[block] *= pk
        splits.add(tuple(sorted(parts)))
    return sorted(splits)


def _items_crt(w: CoxeterGroup, cfg: CampaignConfig) -> list[Item]:
    if len(w.factors) != 1 or not isinstance(w.factors[0], DihedralFactor):
        raise TypeMismatch(
            f"the dihedral-crt campaign needs an I2(m) group, not {w.name}"
        )
    m = w.factors[0].m
    items = []
    for index, (p, q, r) in enumerate(_coprime_splits(m)):

        def work(budget, p=p, q=q, r=r):
            _charge(budget, "max_tuples")
            triple = gensets.crt_construct(m, p, q, r)
            profile = tuple(gcd(a, m) for a in triple.values)
            lines = gensets.realize_triple(w, triple)
            refl = [w.reflection(t) for t in lines]
            whole = w.closure(refl).order == 2 * m
            pair_orders = []
            pairs_ok = True
            for (i, j), part in zip(((0, 1), (0, 2), (1, 2)), (p, q, r)):
                order = w.closure([refl[i], refl[j]]).order
                pair_orders.append(order)
                pairs_ok = pairs_ok and order == 2 * m // part
            ok = (
                profile == (p, q, r)
                and gensets.dihedral_generates(triple)
                and whole
                and pairs_ok
                and all(
                    not gensets.dihedral_pair_generates(triple, pr)
                    for pr in ((1, 2), (1, 3), (2, 3))
                )
            )
            return ok, {
                "triple": list(triple.values),
                "gcds": list(profile),
                "lines": list(lines),
                "pair_orders": pair_orders,
            }

        items.append(({"item": index, "split": [p, q, r]}, work))
    return items


def _items_class_multiset(w: CoxeterGroup, cfg: CampaignConfig) -> list[Item]:
    def work(budget):
        report = gensets.genset_class_multiset_invariance(w, budget=budget)
        return report.holds, {
            "holds": report.holds,
            "generating_orbits": report.generating_orbits,
            "num_multisets": len(report.multisets),
        }

    return [({"item": 0, "group": w.name}, work)]


_CAMPAIGNS = {
    "carter": _items_carter,
    "pqc-characterization": _items_pqc,
    "conjecture": _items_conjecture,
    "min-full-transitivity": _items_min_full,
    "lr-normal-form": _items_lr,
    "min-equals-min": _items_min_min,
    "dihedral-crt": _items_crt,
    "class-multiset": _items_class_multiset,
}


# -- the runner ------------------------------------------------------------


def run_campaign(cfg: CampaignConfig) -> Report:
    """Run one campaign and return its report.

    Item enumeration (and any shared preparation) happens sequentially, so
    worker threads only ever run independent per-item checks; records are
    emitted in item order regardless of completion order.
    """
    cap = cfg.max_elements
    w = build_group(cfg.group) if cap is None else build_group(cfg.group, cap=cap)
    items = _CAMPAIGNS[cfg.campaign](w, cfg)

    def run_item(item: Item) -> dict:
        key, work = item
        try:
            passed, payload = work(cfg.item_budget())
        except CapExceeded as e:
            return {**key, "status": "skip", "cap": e.cap}
        return {**key, "status": "pass" if passed else "fail", **payload}

    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(run_item, items))
    else:
        records = [run_item(item) for item in items]

    passed = sum(1 for r in records if r["status"] == "pass")
    failed = sum(1 for r in records if r["status"] == "fail")
    skipped = sum(1 for r in records if r["status"] == "skip")
    lines = [
        _encode({"format": FORMAT_VERSION, "config": cfg.config_record()}),
        _encode(
            {
                "timestamp": datetime.now(timezone.utc).isoformat(
                    timespec="seconds"
                )
            }
        ),
        *(_encode(r) for r in records),
        _encode(
            {
                "summary": {
                    "checked": len(records),
                    "passed": passed,
                    "failed": failed,
                    "skipped": skipped,
                }
            }
        ),
    ]
    return Report(
        lines=tuple(lines),
        checked=len(records),
        passed=passed,
        failed=failed,
        skipped=skipped,
    )
