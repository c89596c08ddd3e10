"""Inverse-system towers and the per-level condition verifiers.

A Tower holds a finite chunk of an inverse system: groups G_1 .. G_N,
surjections rho_n: G_{n+1} -> G_n, and optionally a designated normal
subgroup A_n per level.  P_n means rho_n(A_{n+1}); it is always computed
from the maps, never stored.  Each verifier walks the levels and
evaluates the finite conditions whose inverse-limit analogues
characterize just infinite or hereditarily just infinite groups,
producing one verdict per condition per level.

Verdict semantics: "fail" always carries a witness (a subgroup or an
explanation), "skipped" always carries a reason.  A skip is benign when
it only reflects the finite boundary of the data (the top level has no
P_n, the first level has no incoming map, no class descriptor was
supplied for a level); cap skips and missing designated subgroups are
not benign.  A report is certified when nothing failed and every skip
is benign; certification speaks only about the checked levels, never
about the infinite limit.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .actions import (
    basal_decomposition,
    centralizer,
    factor_permutation_action,
    is_subprimitive,
    outer_quotient_soluble,
)
from .chief import ChiefFactor, chief_series, factor_centralizer
from .config import DEFAULT_CAPS, Caps, CapExceeded
from .groups import SIMPLE_ORDERS, FiniteGroup, SubgroupHandle, structure_profile
from .homs import GroupHom
from .lattice import is_narrow, is_prime, melnikov, normal_subgroups, p_radicals
from .perms import identity_tuple

__all__ = [
    "Tower",
    "ClassDescriptor",
    "ElemAbelian",
    "SimplePower",
    "MultiplierTable",
    "DEFAULT_MULTIPLIERS",
    "ConditionResult",
    "VerificationReport",
    "condition_label",
    "tower_validate",
    "verify_ji_basic",
    "verify_ji_chief",
    "verify_hji",
    "verify_wilson",
    "verify_pro_p",
    "verify_primhji",
    "verify_by_criteria",
    "CRITERIA_IDS",
    "class_check",
    "membership",
    "OpschResult",
    "opsch_experiment",
    "find_admissible_A",
]


class Tower:
    """G_1 .. G_N with maps rho_n: G_{n+1} -> G_n and optional A_n.

    Indexing follows the 1-based convention of the accessor names:
    group(1) is the first level and rho(n) maps group(n+1) onto
    group(n).  Structure (level count, map endpoints, designated
    ambients) is validated here; semantic invariants (surjectivity,
    normality, nontriviality) are the business of tower_validate, so a
    defective tower can still be represented and reported on.
    """

    __slots__ = ("levels", "maps", "designated", "_pcache")

    def __init__(
        self,
        levels: Sequence[FiniteGroup],
        maps: Sequence[GroupHom],
        designated: Optional[Sequence[Optional[SubgroupHandle]]] = None,
    ):
        lv = tuple(levels)
        mp = tuple(maps)
        if not lv:
            raise ValueError("a tower needs at least one level")
        if len(mp) != len(lv) - 1:
            raise ValueError(
                f"{len(lv)} levels need {len(lv) - 1} maps, got {len(mp)}")
        for i, h in enumerate(mp):
            if h.src is not lv[i + 1] or h.tgt is not lv[i]:
                raise ValueError(
                    f"map {i + 1} must go from level {i + 2} to level {i + 1}")
        ds = tuple(designated) if designated is not None else (None,) * len(lv)
        if len(ds) != len(lv):
            raise ValueError("one designated slot per level")
        for i, a in enumerate(ds):
            if a is not None and a.ambient is not lv[i]:
                raise ValueError(
                    f"designated subgroup at level {i + 1} has the wrong ambient group")
        self.levels = lv
        self.maps = mp
        self.designated = ds
        self._pcache: dict[int, Optional[SubgroupHandle]] = {}

    @property
    def size(self) -> int:
        return len(self.levels)

    def group(self, n: int) -> FiniteGroup:
        if not 1 <= n <= self.size:
            raise ValueError(f"level {n} out of range 1..{self.size}")
        return self.levels[n - 1]

    def A(self, n: int) -> Optional[SubgroupHandle]:
        if not 1 <= n <= self.size:
            raise ValueError(f"level {n} out of range 1..{self.size}")
        return self.designated[n - 1]

    def rho(self, n: int) -> GroupHom:
        """rho_n: group(n+1) -> group(n)."""
        if not 1 <= n <= self.size - 1:
            raise ValueError(f"rho_{n} out of range 1..{self.size - 1}")
        return self.maps[n - 1]

    def kernel(self, n: int) -> SubgroupHandle:
        return self.rho(n).kernel()

    def P(self, n: int) -> Optional[SubgroupHandle]:
        """P_n = rho_n(A_{n+1}) in group(n); None when A_{n+1} is absent."""
        if not 1 <= n <= self.size - 1:
            raise ValueError(f"P_{n} needs levels {n} and {n + 1}")
        if n in self._pcache:
            return self._pcache[n]
        a = self.A(n + 1)
        out: Optional[SubgroupHandle] = None
        if a is not None:
            rho = self.rho(n)
            g = self.group(n)
            imgs = [tuple(rho.apply(x)) for x in a.gen_tuples]
            out = g.subgroup(imgs or [identity_tuple(g.degree)])
        self._pcache[n] = out
        return out

    def with_designated(
        self, designated: Sequence[Optional[SubgroupHandle]]
    ) -> "Tower":
        return Tower(self.levels, self.maps, designated)

    def __repr__(self) -> str:
        return f"Tower({[g.order for g in self.levels]})"


@dataclass(frozen=True)
class ClassDescriptor:
    """A class of finite characteristically simple groups.

    kind "elem_abelian" with param p covers all elementary abelian
    p-groups; kind "simple_power" with param s covers all direct powers
    of the simple group of order s (identification is by order only).
    """

    kind: str
    param: int

    def __post_init__(self):
        if self.kind == "elem_abelian":
            if not is_prime(self.param):
                raise ValueError(f"{self.param} is not prime")
        elif self.kind == "simple_power":
            if self.param not in SIMPLE_ORDERS:
                raise ValueError(
                    f"{self.param} is not an identifiable simple group order")
        else:
            raise ValueError(f"unknown class kind: {self.kind!r}")


def ElemAbelian(p: int) -> ClassDescriptor:
    return ClassDescriptor("elem_abelian", p)


def SimplePower(simple_order: int) -> ClassDescriptor:
    return ClassDescriptor("simple_power", simple_order)


class MultiplierTable:
    """simple-group order -> Schur multiplier order; injected data.

    The table is configuration, never computed, and is capped strictly
    below 20160 (the first order shared by non-isomorphic simple
    groups).  Verdicts that depend on it cite the version string.
    """

    __slots__ = ("entries", "version")

    def __init__(self, entries: dict[int, int], version: str = "custom"):
        for k, v in entries.items():
            if k not in SIMPLE_ORDERS:
                raise ValueError(f"{k} is not an identifiable simple group order")
            if v < 1:
                raise ValueError(f"multiplier order for {k} must be positive")
        self.entries = dict(sorted(entries.items()))
        self.version = version

    def get(self, simple_order: int) -> Optional[int]:
        return self.entries.get(simple_order)

    def to_json_dict(self) -> dict:
        return {
            "version": self.version,
            "entries": {str(k): v for k, v in self.entries.items()},
        }

    def __repr__(self) -> str:
        return f"MultiplierTable({len(self.entries)} entries, {self.version})"


DEFAULT_MULTIPLIERS = MultiplierTable(
    {
        60: 2, 168: 2, 360: 6, 504: 1, 660: 2, 1092: 2,
        2448: 2, 2520: 6, 3420: 2, 4080: 1, 5616: 1, 6048: 1,
        6072: 2, 7800: 2, 7920: 1, 9828: 2, 12180: 2, 14880: 2,
    },
    version="builtin-1",
)


Witness = Union[SubgroupHandle, str]


@dataclass(frozen=True)
class ConditionResult:
    """One verdict: fail carries a witness, skipped carries a reason."""

    condition: str
    verdict: str
    witness: Optional[Witness] = None
    benign: bool = False

    def __post_init__(self):
        if self.verdict not in ("pass", "fail", "skipped"):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.verdict == "fail" and self.witness is None:
            raise ValueError("fail verdicts need a witness")
        if self.verdict == "skipped" and not isinstance(self.witness, str):
            raise ValueError("skipped verdicts need a reason string")
        if self.benign and self.verdict != "skipped":
            raise ValueError("only skips can be benign")


def condition_label(cid: str) -> str:
    """Report label for a condition id, e.g. thm5.4.iii -> 'Thm 5.4 (iii)'."""
    m = re.fullmatch(r"thm(\d+\.\d+)\.([a-z]+)", cid)
    if m:
        return f"Thm {m.group(1)} ({m.group(2)})"
    m = re.fullmatch(r"cor(\d+\.\d+)", cid)
    if m:
        return f"Cor {m.group(1)}"
    return cid


def _witness_json(w: Optional[Witness]):
    if w is None:
        return None
    if isinstance(w, str):
        return w
    return {"order": w.order, "generators": [list(g) for g in w.gen_tuples]}


def _witness_text(w: Optional[Witness]) -> str:
    if isinstance(w, str):
        return w
    if w is None:
        return ""
    return f"witness subgroup of order {w.order}"


class VerificationReport:
    """Ordered per-level condition verdicts plus summary properties."""

    __slots__ = ("criteria", "per_level")

    def __init__(
        self,
        criteria: str,
        per_level: Sequence[tuple[int, Sequence[ConditionResult]]],
    ):
        self.criteria = criteria
        self.per_level = tuple((n, tuple(cs)) for n, cs in per_level)

    def _all(self) -> list[ConditionResult]:
        return [c for _, cs in self.per_level for c in cs]

    @property
    def passed(self) -> bool:
        return all(c.verdict != "fail" for c in self._all())

    @property
    def certified(self) -> bool:
        """No fails and no skips beyond benign boundary skips."""
        return all(
            c.verdict == "pass" or (c.verdict == "skipped" and c.benign)
            for c in self._all()
        )

    @property
    def certified_from(self) -> Optional[int]:
        """Smallest k with every level >= k clean, or None.

        The limit statements only need the conditions from some index
        on, so a report can be useful even when early levels are not.
        """
        best = None
        for n, cs in sorted(self.per_level, reverse=True):
            if all(c.verdict == "pass" or (c.verdict == "skipped" and c.benign)
                   for c in cs):
                best = n
            else:
                break
        return best

    def fails(self) -> list[tuple[int, ConditionResult]]:
        return [(n, c) for n, cs in self.per_level for c in cs
                if c.verdict == "fail"]

    def skips(self) -> list[tuple[int, ConditionResult]]:
        return [(n, c) for n, cs in self.per_level for c in cs
                if c.verdict == "skipped"]

    def condition(self, n: int, cid: str) -> ConditionResult:
        for k, cs in self.per_level:
            if k == n:
                for c in cs:
                    if c.condition == cid:
                        return c
        raise KeyError(f"no condition {cid!r} at level {n}")

    def to_json_dict(self) -> dict:
        fails = self.fails()
        skips = self.skips()
        return {
            "criteria": self.criteria,
            "levels": [
                {
                    "n": n,
                    "conditions": [
                        {
                            "id": c.condition,
                            "verdict": c.verdict,
                            "witness": _witness_json(c.witness),
                        }
                        for c in cs
                    ],
                }
                for n, cs in self.per_level
            ],
            "summary": {
                "passed": self.passed,
                "certified": self.certified,
                "certified_from": self.certified_from,
                "levels_checked": len(self.per_level),
                "fail_count": len(fails),
                "skip_count": len(skips),
                "benign_skip_count": sum(1 for _, c in skips if c.benign),
            },
        }

    def to_text(self) -> str:
        lines = [f"criteria: {self.criteria}"]
        for n, cs in self.per_level:
            lines.append(f"level {n}:")
            for c in cs:
                row = f"  {condition_label(c.condition)}: {c.verdict}"
                if c.verdict == "fail":
                    row += f" [{_witness_text(c.witness)}]"
                elif c.verdict == "skipped":
                    row += f" [{c.witness}]"
                lines.append(row)
        fails = len(self.fails())
        skips = self.skips()
        benign = sum(1 for _, c in skips if c.benign)
        state = "certified" if self.certified else (
            "pass, not certified" if self.passed else "fail")
        lines.append(
            f"summary: {state} ({fails} fail, {len(skips)} skipped,"
            f" {benign} benign)")
        cf = self.certified_from
        if cf is not None and not self.certified:
            lines.append(f"summary: conditions hold on all checked levels from {cf}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return (f"<report {self.criteria}: "
                f"{'certified' if self.certified else 'pass' if self.passed else 'fail'}>")


def _pass(cid: str) -> ConditionResult:
    return ConditionResult(cid, "pass")


def _fail(cid: str, witness: Witness) -> ConditionResult:
    return ConditionResult(cid, "fail", witness)


def _skip(cid: str, reason: str, benign: bool = False) -> ConditionResult:
    return ConditionResult(cid, "skipped", reason, benign)


def _report(criteria: str, rows: dict[int, list[ConditionResult]]) -> VerificationReport:
    ordered = [
        (n, sorted(cs, key=lambda c: c.condition))
        for n, cs in sorted(rows.items())
    ]
    return VerificationReport(criteria, ordered)


# -- shared condition evaluators --------------------------------------------


def _check_ker_and_p(t: Tower, n: int, cid: str, upper, caps: Caps) -> ConditionResult:
    """Sandwich conditions <upper bound> >= ker rho_n >= P_{n+1} at level n.

    upper(ker) returns a ConditionResult to fail or skip with, or None
    when the upper containment holds.  Partial semantics for the
    conjunction: a defined part failing fails the condition even when
    the other part is undefined.
    """
    if n >= t.size:
        return _skip(cid, f"rho_{n} undefined: no level {n + 1}", benign=True)
    if t.A(n + 1) is None:
        return _skip(cid, f"no designated subgroup at level {n + 1}")
    try:
        ker = t.kernel(n)
        bad = upper(ker)
        if bad is not None:
            return bad
        if n + 1 >= t.size:
            return _skip(cid, f"P_{n + 1} undefined: no level {n + 2}", benign=True)
        if t.A(n + 2) is None:
            return _skip(cid, f"no designated subgroup at level {n + 2}")
        p = t.P(n + 1)
        if not all(ker.contains(g) for g in p.gen_tuples):
            return _fail(cid, f"P_{n + 1} (order {p.order}) is not inside "
                              f"ker rho_{n} (order {ker.order})")
        return _pass(cid)
    except CapExceeded as e:
        return _skip(cid, f"cap exceeded: {e}")
    except ValueError as e:
        return _fail(cid, str(e))


def _cond_strict_kernel(t: Tower, n: int, cid: str, caps: Caps) -> ConditionResult:
    """A_{n+1} > ker rho_n >= P_{n+1}, strict on the left."""

    def upper(ker: SubgroupHandle) -> Optional[ConditionResult]:
        a = t.A(n + 1)
        if not (a.contains_subgroup(ker) and a.order > ker.order):
            return _fail(cid, f"A_{n + 1} (order {a.order}) does not strictly "
                              f"contain ker rho_{n} (order {ker.order})")
        return None

    return _check_ker_and_p(t, n, cid, upper, caps)


def _cond_melnikov_kernel(t: Tower, n: int, cid: str, caps: Caps) -> ConditionResult:
    """M_{G_{n+1}}(A_{n+1}) >= ker rho_n >= P_{n+1}."""

    def upper(ker: SubgroupHandle) -> Optional[ConditionResult]:
        m = melnikov(t.A(n + 1), ambient_relative=t.group(n + 1), caps=caps)
        if not all(m.contains(g) for g in ker.gen_tuples):
            return _fail(cid, f"ker rho_{n} (order {ker.order}) is not inside "
                              f"the relative Mel'nikov subgroup (order {m.order})")
        return None

    return _check_ker_and_p(t, n, cid, upper, caps)


def _cond_unique_max(t: Tower, n: int, cid: str, caps: Caps) -> ConditionResult:
    """A_n has a unique maximal G_n-invariant subgroup."""
    a = t.A(n)
    if a is None:
        return _skip(cid, f"no designated subgroup at level {n}")
    g = t.group(n)
    try:
        if is_narrow(g, a, caps).narrow:
            return _pass(cid)
        tops = normal_subgroups(g, caps).maximal_below(a)
        return _fail(cid, f"A_{n} has {len(tops)} maximal G-invariant subgroups "
                          f"(orders {[x.order for x in tops]})")
    except CapExceeded as e:
        return _skip(cid, f"cap exceeded: {e}")
    except ValueError as e:
        return _fail(cid, str(e))


def _cond_dichotomy(t: Tower, n: int, cid: str, caps: Caps) -> ConditionResult:
    """Each normal subgroup of G_n contains P_n or is contained in A_n."""
    a = t.A(n)
    if a is None:
        return _skip(cid, f"no designated subgroup at level {n}")
    if n >= t.size:
        return _skip(cid, f"P_{n} undefined: no level {n + 1}", benign=True)
    if t.A(n + 1) is None:
        return _skip(cid, f"no designated subgroup at level {n + 1}")
    try:
        p = t.P(n)
        lat = normal_subgroups(t.group(n), caps)
        for m in lat.members:
            if m.contains_subgroup(p):
                continue
            if a.contains_subgroup(m):
                continue
            return _fail(cid, m)
        return _pass(cid)
    except CapExceeded as e:
        return _skip(cid, f"cap exceeded: {e}")


def _cond_p_minimal(t: Tower, n: int, cid: str, caps: Caps) -> ConditionResult:
    """P_n is a minimal normal subgroup of G_n."""
    if n >= t.size:
        return _skip(cid, f"P_{n} undefined: no level {n + 1}", benign=True)
    if t.A(n + 1) is None:
        return _skip(cid, f"no designated subgroup at level {n + 1}")
    try:
        p = t.P(n)
        if p.order == 1:
            return _fail(cid, f"P_{n} is trivial")
        if not p.is_normal():
            return _fail(cid, f"P_{n} is not normal in G_{n}")
        lat = normal_subgroups(t.group(n), caps)
        for m in lat.below(p):
            if m.order > 1:
                return _fail(cid, m)
        return _pass(cid)
    except CapExceeded as e:
        return _skip(cid, f"cap exceeded: {e}")


def _cond_class_membership(
    t: Tower, n: int, cid: str,
    classes: Optional[Sequence[ClassDescriptor]], caps: Caps,
) -> ConditionResult:
    """P_n lies in the class C_n."""
    if classes is None:
        return _skip(cid, "no classes supplied", benign=True)
    if n >= t.size:
        return _skip(cid, f"P_{n} undefined: no level {n + 1}", benign=True)
    if t.A(n + 1) is None:
        return _skip(cid, f"no designated subgroup at level {n + 1}")
    if n > len(classes):
        return _skip(cid, f"no class descriptor for level {n}", benign=True)
    try:
        p = t.P(n)
        c = classes[n - 1]
        if membership(p.as_group(), c):
            return _pass(cid)
        prof = structure_profile(p.as_group())
        return _fail(cid, f"P_{n} classifies as {prof.classification}, "
                          f"not in {c.kind}({c.param})")
    except CapExceeded as e:
        return _skip(cid, f"cap exceeded: {e}")


def _cond_centralizer_below(t: Tower, n: int, cid: str, caps: Caps) -> ConditionResult:
    """C_{G_n}(P_n) < A_n, strictly."""
    a = t.A(n)
    if a is None:
        return _skip(cid, f"no designated subgroup at level {n}")
    if n >= t.size:
        return _skip(cid, f"P_{n} undefined: no level {n + 1}", benign=True)
    if t.A(n + 1) is None:
        return _skip(cid, f"no designated subgroup at level {n + 1}")
    try:
        p = t.P(n)
        c = centralizer(t.group(n), p, caps)
        if a.contains_subgroup(c) and a.order > c.order:
            return _pass(cid)
        return _fail(cid, c)
    except CapExceeded as e:
        return _skip(cid, f"cap exceeded: {e}")


def _cond_basal_above(t: Tower, n: int, cid: str, caps: Caps) -> ConditionResult:
    """Every normal subgroup of G_n containing A_n is basally indecomposable."""
    a = t.A(n)
    if a is None:
        return _skip(cid, f"no designated subgroup at level {n}")
    g = t.group(n)
    try:
        lat = normal_subgroups(g, caps)
        for u in lat.members:
            if not u.contains_subgroup(a):
                continue
            v = basal_decomposition(g, u, caps)
            if v is not None:
                return _fail(cid, v)
        return _pass(cid)
    except CapExceeded as e:
        return _skip(cid, f"cap exceeded: {e}")


# -- verifiers ---------------------------------------------------------------


def tower_validate(t: Tower, caps: Caps = DEFAULT_CAPS) -> VerificationReport:
    """Surjectivity of every map, normality and nontriviality of every A_n.

    Also warms the kernel and P_n caches.  Structural problems (level
    counts, map endpoints, ambient mismatches) raise at Tower
    construction and never reach this report.
    """
    rows: dict[int, list[ConditionResult]] = {n: [] for n in range(1, t.size + 1)}
    for n in range(1, t.size):
        h = t.rho(n)
        try:
            if h.is_surjective():
                rows[n].append(_pass("tower.map"))
            else:
                img = h.image()
                rows[n].append(_fail(
                    "tower.map",
                    f"rho_{n} image has order {img.order} < {t.group(n).order}"))
            t.kernel(n)
            if t.A(n + 1) is not None:
                t.P(n)
        except CapExceeded as e:
            rows[n].append(_skip("tower.map", f"cap exceeded: {e}"))
    for n in range(1, t.size + 1):
        a = t.A(n)
        if a is None:
            continue
        if a.order > 1:
            rows[n].append(_pass("tower.nontrivial"))
        else:
            rows[n].append(_fail("tower.nontrivial", f"A_{n} is trivial"))
        if a.is_normal():
            rows[n].append(_pass("tower.normal"))
        else:
            rows[n].append(_fail("tower.normal", a))
    return _report("tower", rows)


def verify_ji_basic(t: Tower, caps: Caps = DEFAULT_CAPS) -> VerificationReport:
    """Per-level conditions whose limit analogue certifies just infinite:

    (i) A_{n+1} > ker rho_n >= P_{n+1}, strict on the left;
    (ii) A_n has a unique maximal G_n-invariant subgroup;
    (iii) each normal subgroup of G_n contains P_n or lies in A_n.
    """
    rows: dict[int, list[ConditionResult]] = {}
    for n in range(1, t.size + 1):
        rows[n] = [
            _cond_strict_kernel(t, n, "thm1.1.i", caps),
            _cond_unique_max(t, n, "thm1.1.ii", caps),
            _cond_dichotomy(t, n, "thm1.1.iii", caps),
        ]
    return _report("introthm", rows)


def verify_ji_chief(
    t: Tower,
    classes: Optional[Sequence[ClassDescriptor]] = None,
    require_centralizer: bool = False,
    caps: Caps = DEFAULT_CAPS,
) -> VerificationReport:
    """The chief-factor flavored just-infinite conditions:

    (i) M_{G_{n+1}}(A_{n+1}) >= ker rho_n >= P_{n+1} (no strictness on
    A_{n+1} itself); (ii) the normal-subgroup dichotomy; (iii) P_n is a
    minimal normal subgroup; (iv) P_n lies in the class C_n.  With
    require_centralizer, additionally C_{G_n}(P_n) < A_n.
    """
    rows: dict[int, list[ConditionResult]] = {}
    for n in range(1, t.size + 1):
        rows[n] = [
            _cond_melnikov_kernel(t, n, "thm4.1.i", caps),
            _cond_dichotomy(t, n, "thm4.1.ii", caps),
            _cond_p_minimal(t, n, "thm4.1.iii", caps),
            _cond_class_membership(t, n, "thm4.1.iv", classes, caps),
        ]
        if require_centralizer:
            rows[n].append(_cond_centralizer_below(t, n, "cor4.6", caps))
    return _report("mainjithm", rows)


def verify_hji(
    t: Tower,
    classes: Optional[Sequence[ClassDescriptor]] = None,
    caps: Caps = DEFAULT_CAPS,
) -> VerificationReport:
    """Hereditarily-just-infinite conditions: the four chief-flavored
    conditions plus (v): every normal subgroup of G_n containing A_n is
    basally centrally indecomposable."""
    rows: dict[int, list[ConditionResult]] = {}
    for n in range(1, t.size + 1):
        rows[n] = [
            _cond_melnikov_kernel(t, n, "thm5.2.i", caps),
            _cond_dichotomy(t, n, "thm5.2.ii", caps),
            _cond_p_minimal(t, n, "thm5.2.iii", caps),
            _cond_class_membership(t, n, "thm5.2.iv", classes, caps),
            _cond_basal_above(t, n, "thm5.2.v", caps),
        ]
    return _report("hji", rows)


def verify_wilson(t: Tower, caps: Caps = DEFAULT_CAPS) -> VerificationReport:
    """Kernel-based hereditarily-just-infinite test; designated ignored.

    With K_n the kernel of the map out of level n, every normal L of
    that level with L not inside K_n must satisfy (i) K_n < L and
    (ii) L is basally centrally indecomposable.
    """
    rows: dict[int, list[ConditionResult]] = {}
    for n in range(1, t.size + 1):
        if n == 1:
            rows[n] = [
                _skip("thm5.3.i", "level 1 has no incoming map", benign=True),
                _skip("thm5.3.ii", "level 1 has no incoming map", benign=True),
            ]
            continue
        g = t.group(n)
        try:
            k = t.kernel(n - 1)
            lat = normal_subgroups(g, caps)
            res_i: ConditionResult = _pass("thm5.3.i")
            res_ii: ConditionResult = _pass("thm5.3.ii")
            for l in lat.members:
                if k.contains_subgroup(l):
                    continue
                if res_i.verdict == "pass":
                    if not (l.contains_subgroup(k) and l.order > k.order):
                        res_i = _fail("thm5.3.i", l)
                if res_ii.verdict == "pass":
                    v = basal_decomposition(g, l, caps)
                    if v is not None:
                        res_ii = _fail("thm5.3.ii", v)
                if res_i.verdict == res_ii.verdict == "fail":
                    break
            rows[n] = [res_i, res_ii]
        except CapExceeded as e:
            rows[n] = [
                _skip("thm5.3.i", f"cap exceeded: {e}"),
                _skip("thm5.3.ii", f"cap exceeded: {e}"),
            ]
    return _report("wilson", rows)


def verify_pro_p(t: Tower, p: int, caps: Caps = DEFAULT_CAPS) -> VerificationReport:
    """Virtually pro-p hereditarily-just-infinite conditions.

    With F_n the Frattini subgroup of the p-core of G_n: the
    designated A_n must be a nontrivial normal subgroup of F_n
    (hypothesis row); (i) M_{F_{n+1}}(A_{n+1}) >= ker rho_n >= P_{n+1};
    (ii) each normal subgroup of F_n contains P_n or lies in A_n;
    (iii) F_{n+1} is the full preimage of F_n; (iv) every minimal
    normal subgroup of G_1 lies in F_1.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")

    f_cache: dict[int, SubgroupHandle] = {}

    def F(n: int) -> SubgroupHandle:
        if n not in f_cache:
            f_cache[n] = p_radicals(t.group(n), p, caps).frattini_of_Op
        return f_cache[n]

    def hyp(n: int) -> ConditionResult:
        cid = "thm5.4.hyp"
        a = t.A(n)
        if a is None:
            return _skip(cid, f"no designated subgroup at level {n}")
        try:
            fn = F(n)
            if a.order == 1:
                return _fail(cid, f"A_{n} is trivial")
            if not fn.contains_subgroup(a):
                return _fail(cid, f"A_{n} (order {a.order}) is not inside "
                                  f"F_{n} (order {fn.order})")
            fgrp = fn.as_group()
            if not fgrp.subgroup(a.gen_tuples, order=a.order).is_normal():
                return _fail(cid, f"A_{n} is not normal in F_{n}")
            return _pass(cid)
        except CapExceeded as e:
            return _skip(cid, f"cap exceeded: {e}")

    def cond_i(n: int) -> ConditionResult:
        cid = "thm5.4.i"

        def upper(ker: SubgroupHandle) -> Optional[ConditionResult]:
            a = t.A(n + 1)
            fn1 = F(n + 1)
            if not fn1.contains_subgroup(a):
                return _fail(cid, f"A_{n + 1} (order {a.order}) is not inside "
                                  f"F_{n + 1} (order {fn1.order})")
            fgrp = fn1.as_group()
            a_in_f = fgrp.subgroup(a.gen_tuples, order=a.order)
            m = melnikov(a_in_f, ambient_relative=fgrp, caps=caps)
            if not all(m.contains(g) for g in ker.gen_tuples):
                return _fail(cid, f"ker rho_{n} (order {ker.order}) is not inside "
                                  f"the Mel'nikov subgroup relative to F_{n + 1} "
                                  f"(order {m.order})")
            return None

        return _check_ker_and_p(t, n, cid, upper, caps)

    def cond_ii(n: int) -> ConditionResult:
        cid = "thm5.4.ii"
        a = t.A(n)
        if a is None:
            return _skip(cid, f"no designated subgroup at level {n}")
        if n >= t.size:
            return _skip(cid, f"P_{n} undefined: no level {n + 1}", benign=True)
        if t.A(n + 1) is None:
            return _skip(cid, f"no designated subgroup at level {n + 1}")
        try:
            pn = t.P(n)
            lat = normal_subgroups(F(n).as_group(), caps)
            for m in lat.members:
                if m.contains_subgroup(pn):
                    continue
                if a.contains_subgroup(m):
                    continue
                return _fail(cid, m)
            return _pass(cid)
        except CapExceeded as e:
            return _skip(cid, f"cap exceeded: {e}")

    def cond_iii(n: int) -> ConditionResult:
        cid = "thm5.4.iii"
        if n >= t.size:
            return _skip(cid, f"rho_{n} undefined: no level {n + 1}", benign=True)
        try:
            fn, fn1 = F(n), F(n + 1)
            rho = t.rho(n)
            if not all(fn.contains(tuple(rho.apply(g))) for g in fn1.gen_tuples):
                return _fail(cid, f"rho_{n}(F_{n + 1}) is not inside F_{n}")
            ker = t.kernel(n)
            want = fn.order * ker.order
            if fn1.order != want:
                return _fail(cid, f"F_{n + 1} has order {fn1.order}, "
                                  f"preimage of F_{n} has order {want}")
            return _pass(cid)
        except CapExceeded as e:
            return _skip(cid, f"cap exceeded: {e}")

    def cond_iv() -> ConditionResult:
        cid = "thm5.4.iv"
        try:
            f1 = F(1)
            lat = normal_subgroups(t.group(1), caps)
            for m in lat.minimal_members():
                if not f1.contains_subgroup(m):
                    return _fail(cid, m)
            return _pass(cid)
        except CapExceeded as e:
            return _skip(cid, f"cap exceeded: {e}")

    rows: dict[int, list[ConditionResult]] = {}
    for n in range(1, t.size + 1):
        rows[n] = [hyp(n), cond_i(n), cond_ii(n), cond_iii(n)]
        if n == 1:
            rows[n].append(cond_iv())
    return _report(f"pro-p:{p}", rows)


def verify_primhji(t: Tower, caps: Caps = DEFAULT_CAPS) -> VerificationReport:
    """Semisimple-flavored hereditarily-just-infinite conditions:

    (i) M(A_{n+1}) = ker rho_n >= P_{n+1}, with M the Mel'nikov
    subgroup of A_{n+1} as a group in its own right; (ii) A_n strictly
    contains C_{G_n}(P_n); (iii) P_n is a direct power of a nonabelian
    simple group whose factors G_n permutes subprimitively, with a
    soluble outer quotient at one representative factor per orbit.
    """

    def cond_i(n: int) -> ConditionResult:
        cid = "thm6.3.i"

        def upper(ker: SubgroupHandle) -> Optional[ConditionResult]:
            a = t.A(n + 1)
            m_abs = melnikov(a, caps=caps)
            if m_abs.canonical_key() != ker.canonical_key():
                m_rel = melnikov(a, ambient_relative=t.group(n + 1), caps=caps)
                return _fail(cid, f"M(A_{n + 1}) has order {m_abs.order}, "
                                  f"ker rho_{n} has order {ker.order} "
                                  f"(relative Mel'nikov has order {m_rel.order})")
            return None

        return _check_ker_and_p(t, n, cid, upper, caps)

    def cond_iii(n: int) -> ConditionResult:
        cid = "thm6.3.iii"
        if n >= t.size:
            return _skip(cid, f"P_{n} undefined: no level {n + 1}", benign=True)
        if t.A(n + 1) is None:
            return _skip(cid, f"no designated subgroup at level {n + 1}")
        g = t.group(n)
        try:
            p = t.P(n)
            prof = structure_profile(p.as_group())
            if prof.classification[0] != "simple_power":
                return _fail(cid, f"P_{n} classifies as {prof.classification}, "
                                  f"not a power of a nonabelian simple group")
            factors = [
                g.subgroup(m.gen_tuples, order=m.order)
                for m in p.as_group().minimal_normal_subgroups()
            ]
            act = factor_permutation_action(g, factors)
            if not is_subprimitive(act, caps=caps):
                return _fail(cid, f"G_{n} does not permute the {len(factors)} "
                                  f"simple factors of P_{n} subprimitively")
            ordered = sorted(factors, key=lambda f: f.canonical_key())
            for orbit in act.orbits():
                rep = ordered[orbit[0]]
                if not outer_quotient_soluble(g, rep, caps):
                    return _fail(cid, rep)
            return _pass(cid)
        except CapExceeded as e:
            return _skip(cid, f"cap exceeded: {e}")

    rows: dict[int, list[ConditionResult]] = {}
    for n in range(1, t.size + 1):
        rows[n] = [
            cond_i(n),
            _cond_centralizer_below(t, n, "thm6.3.ii", caps),
            cond_iii(n),
        ]
    return _report("primhji", rows)


CRITERIA_IDS = ("introthm", "mainjithm", "hji", "wilson", "pro-p:<p>", "primhji")


def verify_by_criteria(
    t: Tower,
    criteria: str,
    classes: Optional[Sequence[ClassDescriptor]] = None,
    require_centralizer: bool = False,
    caps: Caps = DEFAULT_CAPS,
) -> VerificationReport:
    """Dispatch a criteria id from CRITERIA_IDS to its verifier."""
    if criteria == "introthm":
        return verify_ji_basic(t, caps=caps)
    if criteria == "mainjithm":
        return verify_ji_chief(t, classes=classes,
                               require_centralizer=require_centralizer, caps=caps)
    if criteria == "hji":
        return verify_hji(t, classes=classes, caps=caps)
    if criteria == "wilson":
        return verify_wilson(t, caps=caps)
    if criteria.startswith("pro-p:"):
        try:
            p = int(criteria.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad prime in criteria id: {criteria!r}")
        return verify_pro_p(t, p, caps=caps)
    if criteria == "primhji":
        return verify_primhji(t, caps=caps)
    raise ValueError(f"unknown criteria id: {criteria!r}")


# -- classes, the multiplier experiment, admissible designations ------------


def membership(Q: FiniteGroup, c: ClassDescriptor) -> bool:
    """Whether Q lies in the class c, by structural classification."""
    cls = structure_profile(Q).classification
    if c.kind == "elem_abelian":
        return cls[0] == "elem_abelian" and cls[1] == c.param
    return cls[0] == "simple_power" and cls[1] == c.param


def class_check(
    classes: Sequence[ClassDescriptor],
    table: MultiplierTable = DEFAULT_MULTIPLIERS,
) -> bool:
    """Closure check: a class set containing elementary abelian p-groups
    must also contain the powers of every identifiable simple group
    whose Schur multiplier order p divides.

    Raises LookupError when the table lacks an entry for an
    identifiable simple order, since the requirement is then
    undecidable.
    """
    have_simple = {c.param for c in classes if c.kind == "simple_power"}
    for c in classes:
        if c.kind != "elem_abelian":
            continue
        p = c.param
        for s in sorted(SIMPLE_ORDERS):
            m = table.get(s)
            if m is None:
                raise LookupError(f"no multiplier entry for simple order {s}")
            if m % p == 0 and s not in have_simple:
                return False
    return True


@dataclass(frozen=True)
class OpschResult:
    """Outcome of the O^p experiment; None fields carry a reason."""

    hypothesis_central: Optional[bool]
    hypothesis_multiplier: Optional[bool]
    conclusion: Optional[bool]
    reason: Optional[str]
    table_version: str


def opsch_experiment(
    G: FiniteGroup,
    p: int,
    table: MultiplierTable = DEFAULT_MULTIPLIERS,
    caps: Caps = DEFAULT_CAPS,
) -> OpschResult:
    """Report both hypotheses and the conclusion of the O^p statement:
    if every chief factor of exponent p is central and p divides no
    Schur multiplier of a nonabelian composition factor, then O^p(G)
    has no composition factors of order p.

    All three are evaluated independently, so a failing hypothesis next
    to a failing conclusion is a necessity witness, not a violation.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")

    lat = normal_subgroups(G, caps)
    central = True
    for k in lat.members:
        for l in lat.maximal_below(k):
            f = ChiefFactor(G, k, l)
            q, _ = f.realized()
            cls = structure_profile(q).classification
            if cls[0] == "elem_abelian" and cls[1] == p:
                if factor_centralizer(f).order != G.order:
                    central = False

    multiplier: Optional[bool] = True
    reason: Optional[str] = None
    for f in chief_series(G, caps):
        q, _ = f.realized()
        cls = structure_profile(q).classification
        if cls[0] != "simple_power":
            continue
        s = cls[1]
        if cls[3]:
            multiplier, reason = None, (
                f"composition factor of order {s} is not identifiable by order")
            break
        m = table.get(s)
        if m is None:
            multiplier, reason = None, (
                f"no multiplier entry for simple order {s}")
            break
        if m % p == 0:
            multiplier = False

    op = p_radicals(G, p, caps).Op_upper
    conclusion = True
    for f in chief_series(op.as_group(), caps):
        q, _ = f.realized()
        cls = structure_profile(q).classification
        if cls[0] == "elem_abelian" and cls[1] == p:
            conclusion = False

    return OpschResult(central, multiplier, conclusion, reason, table.version)


def find_admissible_A(
    t: Tower,
    criteria: str,
    classes: Optional[Sequence[ClassDescriptor]] = None,
    require_centralizer: bool = False,
    caps: Caps = DEFAULT_CAPS,
) -> list[tuple[SubgroupHandle, ...]]:
    """All designated-subgroup assignments certifying the criteria.

    Exhaustive product over per-level nontrivial normal subgroups (of
    F_n for the pro-p criteria, of G_n otherwise); every returned
    assignment re-verifies by construction.  The wilson criteria ignore
    designated subgroups, so there is nothing to search for them.
    """
    if criteria == "wilson":
        raise ValueError("wilson ignores designated subgroups")

    per_level: list[list[SubgroupHandle]] = []
    if criteria.startswith("pro-p:"):
        p = int(criteria.split(":", 1)[1])
        for n in range(1, t.size + 1):
            g = t.group(n)
            f = p_radicals(g, p, caps).frattini_of_Op
            lat = normal_subgroups(f.as_group(), caps)
            per_level.append([
                g.subgroup(m.gen_tuples, order=m.order)
                for m in lat.members if m.order > 1
            ])
    else:
        for n in range(1, t.size + 1):
            lat = normal_subgroups(t.group(n), caps)
            per_level.append([m for m in lat.members if m.order > 1])

    total = 1
    for cands in per_level:
        total *= len(cands)
    if total > caps.enumeration_cap:
        raise CapExceeded("designation search", total, caps.enumeration_cap)

    out = []
    for combo in itertools.product(*per_level):
        rep = verify_by_criteria(
            t.with_designated(combo), criteria,
            classes=classes, require_centralizer=require_centralizer, caps=caps)
        if rep.certified:
            out.append(tuple(combo))
    return out
