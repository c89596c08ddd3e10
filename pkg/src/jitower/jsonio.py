"""JSON interchange for groups, subgroups, towers, and multiplier tables.

Permutations travel in 0-based one-line notation (image lists).  Tower
files carry one object per level with its degree, generators, and the
designated subgroup's generators (null when the slot is empty), plus one
images entry per connecting map: maps[n] sends level n+2's generators
into level n+1's degree, levels counted 1-based as in reports.

All loaders raise ValueError on malformed input so the CLI can map any
parse problem to a single exit code.
"""

from __future__ import annotations

from typing import Optional

from .groups import FiniteGroup, SubgroupHandle
from .homs import hom_from_images
from .towers import MultiplierTable, Tower

__all__ = [
    "group_to_json_dict",
    "group_from_json_dict",
    "subgroup_to_json_list",
    "subgroup_from_json_list",
    "tower_to_json_dict",
    "tower_from_json_dict",
    "multiplier_table_from_json_dict",
]


def _perm(entry, degree: int) -> tuple[int, ...]:
    try:
        p = tuple(int(v) for v in entry)
    except (TypeError, ValueError) as e:
        raise ValueError(f"bad permutation entry: {entry!r}") from e
    if sorted(p) != list(range(degree)):
        raise ValueError(f"not a permutation of 0..{degree - 1}: {list(p)}")
    return p


def group_to_json_dict(g: FiniteGroup) -> dict:
    return {
        "degree": g.degree,
        "generators": [list(t) for t in g.gen_tuples],
    }


def group_from_json_dict(d: dict) -> FiniteGroup:
    if not isinstance(d, dict) or "degree" not in d or "generators" not in d:
        raise ValueError('group JSON needs "degree" and "generators"')
    try:
        degree = int(d["degree"])
    except (TypeError, ValueError) as e:
        raise ValueError(f"bad degree: {d['degree']!r}") from e
    if degree < 1:
        raise ValueError(f"bad degree: {degree}")
    gens = [_perm(p, degree) for p in d["generators"]]
    return FiniteGroup(degree, gens)


def subgroup_to_json_list(h: SubgroupHandle) -> list:
    return [list(t) for t in h.gen_tuples]


def subgroup_from_json_list(entries, ambient: FiniteGroup) -> SubgroupHandle:
    if not isinstance(entries, list):
        raise ValueError("subgroup JSON must be a list of permutations")
    gens = [_perm(p, ambient.degree) for p in entries]
    try:
        return ambient.subgroup(gens)
    except (ValueError, KeyError) as e:
        raise ValueError(f"subgroup generators not in the group: {e}") from e


def tower_to_json_dict(t: Tower) -> dict:
    levels = []
    for n in range(1, t.size + 1):
        a = t.A(n)
        levels.append({
            "degree": t.group(n).degree,
            "generators": [list(g) for g in t.group(n).gen_tuples],
            "A": None if a is None else subgroup_to_json_list(a),
        })
    maps = []
    for n in range(1, t.size):
        h = t.rho(n)
        maps.append({
            "images": [list(h.apply(g)) for g in t.group(n + 1).gen_tuples],
        })
    return {"levels": levels, "maps": maps}


def tower_from_json_dict(d: dict) -> Tower:
    if not isinstance(d, dict) or "levels" not in d or "maps" not in d:
        raise ValueError('tower JSON needs "levels" and "maps"')
    raw_levels = d["levels"]
    raw_maps = d["maps"]
    if not isinstance(raw_levels, list) or not raw_levels:
        raise ValueError("tower JSON needs at least one level")
    if not isinstance(raw_maps, list):
        raise ValueError('tower JSON "maps" must be a list')

    groups: list[FiniteGroup] = []
    designated: list[Optional[SubgroupHandle]] = []
    has_designation = False
    for i, entry in enumerate(raw_levels):
        if not isinstance(entry, dict):
            raise ValueError(f"level {i + 1} must be an object")
        try:
            g = group_from_json_dict(entry)
        except ValueError as e:
            raise ValueError(f"level {i + 1}: {e}") from e
        groups.append(g)
        a_entry = entry.get("A")
        if a_entry is None:
            designated.append(None)
        else:
            try:
                designated.append(subgroup_from_json_list(a_entry, g))
            except ValueError as e:
                raise ValueError(f"level {i + 1} A: {e}") from e
            has_designation = True

    if len(raw_maps) != len(groups) - 1:
        raise ValueError(
            f"{len(groups)} levels need {len(groups) - 1} maps, "
            f"got {len(raw_maps)}")
    maps = []
    for i, entry in enumerate(raw_maps):
        if not isinstance(entry, dict) or "images" not in entry:
            raise ValueError(f'map {i + 1} needs an "images" list')
        src, tgt = groups[i + 1], groups[i]
        images = [_perm(p, tgt.degree) for p in entry["images"]]
        try:
            maps.append(hom_from_images(src, tgt, images))
        except ValueError as e:
            raise ValueError(f"map {i + 1}: {e}") from e

    return Tower(groups, maps, designated if has_designation else None)


def multiplier_table_from_json_dict(d: dict) -> MultiplierTable:
    """Accept either the flat order-to-multiplier mapping or the richer
    {"version", "entries"} shape that to_json_dict emits."""
    if not isinstance(d, dict):
        raise ValueError("multiplier table JSON must be an object")
    version = "file"
    entries = d
    if "entries" in d:
        entries = d["entries"]
        version = str(d.get("version", "file"))
        if not isinstance(entries, dict):
            raise ValueError('"entries" must be an object')
    try:
        parsed = {int(k): int(v) for k, v in entries.items()}
    except (TypeError, ValueError) as e:
        raise ValueError(f"bad multiplier entry: {e}") from e
    try:
        return MultiplierTable(parsed, version=version)
    except ValueError as e:
        raise ValueError(str(e)) from e
