"""Command-line front end.

Four commands: analyze a group file, build a tower from a preset, verify
a tower file against a criteria id, and run the O^p experiment on a
group file.  Reports come out as text (default) or JSON, to stdout or to
--report; identical inputs and flags produce byte-identical output.

Exit codes: 0 all checked conditions pass (verify: certifiable), 1 a
verifier condition failed, 2 unusable input (JSON, flags, preset
parameters), 3 verification passed but skips prevent certification.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .actions import regular_action
from .builders import (
    build_cyclic_tower,
    build_example64,
    build_wreath_tower,
    chain_construct,
)
from .catalog import named_group
from .chief import chief_series
from .config import Caps, CapExceeded, DEFAULT_CAPS
from .groups import FiniteGroup, structure_profile
from .jsonio import (
    group_from_json_dict,
    multiplier_table_from_json_dict,
    subgroup_from_json_list,
    subgroup_to_json_list,
    tower_from_json_dict,
    tower_to_json_dict,
)
from .lattice import is_narrow, melnikov, normal_subgroups, obliquity
from .towers import (
    CRITERIA_IDS,
    DEFAULT_MULTIPLIERS,
    opsch_experiment,
    verify_by_criteria,
)

ENV_PREFIX = "JITOWER_"


class CliError(Exception):
    """Unusable input; rendered to stderr with exit code 2."""


def _env(flag: str) -> Optional[str]:
    return os.environ.get(ENV_PREFIX + flag.strip("-").upper().replace("-", "_"))


def _option(args, attr: str, flag: str) -> Optional[str]:
    v = getattr(args, attr, None)
    return v if v is not None else _env(flag)


def _int_option(args, attr: str, flag: str) -> Optional[int]:
    raw = _option(args, attr, flag)
    if raw is None:
        return None
    try:
        return int(raw)
    except (TypeError, ValueError):
        raise CliError(f"{flag} needs an integer, got {raw!r}")


def _caps_from(args) -> Caps:
    caps = DEFAULT_CAPS
    mo = _int_option(args, "max_order", "--max-order")
    mso = _int_option(args, "max_subgroup_order", "--max-subgroup-order")
    if mo is not None:
        if mo <= 0:
            raise CliError("--max-order must be positive")
        caps = caps.replace(max_order=mo)
    if mso is not None:
        if mso <= 0:
            raise CliError("--max-subgroup-order must be positive")
        caps = caps.replace(max_subgroup_order=mso)
    return caps


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise CliError(f"{path}: malformed JSON: {e}")


def _load_group(path: str) -> FiniteGroup:
    try:
        return group_from_json_dict(_load_json(path))
    except ValueError as e:
        raise CliError(f"{path}: {e}")


def _table_from(args) -> "MultiplierTable":
    path = _option(args, "multiplier_table", "--multiplier-table")
    if path is None:
        return DEFAULT_MULTIPLIERS
    try:
        return multiplier_table_from_json_dict(_load_json(path))
    except ValueError as e:
        raise CliError(f"{path}: {e}")


def _emit(text: str, args) -> None:
    path = _option(args, "report", "--report")
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _format_from(args) -> str:
    fmt = _option(args, "format", "--format") or "text"
    if fmt not in ("text", "json"):
        raise CliError(f"--format must be text or json, got {fmt!r}")
    return fmt


# -- analyze -------------------------------------------------------------------


def _classification_of(factor) -> list:
    return list(structure_profile(factor.realized()[0]).classification)


def _classification_text(cls) -> str:
    if cls and cls[0] in ("elem_abelian", "simple_power"):
        return f"{cls[0]}({cls[1]})^{cls[2]}"
    return str(cls[0]) if cls else "?"


def _analyze_data(g: FiniteGroup, requested, caps: Caps) -> dict:
    data: dict = {"order": g.order, "degree": g.degree}

    try:
        lat = normal_subgroups(g, caps)
        data["normal_subgroups"] = {
            "count": len(lat.members),
            "orders": [h.order for h in lat.members],
        }
    except CapExceeded as e:
        data["normal_subgroups"] = {"skipped": str(e)}
        lat = None

    try:
        steps = []
        for f in chief_series(g, caps):
            steps.append({
                "order_K": f.K.order,
                "order_L": f.L.order,
                "classification": _classification_of(f),
                "generators_K": subgroup_to_json_list(f.K),
                "generators_L": subgroup_to_json_list(f.L),
            })
        data["chief_series"] = steps
    except CapExceeded as e:
        data["chief_series"] = {"skipped": str(e)}

    if lat is None:
        data["narrow_subgroups"] = {"skipped": "normal lattice unavailable"}
    else:
        try:
            rows = []
            for h in lat.members:
                if h.is_trivial():
                    continue
                if not is_narrow(g, h, caps).narrow:
                    continue
                if h.order == g.order:
                    m = melnikov(g, caps=caps)
                else:
                    m = melnikov(h, ambient_relative=g, caps=caps)
                rows.append({"order": h.order, "melnikov_order": m.order})
            data["narrow_subgroups"] = rows
        except CapExceeded as e:
            data["narrow_subgroups"] = {"skipped": str(e)}

    if requested:
        rows = []
        for path in requested:
            entries = _load_json(path)
            try:
                h = subgroup_from_json_list(entries, g)
            except ValueError as e:
                raise CliError(f"{path}: {e}")
            try:
                row = {
                    "order": h.order,
                    "ob_order": obliquity(g, h, caps=caps).order,
                    "ob_star_order": obliquity(g, h, starred=True, caps=caps).order,
                }
            except CapExceeded as e:
                row = {"order": h.order, "skipped": str(e)}
            rows.append(row)
        data["obliquity"] = rows
    return data


def _analyze_text(data: dict) -> str:
    out = [f"group: order {data['order']}, degree {data['degree']}"]

    ns = data["normal_subgroups"]
    if "skipped" in ns:
        out.append(f"normal subgroups: skipped ({ns['skipped']})")
    else:
        orders = ", ".join(str(o) for o in ns["orders"])
        out.append(f"normal subgroups: {ns['count']} (orders {orders})")

    cs = data["chief_series"]
    if isinstance(cs, dict):
        out.append(f"chief series: skipped ({cs['skipped']})")
    else:
        out.append(f"chief series: {len(cs)} steps")
        for step in cs:
            label = _classification_text(step["classification"])
            out.append(f"  {step['order_K']}/{step['order_L']} {label}")

    nr = data["narrow_subgroups"]
    if isinstance(nr, dict):
        out.append(f"narrow subgroups: skipped ({nr['skipped']})")
    elif not nr:
        out.append("narrow subgroups: none")
    else:
        out.append("narrow subgroups:")
        for row in nr:
            out.append(
                f"  order {row['order']}: M_G order {row['melnikov_order']}")

    for row in data.get("obliquity", []):
        if "skipped" in row:
            out.append(
                f"obliquity of order-{row['order']} subgroup: skipped "
                f"({row['skipped']})")
        else:
            out.append(
                f"obliquity of order-{row['order']} subgroup: "
                f"Ob order {row['ob_order']}, Ob* order {row['ob_star_order']}")
    return "\n".join(out) + "\n"


def cmd_analyze(args) -> int:
    caps = _caps_from(args)
    g = _load_group(args.group)
    data = _analyze_data(g, args.subgroup or [], caps)
    if _format_from(args) == "json":
        _emit(_dumps(data), args)
    else:
        _emit(_analyze_text(data), args)
    return 0


# -- verify --------------------------------------------------------------------


def cmd_verify(args) -> int:
    caps = _caps_from(args)
    criteria = _option(args, "criteria", "--criteria")
    if criteria is None:
        raise CliError("verify needs --criteria (or JITOWER_CRITERIA); "
                       f"one of {', '.join(CRITERIA_IDS)}")
    try:
        tower = tower_from_json_dict(_load_json(args.tower))
    except ValueError as e:
        raise CliError(f"{args.tower}: {e}")
    try:
        rep = verify_by_criteria(tower, criteria, caps=caps)
    except ValueError as e:
        raise CliError(str(e))

    if _format_from(args) == "json":
        _emit(_dumps(rep.to_json_dict()), args)
    else:
        _emit(rep.to_text(), args)

    if not rep.passed:
        return 1
    if rep.certified:
        return 0
    return 3


# -- build ---------------------------------------------------------------------


def _parse_preset(preset: str) -> tuple[str, dict]:
    name, _, rest = preset.partition(":")
    params = {}
    if rest:
        for piece in rest.split(","):
            key, eq, value = piece.partition("=")
            if not eq or not key:
                raise CliError(f"bad preset parameter {piece!r}; "
                               "expected key=value")
            params[key] = value
    return name, params


def _preset_int(params: dict, key: str, default=None) -> Optional[int]:
    if key not in params:
        if default is None:
            raise CliError(f"preset needs {key}=<int>")
        return default
    try:
        return int(params[key])
    except ValueError:
        raise CliError(f"{key} needs an integer, got {params[key]!r}")


def _named(name: str) -> FiniteGroup:
    try:
        return named_group(name)
    except (KeyError, ValueError) as e:
        raise CliError(f"unknown group name {name!r}: {e}")


def cmd_build(args) -> int:
    caps = _caps_from(args)
    name, params = _parse_preset(args.preset)
    symbolic = None
    try:
        if name == "cyclic":
            tower = build_cyclic_tower(
                _preset_int(params, "p"),
                _preset_int(params, "levels"),
                _preset_int(params, "start", 2),
                caps,
            )
        elif name == "wreath":
            if "bottom" not in params:
                raise CliError("preset needs bottom=<group name>")
            tower = build_wreath_tower(
                _named(params["bottom"]), _preset_int(params, "levels"), caps)
        elif name == "example64":
            top = _named(params.get("top", "C2"))
            simples = params.get("simples", "A5").split("+")
            perfects = params.get("perfects", "SL25").split("+")
            strategy = params.get("strategy", "product")
            tower, spec = build_example64(
                regular_action(top), simples, perfects, strategy,
                _preset_int(params, "levels", 2), caps)
            symbolic = {
                "recipe": [list(step) for step in spec.recipe],
                "orders": [str(o) for o in spec.symbolic_orders],
            }
        elif name == "chain":
            if "group" not in params:
                raise CliError("preset needs group=<group name>")
            tower = chain_construct(_named(params["group"]), caps)
        else:
            raise CliError(f"unknown preset {name!r}; "
                           "one of cyclic, wreath, example64, chain")
    except (ValueError, CapExceeded) as e:
        raise CliError(f"{name}: {e}")

    doc = tower_to_json_dict(tower)
    if symbolic is not None:
        doc["symbolic"] = symbolic
    with open(args.out, "w", encoding="utf-8") as f:
        f.write(_dumps(doc))
    return 0


# -- oracle --------------------------------------------------------------------


def cmd_oracle(args) -> int:
    caps = _caps_from(args)
    g = _load_group(args.group)
    p = _int_option(args, "p", "--p")
    if p is None:
        raise CliError("oracle needs --p <prime>")
    table = _table_from(args)
    try:
        r = opsch_experiment(g, p, table, caps)
    except ValueError as e:
        raise CliError(str(e))

    data = {
        "p": p,
        "hypothesis_central": r.hypothesis_central,
        "hypothesis_multiplier": r.hypothesis_multiplier,
        "conclusion": r.conclusion,
        "reason": r.reason,
        "table_version": r.table_version,
    }
    if _format_from(args) == "json":
        _emit(_dumps(data), args)
    else:
        lines = [f"O^p experiment at p = {p} (table {r.table_version})"]
        for key in ("hypothesis_central", "hypothesis_multiplier", "conclusion"):
            v = data[key]
            lines.append(f"{key}: {'undetermined' if v is None else v}")
        if r.reason:
            lines.append(f"reason: {r.reason}")
        _emit("\n".join(lines) + "\n", args)
    return 0


# -- entry ---------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-order", dest="max_order")
    p.add_argument("--max-subgroup-order", dest="max_subgroup_order")
    p.add_argument("--report", dest="report")
    p.add_argument("--format", dest="format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jitower",
        description="Analyze finite groups and verify quotient towers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="lattice, chief series, narrow subgroups")
    p.add_argument("group", help="group JSON file")
    p.add_argument("--subgroup", action="append",
                   help="subgroup JSON file to report Ob/Ob* for (repeatable)")
    _add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run a criteria id over a tower file")
    p.add_argument("tower", help="tower JSON file")
    p.add_argument("--criteria", dest="criteria",
                   help=f"one of {', '.join(CRITERIA_IDS)}")
    p.add_argument("--multiplier-table", dest="multiplier_table")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("build", help="construct a tower from a preset")
    p.add_argument("preset",
                   help="cyclic:p=2,levels=3 | wreath:bottom=C2,levels=3 | "
                        "example64:levels=2 | chain:group=A5")
    p.add_argument("--out", required=True, help="output tower JSON path")
    _add_common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("oracle", help="O^p hypothesis/conclusion experiment")
    p.add_argument("group", help="group JSON file")
    p.add_argument("--p", dest="p")
    p.add_argument("--multiplier-table", dest="multiplier_table")
    _add_common(p)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"jitower: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
