"""JSON configuration: preset, window, named t-structures, group, domestic traces.

Example::

    {
      "preset": "A2",
      "window": [-1, 1],
      "t_structures": {
        "ts1": {"generators": ["P(2)"], "sigma_stable": true}
      },
      "order": ["ts1"],
      "group": {"generators": [{"vertex_permutation": {"1": 5, "5": 1}}]},
      "budget": 200
    }

Group generators may instead list explicit ``maps: [[src, dst], ...]`` over
every window indecomposable.  Domestic configs use ``traces`` in place of
``t_structures``: ``{name: {degree: {explicit, pattern, threshold, period}}}``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .aisles import make_tstructure
from .domestic import DomesticTSTrace, EventuallyPeriodicSet
from .errors import ConfigError
from .groups import GroupAction, from_vertex_permutation
from .quiver import ARWindow, build_window, make_preset, parse_id


@dataclass
class Config:
    preset: object
    window: ARWindow | None
    t_structures: dict = field(default_factory=dict)
    raw_ts: dict = field(default_factory=dict)
    order: list = field(default_factory=list)
    group: GroupAction | None = None
    traces: list = field(default_factory=list)
    budget: int | None = None
    out: str | None = None


def _req(d, key, where):
    if key not in d:
        raise ConfigError(f"{where}: missing field '{key}'")
    return d[key]


def _ids(items, preset, where):
    out = []
    for i, s in enumerate(items):
        try:
            out.append(parse_id(s, preset))
        except ValueError as e:
            raise ConfigError(f"{where}[{i}]: {e}") from None
    return out


def parse_config(data: dict) -> Config:
    if not isinstance(data, dict):
        raise ConfigError("top level must be an object")
    try:
        preset = make_preset(_req(data, "preset", "config"), data.get("orientation"))
    except ConfigError:
        raise
    except Exception as e:
        raise ConfigError(f"preset: {e}") from None
    cfg = Config(preset, None, budget=data.get("budget"), out=data.get("out"))
    if "traces" in data:
        if not preset.extended:
            raise ConfigError("traces: domestic traces need an extended Dynkin preset")
        for name, comps in data["traces"].items():
            sets = {}
            for d, spec in comps.items():
                where = f"traces.{name}.{d}"
                sets[int(d)] = EventuallyPeriodicSet(
                    (preset.name, int(d)),
                    frozenset(tuple(c) for c in spec.get("explicit", [])),
                    frozenset(tuple(c) for c in spec.get("pattern", [])),
                    int(spec.get("threshold", 0)),
                    int(spec.get("period", 1)),
                )
                for v, _ in sets[int(d)].pattern:
                    if v not in preset.index:
                        raise ConfigError(f"{where}.pattern: unknown vertex {v}")
            cfg.traces.append(DomesticTSTrace(name, preset, sets))
        return cfg
    win = _req(data, "window", "config")
    if not (isinstance(win, list) and len(win) == 2):
        raise ConfigError("window: expected [d_lo, d_hi]")
    cfg.window = build_window(preset, int(win[0]), int(win[1]))
    for name, spec in _req(data, "t_structures", "config").items():
        gens = _ids(_req(spec, "generators", f"t_structures.{name}"), preset,
                    f"t_structures.{name}.generators")
        cfg.raw_ts[name] = spec
        cfg.t_structures[name] = make_tstructure(
            name, cfg.window, gens, sigma_stable=bool(spec.get("sigma_stable", False)),
            closed=bool(spec.get("closed", False)))
    cfg.order = list(data.get("order", list(cfg.t_structures)))
    for n in cfg.order:
        if n not in cfg.t_structures:
            raise ConfigError(f"order: unknown t-structure '{n}'")
    if "group" in data:
        gens = []
        for i, gspec in enumerate(_req(data["group"], "generators", "group")):
            where = f"group.generators[{i}]"
            if "vertex_permutation" in gspec:
                pi = {int(k): int(v) for k, v in gspec["vertex_permutation"].items()}
                gens.extend(from_vertex_permutation(cfg.window, pi).generators)
            else:
                pairs = _req(gspec, "maps", where)
                perm = {}
                for j, pr in enumerate(pairs):
                    a, b = _ids(pr, preset, f"{where}.maps[{j}]")
                    perm[a] = b
                gens.append(perm)
        cfg.group = GroupAction(gens)
    return cfg


def load_config(path: str) -> Config:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: line {e.lineno}: {e.msg}") from None
    except OSError as e:
        raise ConfigError(f"{path}: {e.strerror}") from None
    return parse_config(data)
