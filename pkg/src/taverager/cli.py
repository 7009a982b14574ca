"""Command line entry point.

Exit codes: 0 success or criterion holds, 1 invalid input, 2 criterion fails
or non-aisle verdict, 3 budget inconclusive.
"""
from __future__ import annotations

import argparse
import os
import re
import sys

from . import tubes as tb
from .aisles import INVALID, VALIDATED, classify, truncate, validate, window_ids
from .averaging import average_aisles, intersect_aisles, naive_run, refined_run
from .config import load_config
from .diagrams import roles, to_dot, to_svg
from .domestic import criterion_c, intersect_traces, load_builtin
from .errors import NonAisle, TAveragerError, WindowTooSmall
from .groups import average_aisle_over_group, check_preservation, validate_action
from .quiver import Obj, parse_id, sort_key

OK, BAD_INPUT, FAILS, INCONCLUSIVE = 0, 1, 2, 3


def _order(cfg, args):
    names = args.order.split(",") if args.order else cfg.order
    for n in names:
        if n not in cfg.t_structures:
            raise TAveragerError(f"--order: unknown t-structure '{n}'")
    return [cfg.t_structures[n] for n in names]


def _budget(cfg, args):
    return args.budget if args.budget is not None else cfg.budget


def _out_dir(cfg, args):
    d = args.out or cfg.out
    if d:
        os.makedirs(d, exist_ok=True)
    return d


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def _fmt_set(w, ids):
    if set(ids) == set(window_ids(w)):
        return "all"
    if not ids:
        return "0"
    return "{" + ", ".join(str(x) for x in sorted(ids, key=sort_key)) + "}"


# ---------------------------------------------------------------- verbs

def cmd_validate(args):
    cfg = load_config(args.config)
    if cfg.traces:
        for t in cfg.traces:
            print(f"{t.name}: {len(t.components)} component traces")
        return OK
    status = OK
    for name, ts in cfg.t_structures.items():
        if ts.validity != INVALID:
            try:
                validate(ts)
            except NonAisle:
                pass
        line = f"{name}: {ts.validity}"
        if ts.validity == INVALID:
            status = BAD_INPUT
            line += f"; witness={_fmt_witness(ts.witness)}"
        print(line)
    if cfg.group is not None:
        try:
            rep = validate_action(cfg.group, cfg.window)
            print(f"group: valid; order={rep['order']}")
        except TAveragerError as e:
            print(f"group: invalid; {e}")
            status = BAD_INPUT
    return status


def _fmt_witness(wt):
    if isinstance(wt, tuple):
        return "; ".join(_fmt_witness(x) for x in wt)
    if isinstance(wt, (list, frozenset, set)):
        return "(" + ", ".join(str(x) for x in wt) + ")"
    return str(wt)


def cmd_truncate(args):
    cfg = load_config(args.config)
    ts = cfg.t_structures[args.ts] if args.ts else _order(cfg, args)[0]
    t = Obj.of(parse_id(args.object, cfg.preset))
    tri = truncate(t, ts, _budget(cfg, args))
    print(f"x = {tri.x}")
    print(f"t = {tri.t}")
    print(f"y = {tri.y}")
    return OK


def _runs(cfg, args, order, out):
    budget = _budget(cfg, args)
    status = OK
    for t in window_ids(cfg.window):
        tr = (naive_run if args.naive else refined_run)(Obj.of(t), order, budget)
        if out:
            name = re.sub(r"[^A-Za-z0-9]+", "_", str(t)).strip("_")
            _write(os.path.join(out, f"trace_{name}.txt"),
                   "\n".join(tr.lines() + [f"status: {tr.status}"]) + "\n")
        if not tr.terminated and not args.naive:
            status = INCONCLUSIVE
    return status


def cmd_average(args):
    cfg = load_config(args.config)
    order = _order(cfg, args)
    out = _out_dir(cfg, args)
    avg, rep = average_aisles(order, _budget(cfg, args))
    print(f"X^I = {_fmt_set(cfg.window, avg.aisle)}; {rep['status']}")
    if rep.get("witness") is not None:
        print(f"witness: {rep['witness']}")
    if out:
        r = roles(cfg.window, avg.aisle, avg.coaisle())
        _write(os.path.join(out, "average.dot"), to_dot(cfg.window, r, avg.name))
        _write(os.path.join(out, "average.svg"), to_svg(cfg.window, r, avg.name))
        _runs(cfg, args, order, out)
    if args.intersect:
        meet, mrep = intersect_aisles(order, _budget(cfg, args))
        print(f"X_I = {_fmt_set(cfg.window, meet.aisle)}; {mrep['status']}")
    return {VALIDATED: OK, "Unvalidated": INCONCLUSIVE}.get(rep["status"], FAILS)


def cmd_intersect(args):
    cfg = load_config(args.config)
    order = _order(cfg, args)
    meet, rep = intersect_aisles(order, _budget(cfg, args))
    print(f"X_I = {_fmt_set(cfg.window, meet.aisle)}; {rep['status']}")
    out = _out_dir(cfg, args)
    if out:
        r = roles(cfg.window, meet.aisle, meet.coaisle())
        _write(os.path.join(out, "intersect.dot"), to_dot(cfg.window, r, meet.name))
    return OK if rep["status"] == VALIDATED else FAILS


def cmd_criterion(args):
    if args.builtin:
        _, traces = load_builtin(args.builtin)
    else:
        traces = load_config(args.config).traces
    verdict = criterion_c(traces)
    print(verdict)
    for d in sorted(set.intersection(*(set(t.components) for t in traces))):
        meet = intersect_traces([t.components[d] for t in traces])
        print(f"meet on N{d}: {meet}")
    return OK if verdict.holds else FAILS


_SHORT = re.compile(r"^s(\d+)$")
_LEN = re.compile(r"^(?:s=(-?\d+);)?l=(\d+)$")


def _tube(text, rho):
    m = _SHORT.match(text)
    if m:
        return tb.TubeObj(rho, int(m.group(1)), 1)
    m = _LEN.match(text)
    if m:
        return tb.TubeObj(rho, int(m.group(1) or 0), int(m.group(2)))
    return tb.parse_tube(text, rho)


def _tubes(items, rho):
    out = []
    for it in items or []:
        out.extend(_tube(s, rho) for s in it.split(",") if s)
    return out


def cmd_tube(args):
    rho = args.rho
    objs = [_tube(s, rho) for s in args.objects]
    if args.op == "ext":
        a, b = objs
        e1, e2 = tb.ext_middle_terms(a, b)
        print(f"e1 = {e1}")
        print(f"e2 = {e2 if e2 is not None else 0}")
    elif args.op in ("hom", "extdim"):
        a, b = objs
        f = tb.tube_hom_dim if args.op == "hom" else tb.tube_ext_dim
        print(f(a, b))
    elif args.op == "hammock":
        (a,) = objs
        print("object\thom(a,-)\thom(-,a)\text(a,-)\text(-,a)")
        for l in range(1, rho + 1):
            for s in range(rho):
                x = tb.TubeObj(rho, s, l)
                row = [tb.tube_hom_dim(a, x), tb.tube_hom_dim(x, a),
                       tb.tube_ext_dim(a, x), tb.tube_ext_dim(x, a)]
                print(f"{x}\t" + "\t".join(map(str, row)))
    elif args.op == "bound":
        t = _tube(args.t, rho) if args.t else objs[0]
        b = tb.bound(t)
        rp, r = _tubes(args.rprime, rho), _tubes(args.r, rho)
        if rp or r:
            out = tb.truncation_summands(t, rp, r)
            ok = tb.length_bound_check(t, rp, r)
            print("summands: " + ", ".join(str(x) for x in out))
            print(f"bound {b} {'verified' if ok else 'violated'}")
            return OK if ok else FAILS
        print(f"bound {b} verified")
    else:
        raise TAveragerError(f"unknown tube operation {args.op}")
    return OK


def cmd_act(args):
    cfg = load_config(args.config)
    if cfg.group is None:
        raise TAveragerError("config has no group")
    rep = validate_action(cfg.group, cfg.window)
    print(f"group order {rep['order']}")
    status = OK
    for ts in _order(cfg, args):
        avg, r = average_aisle_over_group(ts, cfg.group, _budget(cfg, args))
        flags = check_preservation([ts], avg)["averaged"]
        print(f"{ts.name}: X^G = {_fmt_set(cfg.window, avg.aisle)}; {r['status']}; "
              f"invariant={r['invariant']}; stable={flags['stable']}")
        if r["status"] != VALIDATED or not r["invariant"]:
            status = FAILS
    return status


def cmd_render(args):
    cfg = load_config(args.config)
    ts = cfg.t_structures[args.ts] if args.ts else _order(cfg, args)[0]
    r = roles(cfg.window, ts.aisle, ts.coaisle())
    text = to_svg(cfg.window, r, ts.name) if args.svg else to_dot(cfg.window, r, ts.name)
    out = _out_dir(cfg, args)
    if out:
        _write(os.path.join(out, f"{ts.name}.{'svg' if args.svg else 'dot'}"), text)
    else:
        sys.stdout.write(text)
    c = classify(ts)
    print(f"# stable={c['stable']} bounded={c['bounded']}", file=sys.stderr)
    return OK


# ---------------------------------------------------------------- parser

def build_parser():
    p = argparse.ArgumentParser(prog="taverager", description="Averaging t-structures.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, config_required=True):
        sp.add_argument("--config", required=config_required)
        sp.add_argument("--order")
        sp.add_argument("--budget", type=int)
        sp.add_argument("--out")
        return sp

    common(sub.add_parser("validate")).set_defaults(fn=cmd_validate)
    sp = common(sub.add_parser("truncate"))
    sp.add_argument("--object", required=True)
    sp.add_argument("--ts")
    sp.set_defaults(fn=cmd_truncate)
    sp = common(sub.add_parser("average"))
    sp.add_argument("--intersect", action="store_true")
    sp.add_argument("--naive", action="store_true")
    sp.set_defaults(fn=cmd_average)
    common(sub.add_parser("intersect")).set_defaults(fn=cmd_intersect)
    sp = common(sub.add_parser("criterion"), config_required=False)
    sp.add_argument("--builtin")
    sp.set_defaults(fn=cmd_criterion)
    sp = sub.add_parser("tube")
    sp.add_argument("--rho", type=int, required=True)
    sp.add_argument("op", choices=["ext", "hom", "extdim", "hammock", "bound"])
    sp.add_argument("objects", nargs="*")
    sp.add_argument("--t")
    sp.add_argument("--rprime", action="append")
    sp.add_argument("--r", action="append")
    sp.set_defaults(fn=cmd_tube)
    common(sub.add_parser("act")).set_defaults(fn=cmd_act)
    sp = common(sub.add_parser("render"))
    sp.add_argument("--ts")
    sp.add_argument("--svg", action="store_true")
    sp.set_defaults(fn=cmd_render)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.verb == "criterion" and not (args.builtin or args.config):
        print("error: criterion needs --builtin or --config", file=sys.stderr)
        return BAD_INPUT
    try:
        return args.fn(args)
    except (NonAisle, WindowTooSmall) as e:
        print(f"error: {e}", file=sys.stderr)
        return FAILS
    except TAveragerError as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_INPUT
    except (ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
