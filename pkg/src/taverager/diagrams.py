"""DOT and SVG emission of a window with aisle / co-aisle roles."""
from __future__ import annotations

import re
from html import escape

from .quiver import ARWindow, sort_key

ROLES = ("aisle", "coaisle", "neither")
_FILL = {"aisle": "#ffffff", "coaisle": "#000000", "neither": "#aaaaaa"}
_SHAPE = {"aisle": "box", "coaisle": "circle", "neither": "circle"}


def roles(w: ARWindow, aisle, coaisle):
    out = {}
    for x in w.vertices:
        out[x] = "aisle" if x in aisle else "coaisle" if x in coaisle else "neither"
    return out


def layout(w: ARWindow):
    """Column = longest arrow path ending at the vertex; row = its tau-orbit.

    Along a tau-orbit the column strictly increases.  Tubes carry oriented
    cycles, so arrows closing a cycle are ignored, and any remaining clash
    is moved to the next free row.
    """
    preds = {x: [] for x in w.vertices}
    for a, b in sorted(w.arrows, key=lambda e: (sort_key(e[0]), sort_key(e[1]))):
        preds[b].append(a)
    col, active = {}, set()
    for x in sorted(w.vertices, key=sort_key):
        if x in col:
            continue
        stack = [x]
        active.add(x)
        while stack:
            y = stack[-1]
            todo = [a for a in preds[y] if a not in col and a not in active]
            if todo:
                active.add(todo[0])
                stack.append(todo[0])
                continue
            stack.pop()
            active.discard(y)
            col[y] = 1 + max((col[a] for a in preds[y] if a in col), default=-1)
    root = {}
    for x in sorted(w.vertices, key=sort_key):
        y, seen = x, {x}
        while w._tau.get(y) in w.index and w._tau[y] not in seen:
            y = w._tau[y]
            seen.add(y)
        # periodic orbits are named by their least member
        root[x] = min(seen, key=sort_key) if w._tau.get(y) in seen else y
    rows = {r: n for n, r in enumerate(sorted(set(root.values()), key=lambda r: (col[r], sort_key(r))))}
    pos, used = {}, set()
    for x in sorted(w.vertices, key=sort_key):
        p = (col[x], rows[root[x]])
        while p in used:
            p = (p[0], p[1] + 1)
        used.add(p)
        pos[x] = p
    return pos


def to_dot(w: ARWindow, role_of: dict, title="window") -> str:
    lines = [f'digraph "{title}" {{', "  rankdir=LR;", "  node [style=filled];"]
    for d in range(w.d_lo, w.d_hi + 1):
        lines.append(f'  subgraph "cluster_d{d}" {{ label="degree {d}";')
        for x in sorted(w.degree(d), key=sort_key):
            r = role_of[x]
            lines.append(f'    "{x}" [role="{r}", shape={_SHAPE[r]}, fillcolor="{_FILL[r]}"];')
        lines.append("  }")
    for a, b in sorted(w.arrows, key=lambda e: (sort_key(e[0]), sort_key(e[1]))):
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


_NODE = re.compile(r'^\s*"([^"]+)" \[role="(\w+)"')


def parse_dot_roles(text: str) -> dict:
    """Role per vertex label, read back from to_dot output."""
    out = {}
    for line in text.splitlines():
        m = _NODE.match(line)
        if m:
            out[m.group(1)] = m.group(2)
    return out


def to_svg(w: ARWindow, role_of: dict, title="window") -> str:
    pos = layout(w)
    cx = {x: 40 + 60 * (pos[x][0] + 0.5 * pos[x][1]) for x in w.vertices}
    cy = {x: 40 + 50 * pos[x][1] for x in w.vertices}
    width = int(max(cx.values(), default=0) + 60)
    height = int(max(cy.values(), default=0) + 60)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
           f"  <title>{escape(title)}</title>"]
    for a, b in sorted(w.arrows, key=lambda e: (sort_key(e[0]), sort_key(e[1]))):
        out.append(f'  <line x1="{cx[a]:.0f}" y1="{cy[a]:.0f}" x2="{cx[b]:.0f}" y2="{cy[b]:.0f}" '
                   'stroke="#777777"/>')
    for x in sorted(w.vertices, key=sort_key):
        r = role_of[x]
        out.append(f'  <circle data-id="{escape(str(x))}" data-role="{r}" cx="{cx[x]:.0f}" '
                   f'cy="{cy[x]:.0f}" r="9" fill="{_FILL[r]}" stroke="#000000"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


_SVG_NODE = re.compile(r'data-id="([^"]+)" data-role="(\w+)"')


def parse_svg_roles(text: str) -> dict:
    from html import unescape
    return {unescape(m.group(1)): m.group(2) for m in _SVG_NODE.finditer(text)}
