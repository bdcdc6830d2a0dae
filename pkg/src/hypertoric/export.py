"""Deterministic JSON, DOT and CSV writers. Rationals become "p/q" strings."""
import csv
import io
import json
from dataclasses import fields, is_dataclass
from fractions import Fraction


def plain(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(x) for x in obj]
    if is_dataclass(obj):
        return {f.name: plain(getattr(obj, f.name)) for f in fields(obj)}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def parse_rational(x):
    if isinstance(x, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise ValueError(f"not a rational: {x!r}")


def to_json(obj):
    return json.dumps(plain(obj), sort_keys=True, indent=2) + "\n"


def _dot_id(x):
    return '"' + str(x).replace('"', r'\"') + '"'


def to_dot(name, nodes, edges, directed=False):
    """nodes: [(id, label)]; edges: [(tail, head, label)]."""
    arrow = "->" if directed else "--"
    lines = [("digraph " if directed else "graph ") + _dot_id(name) + " {"]
    for nid, label in nodes:
        lines.append(f"  {_dot_id(nid)} [label={_dot_id(label)}];")
    for t, h, label in edges:
        lines.append(f"  {_dot_id(t)} {arrow} {_dot_id(h)} [label={_dot_id(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([plain(x) if not isinstance(x, (list, tuple)) else " ".join(map(str, plain(x)))
                    for x in r])
    return buf.getvalue()


def sign_string(sign):
    return "".join("+" if s > 0 else "-" if s < 0 else "0" for s in sign)
