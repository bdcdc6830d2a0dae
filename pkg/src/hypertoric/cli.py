"""hypertoric command line: circuits, chambers, semistability, flops, Salvetti
graphs and representation certificates for torus data given as JSON."""
import argparse
import json
import os
import random
import sys
import tempfile

import jsonschema

from . import exactq as xq
from . import export, schemas
from .arrangement import (Arrangement, Hyperplane, bounded_chambers, build_eta_arrangement,
                          enumerate_chambers, is_simplicial)
from .circuits import classify_character, discriminantal, enumerate_circuits
from .corpus import CORPUS
from .errors import HypertoricError, InvariantViolation, NotOnMomentFibre, ValidationError
from .groupoid import (EdgeRepresentation, build_salvetti, check_two_cells, compose, evaluate,
                       homotopic_bounded, path, reverse, shortest_path)
from .ktheory import am_edge_representation, am_setup, certify_am_action, euler_form, \
    twist_matrix, verify_braid_relations
from .semistab import (CotangentPoint, criteria_agree, flop_dimensions, halfspace_semistable,
                       konno_semistable, moment_zero, sample_points)
from .torusdata import (TorusData, check as check_datum, from_a_matrix, from_k_basis,
                        is_unimodular, lift_eta, make_character)


# ------------------------------------------------------------------ input

def read_json(path, schema, what="input"):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {what} {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    validate(obj, schema, path)
    return obj


def validate(obj, schema, where):
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as exc:
        loc = "/".join(str(p) for p in exc.absolute_path) or "(root)"
        raise ValidationError(f"{where}: schema violation at {loc}: {exc.message}") from None


def datum_from_json(obj, overrides=None):
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    chars = obj.get("characters", [])
    if "example" in obj:
        params = dict(obj["example"].get("params", {}))
        if any(params.get(k) != v for k, v in overrides.items()):
            chars = []  # stored characters belong to the old parameters
        params.update(overrides)
        td = build_example(obj["example"]["name"], params)
    else:
        if overrides:
            raise ValidationError(f"{', '.join('--' + k for k in overrides)} only applies "
                                  "to example data")
        if "kbasis" in obj:
            td = from_k_basis(obj["kbasis"], obj["n"], name=obj.get("name", ""))
            if "a" in obj:
                # keep the caller's quotient basis, after checking it
                td = TorusData(td.n, td.kbasis, tuple(tuple(r) for r in obj["a"]), td.name)
                check_datum(td)
        else:
            td = from_a_matrix(obj["a"], name=obj.get("name", ""))
    for c in chars:
        td.characters[c["name"]] = make_character(td, c["lift"], c["name"])
    return td


def build_example(name, params):
    fn = CORPUS[name]
    allowed = {"am": {"m"}, "tpn": {"n"}}.get(name, set())
    extra = set(params) - allowed
    if extra:
        raise ValidationError(f"example {name} takes no parameter {', '.join(sorted(extra))}")
    if name == "am":
        m = params.get("m", 2)
        if m < 1:
            raise ValidationError("--m must be at least 1")
        return fn(m)
    if name == "tpn":
        n = params.get("n", 3)
        if n < 2:
            raise ValidationError("--n must be at least 2")
        return fn(n)
    return fn()


def load_datum(args):
    overrides = {"m": getattr(args, "m", None), "n": getattr(args, "n", None)}
    if getattr(args, "example", None):
        obj = {"example": {"name": args.example}}
    elif getattr(args, "input", None):
        obj = read_json(args.input, schemas.DATUM)
    else:
        raise ValidationError("an --input datum (or --example NAME) is required")
    return datum_from_json(obj, overrides)


def parse_int_list(text, what):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ValidationError(f"{what} must be a comma-separated list of integers") from None


def parse_rat_list(text, what):
    try:
        return [export.parse_rational(x) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"{what} must be a comma-separated list of rationals") from None


def pick_character(td, args, required=True):
    if getattr(args, "lift", None):
        return make_character(td, parse_int_list(args.lift, "--lift"), "lift")
    if getattr(args, "eta", None):
        return lift_eta(td, parse_int_list(args.eta, "--eta"), "eta")
    name = getattr(args, "character", None)
    if name:
        return td.character(name)
    if "default" in td.characters:
        return td.characters["default"]
    if td.characters:
        return td.characters[sorted(td.characters)[0]]
    if required:
        raise ValidationError("no character given; use --lift, --eta or --character")
    return None


def load_arrangement(path):
    obj = read_json(path, schemas.ARRANGEMENT, "arrangement")
    hs = [Hyperplane(h["normal"], h.get("offset", 0)) for h in obj["hyperplanes"]]
    return Arrangement(hs, obj.get("dim"))


# ------------------------------------------------------------------ commands

def _circuit_json(c):
    return {"indices": [i + 1 for i in c.indices], "label": c.label(), "beta": list(c.beta)}


def cmd_circuits(args):
    td = load_datum(args)
    circuits = enumerate_circuits(td)
    disc = discriminantal(td, circuits)
    uni = is_unimodular(td)
    chars = []
    for name in sorted(td.characters):
        ch = td.characters[name]
        cl = classify_character(td, ch, disc)
        chars.append({"name": name, "lift": list(ch.lift), "eta": list(ch.eta),
                      "classification": cl.kind, "walls": list(cl.walls),
                      "smooth": bool(uni) and cl.kind == "regular"})
    walls = [{"normal": list(h.normal), "circuits": [circuits[i].label() for i in members]}
             for h, members in zip(disc.arrangement.hyperplanes, disc.merge)]
    data = {
        "datum": td.name, "n": td.n, "k": td.k_rank, "a": [list(r) for r in td.a],
        "circuits": [_circuit_json(c) for c in circuits],
        "discriminantal": {"dimension": td.k_rank, "walls": walls},
        "characters": chars,
        "unimodular": {"value": uni.unimodular,
                       "failing_subset": [i + 1 for i in uni.failing_subset],
                       "smith_factors": list(uni.smith_factors)},
    }
    fmt = args.format
    if fmt == "csv":
        return export.to_csv(["label", "size", "beta"],
                             [(c.label(), len(c), c.beta) for c in circuits])
    if fmt == "text":
        lines = [f"{td.name or 'datum'}: n={td.n} k={td.k_rank}, {len(circuits)} circuits"]
        lines += [f"  {c.label()}  beta={list(c.beta)}" for c in circuits]
        lines.append(f"  unimodular: {uni.unimodular}")
        return "\n".join(lines) + "\n"
    _no_dot(fmt)
    return export.to_json(data)


def _no_dot(fmt):
    if fmt == "dot":
        raise ValidationError("this command has no DOT output")


def _arrangement_for(args):
    if args.which == "eta":
        td = load_datum(args)
        return build_eta_arrangement(td, pick_character(td, args))
    if getattr(args, "arrangement", None):
        return load_arrangement(args.arrangement)
    td = load_datum(args)
    return discriminantal(td).arrangement


def cmd_chambers(args):
    arr = _arrangement_for(args)
    graph = enumerate_chambers(arr, args.max_dim)
    bounded = {c.sign for c in bounded_chambers(arr, graph)}
    if args.format == "dot":
        nodes = [(i, export.sign_string(c.sign)) for i, c in enumerate(graph.chambers)]
        edges = [(e.a, e.b, ",".join(str(w + 1) for w in e.walls)) for e in graph.edges]
        return export.to_dot("chambers", nodes, edges)
    if args.format == "csv":
        return export.to_csv(["index", "sign", "witness", "bounded"],
                             [(i, export.sign_string(c.sign), c.witness, c.sign in bounded)
                              for i, c in enumerate(graph.chambers)])
    if args.format == "text":
        lines = [f"{len(graph.chambers)} chambers, {len(bounded)} bounded, "
                 f"{len(graph.edges)} walls between chambers"]
        lines += [f"  {i}: {export.sign_string(c.sign)}{'  bounded' if c.sign in bounded else ''}"
                  for i, c in enumerate(graph.chambers)]
        return "\n".join(lines) + "\n"
    data = {
        "which": args.which, "dimension": arr.dim,
        "hyperplanes": [{"normal": list(h.normal), "offset": h.offset} for h in arr.hyperplanes],
        "count": len(graph.chambers), "bounded_count": len(bounded),
        "chambers": [{"sign": export.sign_string(c.sign), "witness": c.witness,
                      "bounded": c.sign in bounded} for c in graph.chambers],
        "edges": [{"a": e.a, "b": e.b, "walls": [w + 1 for w in e.walls]} for e in graph.edges],
    }
    if arr.is_central and arr.hyperplanes:
        data["simplicial"] = is_simplicial(graph)
    return export.to_json(data)


def cmd_semistable(args):
    td = load_datum(args)
    ch = pick_character(td, args)
    circuits = enumerate_circuits(td)
    if args.sample:
        pts = sample_points(td, args.sample, seed=args.seed)
        rep = criteria_agree(td, ch, pts, circuits)
        nss = sum(konno_semistable(td, ch, p, circuits) for p in pts)
        _no_dot(args.format)
        data = {"character": list(ch.lift), "seed": args.seed, "checked": rep.checked,
                "semistable": nss, "disagreements": len(rep.disagreements)}
        if rep.disagreements:
            raise InvariantViolation(f"criteria disagree on {len(rep.disagreements)} points")
        return export.to_json(data)
    if args.point:
        obj = read_json(args.point, schemas.POINT, "point")
        z, w = obj["z"], obj["w"]
    elif args.z is not None and args.w is not None:
        z, w = parse_rat_list(args.z, "--z"), parse_rat_list(args.w, "--w")
    else:
        raise ValidationError("give a point with --point FILE or --z/--w")
    try:
        p = CotangentPoint(z, w)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ValidationError(f"bad point: {exc}") from None
    data = {"character": list(ch.lift), "z": p.z, "w": p.w,
            "moment_zero": moment_zero(td, p, circuits),
            "konno": konno_semistable(td, ch, p, circuits)}
    try:
        data["halfspace"] = halfspace_semistable(td, ch, p, circuits=circuits)
    except NotOnMomentFibre as exc:
        data["halfspace"] = None
        data["halfspace_error"] = f"NotOnMomentFibre: {exc}"
    if args.format == "text":
        return "".join(f"{k}: {export.plain(data[k])}\n" for k in sorted(data))
    _no_dot(args.format)
    return export.to_json(data)


def cmd_flopdims(args):
    td = load_datum(args)
    rows = [flop_dimensions(td, c) for c in enumerate_circuits(td)]
    header = ["circuit", "size", "dim_M", "dim_B_theta", "dim_B_eta_theta", "fibre_dim",
              "dim_Z0", "loop"]

    def row(f):
        return ["{" + ",".join(str(i + 1) for i in f.circuit) + "}", f.size, f.dim_M,
                f.dim_B_theta, f.dim_B_eta_theta, f.fibre_dim, f.dim_Z0, f.loop]
    if args.format == "csv":
        return export.to_csv(header, [row(f) for f in rows])
    _no_dot(args.format)
    return export.to_json({"datum": td.name, "flops": [dict(zip(header, row(f))) for f in rows]})


def _salvetti_input(args):
    if getattr(args, "am", None) is not None:
        _, _, sg, cells = am_setup(args.am)
        return sg, cells
    if getattr(args, "arrangement", None):
        arr = load_arrangement(args.arrangement)
    else:
        arr = discriminantal(load_datum(args)).arrangement
    if not arr.is_central:
        raise ValidationError("the Salvetti graph needs a central arrangement")
    return build_salvetti(arr, max_dim=args.max_dim)


def cmd_salvetti(args):
    sg, cells = _salvetti_input(args)
    if args.format == "dot":
        nodes = [(i, export.sign_string(c.sign)) for i, c in enumerate(sg.chambers)]
        edges = [(e.tail, e.head, f"e{e.id}:" + ",".join(str(w + 1) for w in e.walls))
                 for e in sg.edges]
        return export.to_dot("salvetti", nodes, edges, directed=True)
    relations = [{"base": export.sign_string(sg.chambers[c.base].sign),
                  "gamma1": list(c.gamma1), "gamma2": list(c.gamma2)} for c in cells]
    if args.format == "csv":
        return export.to_csv(["base", "gamma1", "gamma2"],
                             [(r["base"], r["gamma1"], r["gamma2"]) for r in relations])
    data = {"vertices": [export.sign_string(c.sign) for c in sg.chambers],
            "edges": [{"id": e.id, "tail": e.tail, "head": e.head,
                       "walls": [w + 1 for w in e.walls]} for e in sg.edges],
            "relations": relations}
    return export.to_json(data)


def _soundness(sg, cells, rep, depth, seed, pairs=20):
    """Random path pairs with equal endpoints: homotopic ones must evaluate equally."""
    rng = random.Random(seed)
    out = {"pairs": 0, "yes": 0, "unknown": 0, "no": 0, "mismatches": 0}
    for _ in range(pairs):
        v = rng.randrange(len(sg.chambers))
        es, u = [], v
        for _ in range(rng.randint(1, 5)):
            e = rng.choice(sg.out_edges(u))
            es.append(e.id)
            u = e.head
        p = path(sg, v, es)
        q = shortest_path(sg, v, u)
        verdict = homotopic_bounded(sg, cells, p, q, depth)
        out["pairs"] += 1
        out[verdict] += 1
        if verdict == "yes" and evaluate(rep, p) != evaluate(rep, q):
            out["mismatches"] += 1
        if evaluate(rep, compose(p, reverse(sg, p))) != xq.identity(rep.dimension):
            out["mismatches"] += 1
    return out


def cmd_certify(args):
    if args.am is not None:
        if args.rep:
            raise ValidationError("--am uses the built-in representation; drop --rep")
        cert = certify_am_action(args.am)
        data = {"m": args.am, "status": "PASS" if cert.ok else "FAIL",
                "chambers": cert.chambers, "edges": cert.edges, "cells": cert.cells,
                "passed": cert.cells - len(cert.failures),
                "failures": [i for i, _, _ in cert.failures],
                "simplicial": cert.simplicial,
                "generators": [{"cell": i, "length": len(loop), "monodromy": m,
                                "identity": xq.is_identity(m)} for i, loop, m in cert.generators]}
        if args.depth:
            setup = am_setup(args.am)
            rep = am_edge_representation(args.am, setup)
            check_two_cells(rep, setup[3])
            data["soundness"] = _soundness(setup[2], setup[3], rep, args.depth, args.seed)
    else:
        if not args.rep:
            raise ValidationError("certify needs --am M or --rep FILE")
        sg, cells = _salvetti_input(args)
        rep = EdgeRepresentation.from_json(sg, read_json(args.rep, schemas.REPRESENTATION,
                                                         "representation"))
        if not rep.is_total():
            raise ValidationError(f"representation covers {len(rep.assignment)} of "
                                  f"{len(sg.edges)} edges")
        report = check_two_cells(rep, cells)
        data = {"status": "PASS" if report.ok else "FAIL", "cells": report.checked,
                "passed": report.checked - len(report.failures),
                "failures": [{"cell": i,
                              "base": export.sign_string(sg.chambers[cells[i].base].sign),
                              "gamma1": list(cells[i].gamma1), "gamma2": list(cells[i].gamma2),
                              "gamma1_matrix": m1, "gamma2_matrix": m2}
                             for i, m1, m2 in report.failures]}
        if args.depth and report.ok:
            data["soundness"] = _soundness(sg, cells, rep, args.depth, args.seed)
    if args.format == "text":
        return f"{data['status']} {data['passed']}/{data['cells']} cells\n"
    _no_dot(args.format)
    return export.to_json(data)


def cmd_braidcheck(args):
    m = args.m if args.m is not None else 2
    report = verify_braid_relations(m)
    ef = euler_form(m)
    twists = [twist_matrix(ef, i) for i in range(1, m + 1)]
    if args.format == "csv":
        rows = []
        for t in twists:
            for r, row in enumerate(t.matrix):
                rows.append([t.index, r + 1] + list(row))
        return export.to_csv(["twist", "row"] + [f"c{j + 1}" for j in range(m)], rows)
    _no_dot(args.format)
    data = {"m": m, "status": "PASS" if report.ok else "FAIL", "gram": ef.gram,
            "twists": [{"index": t.index, "matrix": t.matrix} for t in twists],
            "checks": [{"kind": k, "i": i, "j": j, "ok": ok} for k, i, j, ok in report.checks]}
    return export.to_json(data)


def cmd_example(args):
    params = {}
    if args.m is not None:
        params["m"] = args.m
    if args.n is not None:
        params["n"] = args.n
    td = build_example(args.name, params)
    data = {"name": td.name, "n": td.n, "kbasis": [list(r) for r in td.kbasis],
            "a": [list(r) for r in td.a],
            "characters": [{"name": c.name, "lift": list(c.lift)}
                           for _, c in sorted(td.characters.items())],
            "example": {"name": args.name, "params": params}}
    _no_dot(args.format)
    return export.to_json(data)


# ------------------------------------------------------------------ driver

def build_parser():
    ap = argparse.ArgumentParser(prog="hypertoric", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, datum=True):
        p.add_argument("--output", "-o", help="write here instead of stdout")
        p.add_argument("--format", choices=["json", "dot", "csv", "text"], default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--depth", type=int, default=0)
        p.add_argument("--max-dim", type=int, default=xq.DEFAULT_MAX_DIM)
        if datum:
            p.add_argument("--input", "-i", help="torus datum JSON")
            p.add_argument("--example", choices=sorted(CORPUS), help="use a built-in datum")
            p.add_argument("--m", type=int, help="rank parameter for the am example")
            p.add_argument("--n", type=int, help="size parameter for the tpn example")
        return p

    common(sub.add_parser("circuits", help="circuits, walls and character types"))

    p = common(sub.add_parser("chambers", help="chambers of H_eta or the discriminantal arrangement"))
    p.add_argument("--which", choices=["eta", "discriminantal"], default="eta")
    p.add_argument("--lift")
    p.add_argument("--eta")
    p.add_argument("--character")
    p.add_argument("--arrangement", help="arrangement JSON (discriminantal only)")

    p = common(sub.add_parser("semistable", help="moment map and both semistability tests"))
    p.add_argument("--lift")
    p.add_argument("--eta")
    p.add_argument("--character")
    p.add_argument("--point", help="JSON file {z: [...], w: [...]}")
    p.add_argument("--z")
    p.add_argument("--w")
    p.add_argument("--sample", type=int, default=0,
                   help="instead of one point, compare the criteria on this many random points")

    common(sub.add_parser("flopdims", help="flop dimension data for every circuit"))

    p = common(sub.add_parser("salvetti", help="Salvetti graph and 2-cell relations"))
    p.add_argument("--am", type=int)
    p.add_argument("--arrangement")

    p = common(sub.add_parser("certify", help="check a representation on every 2-cell"))
    p.add_argument("--am", type=int)
    p.add_argument("--rep")
    p.add_argument("--arrangement")

    p = common(sub.add_parser("braidcheck", help="twist matrices and braid relations"),
               datum=False)
    p.add_argument("--m", type=int)

    p = common(sub.add_parser("example", help="write a built-in datum as JSON"), datum=False)
    p.add_argument("name", choices=sorted(CORPUS))
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    return ap


COMMANDS = {"circuits": cmd_circuits, "chambers": cmd_chambers, "semistable": cmd_semistable,
            "flopdims": cmd_flopdims, "salvetti": cmd_salvetti, "certify": cmd_certify,
            "braidcheck": cmd_braidcheck, "example": cmd_example}


def _write(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".hypertoric-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        text = COMMANDS[args.command](args)
        if args.output:
            _write(args.output, text)
        else:
            sys.stdout.write(text)
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except (ValidationError, HypertoricError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
