"""Salvetti 1-skeleton and 2-cells of a central arrangement, paths in the
Deligne groupoid, and matrix representations checked against the 2-cells.

Directed edges are numbered in (tail, head) order. The opposite directed
edge of ``e`` is treated as its inverse: a representation must send it to
the inverse matrix, and a path followed by its reverse cancels.
"""
from collections import deque
from dataclasses import dataclass, field

from . import exactq as xq
from .arrangement import codim2_faces, enumerate_chambers
from .errors import (Disconnected, EndpointMismatch, MissingEdge, NotALoop,
                     UncheckedRepresentation, ValidationError)


@dataclass(frozen=True)
class DirectedEdge:
    id: int
    tail: int
    head: int
    walls: tuple


@dataclass
class SalvettiGraph:
    chambers: list   # Chamber records, index = vertex
    edges: list      # DirectedEdge, index = id
    reverse: dict    # edge id -> opposite edge id
    lookup: dict     # (tail, head) -> edge id
    chamber_graph: object = field(default=None, repr=False)

    def out_edges(self, v):
        return [e for e in self.edges if e.tail == v]

    def edge(self, tail, head):
        try:
            return self.lookup[tail, head]
        except KeyError:
            raise MissingEdge(f"no edge {tail} -> {head}") from None


@dataclass(frozen=True)
class TwoCell:
    localization: int  # index into the list of localizations
    face: int          # index of the face inside that localization
    base: int
    opposite: int
    gamma1: tuple      # edge ids, counterclockwise around the face
    gamma2: tuple      # edge ids, clockwise
    walls: tuple = ()  # wall groups crossed by gamma1, in order


def build_salvetti(arr, graph=None, max_dim=xq.DEFAULT_MAX_DIM):
    graph = graph or enumerate_chambers(arr, max_dim)
    pairs = []
    for e in graph.edges:
        pairs.append((e.a, e.b, e.walls))
        pairs.append((e.b, e.a, e.walls))
    pairs.sort()
    edges = [DirectedEdge(i, t, h, w) for i, (t, h, w) in enumerate(pairs)]
    lookup = {(e.tail, e.head): e.id for e in edges}
    reverse = {e.id: lookup[e.head, e.tail] for e in edges}
    sg = SalvettiGraph(graph.chambers, edges, reverse, lookup, graph)
    _check_connected(sg)

    cells = []
    if not arr.hyperplanes or arr.rank() < 2:
        return sg, cells
    for li, loc in enumerate(codim2_faces(arr, graph, max_dim)):
        for fi, face in enumerate(loc.faces):
            cyc, n = face.cycle, len(face.cycle)
            p = n // 2
            for k in range(n):
                fwd = [cyc[(k + s) % n] for s in range(p + 1)]
                back = [cyc[(k - s) % n] for s in range(p + 1)]
                g1 = tuple(sg.edge(a, b) for a, b in zip(fwd, fwd[1:]))
                g2 = tuple(sg.edge(a, b) for a, b in zip(back, back[1:]))
                walls = tuple(face.crossings[(k + s) % n] for s in range(p))
                cells.append(TwoCell(li, fi, cyc[k], cyc[(k + p) % n], g1, g2, walls))
    return sg, cells


def _check_connected(sg):
    if not sg.chambers:
        return
    seen = {0}
    todo = [0]
    while todo:
        v = todo.pop()
        for e in sg.out_edges(v):
            if e.head not in seen:
                seen.add(e.head)
                todo.append(e.head)
    if len(seen) != len(sg.chambers):
        raise Disconnected(f"only {len(seen)} of {len(sg.chambers)} chambers reachable")


# ------------------------------------------------------------------ paths

@dataclass(frozen=True)
class GroupoidPath:
    start: int
    edges: tuple = ()
    end: int = None

    def __len__(self):
        return len(self.edges)


def path(sg, start, edges=()):
    v = start
    for eid in edges:
        if not 0 <= eid < len(sg.edges):
            raise MissingEdge(f"unknown edge id {eid}")
        e = sg.edges[eid]
        if e.tail != v:
            raise EndpointMismatch(f"edge {eid} starts at {e.tail}, path is at {v}")
        v = e.head
    return GroupoidPath(start, tuple(edges), v)


def path_through(sg, chambers):
    """The path visiting the given chambers in order."""
    return path(sg, chambers[0], [sg.edge(a, b) for a, b in zip(chambers, chambers[1:])])


def compose(p, q):
    if p.end != q.start:
        raise EndpointMismatch(f"path ends at {p.end}, next starts at {q.start}")
    return GroupoidPath(p.start, p.edges + q.edges, q.end)


def reverse(sg, p):
    return GroupoidPath(p.end, tuple(sg.reverse[e] for e in reversed(p.edges)), p.start)


def shortest_path(sg, a, b):
    prev = {a: None}
    todo = deque([a])
    while todo:
        v = todo.popleft()
        if v == b:
            break
        for e in sg.out_edges(v):
            if e.head not in prev:
                prev[e.head] = e.id
                todo.append(e.head)
    if b not in prev:
        raise Disconnected(f"no path {a} -> {b}")
    out = []
    v = b
    while prev[v] is not None:
        out.append(prev[v])
        v = sg.edges[prev[v]].tail
    return GroupoidPath(a, tuple(reversed(out)), b)


def boundary_loop(sg, cell):
    """gamma1 followed by gamma2 backwards: a loop at the base chamber."""
    g1 = path(sg, cell.base, cell.gamma1)
    g2 = path(sg, cell.base, cell.gamma2)
    return compose(g1, reverse(sg, g2))


# --------------------------------------------------------- representations

class EdgeRepresentation:
    """Invertible matrices on directed edges; opposite edges get inverse matrices."""

    def __init__(self, sg, dimension, assignment):
        self.graph = sg
        self.dimension = dimension
        self.assignment = {}
        for eid, m in assignment.items():
            m = xq.mat(m)
            if xq.shape(m) != (dimension, dimension):
                raise ValidationError(f"edge {eid}: matrix is not {dimension}x{dimension}")
            self.assignment[eid] = m
        for eid, m in self.assignment.items():
            r = sg.reverse.get(eid)
            if r is None:
                raise MissingEdge(f"edge id {eid} is not in the graph")
            if r in self.assignment and not xq.is_identity(xq.mat_mul(m, self.assignment[r])):
                raise ValidationError(f"edges {eid} and {r} are not assigned inverse matrices")
        self.verified = False

    @classmethod
    def from_walls(cls, sg, dimension, wall_matrix):
        """Assign ``wall_matrix(walls, edge)`` to each edge; the reverse gets its inverse."""
        out = {}
        for e in sg.edges:
            r = sg.reverse[e.id]
            if r in out:
                out[e.id] = xq.inverse(out[r])
            else:
                out[e.id] = xq.mat(wall_matrix(e.walls, e))
        return cls(sg, dimension, out)

    @classmethod
    def from_json(cls, sg, obj):
        """``{"dimension": d, "edges": [{"tail": t, "head": h, "matrix": [[..]]}]}``.

        Missing reverse edges are filled with the inverse matrix.
        """
        d = int(obj["dimension"])
        out = {}
        for item in obj["edges"]:
            eid = sg.edge(int(item["tail"]), int(item["head"]))
            try:
                out[eid] = xq.mat(item["matrix"])
            except (ValueError, ZeroDivisionError) as exc:
                raise ValidationError(f"edge {eid}: bad matrix entry ({exc})") from None
        for eid in list(out):
            r = sg.reverse[eid]
            if r not in out:
                out[r] = xq.inverse(out[eid])
        return cls(sg, d, out)

    def matrix(self, eid):
        try:
            return self.assignment[eid]
        except KeyError:
            raise MissingEdge(f"no matrix for edge {eid}") from None

    def is_total(self):
        return len(self.assignment) == len(self.graph.edges)


def evaluate(rep, p):
    """Product of the edge matrices in path order."""
    out = xq.identity(rep.dimension)
    for eid in p.edges:
        out = xq.mat_mul(out, rep.matrix(eid))
    return out


@dataclass
class CellReport:
    checked: int = 0
    failures: list = field(default_factory=list)  # (cell index, M_gamma1, M_gamma2)

    @property
    def ok(self):
        return not self.failures


def check_two_cells(rep, cells):
    """Compare the two sides of every 2-cell exactly; marks ``rep`` verified on success."""
    report = CellReport()
    sg = rep.graph
    for i, cell in enumerate(cells):
        m1 = evaluate(rep, path(sg, cell.base, cell.gamma1))
        m2 = evaluate(rep, path(sg, cell.base, cell.gamma2))
        report.checked += 1
        if m1 != m2:
            report.failures.append((i, m1, m2))
    rep.verified = report.ok and rep.is_total()
    return report


def monodromy(rep, loop):
    if loop.start != loop.end:
        raise NotALoop(f"path runs from {loop.start} to {loop.end}")
    if not rep.verified:
        raise UncheckedRepresentation("run check_two_cells first")
    return evaluate(rep, loop)


# ------------------------------------------------------------ homotopy

def _free_reduce(sg, word):
    out = []
    for e in word:
        if out and sg.reverse[out[-1]] == e:
            out.pop()
        else:
            out.append(e)
    return tuple(out)


def _relator_table(sg, cells):
    """Map each subword u of a cyclic boundary relator r = u v to v^{-1}."""
    table = {}
    for cell in cells:
        loop = boundary_loop(sg, cell).edges
        inv = tuple(sg.reverse[e] for e in reversed(loop))
        for word in (loop, inv):
            n = len(word)
            for rot in range(n):
                w = word[rot:] + word[:rot]
                for k in range(1, n):
                    u, v = w[:k], w[k:]
                    repl = tuple(sg.reverse[e] for e in reversed(v))
                    table.setdefault(u, set()).add(repl)
    return {u: sorted(vs) for u, vs in table.items()}


def _rewrites(word, table, maxlen):
    for i in range(len(word)):
        for k in range(1, min(maxlen, len(word) - i) + 1):
            u = word[i:i + k]
            for v in table.get(u, ()):
                yield word[:i] + v + word[i + k:]


def homotopic_bounded(sg, cells, p, q, depth, rep=None):
    """"yes", "no" or "unknown" after at most ``depth`` relator substitutions.

    Words are kept freely reduced. The search runs from both ends and meets
    in the middle. "no" is only returned when a verified representation
    ``rep`` separates the two paths.
    """
    if p.start != q.start or p.end != q.end:
        raise EndpointMismatch("paths must share both endpoints")
    if rep is not None and rep.verified and evaluate(rep, p) != evaluate(rep, q):
        return "no"
    a, b = _free_reduce(sg, p.edges), _free_reduce(sg, q.edges)
    if a == b:
        return "yes"
    table = _relator_table(sg, cells)
    maxlen = max((len(u) for u in table), default=0)
    seen = [{a}, {b}]
    frontier = [{a}, {b}]
    for _ in range(depth):
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        new = set()
        for w in frontier[side]:
            for x in _rewrites(w, table, maxlen):
                x = _free_reduce(sg, x)
                if x in seen[1 - side]:
                    return "yes"
                if x not in seen[side]:
                    new.add(x)
        seen[side] |= new
        frontier[side] = new
    return "unknown"
