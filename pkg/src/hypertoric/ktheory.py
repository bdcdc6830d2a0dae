"""K-theory shadow of the A_m braid action: Euler form, twist matrices,
and the wall-crossing edge representation on the A_m discriminantal arrangement."""
from dataclasses import dataclass, field

from . import exactq as xq
from .circuits import discriminantal, enumerate_circuits
from .corpus import am
from .errors import IndexOutOfRange, ValidationError
from .groupoid import (EdgeRepresentation, boundary_loop, build_salvetti, check_two_cells,
                       compose, monodromy, reverse, shortest_path)
from .arrangement import enumerate_chambers, is_simplicial


@dataclass(frozen=True)
class EulerForm:
    m: int
    gram: tuple


@dataclass(frozen=True)
class TwistMatrix:
    index: int  # 1-based
    matrix: tuple


def euler_form(m):
    if m < 1:
        raise ValidationError("m must be at least 1")
    gram = tuple(tuple(2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(m))
                 for i in range(m))
    return EulerForm(m, gram)


def reflection(ef, v):
    """x -> x - chi(v, x) v on the span of the spherical classes."""
    gv = [sum(v[r] * ef.gram[r][c] for r in range(ef.m)) for c in range(ef.m)]
    return tuple(tuple(int(r == c) - v[r] * gv[c] for c in range(ef.m)) for r in range(ef.m))


def twist_matrix(ef, i):
    if not 1 <= i <= ef.m:
        raise IndexOutOfRange(f"twist index {i} outside 1..{ef.m}")
    e = [int(r == i - 1) for r in range(ef.m)]
    return TwistMatrix(i, reflection(ef, e))


def _mul(*ms):
    out = ms[0]
    for m in ms[1:]:
        out = xq.mat_mul(out, m)
    return out


def preserves_form(ef, m):
    m = xq.mat(m)
    return _mul(xq.transpose(m), xq.mat(ef.gram), m) == xq.mat(ef.gram)


@dataclass
class BraidReport:
    m: int
    checks: list = field(default_factory=list)  # (kind, i, j, ok), 1-based

    @property
    def ok(self):
        return all(c[-1] for c in self.checks)


def verify_braid_relations(m):
    ef = euler_form(m)
    ts = [xq.mat(twist_matrix(ef, i).matrix) for i in range(1, m + 1)]
    report = BraidReport(m)
    for i in range(m):
        for j in range(i + 1, m):
            a, b = ts[i], ts[j]
            if j == i + 1:
                report.checks.append(("braid", i + 1, j + 1, _mul(a, b, a) == _mul(b, a, b)))
            else:
                report.checks.append(("commute", i + 1, j + 1, _mul(a, b) == _mul(b, a)))
    return report


def root_of_pair(m, i, j):
    """e_i - e_j (0-based i < j) in the basis of simple roots."""
    return tuple(int(i <= r < j) for r in range(m))


def am_setup(m):
    """Datum, discriminantal arrangement, Salvetti graph and cells for A_m."""
    td = am(m)
    circuits = enumerate_circuits(td)
    disc = discriminantal(td, circuits)
    graph = enumerate_chambers(disc.arrangement)
    sg, cells = build_salvetti(disc.arrangement, graph)
    return td, disc, sg, cells


def am_edge_representation(m, setup=None):
    """Each edge crossing the wall of circuit {i, j} gets the reflection in e_i - e_j."""
    td, disc, sg, cells = setup or am_setup(m)
    ef = euler_form(m)

    def wall_matrix(walls, _edge):
        c = disc.circuits[disc.merge[walls[0]][0]]
        i, j = c.indices
        return reflection(ef, root_of_pair(m, i, j))
    return EdgeRepresentation.from_walls(sg, m, wall_matrix)


@dataclass
class Certification:
    m: int
    chambers: int
    edges: int
    cells: int
    failures: list
    simplicial: bool
    base: int = 0
    generators: list = field(default_factory=list)  # (cell index, loop, monodromy)

    @property
    def ok(self):
        return not self.failures


def certify_am_action(m):
    """Check every 2-cell for the A_m representation and compute generator monodromies.

    One generator loop per face of a codimension-2 localization: travel from
    the base chamber to the cell's base, go around the cell boundary, come back.
    """
    setup = am_setup(m)
    _, disc, sg, cells = setup
    rep = am_edge_representation(m, setup)
    report = check_two_cells(rep, cells)
    cert = Certification(m, len(sg.chambers), len(sg.edges), len(cells),
                         report.failures, is_simplicial(sg.chamber_graph))
    if not report.ok:
        return cert
    seen = set()
    for idx, cell in enumerate(cells):
        key = (cell.localization, cell.face)
        if key in seen:
            continue
        seen.add(key)
        to = shortest_path(sg, cert.base, cell.base)
        loop = compose(compose(to, boundary_loop(sg, cell)), reverse(sg, to))
        cert.generators.append((idx, loop, monodromy(rep, loop)))
    return cert
