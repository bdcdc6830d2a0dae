"""Exact rational hyperplane arrangements: chambers, walls, bounded chambers
and the rank-2 localizations of a central arrangement.

Hyperplanes are oriented: ``{x : <x, normal> + offset = 0}`` with the
positive side ``<x, normal> + offset > 0``. Repeated hyperplanes stay as
separate indexed entries; chamber sign vectors then flip in blocks.
"""
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import exactq as xq
from .errors import InvariantViolation, RankTooLow, ValidationError, ZeroNormal


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple
    offset: int = 0

    def __post_init__(self):
        normal = tuple(int(x) for x in self.normal)
        offset = int(self.offset)
        if not any(normal):
            raise ZeroNormal(f"hyperplane with zero normal (offset {offset})")
        g = 0
        for x in normal + (offset,):
            g = gcd(g, x)
        object.__setattr__(self, "normal", tuple(x // g for x in normal))
        object.__setattr__(self, "offset", offset // g)

    def value(self, x):
        return xq.dot(self.normal, x) + self.offset


@dataclass(frozen=True)
class Arrangement:
    hyperplanes: tuple
    dim: int

    def __init__(self, hyperplanes, dim=None):
        hs = tuple(h if isinstance(h, Hyperplane) else Hyperplane(*h) for h in hyperplanes)
        if dim is None:
            if not hs:
                raise ValidationError("empty arrangement needs an explicit dimension")
            dim = len(hs[0].normal)
        if any(len(h.normal) != dim for h in hs):
            raise ValidationError("hyperplane dimensions disagree")
        object.__setattr__(self, "hyperplanes", hs)
        object.__setattr__(self, "dim", dim)

    def __len__(self):
        return len(self.hyperplanes)

    @property
    def is_central(self):
        return all(h.offset == 0 for h in self.hyperplanes)

    def rank(self):
        return xq.rank([h.normal for h in self.hyperplanes]) if self.hyperplanes else 0

    def sign_vector(self, x):
        return tuple(xq.sign(h.value(x)) for h in self.hyperplanes)


@dataclass(frozen=True)
class Chamber:
    sign: tuple
    witness: tuple


@dataclass(frozen=True)
class WallEdge:
    """Adjacent chambers ``a < b`` separated by the hyperplanes ``walls``."""
    a: int
    b: int
    walls: tuple
    witness: tuple  # a point on the shared wall face


@dataclass
class ChamberGraph:
    arrangement: Arrangement
    chambers: list
    edges: list
    index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.index = {c.sign: i for i, c in enumerate(self.chambers)}

    def neighbours(self, i):
        for e in self.edges:
            if e.a == i:
                yield e.b, e
            elif e.b == i:
                yield e.a, e


def _groups(arr):
    """Partition hyperplane indices by common zero set.

    Returns a list of ``(representative, [(index, orientation)])`` where the
    orientation is +1 if the member's positive side agrees with the
    representative's.
    """
    groups = {}
    order = []
    for i, h in enumerate(arr.hyperplanes):
        row = h.normal + (h.offset,)
        key = xq.canonical_sign(row)
        orient = 1 if key == row else -1
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append((i, orient))
    return [(Hyperplane(key[:-1], key[-1]), groups[key]) for key in order]


def _side_constraints(reps, signs):
    return [xq.gt([s * x for x in h.normal], s * h.offset) for h, s in zip(reps, signs)]


def _nudge(reps, signs, h, s, w):
    """Move ``w`` (on ``h``, inside the region) to the strict ``s`` side of ``h``."""
    n = h.normal
    limit = None
    for hj, sj in zip(reps, signs):
        v = sj * hj.value(w)
        dv = sj * s * xq.dot(hj.normal, n)
        if dv < 0:
            t = v / -dv
            limit = t if limit is None else min(limit, t)
    t = Fraction(1) if limit is None else min(Fraction(1), limit / 2)
    return tuple(x + s * t * y for x, y in zip(w, n))


def _other_side(reps, signs, h, s, w, max_dim):
    """Witness for region ∩ {s * h > 0}, or None. Tries a reflection first."""
    hv = h.value(w)
    nn = xq.dot(h.normal, h.normal)
    cand = tuple(x - 2 * hv / nn * y for x, y in zip(w, h.normal))
    if all(sj * hj.value(cand) > 0 for hj, sj in zip(reps, signs)):
        return cand
    cons = _side_constraints(reps, signs)
    cons.append(xq.gt([s * x for x in h.normal], s * h.offset))
    return xq.feasible(xq.IneqSystem(cons, len(w)), max_dim)


def _integral(w):
    den = 1
    for x in w:
        den = den * x.denominator // gcd(den, x.denominator)
    return tuple(Fraction(int(x * den)) for x in w)


def enumerate_chambers(arr, max_dim=xq.DEFAULT_MAX_DIM):
    """All chambers with exact witnesses, plus the adjacency graph.

    Hyperplanes (grouped by zero set) are inserted one at a time; each old
    region is split when both sides are nonempty, either side being
    certified by an explicit point. Chambers come out sorted by sign vector.
    """
    if arr.dim > max_dim:
        raise xq.DimensionTooLarge(f"dimension {arr.dim} exceeds bound {max_dim}")
    groups = _groups(arr)
    reps = [h for h, _ in groups]
    regions = [((), tuple(Fraction(0) for _ in range(arr.dim)))]
    for g, h in enumerate(reps):
        prev = reps[:g]
        new = []
        for signs, w in regions:
            v = h.value(w)
            if v == 0:
                for s in (1, -1):
                    new.append((signs + (s,), _nudge(prev, signs, h, s, w)))
                continue
            s = xq.sign(v)
            new.append((signs + (s,), w))
            other = _other_side(prev, signs, h, -s, w, max_dim)
            if other is not None:
                new.append((signs + (-s,), other))
        regions = new

    central = arr.is_central
    chambers = []
    for gsigns, w in regions:
        sign = [0] * len(arr)
        for gs, (_, members) in zip(gsigns, groups):
            for i, o in members:
                sign[i] = gs * o
        if central:
            w = _integral(w)
        chambers.append(Chamber(tuple(sign), w))
    chambers.sort(key=lambda c: c.sign)
    for c in chambers:
        if arr.sign_vector(c.witness) != c.sign:
            raise InvariantViolation("chamber witness does not realize its sign vector")

    index = {c.sign: i for i, c in enumerate(chambers)}
    edges = []
    for i, c in enumerate(chambers):
        for _, members in groups:
            flipped = list(c.sign)
            for m, _ in members:
                flipped[m] = -flipped[m]
            j = index.get(tuple(flipped))
            if j is None or j < i:
                continue
            walls = tuple(sorted(m for m, _ in members))
            edges.append(WallEdge(i, j, walls, _crossing(arr, c, chambers[j], walls)))
    return ChamberGraph(arr, chambers, edges)


def _crossing(arr, c1, c2, walls):
    """The point where the segment between two witnesses meets the wall."""
    h = arr.hyperplanes[walls[0]]
    v1, v2 = h.value(c1.witness), h.value(c2.witness)
    t = v1 / (v1 - v2)
    p = tuple(x + t * (y - x) for x, y in zip(c1.witness, c2.witness))
    expect = tuple(0 if i in walls else s for i, s in enumerate(c1.sign))
    if arr.sign_vector(p) != expect:
        raise InvariantViolation("wall face between adjacent chambers is not codimension 1")
    return p


def bounded_chambers(arr, graph=None):
    """Chambers with bounded closure (recession cone is {0})."""
    graph = graph or enumerate_chambers(arr)
    if arr.rank() < arr.dim or not arr.hyperplanes:
        return []
    out = []
    for c in graph.chambers:
        rows = [[s * x for x in h.normal] for h, s in zip(arr.hyperplanes, c.sign)]
        cons = [xq.ge(r) for r in rows]
        cons.append(xq.gt([sum(col) for col in zip(*rows)]))
        if xq.feasible(xq.IneqSystem(cons, arr.dim)) is None:
            out.append(c)
    return out


def chamber_count_simple_lines(n_lines, crossings):
    """Region count 1 + n + P for lines in general position with P simple crossings."""
    return 1 + n_lines + crossings


# ------------------------------------------------------ rank-2 localizations

@dataclass(frozen=True)
class Face:
    """A codimension-2 face F and the 2p chambers around it, counterclockwise.

    ``crossings[k]`` lists the hyperplanes separating ``cycle[k]`` from
    ``cycle[k+1]`` (indices mod 2p).
    """
    sign: tuple
    witness: tuple
    cycle: tuple
    crossings: tuple


@dataclass(frozen=True)
class Localization:
    walls: tuple  # hyperplanes containing the codimension-2 flat
    faces: tuple

    @property
    def p(self):
        return len(self.faces[0].cycle) // 2 if self.faces else 0


def _angle_cmp(u, v):
    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1
    hu, hv = half(u), half(v)
    if hu != hv:
        return hu - hv
    cross = u[0] * v[1] - u[1] * v[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def codim2_faces(arr, graph=None, max_dim=xq.DEFAULT_MAX_DIM):
    """Rank-2 localizations of a central arrangement with their faces and chamber cycles."""
    if not arr.is_central:
        raise ValidationError("codim2_faces needs a central arrangement")
    if arr.rank() < 2:
        raise RankTooLow("arrangement rank is below 2")
    graph = graph or enumerate_chambers(arr, max_dim)
    hs = arr.hyperplanes
    flats = {}
    for i in range(len(hs)):
        for j in range(i + 1, len(hs)):
            if xq.rank([hs[i].normal, hs[j].normal]) < 2:
                continue
            members = tuple(m for m in range(len(hs))
                            if xq.rank([hs[i].normal, hs[j].normal, hs[m].normal]) == 2)
            flats.setdefault(members, (i, j))
    out = []
    for members, (i, j) in sorted(flats.items()):
        out.append(Localization(members, tuple(_faces(arr, graph, members, i, j, max_dim))))
    return out


def _faces(arr, graph, members, i, j, max_dim):
    hs = arr.hyperplanes
    na, nb = hs[i].normal, hs[j].normal
    others = [m for m in range(len(hs)) if m not in members]
    basis = xq.kernel_basis([na, nb])  # parametrises the flat
    if basis:
        restricted = Arrangement(
            [Hyperplane(xq.primitive([xq.dot(b, hs[m].normal) for b in basis]), 0) for m in others],
            dim=len(basis))
        if restricted.hyperplanes:
            sub = enumerate_chambers(restricted, max_dim).chambers
        else:
            sub = [Chamber((), tuple(Fraction(0) for _ in basis))]
        points = [tuple(sum((y * b[r] for y, b in zip(c.witness, basis)), Fraction(0))
                        for r in range(arr.dim)) for c in sub]
    else:
        points = [tuple(Fraction(0) for _ in range(arr.dim))]

    # each member normal as alpha * na + beta * nb; its local line has direction (-beta, alpha)
    coords = {}
    for m in members:
        ab = xq.solve(xq.transpose(xq.mat([na, nb])), hs[m].normal)
        coords[m] = ab
    lines = {}
    for m, (al, be) in coords.items():
        key = xq.canonical_sign(xq.primitive([-be, al]))
        lines.setdefault(key, []).append(m)
    rays = []
    for key, ms in lines.items():
        rays.append((key, tuple(ms)))
        rays.append((tuple(-x for x in key), tuple(ms)))
    rays.sort(key=functools.cmp_to_key(lambda r, s: _angle_cmp(r[0], s[0])))

    faces = []
    for f in points:
        fsign = arr.sign_vector(f)
        cycle, crossings = [], []
        for k in range(len(rays)):
            r1, r2 = rays[k][0], rays[(k + 1) % len(rays)][0]
            y = (r1[0] + r2[0], r1[1] + r2[1])
            sign = list(fsign)
            for m, (al, be) in coords.items():
                sign[m] = xq.sign(al * y[0] + be * y[1])
            idx = graph.index.get(tuple(sign))
            if idx is None:
                raise InvariantViolation(f"chamber {sign} around a codim-2 face is missing")
            cycle.append(idx)
            crossings.append(tuple(sorted(rays[(k + 1) % len(rays)][1])))
        faces.append(Face(fsign, f, tuple(cycle), tuple(crossings)))
    return faces


def is_simplicial(graph):
    """Every chamber of a central arrangement has exactly rank-many walls."""
    r = graph.arrangement.rank()
    count = [0] * len(graph.chambers)
    for e in graph.edges:
        count[e.a] += 1
        count[e.b] += 1
    return all(c == r for c in count)


def build_eta_arrangement(td, ch):
    """H_eta: hyperplanes <x, a_i> + eta_i = 0 in Q^d, one per coordinate."""
    if td.d == 0:
        raise ValidationError("the quotient is zero-dimensional; no arrangement")
    return Arrangement([Hyperplane(td.a_column(i), ch.lift[i]) for i in range(td.n)], dim=td.d)
