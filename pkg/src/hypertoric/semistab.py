"""Moment-map membership and semistability of points of T*C^n.

Two independent semistability tests are provided: the circuit criterion
(some coordinate of x_C^eta is nonzero for every circuit off eta's walls)
and the half-space criterion (feasibility of an intersection of closed
half-spaces of the eta-arrangement).
"""
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import exactq as xq
from .circuits import classify_character, discriminantal, enumerate_circuits, orient_circuit, pairing
from .errors import BadWallConfiguration, InvariantViolation, NotOnMomentFibre, ValidationError
from .torusdata import variety_dimension


@dataclass(frozen=True)
class CotangentPoint:
    z: tuple
    w: tuple

    def __post_init__(self):
        object.__setattr__(self, "z", xq.vec(self.z))
        object.__setattr__(self, "w", xq.vec(self.w))
        if len(self.z) != len(self.w):
            raise ValidationError("z and w must have equal length")

    def products(self):
        return tuple(a * b for a, b in zip(self.z, self.w))


def _check_len(td, p):
    if len(p.z) != td.n:
        raise ValidationError(f"point has {len(p.z)} coordinates, datum has n = {td.n}")


def moment_zero(td, p, circuits=None):
    """mu(p) = 0, decided through kbasis and through the circuit equations."""
    _check_len(td, p)
    prods = p.products()
    via_kernel = all(xq.dot(col, prods) == 0 for col in td.kbasis_columns())
    circuits = circuits if circuits is not None else enumerate_circuits(td)
    via_circuits = all(xq.dot(c.beta, prods) == 0 for c in circuits)
    if via_kernel != via_circuits:
        raise InvariantViolation("moment map tests disagree")
    return via_kernel


def x_coordinates(oc, p):
    """x_C^eta(p): z_i for i in C+, then w_i for i in C-."""
    return tuple(p.z[i] for i in oc.plus) + tuple(p.w[i] for i in oc.minus)


def konno_semistable(td, ch, p, circuits=None):
    _check_len(td, p)
    circuits = circuits if circuits is not None else enumerate_circuits(td)
    for c in circuits:
        if pairing(ch, c) == 0:
            continue
        if not any(x_coordinates(orient_circuit(c, ch), p)):
            return False
    return True


def halfspace_system(td, ch, p):
    """R_{z,w}: closed H^- for each z_i = 0 and closed H^+ for each w_i = 0."""
    cons = []
    for i in range(td.n):
        a, off = td.a_column(i), ch.lift[i]
        if p.z[i] == 0:
            cons.append(xq.le(a, off))
        if p.w[i] == 0:
            cons.append(xq.ge(a, off))
    return xq.IneqSystem(cons, td.d)


def halfspace_semistable(td, ch, p, check_moment=True, circuits=None):
    _check_len(td, p)
    if check_moment and not moment_zero(td, p, circuits):
        raise NotOnMomentFibre("point is not on mu^{-1}(0)")
    return xq.feasible(halfspace_system(td, ch, p)) is not None


@dataclass
class AgreementReport:
    checked: int = 0
    disagreements: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.disagreements


def criteria_agree(td, ch, points, circuits=None):
    circuits = circuits if circuits is not None else enumerate_circuits(td)
    report = AgreementReport()
    for p in points:
        k = konno_semistable(td, ch, p, circuits)
        h = halfspace_semistable(td, ch, p, circuits=circuits)
        report.checked += 1
        if k != h:
            report.disagreements.append((p, k, h))
    return report


# ------------------------------------------------------------ sampling

def point_with_zeros(td, zero_z, zero_w, rng, height=3):
    """A point of mu^{-1}(0) vanishing at least on the given coordinates.

    Products z_i w_i are drawn from the row space of ``a`` with the forced
    coordinates zero, then split into z and w. A product that happens to be
    zero on a free coordinate forces one extra zero.
    """
    forced = sorted(set(zero_z) | set(zero_w))
    if td.d:
        if forced:
            sub = [[td.a[r][i] for r in range(td.d)] for i in forced]
            ys = xq.kernel_basis(sub)
        else:
            ys = [tuple(Fraction(int(r == s)) for r in range(td.d)) for s in range(td.d)]
        coef = [rng.randint(-height, height) for _ in ys]
        y = [sum((c * b[r] for c, b in zip(coef, ys)), Fraction(0)) for r in range(td.d)]
        prods = [sum((td.a[r][i] * y[r] for r in range(td.d)), Fraction(0)) for i in range(td.n)]
    else:
        prods = [Fraction(0)] * td.n
    z, w = [], []
    for i in range(td.n):
        nz = rng.choice([x for x in range(-height, height + 1) if x])
        if i in zero_z and i in zero_w:
            z.append(0), w.append(0)
        elif i in zero_z:
            z.append(0), w.append(Fraction(nz))
        elif i in zero_w:
            z.append(Fraction(nz)), w.append(0)
        elif prods[i] == 0:
            if rng.random() < 0.5:
                z.append(Fraction(nz)), w.append(0)
            else:
                z.append(0), w.append(Fraction(nz))
        else:
            z.append(Fraction(nz)), w.append(prods[i] / nz)
    return CotangentPoint(z, w)


def sample_points(td, count, seed=0, zero_prob=Fraction(2, 5), height=3):
    """Seeded random points of mu^{-1}(0) with random zero patterns."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        zz = [i for i in range(td.n) if rng.random() < zero_prob]
        zw = [i for i in range(td.n) if rng.random() < zero_prob]
        out.append(point_with_zeros(td, zz, zw, rng, height))
    return out


def zero_pattern_points(td, seed=0):
    """One point of mu^{-1}(0) per zero pattern of the 2n coordinates."""
    rng = random.Random(seed)
    out = []
    idx = range(td.n)
    for bits in itertools.product((0, 1), repeat=2 * td.n):
        zz = [i for i in idx if bits[i]]
        zw = [i for i in idx if bits[td.n + i]]
        out.append(point_with_zeros(td, zz, zw, rng))
    return out


def act(td, s, p):
    """Action of t = (s_j)^{kbasis} in K: z_i -> t_i z_i, w_i -> w_i / t_i."""
    s = xq.vec(s)
    if any(x == 0 for x in s):
        raise ValidationError("torus elements must be nonzero")
    t = []
    for row in td.kbasis:
        ti = Fraction(1)
        for sj, e in zip(s, row):
            ti *= sj ** e
        t.append(ti)
    return CotangentPoint([a * b for a, b in zip(t, p.z)], [b / a for a, b in zip(t, p.w)])


# ------------------------------------------------------------ wall crossing

@dataclass
class WallReport:
    wall: int
    circuits: tuple
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def wall_inclusion_check(td, eta, theta, eta_prime, points, circuits=None):
    """Check ss(eta) = ss(theta) ∩ {x_C^eta != 0} and the inclusion chain.

    eta, eta_prime must be regular in chambers separated by exactly the wall
    containing the subregular theta. When several circuits share that wall
    the condition ranges over all of them.
    """
    circuits = circuits if circuits is not None else enumerate_circuits(td)
    disc = discriminantal(td, circuits)
    ce, ct, cp = (classify_character(td, x, disc) for x in (eta, theta, eta_prime))
    if ce.kind != "regular" or cp.kind != "regular" or ct.kind != "subregular":
        raise BadWallConfiguration(f"need regular/subregular/regular, got {ce}, {ct}, {cp}")
    wall = ct.walls[0]
    for w, members in enumerate(disc.merge):
        rep = disc.circuits[members[0]]
        se, st, sp = (xq.sign(pairing(x, rep)) for x in (eta, theta, eta_prime))
        if w == wall:
            if se != -sp:
                raise BadWallConfiguration("eta and eta' are not separated by theta's wall")
        elif not (se == st == sp):
            raise BadWallConfiguration(f"wall {w} also separates the characters")
    on_wall = [disc.circuits[i] for i in disc.merge[wall]]
    report = WallReport(wall, tuple(c.indices for c in on_wall))
    for p in points:
        ss_t = konno_semistable(td, theta, p, circuits)
        for ch, name in ((eta, "eta"), (eta_prime, "eta'")):
            ss = konno_semistable(td, ch, p, circuits)
            xs = all(any(x_coordinates(orient_circuit(c, ch), p)) for c in on_wall)
            if ss != (ss_t and xs):
                report.failures.append((p, name, "lemma"))
            if ss and not ss_t:
                report.failures.append((p, name, "inclusion"))
        report.checked += 1
    return report


# ------------------------------------------------------------ flop dimensions

@dataclass(frozen=True)
class FlopData:
    circuit: tuple
    size: int
    dim_M: int
    dim_B_theta: int
    dim_B_eta_theta: int
    fibre_dim: object  # int, or None when |C| = 1
    dim_Z0: int
    loop: bool = False


def flop_dimensions(td, c):
    s = len(c)
    dim_M = variety_dimension(td)
    b = dim_M - 2 * s + 2
    return FlopData(
        circuit=c.indices,
        size=s,
        dim_M=dim_M,
        dim_B_theta=b,
        dim_B_eta_theta=dim_M - s + 1,
        fibre_dim=s - 2 if s >= 2 else None,
        dim_Z0=b + 2 * (s - 1),
        loop=s == 1,
    )
