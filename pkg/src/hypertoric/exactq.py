"""Exact rational linear algebra, integer normal forms and Fourier-Motzkin
feasibility.

Scalars are :class:`fractions.Fraction`; matrices are tuples of row tuples.
Nothing in here touches floating point.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DimensionTooLarge, ValidationError

DEFAULT_MAX_DIM = 12

GE, GT, EQ = ">=", ">", "="


def Q(x):
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    return Fraction(x)


def vec(xs):
    return tuple(Q(x) for x in xs)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def sign(x):
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------- matrices

def mat(rows):
    return tuple(tuple(Q(x) for x in row) for row in rows)


def shape(m):
    return len(m), (len(m[0]) if m else 0)


def identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def transpose(m, cols=None):
    if not m:
        return tuple(() for _ in range(cols or 0))
    return tuple(zip(*m))


def mat_mul(a, b):
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_vec(a, v):
    return tuple(dot(row, v) for row in a)


def rref(m):
    """Reduced row echelon form over Q. Returns ``(rows, pivot_columns)``."""
    rows = [list(map(Q, r)) for r in m]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


def rank(m):
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def kernel_basis(m, ncols=None):
    """Basis of the right kernel ``{x : m x = 0}`` over Q.

    Each basis vector has a 1 in one free column and zeros in the others.
    ``ncols`` is needed only when ``m`` has no rows.
    """
    n = len(m[0]) if m else ncols
    if n is None:
        raise ValidationError("kernel_basis of an empty matrix needs ncols")
    rows, pivots = rref(m) if m else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(m, b):
    """One rational solution of ``m x = b`` or None."""
    n = len(m[0])
    aug = [tuple(row) + (Q(bi),) for row, bi in zip(m, b)]
    rows, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(rows, pivots):
        x[p] = row[n]
    return tuple(x)


def inverse(m):
    n = len(m)
    aug = [tuple(row) + e for row, e in zip(m, identity(n))]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise ValidationError("matrix is singular")
    return tuple(tuple(row[n:]) for row in rows)


def is_identity(m):
    return all(m[i][j] == (i == j) for i in range(len(m)) for j in range(len(m)))


def primitive(v):
    """Scale a rational vector to a primitive integer vector (same direction)."""
    v = vec(v)
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def canonical_sign(v):
    """Flip ``v`` so its first nonzero entry is positive."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


# ------------------------------------------------------- integer normal forms

def smith_normal_form(m):
    """Smith normal form of an integer matrix.

    Returns ``(D, U, V)`` with ``U m V = D`` where U and V are unimodular and
    D is diagonal with nonnegative entries ``d1 | d2 | ...``. All three are
    lists of lists of ints.
    """
    a = [[int(x) for x in row] for row in m]
    r = len(a)
    c = len(a[0]) if a else 0
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(r, c)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, r) for j in range(t, c) if a[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = a[t][t]
            done = True
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        done = False
            if not done:
                continue
            bad = next((i for i in range(t + 1, r)
                        for j in range(t + 1, c) if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < r and t < c and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    return a, U, V


def smith_diagonal(m):
    """Invariant factors of an integer matrix, ``min(rows, cols)`` of them."""
    if not m or not m[0]:
        return ()
    D, _, _ = smith_normal_form(m)
    return tuple(D[i][i] for i in range(min(len(D), len(D[0]))))


def hermite_rows(m):
    """Row-style Hermite normal form of an integer matrix; zero rows dropped.

    The result spans the same row lattice. Pivots are positive and entries
    above each pivot lie in ``[0, pivot)``.
    """
    a = [[int(x) for x in row] for row in m]
    ncols = len(a[0]) if a else 0
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            if not nz:
                break
            i = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[i] = a[i], a[r]
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            clean = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        clean = False
            if clean:
                for i in range(r):
                    q = a[i][c] // a[r][c]
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                r += 1
                break
        if r == len(a):
            break
    return a[:r]


def integer_kernel_basis(m, ncols=None):
    """Basis of the lattice ``{x in Z^n : m x = 0}`` (columns of a Smith transform)."""
    n = len(m[0]) if m else ncols
    if not m:
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    D, _, V = smith_normal_form(m)
    rk = sum(1 for i in range(min(len(D), n)) if D[i][i])
    return [tuple(V[i][j] for i in range(n)) for j in range(rk, n)]


# ------------------------------------------------------ inequality systems

@dataclass(frozen=True)
class Constraint:
    """``coeffs . x + constant  REL  0`` with REL one of ``>=``, ``>``, ``=``."""
    coeffs: tuple
    constant: Fraction
    rel: str = GE

    def __post_init__(self):
        object.__setattr__(self, "coeffs", vec(self.coeffs))
        object.__setattr__(self, "constant", Q(self.constant))
        if self.rel not in (GE, GT, EQ):
            raise ValidationError(f"unknown relation {self.rel!r}")

    def holds(self, x):
        v = dot(self.coeffs, x) + self.constant
        if self.rel == GE:
            return v >= 0
        if self.rel == GT:
            return v > 0
        return v == 0


def ge(coeffs, constant=0):
    return Constraint(coeffs, constant, GE)


def gt(coeffs, constant=0):
    return Constraint(coeffs, constant, GT)


def le(coeffs, constant=0):
    return Constraint(tuple(-Q(c) for c in coeffs), -Q(constant), GE)


def lt(coeffs, constant=0):
    return Constraint(tuple(-Q(c) for c in coeffs), -Q(constant), GT)


def eq(coeffs, constant=0):
    return Constraint(coeffs, constant, EQ)


@dataclass(frozen=True)
class IneqSystem:
    constraints: tuple
    dim: int

    def __init__(self, constraints, dim=None):
        constraints = tuple(constraints)
        if dim is None:
            if not constraints:
                raise ValidationError("empty system needs an explicit dimension")
            dim = len(constraints[0].coeffs)
        for c in constraints:
            if len(c.coeffs) != dim:
                raise ValidationError("constraint dimensions disagree")
        object.__setattr__(self, "constraints", constraints)
        object.__setattr__(self, "dim", dim)

    def satisfied_by(self, x):
        return all(c.holds(x) for c in self.constraints)


def _to_int_row(coeffs, constant):
    den = constant.denominator
    for x in coeffs:
        den = den * x.denominator // gcd(den, x.denominator)
    row = [int(x * den) for x in coeffs] + [int(constant * den)]
    g = 0
    for x in row:
        g = gcd(g, x)
    if g > 1:
        row = [x // g for x in row]
    return tuple(row)


def _prune(rows):
    """Drop trivially true rows and keep only the tightest of parallel rows.

    ``rows`` are ``(int_row, strict)`` meaning ``row[:-1].x + row[-1] (>|>=) 0``.
    Returns None if some constant row is violated.
    """
    best = {}
    for row, strict in rows:
        coeffs = row[:-1]
        g = 0
        for x in coeffs:
            g = gcd(g, x)
        if g == 0:
            if row[-1] < 0 or (strict and row[-1] == 0):
                return None
            continue
        key = tuple(x // g for x in coeffs)
        bound = Fraction(row[-1], g)
        cur = best.get(key)
        # c.x + b > 0 is tighter for smaller b, and strict beats non-strict on ties
        if cur is None or bound < cur[0] or (bound == cur[0] and strict and not cur[1]):
            best[key] = (bound, strict, row)
    return [(row, strict) for _, strict, row in best.values()]


def _pick(lo, lo_strict, hi, hi_strict):
    """A small rational in the interval described by the bounds (None = open end)."""
    def ok(t):
        if lo is not None and (t < lo or (lo_strict and t == lo)):
            return False
        if hi is not None and (t > hi or (hi_strict and t == hi)):
            return False
        return True

    if ok(Fraction(0)):
        return Fraction(0)
    if lo is None:
        t = Fraction(hi.__floor__())
        return t if ok(t) else t - 1
    if hi is None:
        t = Fraction(lo.__ceil__())
        return t if ok(t) else t + 1
    t = Fraction(lo.__ceil__())
    if ok(t):
        return t
    t = Fraction(lo.__floor__() + 1)
    if ok(t):
        return t
    if lo == hi:
        return lo
    return (lo + hi) / 2


def feasible(system, max_dim=DEFAULT_MAX_DIM):
    """Exact feasibility of a mixed strict/non-strict/equality system.

    Returns a rational witness tuple satisfying every constraint, or None if
    the system is infeasible. Equalities are eliminated by substitution;
    the rest by Fourier-Motzkin with strictness tracking.
    """
    d = system.dim
    if d > max_dim:
        raise DimensionTooLarge(f"dimension {d} exceeds feasibility bound {max_dim}")

    rows = []
    eqs = []
    for c in system.constraints:
        r = _to_int_row(c.coeffs, c.constant)
        if c.rel == EQ:
            eqs.append([Fraction(x) for x in r])
        else:
            rows.append((r, c.rel == GT))

    # Gaussian elimination on equalities: x_p = -(sum_{j != p} e_j x_j + e_const) / e_p
    subs = []  # (pivot var, expression row over all vars + const)
    for k in range(len(eqs)):
        e = eqs[k]
        p = next((j for j in range(d) if e[j] != 0), None)
        if p is None:
            if e[d] != 0:
                return None
            continue
        expr = [-x / e[p] for x in e]
        expr[p] = Fraction(0)
        subs.append((p, expr))
        for m in range(k + 1, len(eqs)):
            eqs[m] = _substitute(eqs[m], p, expr)
        rows = [(_to_int_row(*_split(_substitute([Fraction(x) for x in r], p, expr))), s)
                for r, s in rows]

    rows = _prune(rows)
    if rows is None:
        return None
    free = [j for j in range(d) if j not in {p for p, _ in subs}]

    # Fourier-Motzkin, cheapest variable first; stages kept for back-substitution
    stages = []
    remaining = list(free)
    while remaining:
        def cost(j):
            pos = sum(1 for r, _ in rows if r[j] > 0)
            neg = sum(1 for r, _ in rows if r[j] < 0)
            return pos * neg - pos - neg
        j = min(remaining, key=cost)
        remaining.remove(j)
        stages.append((j, rows))
        pos = [(r, s) for r, s in rows if r[j] > 0]
        neg = [(r, s) for r, s in rows if r[j] < 0]
        new = [(r, s) for r, s in rows if r[j] == 0]
        for rp, sp in pos:
            for rn, sn in neg:
                fp, fn = -rn[j], rp[j]
                new.append((tuple(fp * x + fn * y for x, y in zip(rp, rn)), sp or sn))
        rows = _prune(new)
        if rows is None:
            return None

    x = [Fraction(0)] * d
    for j, stage_rows in reversed(stages):
        lo = hi = None
        lo_s = hi_s = False
        for r, strict in stage_rows:
            if r[j] == 0:
                continue
            rest = sum((r[i] * x[i] for i in range(d) if i != j), Fraction(r[d]))
            bound = -rest / r[j]
            if r[j] > 0:
                if lo is None or bound > lo or (bound == lo and strict):
                    lo, lo_s = bound, strict
            else:
                if hi is None or bound < hi or (bound == hi and strict):
                    hi, hi_s = bound, strict
        x[j] = _pick(lo, lo_s, hi, hi_s)
    for p, expr in reversed(subs):
        x[p] = sum((expr[i] * x[i] for i in range(d)), expr[d])
    w = tuple(x)
    if not system.satisfied_by(w):  # pragma: no cover - would be a bug
        from .errors import InvariantViolation
        raise InvariantViolation("Fourier-Motzkin witness fails its own system")
    return w


def _substitute(row, p, expr):
    f = row[p]
    if f == 0:
        return list(row)
    out = [a + f * b for a, b in zip(row, expr)]
    out[p] = Fraction(0)
    return out


def _split(row):
    return tuple(row[:-1]), row[-1]
