"""Torus data: a subtorus K of (C*)^n, its quotient vectors a_i and characters."""
import itertools
import warnings
from dataclasses import dataclass, field

from . import exactq as xq
from .errors import DependentColumns, ValidationError


@dataclass(frozen=True)
class TorusData:
    """K given by an integer basis of its cocharacter lattice.

    ``kbasis`` is n x k (columns span k_Z); ``a`` is d x n with column i the
    image of e_i in t_Z / k_Z, where d = n - k.
    """
    n: int
    kbasis: tuple
    a: tuple
    name: str = ""
    characters: dict = field(default_factory=dict, compare=False)

    @property
    def k_rank(self):
        return len(self.kbasis[0]) if self.kbasis and self.kbasis[0] else 0

    @property
    def d(self):
        return self.n - self.k_rank

    def a_column(self, i):
        return tuple(row[i] for row in self.a)

    def kbasis_columns(self):
        return [tuple(row[j] for row in self.kbasis) for j in range(self.k_rank)]

    def character(self, name):
        try:
            return self.characters[name]
        except KeyError:
            raise ValidationError(f"unknown character {name!r}") from None


@dataclass(frozen=True)
class Character:
    """A character of K: ``eta`` in the basis dual to kbasis, with a lift to Z^n."""
    eta: tuple
    lift: tuple
    name: str = ""


def _validate_kbasis(kbasis, n):
    kb = [tuple(int(x) for x in row) for row in kbasis]
    if len(kb) != n:
        raise ValidationError(f"kbasis must have n = {n} rows, got {len(kb)}")
    widths = {len(r) for r in kb}
    if len(widths) > 1:
        raise ValidationError("kbasis rows have unequal lengths")
    k = widths.pop() if widths else 0
    if k and xq.rank(kb) < k:
        raise DependentColumns("kbasis columns are linearly dependent")
    return tuple(kb), k


def from_k_basis(kbasis, n, name=""):
    """Build the datum from a basis of k_Z, deriving the a-matrix.

    The quotient basis comes from the Smith form of kbasis (last n-k rows of
    the left transform), then is put in row Hermite form so that the result
    does not depend on the elimination path.
    """
    kb, k = _validate_kbasis(kbasis, n)
    if k == 0:
        a = [[int(i == j) for j in range(n)] for i in range(n)]
    else:
        D, U, _ = xq.smith_normal_form(kb)
        if any(D[i][i] != 1 for i in range(k)):
            warnings.warn("kbasis spans a non-saturated sublattice; "
                          "quotient vectors describe its saturation", stacklevel=2)
        a = xq.hermite_rows(U[k:]) if k < n else []
    td = TorusData(n=n, kbasis=kb, a=tuple(tuple(r) for r in a), name=name)
    check(td)
    return td


def from_a_matrix(a, name=""):
    """Build the datum from the quotient vectors; kbasis is the integer kernel."""
    rows = [tuple(int(x) for x in r) for r in a]
    if not rows:
        raise ValidationError("a-matrix needs at least one row; use from_k_basis for d = 0")
    n = len(rows[0])
    if xq.rank(rows) < len(rows):
        raise ValidationError("a-matrix rows must be independent")
    cols = xq.integer_kernel_basis(rows)
    kb = tuple(tuple(c[i] for c in cols) for i in range(n))
    td = TorusData(n=n, kbasis=kb, a=tuple(rows), name=name)
    check(td)
    return td


def check(td):
    """Assert a . kbasis = 0 and rank(a) = d."""
    for row in td.a:
        for col in td.kbasis_columns():
            if sum(x * y for x, y in zip(row, col)):
                raise ValidationError("a . kbasis != 0")
    if td.a and xq.rank(td.a) != td.d:
        raise ValidationError("rank(a) != n - k")
    if len(td.a) != td.d:
        raise ValidationError("a must have n - k rows")


def make_character(td, lift, name=""):
    lift = tuple(int(x) for x in lift)
    if len(lift) != td.n:
        raise ValidationError(f"lift must have length n = {td.n}")
    eta = tuple(sum(x * y for x, y in zip(col, lift)) for col in td.kbasis_columns())
    return Character(eta=eta, lift=lift, name=name)


def lift_eta(td, eta, name=""):
    """An integer lift of ``eta`` (coordinates in the dual basis to kbasis)."""
    eta = tuple(int(x) for x in eta)
    k = td.k_rank
    if len(eta) != k:
        raise ValidationError(f"eta must have length k = {k}")
    if k == 0:
        return Character(eta=(), lift=(0,) * td.n, name=name)
    kt = [list(col) for col in td.kbasis_columns()]  # k x n
    D, U, V = xq.smith_normal_form(kt)
    ue = [sum(u * e for u, e in zip(row, eta)) for row in U]
    y = [0] * td.n
    for i in range(k):
        if D[i][i] == 0 or ue[i] % D[i][i]:
            raise ValidationError(f"eta {eta} has no integer lift")
        y[i] = ue[i] // D[i][i]
    lift = tuple(sum(V[r][c] * y[c] for c in range(td.n)) for r in range(td.n))
    ch = make_character(td, lift, name)
    assert ch.eta == eta
    return ch


def lifts_differ_by_translation(td, c1, c2):
    """True when two lifts restrict to the same eta, i.e. differ by a row-space vector of a."""
    if c1.eta != c2.eta:
        return False
    diff = [x - y for x, y in zip(c1.lift, c2.lift)]
    if not td.a:
        return not any(diff)
    return xq.solve(xq.transpose(xq.mat(td.a)), diff) is not None


def variety_dimension(td):
    return 2 * (td.n - td.k_rank)


@dataclass(frozen=True)
class UnimodularityReport:
    unimodular: bool
    failing_subset: tuple = ()
    smith_factors: tuple = ()

    def __bool__(self):
        return self.unimodular


def is_unimodular(td):
    """Every independent (n-k)-subset of the a_i must generate Z^d.

    On failure the certificate is the first offending subset (0-based column
    indices, lexicographic) with its Smith invariant factors.
    """
    d = td.d
    if d == 0:
        return UnimodularityReport(True)
    for subset in itertools.combinations(range(td.n), d):
        cols = [td.a_column(i) for i in subset]
        sub = [[c[r] for c in cols] for r in range(d)]
        factors = xq.smith_diagonal(sub)
        if all(factors):
            if any(f != 1 for f in factors):
                return UnimodularityReport(False, subset, factors)
    return UnimodularityReport(True)


def hnf_lattice(columns):
    """Row-HNF of a lattice given by generating columns; equal iff same lattice."""
    return tuple(tuple(r) for r in xq.hermite_rows([list(c) for c in columns]))
