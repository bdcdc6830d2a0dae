"""Circuits of a torus datum, their orientations, and the discriminantal arrangement."""
import itertools
from dataclasses import dataclass

from . import exactq as xq
from .arrangement import Arrangement, Hyperplane
from .errors import NotACircuit, OnWall, ValidationError
from .torusdata import Character, TorusData, from_k_basis


@dataclass(frozen=True)
class Circuit:
    indices: tuple  # sorted, 0-based
    beta: tuple     # primitive vector of k_Z in Z^n, support exactly ``indices``

    def __len__(self):
        return len(self.indices)

    def label(self):
        return "{" + ",".join(str(i + 1) for i in self.indices) + "}"


@dataclass(frozen=True)
class OrientedCircuit:
    circuit: Circuit
    plus: tuple
    minus: tuple
    beta_eta: tuple
    non_unimodular: bool = False


def _subrank(td, subset):
    if not subset:
        return 0
    if td.d == 0:
        return 0
    return xq.rank([[td.a[r][i] for i in subset] for r in range(td.d)])


def enumerate_circuits(td):
    """All minimal dependent column sets of ``a``, smallest first, with primitive betas.

    A superset of a known circuit is never a circuit, so those are skipped.
    """
    found = []
    for size in range(1, td.n + 1):
        for subset in itertools.combinations(range(td.n), size):
            if any(set(c.indices) <= set(subset) for c in found):
                continue
            if _subrank(td, subset) == size:
                continue
            # dependent and every proper subset independent
            cols = [[td.a[r][i] for i in subset] for r in range(td.d)]
            ker = xq.kernel_basis(cols, ncols=size)
            if len(ker) != 1:
                continue
            coeffs = xq.canonical_sign(xq.primitive(ker[0]))
            if any(c == 0 for c in coeffs):
                continue
            beta = [0] * td.n
            for i, c in zip(subset, coeffs):
                beta[i] = c
            found.append(Circuit(subset, tuple(beta)))
    return found


def pairing(ch, c):
    """<eta, beta_C> computed through the lift."""
    return sum(x * y for x, y in zip(ch.lift, c.beta))


def orient_circuit(c, ch):
    p = pairing(ch, c)
    if p == 0:
        raise OnWall(f"character lies on the wall of circuit {c.label()}")
    b = c.beta if p > 0 else tuple(-x for x in c.beta)
    plus = tuple(i for i in c.indices if b[i] > 0)
    minus = tuple(i for i in c.indices if b[i] < 0)
    return OrientedCircuit(c, plus, minus, b, any(abs(b[i]) != 1 for i in c.indices))


def beta_in_kbasis(td, c):
    """Coordinates of beta_C in the kbasis columns (a primitive integer vector)."""
    sol = xq.solve(xq.mat(td.kbasis), c.beta)
    if sol is None:
        raise ValidationError(f"beta of {c.label()} is not in the span of kbasis")
    return xq.primitive(sol)


@dataclass(frozen=True)
class DiscriminantalArrangement:
    arrangement: Arrangement
    circuits: tuple
    merge: tuple  # merge[w] = indices into ``circuits`` sharing wall w

    def wall_of(self, circuit_index):
        for w, members in enumerate(self.merge):
            if circuit_index in members:
                return w
        raise KeyError(circuit_index)


def discriminantal(td, circuits=None):
    """Central arrangement of walls P_C in k* (coordinates dual to kbasis)."""
    circuits = tuple(circuits if circuits is not None else enumerate_circuits(td))
    walls, merge = [], []
    for ci, c in enumerate(circuits):
        normal = beta_in_kbasis(td, c)
        key = xq.canonical_sign(normal)
        for w, h in enumerate(walls):
            if xq.canonical_sign(h.normal) == key:
                merge[w].append(ci)
                break
        else:
            walls.append(Hyperplane(key, 0))
            merge.append([ci])
    arr = Arrangement(walls, dim=td.k_rank)
    return DiscriminantalArrangement(arr, circuits, tuple(tuple(m) for m in merge))


@dataclass(frozen=True)
class Classification:
    kind: str  # "regular", "subregular" or "degenerate"
    walls: tuple = ()  # merged wall indices containing eta

    def __str__(self):
        return self.kind if not self.walls else f"{self.kind}{list(self.walls)}"


def classify_character(td, ch, disc=None):
    disc = disc or discriminantal(td)
    on = tuple(w for w, members in enumerate(disc.merge)
               if pairing(ch, disc.circuits[members[0]]) == 0)
    if not on:
        return Classification("regular")
    if len(on) == 1:
        return Classification("subregular", on)
    return Classification("degenerate", on)


# ------------------------------------------------------------ restriction

@dataclass(frozen=True)
class RestrictionReport:
    """Circuits of K/K_C acting on the coordinates outside C, with the lemma checks."""
    circuit: Circuit
    coords: tuple              # original indices kept, in order
    datum: TorusData
    circuits: tuple            # circuits of the restricted datum (original indices)
    expected: tuple            # sorted distinct S \ C for S != C
    character: Character = None
    restricted_character: tuple = ()  # rational lift on the kept coordinates
    item1: bool = False         # circuits == {S \ C} literally
    item2: bool = None
    item3: bool = None
    item1_minimal: bool = False  # circuits == minimal members of {S \ C}

    @property
    def ok(self):
        return self.item1_minimal and self.item2 is not False and self.item3 is not False


def restricted_circuits(td, c, ch=None, circuits=None):
    """Restrict to K/K_C on T*E_C and check the restricted-circuit lemma.

    ``ch`` must lie on P_C; if omitted, a small integral character on P_C is
    searched for (subregular if one exists).
    """
    circuits = list(circuits if circuits is not None else enumerate_circuits(td))
    if c not in circuits:
        raise NotACircuit(f"{c.indices} is not a circuit of this datum")
    keep = tuple(i for i in range(td.n) if i not in c.indices)
    proj = [[col[i] for i in keep] for col in td.kbasis_columns()]
    lattice = xq.hermite_rows(proj) if keep else []
    kb = tuple(tuple(row[i] for row in lattice) for i in range(len(keep)))
    if not lattice:
        kb = tuple(() for _ in keep)
    sub = from_k_basis(kb, len(keep), name=f"{td.name}/C") if keep else TorusData(0, (), ())
    sub_circ = tuple(tuple(keep[i] for i in s.indices) for s in enumerate_circuits(sub))
    expected = sorted({tuple(i for i in s.indices if i not in c.indices)
                       for s in circuits if s != c} - {()})
    item1 = sorted(set(sub_circ)) == expected
    minimal = sorted(s for s in expected if not any(set(t) < set(s) for t in expected))
    item1_minimal = sorted(set(sub_circ)) == minimal

    if ch is None:
        ch = _character_on_wall(td, c, circuits)
    if ch is None:
        return RestrictionReport(c, keep, sub, sub_circ, tuple(expected), item1=item1,
                                 item1_minimal=item1_minimal)
    if pairing(ch, c) != 0:
        raise ValidationError("character must lie on P_C")

    # restricted lift: rational r on kept coordinates with r . pi(k_j) = eta_j
    rlift = ()
    if keep and sub.k_rank:
        rows = [[col[i] for i in keep] for col in td.kbasis_columns()]
        rlift = xq.solve(xq.mat(rows), ch.eta)
        if rlift is None:
            raise ValidationError("eta does not descend to K/K_C")
    sub_list = enumerate_circuits(sub)

    def sub_pair(s):
        return sum(x * y for x, y in zip(rlift, s.beta))

    item2 = True
    for s in circuits:
        if s == c or pairing(ch, s) == 0:
            continue
        o = orient_circuit(s, ch)
        rest = tuple(i for i in s.indices if i not in c.indices)
        match = [t for t in sub_list if tuple(keep[i] for i in t.indices) == rest]
        if not match:
            continue  # S \ C is not minimal; item 1 accounts for it
        pr = sub_pair(match[0])
        if pr == 0:
            item2 = False
            continue
        b = match[0].beta if pr > 0 else tuple(-x for x in match[0].beta)
        plus = tuple(keep[i] for i in match[0].indices if b[i] > 0)
        minus = tuple(keep[i] for i in match[0].indices if b[i] < 0)
        if plus != tuple(i for i in o.plus if i not in c.indices) or \
                minus != tuple(i for i in o.minus if i not in c.indices):
            item2 = False
    item3 = None
    if classify_character(td, ch).kind == "subregular":
        item3 = all(sub_pair(t) != 0 for t in sub_list)
    return RestrictionReport(c, keep, sub, sub_circ, tuple(expected), ch, tuple(rlift),
                             item1, item2, item3, item1_minimal)


def _character_on_wall(td, c, circuits, bound=3):
    """Smallest integral eta on P_C, preferring subregular ones."""
    from .torusdata import lift_eta
    normal = beta_in_kbasis(td, c)
    disc = discriminantal(td, circuits)
    fallback = None
    grid = range(-bound, bound + 1)
    for eta in sorted(itertools.product(grid, repeat=td.k_rank),
                      key=lambda e: (sum(abs(x) for x in e), e)):
        if sum(x * y for x, y in zip(eta, normal)) or not any(eta):
            continue
        try:
            ch = lift_eta(td, eta)
        except ValidationError:
            continue
        if classify_character(td, ch, disc).kind == "subregular":
            return ch
        fallback = fallback or ch
    return fallback
