"""Built-in torus data."""
from .torusdata import from_a_matrix, from_k_basis, make_character


def am(m):
    """K = {t_1 ... t_{m+1} = 1} in (C*)^{m+1}; kbasis columns e_i - e_{i+1}."""
    n = m + 1
    kb = [[(1 if i == j else -1 if i == j + 1 else 0) for j in range(m)] for i in range(n)]
    td = from_k_basis(kb, n, name=f"A{m}")
    td.characters["default"] = make_character(td, range(1, n + 1), "default")
    return td


def tpn(n):
    """The diagonal circle (t, ..., t) in (C*)^n."""
    td = from_k_basis([[1] for _ in range(n)], n, name=f"TP{n - 1}")
    td.characters["default"] = make_character(td, [1] + [0] * (n - 1), "default")
    return td


def ex23():
    """k = {(a, a-b, b, -a)}: four lines in the plane with two bounded regions."""
    td = from_k_basis([[1, 0], [1, -1], [0, 1], [-1, 0]], 4, name="ex23")
    td.characters["default"] = make_character(td, [1, 1, 0, 0], "default")
    return td


def index_two():
    """a-columns (1,0) and (0,2): not unimodular."""
    return from_a_matrix([[1, 0], [0, 2]], name="index2")


CORPUS = {"am": am, "tpn": tpn, "ex23": ex23, "index2": index_two}
