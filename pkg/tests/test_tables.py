import numpy as np
import pytest

from mforge import tables
from mforge.tables import FiniteGroupTable, check_group_axioms, is_automorphism


def cyclic(n):
    return np.fromfunction(lambda a, b: (a + b) % n, (n, n),
                           dtype=np.int64).astype(np.int32)


def both_backends():
    yield tables
    import mforge._tablecheck_py as pure

    class Shim:
        BACKEND = "python"
        first_assoc_violation = staticmethod(
            lambda t: pure.first_assoc_violation(t))
        first_hom_violation = staticmethod(
            lambda t, p: pure.first_hom_violation(t, p))

    yield Shim


def test_backend_reported():
    assert tables.BACKEND in ("compiled", "python")


@pytest.mark.parametrize("n", [1, 2, 8, 31])
def test_cyclic_groups_pass(n):
    t = cyclic(n)
    inv = np.array([(-a) % n for a in range(n)], dtype=np.int32)
    rep = check_group_axioms(t, 0, inv)
    assert rep.passed


def test_planted_violation_found():
    t = cyclic(16)
    t[5, 7] = (5 + 7 + 1) % 16
    assert tables.first_assoc_violation(t) is not None


def test_backends_agree_on_violation():
    t = cyclic(12)
    t[3, 4] = 0
    results = set()
    for backend in both_backends():
        out = backend.first_assoc_violation(np.ascontiguousarray(t))
        results.add(tuple(int(v) for v in out))
    assert len(results) == 1


def test_hom_violation_both_backends():
    t = cyclic(10)
    good = np.array([(3 * a) % 10 for a in range(10)], dtype=np.int32)
    bad = good.copy()
    bad[[1, 2]] = bad[[2, 1]]
    for backend in both_backends():
        assert backend.first_hom_violation(t, good) is None
        assert backend.first_hom_violation(t, bad) is not None


def test_is_automorphism():
    t = cyclic(10)
    assert is_automorphism(t, [(3 * a) % 10 for a in range(10)])
    assert not is_automorphism(t, [(2 * a) % 10 for a in range(10)])


def test_automorphism_enumeration_oracle():
    # |Aut(Z_n)| = phi(n)
    for n, phi in ((4, 2), (5, 4), (8, 4)):
        g = FiniteGroupTable(list(range(n)), cyclic(n), 0)
        assert len(g.automorphisms()) == phi


def test_isomorphism_search():
    g1 = FiniteGroupTable(list(range(6)), cyclic(6), 0)
    # relabeled copy
    perm = [0, 2, 4, 1, 3, 5]
    inv = {v: k for k, v in enumerate(perm)}
    t2 = np.array([[perm[(inv[a] + inv[b]) % 6] for b in range(6)]
                   for a in range(6)], dtype=np.int32)
    g2 = FiniteGroupTable(list(range(6)), t2, 0)
    assert g1.isomorphism_to(g2) is not None
    # S3 is not isomorphic to Z6
    s3 = _s3_table()
    assert g1.isomorphism_to(s3) is None


def _s3_table():
    import itertools
    elems = list(itertools.permutations(range(3)))
    idx = {e: i for i, e in enumerate(elems)}
    t = np.array([[idx[tuple(a[b[i]] for i in range(3))] for b in elems]
                  for a in elems], dtype=np.int32)
    return FiniteGroupTable(elems, t, idx[(0, 1, 2)])


def test_center_and_conjugation():
    s3 = _s3_table()
    assert s3.center_indices() == [s3.identity]
    inner = {tuple(int(v) for v in s3.conjugation(g)) for g in range(6)}
    assert len(inner) == 6  # S3 is centerless: Inn = S3
