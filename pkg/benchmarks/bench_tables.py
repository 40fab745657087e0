"""Benchmark the compiled table-check kernel against the numpy fallback.

Runs the full associativity sweep and an automorphism sweep on the largest
shipped word group (1024 elements) with both backends:

    python benchmarks/bench_tables.py
"""

import importlib
import os
import statistics
import sys
import time


def build_inputs():
    from mforge.polygons import WordGroup, qp_xi_f4
    wg = WordGroup(qp_xi_f4())
    perm = list(range(len(wg.elements)))  # identity is an automorphism
    return wg.table, wg.identity, wg.inverse_vector(), perm


def run_backend(pure, table, identity, inverse, perm, repeats=3):
    os.environ.pop("MFORGE_PURE_TABLES", None)
    if pure:
        os.environ["MFORGE_PURE_TABLES"] = "1"
    for mod in ("mforge.tables",):
        if mod in sys.modules:
            importlib.reload(sys.modules[mod])
        else:
            importlib.import_module(mod)
    tables = sys.modules["mforge.tables"]
    times_assoc, times_hom = [], []
    for _ in range(repeats):
        t0 = time.monotonic()
        assert tables.first_assoc_violation(table) is None
        times_assoc.append(time.monotonic() - t0)
        t0 = time.monotonic()
        assert tables.first_hom_violation(table, perm) is None
        times_hom.append(time.monotonic() - t0)
    rep = tables.check_group_axioms(table, identity, inverse)
    assert rep.passed
    return (tables.BACKEND, statistics.median(times_assoc),
            statistics.median(times_hom))


def main():
    table, identity, inverse, perm = build_inputs()
    n = table.shape[0]
    print("word group order %d: %d associativity triples per sweep"
          % (n, n ** 3))
    rows = []
    for pure in (False, True):
        backend, t_assoc, t_hom = run_backend(pure, table, identity,
                                              inverse, perm)
        rows.append((backend, t_assoc, t_hom))
        print("  %-9s assoc %7.3fs   hom %7.3fs"
              % (backend, t_assoc, t_hom))
    if rows[0][0] != rows[1][0]:
        speedup = rows[1][1] / rows[0][1]
        print("compiled kernel speedup on the associativity sweep: %.1fx"
              % speedup)
    else:
        print("extension not built; both runs used the %s backend"
              % rows[0][0])


if __name__ == "__main__":
    main()
