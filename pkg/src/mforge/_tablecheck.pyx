# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for exhaustive checks on finite Cayley tables.

These are the only hot loops in the package: the largest shipped word group
has 1024 elements, so a full associativity sweep is 2^30 triples.
"""


def first_assoc_violation(int[:, ::1] table):
    """First (a, b, c) with (ab)c != a(bc), or None."""
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t a, b, c
    cdef int ab, bc
    for a in range(n):
        for b in range(n):
            ab = table[a, b]
            for c in range(n):
                bc = table[b, c]
                if table[ab, c] != table[a, bc]:
                    return (a, b, c)
    return None


def first_identity_violation(int[:, ::1] table, int e):
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t a
    for a in range(n):
        if table[e, a] != a or table[a, e] != a:
            return a
    return None


def first_inverse_violation(int[:, ::1] table, int[::1] inv, int e):
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t a
    for a in range(n):
        if table[a, inv[a]] != e or table[inv[a], a] != e:
            return a
    return None


def first_hom_violation(int[:, ::1] table, int[::1] perm):
    """First (a, b) with perm[a*b] != perm[a]*perm[b], or None."""
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t a, b
    for a in range(n):
        for b in range(n):
            if perm[table[a, b]] != table[perm[a], perm[b]]:
                return (a, b)
    return None
