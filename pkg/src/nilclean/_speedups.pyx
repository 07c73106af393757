# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled table-scan kernels.

Loop-for-loop equivalents of nilclean._kernels_py: same axiom order, same
lexicographic scan order, identical outputs. Tables are C-contiguous
int32 arrays of element indices.
"""

import numpy as np

from . import axioms


def axiom_scan(int[:, ::1] add, int[:, ::1] mul, int[::1] neg, int zero, int one):
    """Exhaustive ring-axiom check; see nilclean._kernels_py.axiom_scan."""
    cdef Py_ssize_t n = add.shape[0]
    cdef Py_ssize_t i, j, k
    cdef int ij

    for i in range(n):
        if add[zero, i] != i or add[i, zero] != i:
            return (axioms.ZERO_IDENTITY, i, -1, -1)
    for i in range(n):
        if add[i, neg[i]] != zero:
            return (axioms.ADD_INVERSE, i, -1, -1)
    for i in range(n):
        if mul[one, i] != i or mul[i, one] != i:
            return (axioms.ONE_IDENTITY, i, -1, -1)
    for i in range(n):
        for j in range(n):
            if add[i, j] != add[j, i]:
                return (axioms.ADD_COMMUTATIVITY, i, j, -1)
    for i in range(n):
        for j in range(n):
            ij = add[i, j]
            for k in range(n):
                if add[ij, k] != add[i, add[j, k]]:
                    return (axioms.ADD_ASSOCIATIVITY, i, j, k)
    for i in range(n):
        for j in range(n):
            ij = mul[i, j]
            for k in range(n):
                if mul[ij, k] != mul[i, mul[j, k]]:
                    return (axioms.MUL_ASSOCIATIVITY, i, j, k)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if mul[i, add[j, k]] != add[mul[i, j], mul[i, k]]:
                    return (axioms.LEFT_DISTRIBUTIVITY, i, j, k)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if mul[add[j, k], i] != add[mul[j, i], mul[k, i]]:
                    return (axioms.RIGHT_DISTRIBUTIVITY, i, j, k)
    return (axioms.OK, -1, -1, -1)


def nil_indices(int[:, ::1] mul, int zero):
    """Least nilpotency index per element; 0 marks non-nilpotent elements.

    Linear stepping bounded by n suffices: the powers of a nilpotent
    element are pairwise distinct below its index, so the index is at
    most n.
    """
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t a, t
    cdef int x
    out = np.zeros(n, dtype=np.int32)
    cdef int[::1] out_v = out
    for a in range(n):
        x = <int> a
        for t in range(1, n + 1):
            if x == zero:
                out_v[a] = <int> t
                break
            x = mul[x, a]
    return out


def units_mask(int[:, ::1] mul, int one):
    """1 where the element has a two-sided inverse, else 0."""
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t a, b
    out = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] out_v = out
    for a in range(n):
        for b in range(n):
            if mul[a, b] == one and mul[b, a] == one:
                out_v[a] = 1
                break
    return out


def center_mask(int[:, ::1] mul):
    """1 where the element commutes with every element, else 0."""
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t a, b
    cdef bint central
    out = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] out_v = out
    for a in range(n):
        central = True
        for b in range(n):
            if mul[a, b] != mul[b, a]:
                central = False
                break
        if central:
            out_v[a] = 1
    return out


def jacobson_mask(int[:, ::1] add, int[:, ::1] mul, int[::1] neg, int one,
                  unsigned char[::1] units):
    """1 where 1 - r*a is a unit for every r, else 0."""
    cdef Py_ssize_t n = add.shape[0]
    cdef Py_ssize_t a, r
    cdef bint inside
    out = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] out_v = out
    for a in range(n):
        inside = True
        for r in range(n):
            if not units[add[one, neg[mul[r, a]]]]:
                inside = False
                break
        if inside:
            out_v[a] = 1
    return out
