"""Numpy implementations of the table-scan kernels.

The compiled extension `nilclean._speedups` provides loop-for-loop
equivalents of every function here; `nilclean.kernels` selects whichever
is available. Both backends scan in the same fixed order so they report
identical first-violation witnesses.

All tables are C-contiguous int32 arrays of element indices.
"""

import numpy as np

from . import axioms


def axiom_scan(add, mul, neg, zero, one):
    """Exhaustive ring-axiom check.

    Returns (axioms.OK, -1, -1, -1) on success, else (code, i, j, k) for
    the first violated axiom; unused witness slots are -1.
    """
    n = add.shape[0]
    idx = np.arange(n, dtype=np.int32)

    bad = np.nonzero((add[zero, :] != idx) | (add[:, zero] != idx))[0]
    if bad.size:
        return (axioms.ZERO_IDENTITY, int(bad[0]), -1, -1)

    bad = np.nonzero(add[idx, neg] != zero)[0]
    if bad.size:
        return (axioms.ADD_INVERSE, int(bad[0]), -1, -1)

    bad = np.nonzero((mul[one, :] != idx) | (mul[:, one] != idx))[0]
    if bad.size:
        return (axioms.ONE_IDENTITY, int(bad[0]), -1, -1)

    noncomm = add != add.T
    if noncomm.any():
        i = int(np.argmax(noncomm.any(axis=1)))
        j = int(np.argmax(noncomm[i]))
        return (axioms.ADD_COMMUTATIVITY, i, j, -1)

    for i in range(n):
        mism = add[add[i], :] != add[i, add]
        if mism.any():
            flat = int(np.argmax(mism))
            return (axioms.ADD_ASSOCIATIVITY, i, flat // n, flat % n)

    for i in range(n):
        mism = mul[mul[i], :] != mul[i, mul]
        if mism.any():
            flat = int(np.argmax(mism))
            return (axioms.MUL_ASSOCIATIVITY, i, flat // n, flat % n)

    for i in range(n):
        row = mul[i]
        mism = mul[i, add] != add[np.ix_(row, row)]
        if mism.any():
            flat = int(np.argmax(mism))
            return (axioms.LEFT_DISTRIBUTIVITY, i, flat // n, flat % n)

    for i in range(n):
        col = mul[:, i]
        mism = mul[add, i] != add[np.ix_(col, col)]
        if mism.any():
            flat = int(np.argmax(mism))
            return (axioms.RIGHT_DISTRIBUTIVITY, i, flat // n, flat % n)

    return (axioms.OK, -1, -1, -1)


def nil_indices(mul, zero):
    """Least nilpotency index per element; 0 marks non-nilpotent elements.

    Boolean nilpotence is decided by iterated squaring (a^(2^t) reaches 0
    within ceil(log2 n) doublings iff a is nilpotent, since the index of a
    nilpotent is at most n); exact indices then come from linear stepping
    restricted to the nilpotent elements.
    """
    n = mul.shape[0]
    idx = np.arange(n, dtype=np.int32)
    sq = mul[idx, idx]
    reach = idx.copy()
    doublings = max(1, int(np.ceil(np.log2(n)))) if n > 1 else 1
    for _ in range(doublings):
        reach = sq[reach]

    out = np.zeros(n, dtype=np.int32)
    active = np.nonzero(reach == zero)[0].astype(np.int32)
    cur = active.copy()
    t = 1
    while active.size:
        done = cur == zero
        out[active[done]] = t
        active = active[~done]
        cur = cur[~done]
        if active.size:
            cur = mul[cur, active]
        t += 1
    return out


def units_mask(mul, one):
    """1 where the element has a two-sided inverse, else 0."""
    right = mul == one
    return (right & right.T).any(axis=1).astype(np.uint8)


def center_mask(mul):
    """1 where the element commutes with every element, else 0."""
    return (mul == mul.T).all(axis=1).astype(np.uint8)


def jacobson_mask(add, mul, neg, one, units):
    """1 where 1 - r*a is a unit for every r, else 0."""
    vals = add[one, neg[mul]]
    return units[vals].astype(bool).all(axis=0).astype(np.uint8)
