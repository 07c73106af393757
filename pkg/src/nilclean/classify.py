"""Elementwise and setwise classifiers: units, idempotents, nilpotents,
center, Jacobson radical and strong pi-regularity.

Set-valued classifiers return sorted index lists for deterministic
output. Scans are cached on the ring instance; the Jacobson radical is
deliberately recomputed on every call.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from . import kernels
from .core import FiniteRing


@dataclass(frozen=True)
class NilpotenceWitness:
    """Least exponent certificate: pow(element, index) == zero."""

    element: int
    index: int


@dataclass(frozen=True)
class PiRegularityReport:
    """Per-element witnesses (n, r) with a^n = a^(n+1) * r."""

    holds: bool
    witnesses: Tuple[Optional[Tuple[int, int]], ...]


def nil_index_array(R: FiniteRing) -> np.ndarray:
    """Least nilpotency index per element (0 marks non-nilpotent); cached."""
    arr = R._cache.get("nil_indices")
    if arr is None:
        R.require_tables("nilpotence scan")
        arr = kernels.nil_indices(R.mul_table, R.zero)
        R._cache["nil_indices"] = arr
    return arr


def units_array(R: FiniteRing) -> np.ndarray:
    mask = R._cache.get("units")
    if mask is None:
        R.require_tables("unit scan")
        mask = kernels.units_mask(R.mul_table, R.one)
        R._cache["units"] = mask
    return mask


def is_unit(R: FiniteRing, a: int) -> bool:
    """True iff some b satisfies ab = ba = 1 (exhaustive search)."""
    if R.has_tables:
        return bool(units_array(R)[a])
    return any(R.mul(a, b) == R.one and R.mul(b, a) == R.one
               for b in R.elements())


def is_idempotent(R: FiniteRing, a: int) -> bool:
    return R.mul(a, a) == a


def nilpotence(R: FiniteRing, a: int) -> Optional[NilpotenceWitness]:
    """Least-index nilpotence witness, or None for non-nilpotent a.

    Steps through successive powers with a visited-set cycle cut, so it
    also works on closure-backed rings.
    """
    seen = set()
    x = a
    t = 1
    while x not in seen:
        if x == R.zero:
            return NilpotenceWitness(a, t)
        seen.add(x)
        x = R.mul(x, a)
        t += 1
    return None


def idempotents(R: FiniteRing) -> List[int]:
    out = R._cache.get("idempotents")
    if out is None:
        if R.has_tables:
            diag = R.mul_table[np.arange(R.size), np.arange(R.size)]
            out = [int(i) for i in np.nonzero(diag == np.arange(R.size))[0]]
        else:
            out = [a for a in R.elements() if R.mul(a, a) == a]
        R._cache["idempotents"] = out
    return list(out)


def nilpotents(R: FiniteRing) -> List[int]:
    return [int(i) for i in np.nonzero(nil_index_array(R) > 0)[0]]


def units(R: FiniteRing) -> List[int]:
    return [int(i) for i in np.nonzero(units_array(R))[0]]


def center(R: FiniteRing) -> List[int]:
    mask = R._cache.get("center")
    if mask is None:
        R.require_tables("center scan")
        mask = kernels.center_mask(R.mul_table)
        R._cache["center"] = mask
    return [int(i) for i in np.nonzero(mask)[0]]


def jacobson_radical(R: FiniteRing) -> List[int]:
    """{a : 1 - r*a is a unit for every r}, computed exhaustively."""
    R.require_tables("Jacobson radical")
    mask = kernels.jacobson_mask(R.add_table, R.mul_table, R.neg_table,
                                 R.one, units_array(R))
    return [int(i) for i in np.nonzero(mask)[0]]


def is_strongly_pi_regular(R: FiniteRing) -> PiRegularityReport:
    """Search, per element, the least n (then least r) with a^n = a^(n+1)r."""
    R.require_tables("pi-regularity scan")
    mul = R.mul_table
    witnesses = []
    for a in R.elements():
        p = a
        found = None
        for t in range(1, R.size + 1):
            nxt = int(mul[p, a])
            hits = np.nonzero(mul[nxt] == p)[0]
            if hits.size:
                found = (t, int(hits[0]))
                break
            p = nxt
        witnesses.append(found)
    return PiRegularityReport(all(w is not None for w in witnesses),
                              tuple(witnesses))
