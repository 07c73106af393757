"""Finite rings on dense element indices with table-backed arithmetic.

Every ring lives on the index set 0..size-1. Operation tables are
materialized as numpy int32 arrays up to MATERIALIZE_LIMIT elements;
larger rings keep the construction closures and evaluate on demand.
Instances are immutable after construction and safe to share across
threads; derived element scans are cached on the instance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import axioms, kernels
from .errors import AxiomViolation, MaterializationRequired

MATERIALIZE_LIMIT = 1024
FULL_VALIDATION_LIMIT = 256
DEFAULT_SIZE_CAP = 65536
DEFAULT_SAMPLE_TRIPLES = 100_000
DEFAULT_SEED = 0xC0FFEE


class FiniteRing:
    """A finite unital ring presented over element indices.

    Rings compare equal by label; structural isomorphism is never
    inferred implicitly.
    """

    __slots__ = (
        "size", "zero", "one", "label",
        "add_table", "mul_table", "neg_table",
        "_add_fn", "_mul_fn", "_neg_fn",
        "encode", "decode", "_cache",
    )

    def __init__(self, size: int, zero: int, one: int, label: str, *,
                 add_table=None, mul_table=None, neg_table=None,
                 add_fn: Optional[Callable[[int, int], int]] = None,
                 mul_fn: Optional[Callable[[int, int], int]] = None,
                 neg_fn: Optional[Callable[[int], int]] = None,
                 encode: Optional[Callable] = None,
                 decode: Optional[Callable] = None):
        if size < 1:
            raise ValueError("ring size must be at least 1")
        if not (0 <= zero < size and 0 <= one < size):
            raise ValueError("zero/one index out of range")
        self.size = size
        self.zero = zero
        self.one = one
        self.label = label
        self.add_table = None if add_table is None else np.ascontiguousarray(add_table, dtype=np.int32)
        self.mul_table = None if mul_table is None else np.ascontiguousarray(mul_table, dtype=np.int32)
        self.neg_table = None if neg_table is None else np.ascontiguousarray(neg_table, dtype=np.int32)
        self._add_fn = add_fn
        self._mul_fn = mul_fn
        self._neg_fn = neg_fn
        self.encode = encode
        self.decode = decode
        self._cache = {}
        if self.add_table is None and add_fn is None:
            raise ValueError("need an addition table or closure")
        if self.mul_table is None and mul_fn is None:
            raise ValueError("need a multiplication table or closure")
        if self.neg_table is None and neg_fn is None:
            raise ValueError("need a negation table or closure")

    @classmethod
    def from_tables(cls, add, mul, neg, zero, one, label, **kw) -> "FiniteRing":
        return cls(len(neg), zero, one, label,
                   add_table=add, mul_table=mul, neg_table=neg, **kw)

    @classmethod
    def from_ops(cls, size, add_fn, mul_fn, neg_fn, zero, one, label, **kw) -> "FiniteRing":
        """Build from closures, materializing tables for small rings."""
        if size <= MATERIALIZE_LIMIT:
            rng = range(size)
            add = np.fromiter((add_fn(i, j) for i in rng for j in rng),
                              dtype=np.int32, count=size * size).reshape(size, size)
            mul = np.fromiter((mul_fn(i, j) for i in rng for j in rng),
                              dtype=np.int32, count=size * size).reshape(size, size)
            neg = np.fromiter((neg_fn(i) for i in rng), dtype=np.int32, count=size)
            return cls(size, zero, one, label,
                       add_table=add, mul_table=mul, neg_table=neg,
                       add_fn=add_fn, mul_fn=mul_fn, neg_fn=neg_fn, **kw)
        return cls(size, zero, one, label,
                   add_fn=add_fn, mul_fn=mul_fn, neg_fn=neg_fn, **kw)

    # -- arithmetic -------------------------------------------------------

    @property
    def has_tables(self) -> bool:
        return self.add_table is not None and self.mul_table is not None

    def require_tables(self, what: str = "operation"):
        if not self.has_tables:
            raise MaterializationRequired(
                f"{what} needs materialized tables; ring {self.label!r} has "
                f"size {self.size} > {MATERIALIZE_LIMIT}")

    def add(self, a: int, b: int) -> int:
        if self.add_table is not None:
            return int(self.add_table[a, b])
        return self._add_fn(a, b)

    def mul(self, a: int, b: int) -> int:
        if self.mul_table is not None:
            return int(self.mul_table[a, b])
        return self._mul_fn(a, b)

    def neg(self, a: int) -> int:
        if self.neg_table is not None:
            return int(self.neg_table[a])
        return self._neg_fn(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def pow(self, a: int, k: int) -> int:
        """a**k under ring multiplication; a**0 is one."""
        if k < 0:
            raise ValueError("exponent must be nonnegative")
        result = self.one
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def commute(self, a: int, b: int) -> bool:
        return self.mul(a, b) == self.mul(b, a)

    def characteristic(self) -> int:
        """Additive order of one: least m >= 1 with m*1 = 0."""
        cached = self._cache.get("characteristic")
        if cached is None:
            x = self.one
            m = 1
            while x != self.zero:
                x = self.add(x, self.one)
                m += 1
            cached = m
            self._cache["characteristic"] = m
        return cached

    def int_image(self, m: int) -> int:
        """The element m*1, by repeated addition (negated for m < 0)."""
        k = abs(m)
        x = self.zero
        for _ in range(k):
            x = self.add(x, self.one)
        return self.neg(x) if m < 0 else x

    @property
    def is_commutative(self) -> bool:
        cached = self._cache.get("commutative")
        if cached is None:
            self.require_tables("commutativity scan")
            cached = bool((self.mul_table == self.mul_table.T).all())
            self._cache["commutative"] = cached
        return cached

    def elements(self) -> range:
        return range(self.size)

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FiniteRing):
            return NotImplemented
        return self.label == other.label

    def __hash__(self):
        return hash(self.label)

    def __repr__(self):
        return f"FiniteRing({self.label!r}, size={self.size})"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a ring-axiom check."""

    ok: bool
    mode: str
    checks: int
    violation: Optional[AxiomViolation] = None

    def raise_if_failed(self):
        if not self.ok:
            raise self.violation


def _sampled_validation(ring: FiniteRing, triples: int, seed: int) -> ValidationReport:
    rng = random.Random(seed)
    n = ring.size
    add, mul, neg = ring.add, ring.mul, ring.neg
    zero, one = ring.zero, ring.one

    # Linear axioms are cheap enough to check in full even on lazy rings.
    for i in range(n):
        if add(zero, i) != i or add(i, zero) != i:
            return ValidationReport(False, "sampled", i,
                                    AxiomViolation(axioms.NAMES[axioms.ZERO_IDENTITY], (i,)))
        if add(i, neg(i)) != zero:
            return ValidationReport(False, "sampled", i,
                                    AxiomViolation(axioms.NAMES[axioms.ADD_INVERSE], (i,)))
        if mul(one, i) != i or mul(i, one) != i:
            return ValidationReport(False, "sampled", i,
                                    AxiomViolation(axioms.NAMES[axioms.ONE_IDENTITY], (i,)))

    checks = 3 * n
    for _ in range(triples):
        i = rng.randrange(n)
        j = rng.randrange(n)
        k = rng.randrange(n)
        checks += 1
        if add(i, j) != add(j, i):
            return ValidationReport(False, "sampled", checks,
                                    AxiomViolation(axioms.NAMES[axioms.ADD_COMMUTATIVITY], (i, j)))
        if add(add(i, j), k) != add(i, add(j, k)):
            return ValidationReport(False, "sampled", checks,
                                    AxiomViolation(axioms.NAMES[axioms.ADD_ASSOCIATIVITY], (i, j, k)))
        if mul(mul(i, j), k) != mul(i, mul(j, k)):
            return ValidationReport(False, "sampled", checks,
                                    AxiomViolation(axioms.NAMES[axioms.MUL_ASSOCIATIVITY], (i, j, k)))
        if mul(i, add(j, k)) != add(mul(i, j), mul(i, k)):
            return ValidationReport(False, "sampled", checks,
                                    AxiomViolation(axioms.NAMES[axioms.LEFT_DISTRIBUTIVITY], (i, j, k)))
        if mul(add(i, j), k) != add(mul(i, k), mul(j, k)):
            return ValidationReport(False, "sampled", checks,
                                    AxiomViolation(axioms.NAMES[axioms.RIGHT_DISTRIBUTIVITY], (i, j, k)))
    return ValidationReport(True, "sampled", checks)


def validate_ring(ring: FiniteRing, mode: str = "auto",
                  sample_triples: int = DEFAULT_SAMPLE_TRIPLES,
                  seed: int = DEFAULT_SEED) -> ValidationReport:
    """Check the ring axioms.

    mode 'full' checks every triple exhaustively (requires materialized
    tables), 'sampled' checks a deterministic pseudo-random sample of
    triples plus all linear axioms, 'auto' picks full for sizes up to
    FULL_VALIDATION_LIMIT and sampled above.
    """
    if mode not in ("auto", "full", "sampled"):
        raise ValueError(f"unknown validation mode {mode!r}")
    if mode == "auto":
        mode = "full" if ring.size <= FULL_VALIDATION_LIMIT else "sampled"

    if mode == "sampled":
        return _sampled_validation(ring, sample_triples, seed)

    ring.require_tables("full validation")
    code, i, j, k = kernels.axiom_scan(ring.add_table, ring.mul_table,
                                       ring.neg_table, ring.zero, ring.one)
    checks = 4 * ring.size ** 3 + ring.size ** 2 + 3 * ring.size
    if code == axioms.OK:
        return ValidationReport(True, "full", checks)
    witness = tuple(x for x in (i, j, k) if x >= 0)
    return ValidationReport(False, "full", checks,
                            AxiomViolation(axioms.NAMES[code], witness))
