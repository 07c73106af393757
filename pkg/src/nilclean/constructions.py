"""Ring constructions: Z_n, products, matrix and triangular rings, skew
triangular rings, trivial extensions and truncated (skew) polynomial
quotients.

Index encodings are fixed so certificates are reproducible bit-for-bit:
composite elements are digit tuples over the base ring with the least
significant digit first (index = sum of digit_p * |R|**p). Matrix and
upper-triangular entries are listed row-major; product pairs (r, s)
encode as r + s*|R|; trivial-extension pairs (r, m) as r + m*|R|.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .core import MATERIALIZE_LIMIT, DEFAULT_SIZE_CAP, FiniteRing
from .errors import (
    EndomorphismDomainMismatch,
    InvalidEndomorphism,
    SizeCapExceeded,
)

DEFAULT_ENDO_SEARCH_CAP = 64


def _check_cap(predicted: int, cap: int):
    if predicted > cap:
        raise SizeCapExceeded(predicted, cap)


def _has_top_level_product(label: str) -> bool:
    depth = 0
    for i, c in enumerate(label):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif depth == 0 and label.startswith(" x ", i):
            return True
    return False


def _product_label(left: str, right: str) -> str:
    # "x" is left-associative in the DSL, so only the right side may need
    # parentheses for the label to re-parse to the same tree.
    if _has_top_level_product(right):
        right = f"({right})"
    return f"{left} x {right}"


class RingEndomorphism:
    """A validated unital ring endomorphism given as an index map."""

    __slots__ = ("domain", "map", "name")

    def __init__(self, domain: FiniteRing, index_map, name: str = "custom"):
        domain.require_tables("endomorphism validation")
        arr = np.ascontiguousarray(index_map, dtype=np.int32)
        if arr.shape != (domain.size,):
            raise InvalidEndomorphism(f"map has shape {arr.shape}, expected ({domain.size},)")
        if arr.min() < 0 or arr.max() >= domain.size:
            raise InvalidEndomorphism("map image out of range")
        if int(arr[domain.one]) != domain.one:
            raise InvalidEndomorphism("map does not fix one")
        add, mul = domain.add_table, domain.mul_table
        if (arr[add] != add[np.ix_(arr, arr)]).any():
            raise InvalidEndomorphism("map is not additive")
        if (arr[mul] != mul[np.ix_(arr, arr)]).any():
            raise InvalidEndomorphism("map is not multiplicative")
        self.domain = domain
        self.map = arr
        self.name = name

    @classmethod
    def identity(cls, domain: FiniteRing) -> "RingEndomorphism":
        return cls(domain, np.arange(domain.size, dtype=np.int32), name="id")

    @property
    def is_identity(self) -> bool:
        return bool((self.map == np.arange(self.domain.size)).all())

    def __call__(self, a: int) -> int:
        return int(self.map[a])

    def __eq__(self, other):
        if not isinstance(other, RingEndomorphism):
            return NotImplemented
        return self.domain == other.domain and (self.map == other.map).all()

    def __hash__(self):
        return hash((self.domain.label, self.map.tobytes()))

    def __repr__(self):
        return f"RingEndomorphism({self.domain.label!r}, {self.name!r})"


# -- elementary constructions ------------------------------------------------


def zn(n: int, cap: int = DEFAULT_SIZE_CAP) -> FiniteRing:
    """The ring of integers modulo n on canonical indices 0..n-1."""
    if n < 1:
        raise ValueError("modulus must be positive")
    _check_cap(n, cap)
    label = f"Z{n}"
    encode = lambda coords: coords[0] % n
    decode = lambda i: (i,)
    if n <= MATERIALIZE_LIMIT:
        idx = np.arange(n, dtype=np.int64)
        add = (idx[:, None] + idx[None, :]) % n
        mul = (idx[:, None] * idx[None, :]) % n
        neg = (-idx) % n
        return FiniteRing.from_tables(add, mul, neg, 0, 1 % n, label,
                                      encode=encode, decode=decode)
    return FiniteRing.from_ops(
        n,
        lambda a, b: (a + b) % n,
        lambda a, b: (a * b) % n,
        lambda a: (-a) % n,
        0, 1, label, encode=encode, decode=decode)


def product(R: FiniteRing, S: FiniteRing, cap: int = DEFAULT_SIZE_CAP) -> FiniteRing:
    """Componentwise ring on pairs (r, s), encoded as r + s*|R|."""
    size = R.size * S.size
    _check_cap(size, cap)
    nr = R.size
    label = _product_label(R.label, S.label)
    encode = lambda coords: coords[0] + coords[1] * nr
    decode = lambda i: (i % nr, i // nr)
    if size <= MATERIALIZE_LIMIT:
        idx = np.arange(size, dtype=np.int32)
        r, s = idx % nr, idx // nr
        add = R.add_table[np.ix_(r, r)] + nr * S.add_table[np.ix_(s, s)]
        mul = R.mul_table[np.ix_(r, r)] + nr * S.mul_table[np.ix_(s, s)]
        neg = R.neg_table[r] + nr * S.neg_table[s]
        return FiniteRing.from_tables(add, mul, neg,
                                      encode((R.zero, S.zero)), encode((R.one, S.one)),
                                      label, encode=encode, decode=decode)
    return FiniteRing.from_ops(
        size,
        lambda a, b: encode((R.add(a % nr, b % nr), S.add(a // nr, b // nr))),
        lambda a, b: encode((R.mul(a % nr, b % nr), S.mul(a // nr, b // nr))),
        lambda a: encode((R.neg(a % nr), S.neg(a // nr))),
        encode((R.zero, S.zero)), encode((R.one, S.one)),
        label, encode=encode, decode=decode)


# -- digit rings (matrix / triangular / skew / trivial extension) ------------


def _digit_ring(R: FiniteRing, m: int, terms: Sequence[Sequence[tuple]],
                one_coords: Sequence[int], label: str, cap: int,
                twists: Optional[Sequence] = None) -> FiniteRing:
    """Ring on m-digit tuples over R with pointwise addition.

    `terms[p]` lists (pa, pb, twist_index) triples: output digit p is the
    ring sum of R.mul(A[pa], twist(B[pb])) over the listed triples, where
    twist_index selects into `twists` (None means no twist). Digit tuples
    encode little-endian: index = sum of digit_p * |R|**p.
    """
    size = R.size ** m
    _check_cap(size, cap)
    nr = R.size
    weights = [nr ** p for p in range(m)]

    def encode(coords):
        return sum(int(coords[p]) * weights[p] for p in range(m))

    def decode(i):
        out = []
        for _ in range(m):
            i, d = divmod(i, nr)
            out.append(d)
        return tuple(out)

    zero_idx = encode([R.zero] * m)
    one_idx = encode(one_coords)

    def twist_fn(t):
        if t is None:
            return lambda x: x
        tw = twists[t]
        return lambda x: int(tw[x])

    def add_fn(a, b):
        da, db = decode(a), decode(b)
        return encode([R.add(da[p], db[p]) for p in range(m)])

    def neg_fn(a):
        return encode([R.neg(d) for d in decode(a)])

    def mul_fn(a, b):
        da, db = decode(a), decode(b)
        out = []
        for p in range(m):
            acc = R.zero
            for pa, pb, t in terms[p]:
                acc = R.add(acc, R.mul(da[pa], twist_fn(t)(db[pb])))
            out.append(acc)
        return encode(out)

    if size > MATERIALIZE_LIMIT:
        return FiniteRing.from_ops(size, add_fn, mul_fn, neg_fn,
                                   zero_idx, one_idx, label,
                                   encode=encode, decode=decode)

    # Vectorized table construction from the base-ring tables.
    R.require_tables("digit-ring construction")
    idx = np.arange(size, dtype=np.int64)
    digits = np.empty((size, m), dtype=np.int32)
    rem = idx.copy()
    for p in range(m):
        digits[:, p] = rem % nr
        rem //= nr

    addR, mulR, negR = R.add_table, R.mul_table, R.neg_table
    add = np.zeros((size, size), dtype=np.int64)
    neg = np.zeros(size, dtype=np.int64)
    mul = np.zeros((size, size), dtype=np.int64)
    for p in range(m):
        col = digits[:, p]
        add += addR[np.ix_(col, col)].astype(np.int64) * weights[p]
        neg += negR[col].astype(np.int64) * weights[p]
        acc = None
        for pa, pb, t in terms[p]:
            bcol = digits[:, pb]
            if t is not None:
                bcol = twists[t][bcol]
            term = mulR[np.ix_(digits[:, pa], bcol)]
            acc = term if acc is None else addR[acc, term]
        if acc is None:
            continue
        mul += acc.astype(np.int64) * weights[p]

    return FiniteRing.from_tables(add, mul, neg, zero_idx, one_idx, label,
                                  encode=encode, decode=decode)


def matrix_ring(R: FiniteRing, k: int, cap: int = DEFAULT_SIZE_CAP) -> FiniteRing:
    """Full k x k matrix ring over R, entries row-major in the encoding."""
    if k < 1:
        raise ValueError("matrix dimension must be positive")
    _check_cap(R.size ** (k * k), cap)
    pos = {(r, c): r * k + c for r in range(k) for c in range(k)}
    terms = []
    for r in range(k):
        for c in range(k):
            terms.append([(pos[r, t], pos[t, c], None) for t in range(k)])
    one_coords = [R.one if r == c else R.zero for r in range(k) for c in range(k)]
    return _digit_ring(R, k * k, terms, one_coords, f"M{k}({R.label})", cap)


def upper_triangular(R: FiniteRing, k: int, cap: int = DEFAULT_SIZE_CAP) -> FiniteRing:
    """Upper-triangular k x k matrix ring over R."""
    if k < 1:
        raise ValueError("matrix dimension must be positive")
    m = k * (k + 1) // 2
    _check_cap(R.size ** m, cap)
    upper = [(r, c) for r in range(k) for c in range(r, k)]
    pos = {rc: p for p, rc in enumerate(upper)}
    terms = []
    for r, c in upper:
        terms.append([(pos[r, t], pos[t, c], None) for t in range(r, c + 1)])
    one_coords = [R.one if r == c else R.zero for r, c in upper]
    return _digit_ring(R, m, terms, one_coords, f"T{k}({R.label})", cap)


def skew_triangular(R: FiniteRing, n: int, alpha: RingEndomorphism,
                    cap: int = DEFAULT_SIZE_CAP, label: Optional[str] = None) -> FiniteRing:
    """Constant-diagonal triangular ring on coefficient tuples (a_0..a_{n-1}).

    Multiplication is the twisted convolution
    c_i = a_0*alpha^0(b_i) + a_1*alpha^1(b_{i-1}) + ... + a_i*alpha^i(b_0);
    with the identity twist this is the constant-diagonal subring of the
    upper-triangular ring.
    """
    if n < 1:
        raise ValueError("tuple length must be positive")
    if alpha.domain != R:
        raise EndomorphismDomainMismatch(
            f"endomorphism domain {alpha.domain.label!r} is not {R.label!r}")
    _check_cap(R.size ** n, cap)
    powers = [np.arange(R.size, dtype=np.int32)]
    for _ in range(1, n):
        powers.append(alpha.map[powers[-1]])
    terms = []
    for i in range(n):
        terms.append([(j, i - j, j) for j in range(i + 1)])
    one_coords = [R.one] + [R.zero] * (n - 1)
    if label is None:
        label = f"T{n}({R.label}; {alpha.name})"
    return _digit_ring(R, n, terms, one_coords, label, cap, twists=powers)


def trivial_extension(R: FiniteRing, cap: int = DEFAULT_SIZE_CAP) -> FiniteRing:
    """Trivial extension of R by the regular bimodule: pairs (r, m) with
    (r, m)(s, n) = (rs, rn + ms)."""
    _check_cap(R.size ** 2, cap)
    terms = [
        [(0, 0, None)],
        [(0, 1, None), (1, 0, None)],
    ]
    return _digit_ring(R, 2, terms, [R.one, R.zero], f"TrivExt({R.label})", cap)


def poly_quotient(R: FiniteRing, n: int, alpha: RingEndomorphism,
                  cap: int = DEFAULT_SIZE_CAP) -> FiniteRing:
    """Truncated skew polynomial ring: polynomials over R modulo x**n with
    x*r = alpha(r)*x.

    This is the same ring as skew_triangular(R, n, alpha) under
    a_0 + a_1 x + ... + a_{n-1} x^{n-1}  ->  (a_0, a_1, ..., a_{n-1});
    the coefficient-tuple encoding realizes that correspondence directly.
    """
    if alpha.is_identity:
        label = f"Poly({R.label}, {n})"
    else:
        label = f"PolySkew({R.label}, {n}; {alpha.name})"
    return skew_triangular(R, n, alpha, cap=cap, label=label)


def swap_endomorphism(prod_ring: FiniteRing, half: int) -> RingEndomorphism:
    """The coordinate swap (a, b) -> (b, a) on a self-product of size half**2."""
    if prod_ring.size != half * half:
        raise InvalidEndomorphism("swap needs a self-product ring")
    idx = np.arange(prod_ring.size, dtype=np.int32)
    swapped = (idx % half) * half + idx // half
    return RingEndomorphism(prod_ring, swapped, name="swap")


# -- endomorphism enumeration -------------------------------------------------


def _additive_orders(R: FiniteRing):
    orders = []
    for a in R.elements():
        x = a
        m = 1
        while x != R.zero:
            x = R.add(x, a)
            m += 1
        orders.append(m)
    return orders


def _additive_generators(R: FiniteRing):
    """Greedy additive generating set (one first) with an expression DAG.

    Returns (gens, groups): groups[k] lists, in discovery order, the
    (element, parent, gen_position) steps unlocked once generator k is
    chosen, meaning element = parent + gens[gen_position] (parent None
    for the generator itself). phi extends along these steps.
    """
    span = {R.zero}
    gens = []
    groups = []

    def close_over(g, gpos, group):
        frontier = list(span)
        while frontier:
            nxt = []
            for y in frontier:
                z = R.add(y, g)
                if z not in span:
                    span.add(z)
                    group.append((z, y, gpos))
                    nxt.append(z)
            frontier = nxt

    order = [R.one] + [a for a in R.elements() if a != R.one]
    for a in order:
        if a not in span:
            group = [(a, None, len(gens))]
            gens.append(a)
            span.add(a)
            changed = True
            while changed:
                before = len(span)
                for gp, g in enumerate(gens):
                    close_over(g, gp, group)
                changed = len(span) > before
            groups.append(group)
    return gens, groups


def enumerate_unital_endomorphisms(R: FiniteRing,
                                   search_cap: int = DEFAULT_ENDO_SEARCH_CAP):
    """All unital ring endomorphisms of R, by constrained search over
    additive-generator images. Results are sorted by index map."""
    if R.size > search_cap:
        raise SizeCapExceeded(R.size, search_cap)
    R.require_tables("endomorphism enumeration")
    orders = _additive_orders(R)
    gens, groups = _additive_generators(R)
    n = R.size

    # images must respect additive order; the image of one is forced
    candidates = []
    for g in gens:
        if g == R.one:
            candidates.append([R.one])
        else:
            candidates.append([y for y in range(n) if orders[g] % orders[y] == 0])

    add_t, mul_t = R.add_table, R.mul_table
    found = []
    phi = [-1] * n
    phi[R.zero] = R.zero
    images = [None] * len(gens)

    def extend(level, assigned):
        """Assign phi on the elements unlocked by generator `level`."""
        new = []
        for elem, parent, gpos in groups[level]:
            if parent is None:
                val = images[gpos]
            else:
                val = int(add_t[phi[parent], images[gpos]])
            phi[elem] = val
            new.append(elem)
        # incremental consistency on the defined portion
        for i, x in enumerate(new):
            for y in assigned + new[:i + 1]:
                s = int(add_t[x, y])
                if phi[s] >= 0 and phi[s] != int(add_t[phi[x], phi[y]]):
                    return new, False
                p = int(mul_t[x, y])
                if phi[p] >= 0 and phi[p] != int(mul_t[phi[x], phi[y]]):
                    return new, False
                q = int(mul_t[y, x])
                if phi[q] >= 0 and phi[q] != int(mul_t[phi[y], phi[x]]):
                    return new, False
        return new, True

    def dfs(level, assigned):
        if level == len(gens):
            arr = np.asarray(phi, dtype=np.int32)
            if (arr[add_t] == add_t[np.ix_(arr, arr)]).all() and \
               (arr[mul_t] == mul_t[np.ix_(arr, arr)]).all():
                found.append(tuple(phi))
            return
        for img in candidates[level]:
            images[level] = img
            new, ok = extend(level, assigned)
            if ok:
                dfs(level + 1, assigned + new)
            for x in new:
                phi[x] = -1

    if n == 1:
        return [RingEndomorphism.identity(R)]
    dfs(0, [R.zero])
    return [RingEndomorphism(R, np.asarray(m, dtype=np.int32),
                             name="id" if m == tuple(range(n)) else "custom")
            for m in sorted(set(found))]
