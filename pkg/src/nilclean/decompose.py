"""Certificate searches for the decomposition classes and the fast
polynomial criteria; the brute-force/criterion oracle pair.

Classes searched (signs apply to idempotents, n is nilpotent, all parts
pairwise commuting):

  snc    a = e + n
  swnc   a = +-e + n
  s2nc   a = e + f + n
  wsnc   a = +-e +- f + n

The canonical certificate is the first hit scanning sign patterns in the
fixed order below, then (e, f) lexicographically; n = a - (+-e +- f) is
determined, which enumerates the same (e, f, n) triples in the same
order as a full lexicographic scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from .classify import (
    idempotents,
    jacobson_radical,
    nil_index_array,
    nilpotence,
    nilpotents,
    units,
)
from .core import FiniteRing
from .errors import BudgetExceeded

DEFAULT_BUDGET = 10_000_000

KINDS = ("snc", "s2nc", "swnc", "wsnc")

_TWO_SIGN_PATTERNS = {
    "s2nc": ((1, 1),),
    "wsnc": ((1, 1), (1, -1), (-1, 1), (-1, -1)),
}
_ONE_SIGN_PATTERNS = {
    "snc": (1,),
    "swnc": (1, -1),
}


@dataclass(frozen=True)
class Certificate:
    """Witness of one element's decomposition a = sign_e*e [+ sign_f*f] + n."""

    kind: str
    element: int
    sign_e: int
    e: int
    n: int
    nil_index: int
    sign_f: Optional[int] = None
    f: Optional[int] = None

    def to_json_dict(self, ring_label: str) -> dict:
        return {
            "ring": ring_label,
            "element": self.element,
            "sign_e": self.sign_e,
            "sign_f": self.sign_f,
            "e": self.e,
            "f": self.f,
            "n": self.n,
            "nil_index": self.nil_index,
            "class": self.kind,
        }


@dataclass(frozen=True)
class ClassVerdict:
    """Ring-level verdict for one decomposition class.

    holds is None when the search budget was exceeded (unresolved, never
    reported as negative). witness is the least failing element.
    """

    kind: str
    holds: Optional[bool]
    witness: Optional[int] = None
    budget_exceeded: bool = False


@dataclass(frozen=True)
class WsncCriterion:
    """Result of the cubic criterion: 30 nilpotent and, per element, one
    of a^3-a, a(a-1)(a-2), a(a+1)(a+2) nilpotent (branches 1, 2, 3)."""

    holds: bool
    thirty_nilpotent: bool
    branches: Tuple[int, ...]  # 0 marks an element with no branch
    witness: Optional[int]
    uniform_branch: Optional[int]


@dataclass(frozen=True)
class S2ncCriterion:
    """Result of the a - a^3 in nil(R) criterion."""

    holds: bool
    witness: Optional[int]


@dataclass(frozen=True)
class Lemma2NilOptions:
    """Fixed-sign searches a = e+f+n, e-f+n, -e-f+n for one element."""

    plus_plus: Optional[Certificate]
    plus_minus: Optional[Certificate]
    minus_minus: Optional[Certificate]


@dataclass
class ClassificationReport:
    """Per-ring verdicts for the decomposition-class hierarchy."""

    ring_label: str
    size: int
    verdicts: Dict[str, ClassVerdict]
    wsnc_criterion: WsncCriterion
    s2nc_criterion: S2ncCriterion
    counts: Dict[str, int]
    maj: object = None  # MajWitness, attached by callers that compute it

    @property
    def oracles_agree(self) -> bool:
        ok = True
        v = self.verdicts["wsnc"]
        if v.holds is not None:
            ok &= v.holds == self.wsnc_criterion.holds
        v = self.verdicts["s2nc"]
        if v.holds is not None:
            ok &= v.holds == self.s2nc_criterion.holds
        return ok


# -- candidate enumeration ----------------------------------------------------


def _signed(R: FiniteRing, arr: np.ndarray, sign: int) -> np.ndarray:
    return arr if sign > 0 else R.neg_table[arr]


def _two_idem_candidates(R: FiniteRing, patterns) -> dict:
    key = ("cand2", patterns)
    cached = R._cache.get(key)
    if cached is not None:
        return cached
    R.require_tables("certificate search")
    ids = np.asarray(idempotents(R), dtype=np.int32)
    k = len(ids)
    e_blk = np.repeat(ids, k)
    f_blk = np.tile(ids, k)
    se_parts, sf_parts, e_parts, f_parts, s_parts = [], [], [], [], []
    for se, sf in patterns:
        s = R.add_table[_signed(R, e_blk, se), _signed(R, f_blk, sf)]
        se_parts.append(np.full(k * k, se, dtype=np.int8))
        sf_parts.append(np.full(k * k, sf, dtype=np.int8))
        e_parts.append(e_blk)
        f_parts.append(f_blk)
        s_parts.append(s)
    e_all = np.concatenate(e_parts)
    f_all = np.concatenate(f_parts)
    comm_ef = R.mul_table[e_all, f_all] == R.mul_table[f_all, e_all]
    cached = {
        "sign_e": np.concatenate(se_parts),
        "sign_f": np.concatenate(sf_parts),
        "e": e_all,
        "f": f_all,
        "s": np.concatenate(s_parts),
        "comm_ef": comm_ef,
    }
    R._cache[key] = cached
    return cached


def _one_idem_candidates(R: FiniteRing, patterns) -> dict:
    key = ("cand1", patterns)
    cached = R._cache.get(key)
    if cached is not None:
        return cached
    R.require_tables("certificate search")
    ids = np.asarray(idempotents(R), dtype=np.int32)
    se_parts, e_parts, s_parts = [], [], []
    for se in patterns:
        se_parts.append(np.full(len(ids), se, dtype=np.int8))
        e_parts.append(ids)
        s_parts.append(_signed(R, ids, se))
    cached = {
        "sign_e": np.concatenate(se_parts),
        "e": np.concatenate(e_parts),
        "s": np.concatenate(s_parts),
    }
    R._cache[key] = cached
    return cached


def _search_space(R: FiniteRing, kind: str) -> int:
    n_id = len(idempotents(R))
    n_nil = max(1, len(nilpotents(R)))
    if kind in _TWO_SIGN_PATTERNS:
        return len(_TWO_SIGN_PATTERNS[kind]) * n_id * n_id * n_nil
    return len(_ONE_SIGN_PATTERNS[kind]) * n_id * n_nil


def _check_budget(R: FiniteRing, kind: str, budget: int):
    required = _search_space(R, kind)
    if required > budget:
        raise BudgetExceeded(required, budget)


def _find_two_idem(R: FiniteRing, a: int, kind: str, patterns) -> Optional[Certificate]:
    cand = _two_idem_candidates(R, patterns)
    nil_idx = nil_index_array(R)
    nvec = R.add_table[a, R.neg_table[cand["s"]]]
    ok = nil_idx[nvec] > 0
    if not R.is_commutative:
        ok &= cand["comm_ef"]
        mt = R.mul_table
        ok &= mt[cand["e"], nvec] == mt[nvec, cand["e"]]
        ok &= mt[cand["f"], nvec] == mt[nvec, cand["f"]]
    if not ok.any():
        return None
    i = int(np.argmax(ok))
    n = int(nvec[i])
    return Certificate(kind=kind, element=a,
                       sign_e=int(cand["sign_e"][i]), e=int(cand["e"][i]),
                       sign_f=int(cand["sign_f"][i]), f=int(cand["f"][i]),
                       n=n, nil_index=int(nil_idx[n]))


def _find_one_idem(R: FiniteRing, a: int, kind: str, patterns) -> Optional[Certificate]:
    cand = _one_idem_candidates(R, patterns)
    nil_idx = nil_index_array(R)
    nvec = R.add_table[a, R.neg_table[cand["s"]]]
    ok = nil_idx[nvec] > 0
    if not R.is_commutative:
        mt = R.mul_table
        ok &= mt[cand["e"], nvec] == mt[nvec, cand["e"]]
    if not ok.any():
        return None
    i = int(np.argmax(ok))
    n = int(nvec[i])
    return Certificate(kind=kind, element=a,
                       sign_e=int(cand["sign_e"][i]), e=int(cand["e"][i]),
                       n=n, nil_index=int(nil_idx[n]))


# -- public search API ---------------------------------------------------------


def find_wsnc_certificate(R: FiniteRing, a: int,
                          budget: int = DEFAULT_BUDGET) -> Optional[Certificate]:
    """First certificate a = +-e +- f + n in canonical order, or None."""
    _check_budget(R, "wsnc", budget)
    return _find_two_idem(R, a, "wsnc", _TWO_SIGN_PATTERNS["wsnc"])


def find_s2nc_certificate(R: FiniteRing, a: int,
                          budget: int = DEFAULT_BUDGET) -> Optional[Certificate]:
    """First certificate a = e + f + n in canonical order, or None."""
    _check_budget(R, "s2nc", budget)
    return _find_two_idem(R, a, "s2nc", _TWO_SIGN_PATTERNS["s2nc"])


def find_swnc_certificate(R: FiniteRing, a: int,
                          budget: int = DEFAULT_BUDGET) -> Optional[Certificate]:
    """First certificate a = +-e + n in canonical order, or None."""
    _check_budget(R, "swnc", budget)
    return _find_one_idem(R, a, "swnc", _ONE_SIGN_PATTERNS["swnc"])


def find_snc_certificate(R: FiniteRing, a: int,
                         budget: int = DEFAULT_BUDGET) -> Optional[Certificate]:
    """First certificate a = e + n in canonical order, or None."""
    _check_budget(R, "snc", budget)
    return _find_one_idem(R, a, "snc", _ONE_SIGN_PATTERNS["snc"])


_FINDERS = {
    "snc": find_snc_certificate,
    "s2nc": find_s2nc_certificate,
    "swnc": find_swnc_certificate,
    "wsnc": find_wsnc_certificate,
}


def find_certificate(R: FiniteRing, a: int, kind: str,
                     budget: int = DEFAULT_BUDGET) -> Optional[Certificate]:
    return _FINDERS[kind](R, a, budget)


def is_class(R: FiniteRing, kind: str, budget: int = DEFAULT_BUDGET) -> ClassVerdict:
    """Ring-level verdict: every element has a certificate of the kind.

    Elements are scanned in index order and the least failing element is
    recorded. A budget overrun yields holds=None (unresolved), distinct
    from a negative verdict.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown class {kind!r}")
    try:
        _check_budget(R, kind, budget)
    except BudgetExceeded:
        return ClassVerdict(kind, None, budget_exceeded=True)
    finder = _FINDERS[kind]
    for a in R.elements():
        if finder(R, a, budget) is None:
            return ClassVerdict(kind, False, witness=a)
    return ClassVerdict(kind, True)


def lemma2nil_variants(R: FiniteRing, a: int,
                       budget: int = DEFAULT_BUDGET) -> Lemma2NilOptions:
    """Independent fixed-sign searches used for the three-way equivalence
    of the strongly 2-nil-clean forms when 3 is nilpotent."""
    _check_budget(R, "wsnc", budget)
    return Lemma2NilOptions(
        plus_plus=_find_two_idem(R, a, "s2nc", ((1, 1),)),
        plus_minus=_find_two_idem(R, a, "wsnc", ((1, -1),)),
        minus_minus=_find_two_idem(R, a, "wsnc", ((-1, -1),)),
    )


# -- criteria -------------------------------------------------------------------


def criterion_wsnc(R: FiniteRing) -> WsncCriterion:
    """Cubic criterion with per-element branch tags.

    The disjunction is evaluated per element; uniform_branch additionally
    reports whether a single branch covers every element (diagnostic for
    the stronger uniform reading).
    """
    R.require_tables("criterion evaluation")
    nil_ok = nil_index_array(R) > 0
    ar = np.arange(R.size)
    mt, at, nt = R.mul_table, R.add_table, R.neg_table
    one, two = R.one, R.int_image(2)

    a2 = mt[ar, ar]
    a3 = mt[a2, ar]
    b1 = nil_ok[at[a3, nt[ar]]]
    b2 = nil_ok[mt[mt[ar, at[ar, nt[one]]], at[ar, nt[two]]]]
    b3 = nil_ok[mt[mt[ar, at[ar, one]], at[ar, two]]]

    branches = np.where(b1, 1, np.where(b2, 2, np.where(b3, 3, 0)))
    missing = np.nonzero(branches == 0)[0]
    witness = int(missing[0]) if missing.size else None
    thirty_nil = bool(nil_ok[R.int_image(30)])
    uniform = None
    for tag, mask in ((1, b1), (2, b2), (3, b3)):
        if mask.all():
            uniform = tag
            break
    return WsncCriterion(
        holds=thirty_nil and witness is None,
        thirty_nilpotent=thirty_nil,
        branches=tuple(int(b) for b in branches),
        witness=witness,
        uniform_branch=uniform,
    )


def criterion_s2nc(R: FiniteRing) -> S2ncCriterion:
    """a - a^3 nilpotent for every a."""
    R.require_tables("criterion evaluation")
    nil_ok = nil_index_array(R) > 0
    ar = np.arange(R.size)
    mt, at, nt = R.mul_table, R.add_table, R.neg_table
    a3 = mt[mt[ar, ar], ar]
    good = nil_ok[at[ar, nt[a3]]]
    missing = np.nonzero(~good)[0]
    witness = int(missing[0]) if missing.size else None
    return S2ncCriterion(holds=witness is None, witness=witness)


# -- independent re-verification -----------------------------------------------


def verify_certificate(R: FiniteRing, cert: Certificate):
    """Re-check a certificate from scratch, independently of the search
    path: idempotency, least-index nilpotency, pairwise commutation, the
    signed sum, and commutation with the decomposed element.

    Raises ValueError on the first discrepancy.
    """
    def signed(sign, x):
        return x if sign > 0 else R.neg(x)

    if R.mul(cert.e, cert.e) != cert.e:
        raise ValueError("e is not idempotent")
    parts = [cert.e]
    if cert.f is not None:
        if R.mul(cert.f, cert.f) != cert.f:
            raise ValueError("f is not idempotent")
        parts.append(cert.f)
    wit = nilpotence(R, cert.n)
    if wit is None:
        raise ValueError("n is not nilpotent")
    if wit.index != cert.nil_index:
        raise ValueError(f"nil index {cert.nil_index} is not least ({wit.index})")
    parts.append(cert.n)
    for i, x in enumerate(parts):
        for y in parts[i + 1:]:
            if not R.commute(x, y):
                raise ValueError(f"parts {x} and {y} do not commute")
        if not R.commute(x, cert.element):
            raise ValueError(f"part {x} does not commute with the element")
    total = signed(cert.sign_e, cert.e)
    if cert.f is not None:
        total = R.add(total, signed(cert.sign_f, cert.f))
    total = R.add(total, cert.n)
    if total != cert.element:
        raise ValueError("signed sum does not reproduce the element")


def classification_report(R: FiniteRing, budget: int = DEFAULT_BUDGET) -> ClassificationReport:
    """Brute-force verdicts for all four classes plus both criteria."""
    verdicts = {kind: is_class(R, kind, budget) for kind in KINDS}
    counts = {
        "idempotents": len(idempotents(R)),
        "nilpotents": len(nilpotents(R)),
        "units": len(units(R)),
        "jacobson": len(jacobson_radical(R)),
    }
    return ClassificationReport(
        ring_label=R.label,
        size=R.size,
        verdicts=verdicts,
        wsnc_criterion=criterion_wsnc(R),
        s2nc_criterion=criterion_s2nc(R),
        counts=counts,
    )
