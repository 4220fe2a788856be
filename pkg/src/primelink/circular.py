"""Circular orderings of prime sets and prescribed-linking extensions.

A circular ordering is a relabeling of the primes whose linking matrix
has (a) nonzero links around the cycle, (b) vanishing links between any
two odd positions, and (c) forward cycle product different from the
reverse cycle product. Circularity is the mildness certificate this
package uses; no other route is attempted.

Condition (c) compares the forward product ell[1][2]...ell[d-1][d]*ell[d][1]
against the reverse read ell[1][d]*ell[d][d-1]...ell[2][1] (positions
1-based here for readability; the API is 0-based). Under this reading a
2-element set is never circular, because the two products coincide.
"""

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import Infeasible, RouteDisagreement
from .linkdata import LinkingData, LinkingLike, build_linking_data
from .modarith import (
    PrimeRecord,
    iter_eligible_q,
    linking_number,
    make_prime_record,
)

__all__ = [
    "CONSTRAINTS",
    "LinkPattern",
    "extend_with_pattern",
    "find_circular_ordering",
    "is_circular_ordering",
    "mild_fm_cover",
]

CONSTRAINTS = ("zero", "nonzero", "any")

_PERMUTATION_GUARD = 10


def is_circular_ordering(data: LinkingLike, perm: Sequence[int]) -> bool:
    """Test whether relabeling by perm makes the linking matrix circular.

    perm is 0-based: cycle position s holds original index perm[s]. Odd d
    is always False, since the cycle closure and the odd-odd vanishing
    condition both constrain the (last, first) link.
    """
    d = data.d
    if d < 2:
        raise ValueError(f"circular orderings need d >= 2, got d={d}")
    order = tuple(int(x) for x in perm)
    if sorted(order) != list(range(d)):
        raise ValueError(f"{perm!r} is not a permutation of 0..{d - 1}")
    if d % 2:
        return False
    p = data.p
    ell = data.ell
    lab = [[ell[order[s]][order[t]] for t in range(d)] for s in range(d)]
    if any(lab[s][s + 1] == 0 for s in range(d - 1)) or lab[d - 1][0] == 0:
        return False
    # 1-based odd positions are the even 0-based slots
    for s in range(0, d, 2):
        for t in range(0, d, 2):
            if s != t and lab[s][t] != 0:
                return False
    forward = lab[d - 1][0]
    for s in range(d - 1):
        forward = forward * lab[s][s + 1] % p
    reverse = lab[0][d - 1]
    for s in range(d - 1, 0, -1):
        reverse = reverse * lab[s][s - 1] % p
    return forward != reverse


def find_circular_ordering(data: LinkingLike, max_d: int = _PERMUTATION_GUARD):
    """Lexicographically first permutation passing is_circular_ordering, or None.

    The scan is factorial in d and guarded; exceeding the guard raises
    Infeasible rather than silently answering None.
    """
    d = data.d
    if d < 2:
        raise ValueError(f"circular orderings need d >= 2, got d={d}")
    if d > max_d:
        raise Infeasible(f"d={d} exceeds the permutation scan guard of {max_d}")
    if d % 2:
        return None
    for perm in itertools.permutations(range(d)):
        if is_circular_ordering(data, perm):
            return perm
    return None


@dataclass(frozen=True)
class LinkPattern:
    """Per existing prime, constraints on the two new linking numbers.

    Each slot is (q, out, in) where out constrains l(q_new, q) and in
    constrains l(q, q_new); both constraints are one of "zero",
    "nonzero" or "any".
    """

    slots: tuple[tuple[int, str, str], ...]

    def __post_init__(self):
        for q, out_c, in_c in self.slots:
            if out_c not in CONSTRAINTS or in_c not in CONSTRAINTS:
                raise ValueError(
                    f"constraints for prime {q} must be one of {CONSTRAINTS}, "
                    f"got out={out_c!r} in={in_c!r}"
                )

    @classmethod
    def all_any(cls, data: LinkingData) -> "LinkPattern":
        return cls(slots=tuple((rec.q, "any", "any") for rec in data.primes))

    @classmethod
    def from_json_list(cls, items) -> "LinkPattern":
        slots = []
        for item in items:
            try:
                slots.append((int(item["q"]), str(item["out"]), str(item["in"])))
            except (KeyError, TypeError) as exc:
                raise ValueError(f"malformed pattern entry {item!r}") from exc
        return cls(slots=tuple(slots))

    def to_json_list(self) -> list[dict]:
        return [{"q": q, "out": o, "in": i} for q, o, i in self.slots]


def _match(constraint: str, value: int) -> bool:
    if constraint == "zero":
        return value == 0
    if constraint == "nonzero":
        return value != 0
    return True


def _aligned_slots(data: LinkingData, pattern: LinkPattern) -> list[tuple[str, str]]:
    by_q = {}
    for q, out_c, in_c in pattern.slots:
        if q in by_q:
            raise ValueError(f"pattern lists prime {q} twice")
        by_q[q] = (out_c, in_c)
    if set(by_q) != set(data.qs()):
        raise ValueError(
            f"pattern primes {sorted(by_q)} do not match the set {sorted(data.qs())}"
        )
    return [by_q[rec.q] for rec in data.primes]


def extend_with_pattern(data: LinkingData, pattern: LinkPattern, search_bound: int):
    """Smallest eligible prime <= search_bound realizing the pattern.

    Returns (q, extended LinkingData) with q appended after the existing
    primes, or None when the bound is exhausted; existence is guaranteed
    for every pattern, so None always means the bound was too small.
    """
    constraints = _aligned_slots(data, pattern)
    existing = set(data.qs())
    p = data.p
    for q in iter_eligible_q(p, search_bound):
        if q in existing:
            continue
        ok = True
        for rec, (out_c, _) in zip(data.primes, constraints):
            if not _match(out_c, linking_number(q, rec, p)):
                ok = False
                break
        if not ok:
            continue
        new_rec = make_prime_record(q, p)
        for rec, (_, in_c) in zip(data.primes, constraints):
            if not _match(in_c, linking_number(rec.q, new_rec, p)):
                ok = False
                break
        if ok:
            return q, build_linking_data(p, list(data.qs()) + [q])
    return None


class _EligibleStream:
    """Ascending eligible primes, materialized lazily and shared by backtracking."""

    def __init__(self, p: int, bound: int):
        self._iter = iter_eligible_q(p, bound)
        self._p = p
        self._recs: list[PrimeRecord] = []
        self._done = False

    def get(self, idx: int) -> PrimeRecord | None:
        while not self._done and len(self._recs) <= idx:
            q = next(self._iter, None)
            if q is None:
                self._done = True
            else:
                self._recs.append(make_prime_record(q, self._p))
        return self._recs[idx] if idx < len(self._recs) else None


def _cover_requirement(s: int, t: int, total: int) -> str:
    """Constraint on l(slot s, slot t) in the doubled circular pattern."""
    if t == (s + 1) % total:
        return "nonzero"
    if s % 2 == 0 or t % 2 == 0:
        return "zero"
    return "any"


def mild_fm_cover(data: LinkingData, search_bound: int) -> LinkingData | None:
    """Double the set into a circular superset with the original links intact.

    The originals land in the odd 0-based slots of a 2d-element set and
    fresh primes fill the even slots, such that consecutive links around
    the cycle are nonzero and every other link touching a new prime is
    zero. The doubled set is circular under the identity ordering, which
    makes the associated group mild while preserving FM(n) for n < p.

    New primes are found by depth-first search with backtracking over the
    ascending eligible primes. Returns None when the bound is exhausted
    (the construction always exists, so None means the bound was too
    small); on success the returned LinkingData is rebuilt from scratch
    and all pattern constraints are re-verified from raw arithmetic.
    """
    if data.d < 2:
        # a single prime doubles to a 2-element set, and condition (c) of
        # the circularity test degenerates at d = 2 (the two cycle products
        # coincide), so the post-verified contract cannot be met
        raise ValueError(
            "covering a 1-element set would need a circular 2-element set, "
            "which the cycle-product condition rules out"
        )
    p = data.p
    total = 2 * data.d
    slots: list[PrimeRecord | None] = [None] * total
    for t, rec in enumerate(data.primes):
        slots[2 * t + 1] = rec
    stream = _EligibleStream(p, search_bound)
    used = set(data.qs())
    even_slots = list(range(0, total, 2))

    def links_ok(s: int) -> bool:
        for t in range(total):
            if t == s or slots[t] is None:
                continue
            out_v = linking_number(slots[s].q, slots[t], p)
            if not _match(_cover_requirement(s, t, total), out_v):
                return False
            in_v = linking_number(slots[t].q, slots[s], p)
            if not _match(_cover_requirement(t, s, total), in_v):
                return False
        return True

    def place(k: int) -> bool:
        if k == len(even_slots):
            return True
        s = even_slots[k]
        idx = 0
        while True:
            rec = stream.get(idx)
            idx += 1
            if rec is None:
                return False
            if rec.q in used:
                continue
            slots[s] = rec
            if links_ok(s):
                used.add(rec.q)
                if place(k + 1):
                    return True
                used.discard(rec.q)
            slots[s] = None

    if not place(0):
        return None
    qlist = [slots[s].q for s in range(total)]
    rebuilt = build_linking_data(p, qlist)
    for s in range(total):
        for t in range(total):
            if s != t and not _match(_cover_requirement(s, t, total), rebuilt.ell[s][t]):
                raise RouteDisagreement(
                    f"cover link ({s},{t}) failed re-verification from raw arithmetic"
                )
    if not is_circular_ordering(rebuilt, tuple(range(total))):
        raise RouteDisagreement("cover is not circular under the identity ordering")
    return rebuilt
