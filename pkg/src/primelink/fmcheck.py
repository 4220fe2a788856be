"""Deciders for property FM(n) of linking systems with d <= 3.

FM(n) means every n-dimensional representation of the linking algebra is
trivial. For d <= 2 the algebra collapses and FM(n) always holds. For
d = 3 and 2 <= n < p three logically independent routes decide it:

  * fm3_conditions, scanning the m-matrix conditions (a), (b), (c);
  * fm3_failure_criterion, the complementary equality test on ell and c;
  * fm3_congruence_criterion, the same decision recomputed from raw
    p-th-power residue arithmetic without ever taking a discrete log.

The three routes must agree on every input, and `primelink check` treats
any disagreement as an internal error. Index details in verdicts are
0-based positions into the prime list.
"""

import itertools
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence, Union

from .linkdata import LinkingLike, m_matrix
from .modarith import PrimeRecord, make_prime_record, pth_power_residue

if TYPE_CHECKING:  # pragma: no cover
    from .lieoracle import HomWitness

__all__ = [
    "FmVerdict",
    "ROUTES",
    "fm3_conditions",
    "fm3_congruence_criterion",
    "fm3_failure_criterion",
    "fm_small",
]

ROUTES = ("small-set", "cond-a", "cond-b", "cond-c", "failure-equalities", "congruence")
_HOLD_ROUTES = ("small-set", "cond-a", "cond-b", "cond-c")


@dataclass(frozen=True)
class FmVerdict:
    """Outcome of an FM(n) decision, with the route and indices that fired.

    holds is True exactly when route is one of the holding routes; detail
    carries the witnessing indices ((i, j) for cond-a, (i, j, k) for
    cond-b and cond-c, all three indices for failure routes). A
    HomWitness is attached only when an oracle run was performed.
    """

    holds: bool
    route: str
    detail: tuple[int, ...] = ()
    witness: "HomWitness | None" = None

    def __post_init__(self):
        if self.route not in ROUTES:
            raise ValueError(f"unknown route {self.route!r}")
        if self.holds != (self.route in _HOLD_ROUTES):
            raise ValueError(f"route {self.route!r} inconsistent with holds={self.holds}")

    def to_json_dict(self) -> dict:
        out = {"holds": self.holds, "route": self.route, "detail": list(self.detail)}
        if self.witness is not None:
            out["witness"] = self.witness.to_json_dict()
        return out


def fm_small(data: LinkingLike) -> FmVerdict:
    """FM(n) for d <= 2: always holds, because the linking algebra is zero."""
    if data.d > 2:
        raise ValueError(f"fm_small decides d <= 2 only, got d={data.d}")
    return FmVerdict(holds=True, route="small-set")


def _require_d3(data: LinkingLike) -> None:
    if data.d != 3:
        raise ValueError(f"this decider requires d = 3, got d={data.d}")


def fm3_conditions(data: LinkingLike, n: int) -> FmVerdict:
    """Decide FM(n) for d = 3 via the m-matrix conditions.

    Scans (a) m[i][j] = 0 over ordered pairs, then (b) m[i][k] = m[j][k]
    over ordered triples with i != j and k outside {i, j}, then (c)
    (m[i][k]-m[j][k]) * (m[k][i]m[i][j] - m[k][j]m[j][i]) != 0 over
    ordered distinct triples, all in lexicographic index order, so the
    reported route and detail are reproducible. The verdict itself does
    not depend on n; n is validated against the 2 <= n < p hypothesis.
    """
    _require_d3(data)
    p = data.p
    if not 2 <= n < p:
        raise ValueError(f"n must satisfy 2 <= n < p, got n={n}, p={p}")
    m = m_matrix(data)
    for i, j in itertools.product(range(3), repeat=2):
        if i != j and m[i][j] == 0:
            return FmVerdict(holds=True, route="cond-a", detail=(i, j))
    # past (a): every off-diagonal m entry is nonzero
    for i, j, k in itertools.permutations(range(3), 3):
        if m[i][k] == m[j][k]:
            return FmVerdict(holds=True, route="cond-b", detail=(i, j, k))
    for i, j, k in itertools.permutations(range(3), 3):
        if (m[i][k] - m[j][k]) * (m[k][i] * m[i][j] - m[k][j] * m[j][i]) % p != 0:
            return FmVerdict(holds=True, route="cond-c", detail=(i, j, k))
    return FmVerdict(holds=False, route="failure-equalities", detail=(0, 1, 2))


def fm3_failure_criterion(data: LinkingLike) -> bool:
    """True iff FM(n) fails for d = 3 (any n with 2 <= n < p).

    Failure requires every off-diagonal linking number nonzero together
    with the three F_p equalities

        ell[0][2]/c[0] = -ell[1][2]/c[1],
        ell[1][0]/c[1] = -ell[2][0]/c[2],
        ell[0][1]/c[0] = -ell[2][1]/c[2],

    checked here in cleared-denominator form.
    """
    _require_d3(data)
    p, c, ell = data.p, data.c, data.ell
    if any(ell[i][j] == 0 for i in range(3) for j in range(3) if i != j):
        return False
    return (
        (ell[0][2] * c[1] + ell[1][2] * c[0]) % p == 0
        and (ell[1][0] * c[2] + ell[2][0] * c[1]) % p == 0
        and (ell[0][1] * c[2] + ell[2][1] * c[0]) % p == 0
    )


def fm3_congruence_criterion(p: int, primes: Sequence[Union[int, PrimeRecord]]) -> bool:
    """The failure decision recomputed from raw power-residue arithmetic.

    Needs the actual prime integers, not the linking matrix. Returns True
    iff all six pairwise linking numbers are nonzero (each detected as a
    failed p-th-power residue test) and the three products

        q1^c2 * q2^c1 mod q3,   q2^c3 * q3^c2 mod q1,   q1^c3 * q3^c1 mod q2

    are p-th-power residues. The outer test exponent is the full integer
    (q_k - 1)/p, which is exactly the residue test the F_p equalities of
    fm3_failure_criterion encode, so the two routes must return the same
    boolean everywhere.
    """
    recs = [
        q if isinstance(q, PrimeRecord) else make_prime_record(int(q), p)
        for q in primes
    ]
    if len(recs) != 3:
        raise ValueError(f"this decider requires exactly 3 primes, got {len(recs)}")
    if len({r.q for r in recs}) != 3:
        raise ValueError("duplicate primes")
    for i in range(3):
        for j in range(3):
            if i != j and pth_power_residue(recs[i].q, recs[j], p):
                return False

    def pair_residue(i: int, j: int, k: int) -> bool:
        qk = recs[k].q
        a = pow(recs[i].q, recs[j].c, qk) * pow(recs[j].q, recs[i].c, qk) % qk
        return pth_power_residue(a, recs[k], p)

    return pair_residue(0, 1, 2) and pair_residue(1, 2, 0) and pair_residue(0, 2, 1)
