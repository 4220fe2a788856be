"""The finite linking invariant of a prime set.

LinkingData packages p, the ordered primes, the coefficient vector c and
the d x d matrix of pairwise linking numbers. RelationSystem is the same
(p, d, c, ell) shape with no arithmetic provenance attached, so synthetic
relation systems (cycles, normalized forms) can be fed to the same
deciders and to the brute-force oracle.

Both types are immutable after construction and freely shareable across
threads. All F_p elements are canonical residues in [0, p); division is
always multiplication by a modular inverse.
"""

import json
from dataclasses import dataclass, replace
from typing import Sequence, Union

from .modarith import (
    PrimeRecord,
    _require_odd_prime,
    linking_number,
    make_prime_record,
)

__all__ = [
    "LinkingData",
    "RelationSystem",
    "as_relation_system",
    "build_linking_data",
    "m_matrix",
    "rescale_columns",
]


@dataclass(frozen=True)
class LinkingData:
    """p, the ordered prime records, the c vector and the linking matrix.

    ell[i][j] for i != j is the linking number of (primes[i], primes[j]);
    the diagonal is stored as 0 by convention and never read by any
    decision criterion.
    """

    p: int
    primes: tuple[PrimeRecord, ...]
    c: tuple[int, ...]
    ell: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = len(self.primes)
        if len(self.c) != d or len(self.ell) != d or any(len(r) != d for r in self.ell):
            raise ValueError("inconsistent LinkingData shape")

    @property
    def d(self) -> int:
        return len(self.primes)

    def qs(self) -> tuple[int, ...]:
        return tuple(rec.q for rec in self.primes)

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "primes": [rec.q for rec in self.primes],
            "roots": [rec.g for rec in self.primes],
            "c": list(self.c),
            "ell": [list(row) for row in self.ell],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    @classmethod
    def from_json_dict(cls, obj: dict) -> "LinkingData":
        p = int(obj["p"])
        qs = [int(q) for q in obj["primes"]]
        roots = [int(g) for g in obj["roots"]]
        if len(roots) != len(qs):
            raise ValueError("primes and roots lists differ in length")
        recs = tuple(make_prime_record(q, p, root=g) for q, g in zip(qs, roots))
        c = tuple(int(x) for x in obj["c"])
        if c != tuple(r.c for r in recs):
            raise ValueError("stored c vector disagrees with the primes")
        d = len(recs)
        ell = tuple(tuple(int(x) % p for x in row) for row in obj["ell"])
        if len(ell) != d or any(len(row) != d for row in ell):
            raise ValueError("ell matrix shape does not match the prime count")
        if any(ell[i][i] != 0 for i in range(d)):
            raise ValueError("ell diagonal must be zero")
        return cls(p=p, primes=recs, c=c, ell=ell)


@dataclass(frozen=True)
class RelationSystem:
    """Abstract (p, d, c, ell) tuple, decoupled from any prime set.

    Entries are reduced to canonical residues on construction; every c
    entry must be nonzero mod p and the ell diagonal must vanish.
    """

    p: int
    d: int
    c: tuple[int, ...]
    ell: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _require_odd_prime(self.p)
        c = tuple(int(x) % self.p for x in self.c)
        ell = tuple(tuple(int(x) % self.p for x in row) for row in self.ell)
        if len(c) != self.d or len(ell) != self.d or any(len(r) != self.d for r in ell):
            raise ValueError("inconsistent RelationSystem shape")
        if any(x == 0 for x in c):
            raise ValueError("every c entry must be nonzero mod p")
        if any(ell[i][i] != 0 for i in range(self.d)):
            raise ValueError("ell diagonal must be zero")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "ell", ell)


LinkingLike = Union[LinkingData, RelationSystem]


def build_linking_data(p: int, qlist: Sequence[int], roots: Sequence[int] | None = None) -> LinkingData:
    """Assemble the full linking invariant of the given primes, in order.

    Every entry must be an eligible prime for p; rejections name the
    offending value. `roots` optionally overrides the primitive-root
    choice per prime (used by the root-invariance machinery).
    """
    _require_odd_prime(p)
    qs = [int(q) for q in qlist]
    if not qs:
        raise ValueError("qlist must be nonempty")
    seen = set()
    for q in qs:
        if q in seen:
            raise ValueError(f"duplicate prime {q} in qlist")
        seen.add(q)
    if roots is not None and len(roots) != len(qs):
        raise ValueError("roots list must match qlist in length")
    recs = tuple(
        make_prime_record(q, p, root=None if roots is None else roots[i])
        for i, q in enumerate(qs)
    )
    d = len(recs)
    ell = tuple(
        tuple(
            0 if i == j else linking_number(recs[i].q, recs[j], p)
            for j in range(d)
        )
        for i in range(d)
    )
    return LinkingData(p=p, primes=recs, c=tuple(r.c for r in recs), ell=ell)


def as_relation_system(data: LinkingLike) -> RelationSystem:
    """View any linking invariant as a bare relation system."""
    if isinstance(data, RelationSystem):
        return data
    return RelationSystem(p=data.p, d=data.d, c=data.c, ell=data.ell)


def m_matrix(data: LinkingLike) -> tuple[tuple[int, ...], ...]:
    """The derived matrix m[i][j] = -ell[i][j] / c[i] in F_p, zero diagonal."""
    p = data.p
    inv = [pow(ci, -1, p) for ci in data.c]
    return tuple(
        tuple(
            0 if i == j else (-data.ell[i][j] * inv[i]) % p
            for j in range(data.d)
        )
        for i in range(data.d)
    )


def rescale_columns(data: LinkingLike, scalars: Sequence[int]) -> LinkingLike:
    """Multiply column j of ell by scalars[j]; models changing primitive roots.

    Every scalar must be nonzero mod p. The result is the same type as the
    input; for LinkingData the stored roots no longer account for the new
    matrix, which is fine for the invariance tests this exists for.
    """
    p = data.p
    s = [int(x) % p for x in scalars]
    if len(s) != data.d:
        raise ValueError("scalar vector length must equal d")
    if any(x == 0 for x in s):
        raise ValueError("zero scalar in column rescaling")
    new_ell = tuple(
        tuple(data.ell[i][j] * s[j] % p for j in range(data.d))
        for i in range(data.d)
    )
    return replace(data, ell=new_ell)
