"""Batch classification of eligible-prime triples up to a bound.

The full pairwise linking matrix is computed once (and optionally cached
as linkdata JSON under a content-addressed filename), after which every
3-subset is classified by the failure equalities alone; those are six
F_p comparisons per triple, so the hot loop never touches modular
exponentiation. Every reported failure is re-verified through
fm3_failure_criterion, and a seeded sample of triples is cross-checked
against the independent m-matrix decider on every scan.
"""

import hashlib
import json
import random
from dataclasses import dataclass
from multiprocessing import get_context
from pathlib import Path

from .errors import Infeasible, RouteDisagreement
from .fmcheck import fm3_conditions, fm3_failure_criterion
from .linkdata import LinkingData, RelationSystem, build_linking_data
from .modarith import _require_odd_prime, iter_eligible_q

__all__ = [
    "DEFAULT_ELIGIBLE_CAP",
    "ScanReport",
    "export_report",
    "full_linking_data",
    "scan_triples",
]

DEFAULT_ELIGIBLE_CAP = 2000
_CROSS_CHECK_SAMPLES = 100


@dataclass(frozen=True)
class ScanReport:
    """Aggregate outcome of a triple scan; failures are sorted ascending."""

    p: int
    bound: int
    eligible_count: int
    triple_count: int
    failures: tuple[tuple[int, int, int], ...]

    @property
    def failure_count(self) -> int:
        return len(self.failures)

    @property
    def failure_fraction(self) -> float:
        if self.triple_count == 0:
            return 0.0
        return self.failure_count / self.triple_count

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "bound": self.bound,
            "eligible_count": self.eligible_count,
            "triple_count": self.triple_count,
            "failures": [list(t) for t in self.failures],
            "failure_count": self.failure_count,
            "failure_fraction": {
                "numerator": self.failure_count,
                "denominator": self.triple_count,
                "decimal": self.failure_fraction,
            },
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ScanReport":
        return cls(
            p=int(obj["p"]),
            bound=int(obj["bound"]),
            eligible_count=int(obj["eligible_count"]),
            triple_count=int(obj["triple_count"]),
            failures=tuple(tuple(int(x) for x in t) for t in obj["failures"]),
        )


def _cache_path(cache_dir, p: int, bound: int) -> Path:
    key = f"p={p};bound={bound};roots=smallest;v=1"
    digest = hashlib.sha256(key.encode()).hexdigest()[:20]
    return Path(cache_dir) / f"linkdata_{digest}.json"


def full_linking_data(p: int, bound: int, cache_dir=None) -> LinkingData:
    """Linking invariant of every eligible prime <= bound, cached if asked.

    The cache key covers (p, bound, root policy), so any policy change
    lands in a different file.
    """
    _require_odd_prime(p)
    path = None
    if cache_dir is not None:
        path = _cache_path(cache_dir, p, bound)
        if path.is_file():
            with open(path, "r", encoding="utf-8") as fh:
                return LinkingData.from_json_dict(json.load(fh))
    qs = list(iter_eligible_q(p, bound))
    if qs:
        data = build_linking_data(p, qs)
    else:
        data = LinkingData(p=p, primes=(), c=(), ell=())
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(data.to_json_dict(), fh)
    return data


def _scan_chunk(args) -> list[tuple[int, int, int]]:
    """Classify all triples (i, j, k) with i in i_values, i < j < k.

    Inlines the failure equalities of fm3_failure_criterion: all six
    off-diagonal links nonzero and the three cleared-denominator
    equalities; hits are re-verified through the named decider later.
    """
    c, ell, p, i_values, count = args
    out = []
    for i in i_values:
        row_i = ell[i]
        ci = c[i]
        for j in range(i + 1, count):
            eij = row_i[j]
            eji = ell[j][i]
            if eij == 0 or eji == 0:
                continue
            row_j = ell[j]
            cj = c[j]
            for k in range(j + 1, count):
                eik = row_i[k]
                if eik == 0:
                    continue
                ejk = row_j[k]
                if ejk == 0:
                    continue
                row_k = ell[k]
                eki = row_k[i]
                if eki == 0:
                    continue
                ekj = row_k[j]
                if ekj == 0:
                    continue
                ck = c[k]
                if (eik * cj + ejk * ci) % p:
                    continue
                if (eji * ck + eki * cj) % p:
                    continue
                if (eij * ck + ekj * ci) % p:
                    continue
                out.append((i, j, k))
    return out


def _sub_system(data: LinkingData, i: int, j: int, k: int) -> RelationSystem:
    ell = data.ell
    return RelationSystem(
        p=data.p,
        d=3,
        c=(data.c[i], data.c[j], data.c[k]),
        ell=(
            (0, ell[i][j], ell[i][k]),
            (ell[j][i], 0, ell[j][k]),
            (ell[k][i], ell[k][j], 0),
        ),
    )


def scan_triples(p: int, bound: int, jobs: int = 1, cache_dir=None,
                 eligible_cap: int = DEFAULT_ELIGIBLE_CAP) -> ScanReport:
    """Classify every 3-subset of the eligible primes <= bound.

    The report is deterministic regardless of jobs: workers receive
    disjoint index sets and the merged failure list is sorted. Raises
    Infeasible when the eligible count exceeds the cap.
    """
    data = full_linking_data(p, bound, cache_dir=cache_dir)
    count = data.d
    if count > eligible_cap:
        raise Infeasible(
            f"{count} eligible primes exceed the cap of {eligible_cap}; "
            f"raise the cap to force the scan"
        )
    triple_count = count * (count - 1) * (count - 2) // 6
    c = list(data.c)
    ell = [list(row) for row in data.ell]
    if jobs <= 1 or count < 16:
        fails_idx = _scan_chunk((c, ell, p, range(count), count))
    else:
        chunks = [list(range(w, count, jobs)) for w in range(jobs)]
        args = [(c, ell, p, chunk, count) for chunk in chunks]
        with get_context("fork").Pool(processes=jobs) as pool:
            parts = pool.map(_scan_chunk, args)
        fails_idx = [t for part in parts for t in part]
    fails_idx.sort()
    for i, j, k in fails_idx:
        if not fm3_failure_criterion(_sub_system(data, i, j, k)):
            raise RouteDisagreement(
                f"scan hot loop flagged ({i},{j},{k}) but the decider disagrees"
            )
    _cross_check(data, p, bound, triple_count)
    qs = data.qs()
    failures = tuple((qs[i], qs[j], qs[k]) for i, j, k in fails_idx)
    return ScanReport(
        p=p,
        bound=bound,
        eligible_count=count,
        triple_count=triple_count,
        failures=failures,
    )


def _cross_check(data: LinkingData, p: int, bound: int, triple_count: int) -> None:
    """Seeded dichotomy sample: m-matrix conditions vs failure equalities."""
    if triple_count == 0:
        return
    rng = random.Random(f"scan:{p}:{bound}")
    for _ in range(min(_CROSS_CHECK_SAMPLES, triple_count)):
        i, j, k = sorted(rng.sample(range(data.d), 3))
        sub = _sub_system(data, i, j, k)
        if fm3_conditions(sub, 2).holds != (not fm3_failure_criterion(sub)):
            raise RouteDisagreement(
                f"conditions and failure equalities disagree on indices ({i},{j},{k})"
            )


def export_report(report: ScanReport, format: str) -> str:
    """Serialize a report; json mirrors the report fields, csv lists failures."""
    if format == "json":
        return json.dumps(report.to_json_dict(), indent=2) + "\n"
    if format == "csv":
        lines = [
            "# triple scan report",
            f"# p,{report.p}",
            f"# bound,{report.bound}",
            f"# eligible_count,{report.eligible_count}",
            f"# triple_count,{report.triple_count}",
            f"# failure_count,{report.failure_count}",
            f"# failure_fraction,{report.failure_count}/{report.triple_count}",
            f"# failure_fraction_decimal,{report.failure_fraction!r}",
            "q1,q2,q3",
        ]
        lines.extend(f"{a},{b},{c}" for a, b, c in report.failures)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown export format {format!r}")
