"""Command-line surface tying the library together.

stdout carries results only; logs go to stderr. Every flag can also be
supplied through a PRIMELINK_-prefixed environment variable (flag wins).
Exit codes: 0 success, 2 invalid input, 3 internal route disagreement,
4 budget or search-bound exhaustion.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, replace

from .circular import (
    LinkPattern,
    extend_with_pattern,
    find_circular_ordering,
    mild_fm_cover,
)
from .errors import Infeasible, RouteDisagreement
from .fmcheck import (
    fm3_conditions,
    fm3_congruence_criterion,
    fm3_failure_criterion,
    fm_small,
)
from .lieoracle import (
    DEFAULT_BUDGET,
    DEFAULT_SEED,
    commutator_congruence_check,
    check_hom,
    cycle_system,
    find_nontrivial_hom,
    lemma_bb_exhaustive,
    normalized_failure_system,
    normalized_failure_witness,
    triangular_lemma_checks,
)
from .linkdata import as_relation_system, build_linking_data, rescale_columns
from .scanstats import export_report, scan_triples

log = logging.getLogger("primelink")

ENV_PREFIX = "PRIMELINK_"


def _env(name: str) -> str | None:
    return os.environ.get(ENV_PREFIX + name)


def _env_int(name: str) -> int | None:
    raw = _env(name)
    return int(raw) if raw is not None else None


@dataclass(frozen=True)
class RunConfig:
    """Effective settings of one invocation; logged before dispatch."""

    command: str
    p: int | None = None
    primes: tuple[int, ...] = ()
    n: int | None = None
    bound: int | None = None
    budget: int = DEFAULT_BUDGET
    jobs: int = 1
    seed: int = DEFAULT_SEED
    format: str = "human"
    cache_dir: str | None = None
    cycle: int | None = None
    out_dir: str | None = None

    def describe(self) -> str:
        parts = [f"command={self.command}"]
        for key in ("p", "primes", "n", "bound", "budget", "jobs", "seed",
                    "format", "cache_dir", "cycle", "out_dir"):
            value = getattr(self, key)
            if value not in (None, ()):
                parts.append(f"{key}={value}")
        return " ".join(parts)


def _require(cfg: RunConfig, *fields: str) -> None:
    for field in fields:
        if getattr(cfg, field) is None:
            raise ValueError(f"--{field.replace('_', '-')} is required")


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_link(cfg: RunConfig) -> int:
    _require(cfg, "p")
    if not cfg.primes:
        raise ValueError("at least one prime is required")
    data = build_linking_data(cfg.p, cfg.primes)
    _emit(data.to_json())
    return 0


def _verdict_lines(data, verdict, fail_flag, cong_flag) -> list[str]:
    lines = [
        f"p={data.p} primes={list(data.qs())}",
        f"c={list(data.c)}",
        "ell=" + json.dumps([list(r) for r in data.ell]),
        "routes:",
        f"  conditions:         holds={verdict.holds} route={verdict.route} detail={list(verdict.detail)}",
    ]
    if fail_flag is not None:
        lines.append(f"  failure-equalities: {'fails' if fail_flag else 'holds'}")
    if cong_flag is not None:
        lines.append(f"  congruence:         {'fails' if cong_flag else 'holds'}")
    lines.append(f"verdict: FM(n) {'holds' if verdict.holds else 'fails'}")
    return lines


def _cmd_check(cfg: RunConfig, with_oracle: bool) -> int:
    _require(cfg, "p", "n")
    if not cfg.primes:
        raise ValueError("at least one prime is required")
    if not 2 <= cfg.n < cfg.p:
        raise ValueError(f"n must satisfy 2 <= n < p, got n={cfg.n}, p={cfg.p}")
    data = build_linking_data(cfg.p, cfg.primes)
    fail_flag = cong_flag = None
    if data.d <= 2:
        verdict = fm_small(data)
    elif data.d == 3:
        verdict = fm3_conditions(data, cfg.n)
        fail_flag = fm3_failure_criterion(data)
        cong_flag = fm3_congruence_criterion(cfg.p, data.primes)
        if verdict.holds != (not fail_flag) or verdict.holds != (not cong_flag):
            raise RouteDisagreement(
                f"routes disagree on {list(data.qs())}: conditions holds={verdict.holds}, "
                f"failure-equalities={fail_flag}, congruence={cong_flag}"
            )
    else:
        raise ValueError(
            f"no decision criterion exists for d={data.d} >= 4; "
            f"use the oracle for negative certificates"
        )
    if with_oracle:
        witness = find_nontrivial_hom(
            as_relation_system(data), cfg.n, budget=cfg.budget, jobs=cfg.jobs
        )
        if verdict.holds != (witness is None):
            raise RouteDisagreement(
                f"oracle disagrees with the criteria on {list(data.qs())}"
            )
        verdict = replace(verdict, witness=witness)
    if cfg.format == "json":
        _emit(json.dumps(verdict.to_json_dict(), indent=2))
    else:
        _emit("\n".join(_verdict_lines(data, verdict, fail_flag, cong_flag)))
    return 0


def _format_witness(witness) -> str:
    rows = [f"n={witness.n} p={witness.system.p}"]
    for t, mat in enumerate(witness.mats):
        rows.append(f"A{t + 1} = {json.dumps([list(r) for r in mat])}")
    return "\n".join(rows)


def _cmd_oracle(cfg: RunConfig) -> int:
    _require(cfg, "p", "n")
    if cfg.cycle is not None:
        if cfg.primes:
            raise ValueError("give either primes or --cycle, not both")
        system = cycle_system(cfg.p, cfg.cycle, [1] * (2 * cfg.cycle))
    else:
        if not cfg.primes:
            raise ValueError("at least one prime (or --cycle) is required")
        system = as_relation_system(build_linking_data(cfg.p, cfg.primes))
    witness = find_nontrivial_hom(system, cfg.n, budget=cfg.budget, jobs=cfg.jobs)
    if cfg.format == "json":
        if witness is None:
            _emit(json.dumps({"result": "none"}))
        else:
            _emit(json.dumps({"result": "witness", **witness.to_json_dict()}, indent=2))
    else:
        _emit("no nontrivial homomorphism" if witness is None else _format_witness(witness))
    return 0


def _cmd_circular(cfg: RunConfig) -> int:
    _require(cfg, "p")
    if not cfg.primes:
        raise ValueError("at least one prime is required")
    data = build_linking_data(cfg.p, cfg.primes)
    perm = find_circular_ordering(data)
    if cfg.format == "json":
        payload = {
            "permutation": list(perm) if perm is not None else None,
            "ordered_primes": [data.primes[i].q for i in perm] if perm is not None else None,
        }
        _emit(json.dumps(payload, indent=2))
    elif perm is None:
        _emit("no circular ordering")
    else:
        _emit(f"permutation: {list(perm)}")
        _emit(f"ordered primes: {[data.primes[i].q for i in perm]}")
    return 0


def _cmd_extend(cfg: RunConfig, pattern_path: str) -> int:
    _require(cfg, "p", "bound")
    if not cfg.primes:
        raise ValueError("at least one prime is required")
    data = build_linking_data(cfg.p, cfg.primes)
    with open(pattern_path, "r", encoding="utf-8") as fh:
        pattern = LinkPattern.from_json_list(json.load(fh))
    found = extend_with_pattern(data, pattern, cfg.bound)
    if found is None:
        log.error("no eligible prime <= %d realizes the pattern; raise --bound", cfg.bound)
        return 4
    q, extended = found
    if cfg.format == "json":
        _emit(json.dumps({"prime": q, "linkdata": extended.to_json_dict()}, indent=2))
    else:
        _emit(f"prime: {q}")
        _emit(extended.to_json())
    return 0


def _cmd_cover(cfg: RunConfig) -> int:
    _require(cfg, "p", "bound")
    if not cfg.primes:
        raise ValueError("at least one prime is required")
    data = build_linking_data(cfg.p, cfg.primes)
    cover = mild_fm_cover(data, cfg.bound)
    if cover is None:
        log.error("bound %d exhausted while building the cover; raise --bound", cfg.bound)
        return 4
    if cfg.format == "json":
        _emit(cover.to_json())
    else:
        _emit(f"cover primes: {list(cover.qs())}")
        _emit(cover.to_json())
    return 0


def _cmd_scan(cfg: RunConfig) -> int:
    _require(cfg, "p", "bound")
    report = scan_triples(cfg.p, cfg.bound, jobs=cfg.jobs, cache_dir=cfg.cache_dir)
    if cfg.format in ("json", "csv"):
        _emit(export_report(report, cfg.format))
    else:
        _emit(
            "\n".join(
                [
                    f"p={report.p} bound={report.bound}",
                    f"eligible primes: {report.eligible_count}",
                    f"triples:         {report.triple_count}",
                    f"failures:        {report.failure_count}",
                    f"failure rate:    {report.failure_count}/{report.triple_count}"
                    f" = {report.failure_fraction:.6f}",
                ]
            )
        )
    if cfg.out_dir is not None:
        from . import plots  # matplotlib import deferred until needed

        os.makedirs(cfg.out_dir, exist_ok=True)
        stem = f"scan_p{report.p}_b{report.bound}"
        for fmt in ("csv", "json"):
            path = os.path.join(cfg.out_dir, f"{stem}.{fmt}")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(export_report(report, fmt))
            log.info("wrote %s", path)
        for path in plots.render_scan_figures(report, cfg.out_dir, stem=stem):
            log.info("wrote %s", path)
    return 0


def _selftest_route_agreement(cfg: RunConfig) -> tuple[str, bool]:
    from itertools import combinations

    from .modarith import eligible_primes

    bound = cfg.bound if cfg.bound is not None else 200
    recs = eligible_primes(cfg.p, bound)
    checked = 0
    ok = True
    for trio in combinations(recs, 3):
        data = build_linking_data(cfg.p, [r.q for r in trio])
        holds = fm3_conditions(data, 2).holds
        if holds != (not fm3_failure_criterion(data)):
            ok = False
        if holds != (not fm3_congruence_criterion(cfg.p, data.primes)):
            ok = False
        checked += 1
    return f"route-agreement bound={bound}: {checked} triples", ok


def _selftest_oracle_samples(cfg: RunConfig) -> tuple[str, bool]:
    import random
    from itertools import combinations

    from .modarith import eligible_primes

    bound = cfg.bound if cfg.bound is not None else 200
    recs = eligible_primes(cfg.p, bound)
    trios = list(combinations(range(len(recs)), 3))
    if not trios:
        return "oracle-agreement: no triples below bound", True
    rng = random.Random(f"selftest:{cfg.seed}:{cfg.p}")
    take = min(3, len(trios))
    ok = True
    for idx in rng.sample(range(len(trios)), take):
        i, j, k = trios[idx]
        data = build_linking_data(cfg.p, [recs[i].q, recs[j].q, recs[k].q])
        holds = fm3_conditions(data, 2).holds
        witness = find_nontrivial_hom(as_relation_system(data), 2, budget=cfg.budget)
        if holds != (witness is None):
            ok = False
    return f"oracle-agreement samples={take}", ok


def _selftest_invariance(cfg: RunConfig) -> tuple[str, bool]:
    import random
    from itertools import combinations

    from .modarith import eligible_primes

    bound = cfg.bound if cfg.bound is not None else 200
    recs = eligible_primes(cfg.p, bound)
    trios = list(combinations(range(len(recs)), 3))
    if not trios:
        return "rescale-invariance: no triples below bound", True
    rng = random.Random(f"selftest-inv:{cfg.seed}:{cfg.p}")
    ok = True
    take = min(10, len(trios))
    for idx in rng.sample(range(len(trios)), take):
        i, j, k = trios[idx]
        data = build_linking_data(cfg.p, [recs[i].q, recs[j].q, recs[k].q])
        base = fm3_conditions(data, 2)
        for _ in range(5):
            scalars = [rng.randrange(1, cfg.p) for _ in range(3)]
            scaled = rescale_columns(data, scalars)
            if fm3_conditions(scaled, 2) != base:
                ok = False
    return f"rescale-invariance samples={take}", ok


def _cmd_selftest(cfg: RunConfig, samples: int) -> int:
    _require(cfg, "p")
    suites: list[tuple[str, bool]] = []
    if 2 < cfg.p:
        suites.append((f"lemma-bb n=2 p={cfg.p}", lemma_bb_exhaustive(2, cfg.p, budget=cfg.budget)))
    suites.append((
        f"commutator-congruence i=1 j=1 samples={samples}",
        commutator_congruence_check(cfg.p, 1, 1, samples=samples, seed=cfg.seed),
    ))
    suites.append((
        f"commutator-congruence i=1 j=2 samples={samples}",
        commutator_congruence_check(cfg.p, 1, 2, samples=samples, seed=cfg.seed),
    ))
    suites.append((
        f"triangular-lemmas samples={samples}",
        triangular_lemma_checks(cfg.p, samples=samples, seed=cfg.seed),
    ))
    suites.append((
        f"normalized-witness p={cfg.p}",
        check_hom(normalized_failure_system(cfg.p), normalized_failure_witness(cfg.p)),
    ))
    suites.append(_selftest_route_agreement(cfg))
    suites.append(_selftest_oracle_samples(cfg))
    suites.append(_selftest_invariance(cfg))
    all_ok = True
    for name, ok in suites:
        _emit(f"{'pass' if ok else 'FAIL'}  {name}")
        all_ok = all_ok and ok
    _emit("selftest: " + ("all suites passed" if all_ok else "FAILURES detected"))
    return 0 if all_ok else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primelink",
        description="linking numbers of prime sets, FM(n) deciders, and brute-force oracles",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, primes=True, n=False, bound=False):
        sp.add_argument("--p", type=int, default=_env_int("P"),
                        help="the odd prime modulus p")
        if primes:
            sp.add_argument("primes", type=int, nargs="*", help="primes in the set S")
        if n:
            sp.add_argument("--n", type=int, default=_env_int("N"),
                            help="representation dimension")
        if bound:
            sp.add_argument("--bound", type=int, default=_env_int("BOUND"),
                            help="prime search bound")
        sp.add_argument("--jobs", type=int, default=_env_int("JOBS") or 1)
        sp.add_argument("--budget", type=int, default=_env_int("BUDGET") or DEFAULT_BUDGET)
        sp.add_argument("--seed", type=int, default=_env_int("SEED") or DEFAULT_SEED)
        sp.add_argument("--cache-dir", default=_env("CACHE_DIR"))
        sp.add_argument("--format", choices=("human", "json", "csv"),
                        default=_env("FORMAT") or "human")

    sp = sub.add_parser("link", help="print the linking invariant as JSON")
    common(sp)

    sp = sub.add_parser("check", help="decide FM(n) by every applicable route")
    common(sp, n=True)
    sp.add_argument("--oracle", action="store_true",
                    help="also run the brute-force oracle and attach a witness")

    sp = sub.add_parser("oracle", help="search for a nontrivial representation")
    common(sp, n=True)
    sp.add_argument("--cycle", type=int, default=_env_int("CYCLE"),
                    help="use the synthetic 2m-cycle system instead of primes")

    sp = sub.add_parser("circular", help="search for a circular ordering")
    common(sp)

    sp = sub.add_parser("extend", help="extend the set by a prime matching a pattern")
    common(sp, bound=True)
    sp.add_argument("--pattern", required=True, help="JSON pattern file")

    sp = sub.add_parser("cover", help="build a circular superset preserving FM(n)")
    common(sp, bound=True)

    sp = sub.add_parser("scan", help="classify all eligible triples up to a bound")
    common(sp, primes=False, bound=True)
    sp.add_argument("--out", default=None,
                    help="directory for csv/json exports and figures")

    sp = sub.add_parser("selftest", help="run the executable invariant suites")
    common(sp, primes=False, bound=True)
    sp.add_argument("--samples", type=int, default=300)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        p=args.p,
        primes=tuple(getattr(args, "primes", ()) or ()),
        n=getattr(args, "n", None),
        bound=getattr(args, "bound", None),
        budget=args.budget,
        jobs=args.jobs,
        seed=args.seed,
        format=args.format,
        cache_dir=args.cache_dir,
        cycle=getattr(args, "cycle", None),
        out_dir=getattr(args, "out", None),
    )


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(args)
    log.info("config: %s", cfg.describe())
    try:
        if cfg.command == "link":
            return _cmd_link(cfg)
        if cfg.command == "check":
            return _cmd_check(cfg, with_oracle=args.oracle)
        if cfg.command == "oracle":
            return _cmd_oracle(cfg)
        if cfg.command == "circular":
            return _cmd_circular(cfg)
        if cfg.command == "extend":
            return _cmd_extend(cfg, args.pattern)
        if cfg.command == "cover":
            return _cmd_cover(cfg)
        if cfg.command == "scan":
            return _cmd_scan(cfg)
        if cfg.command == "selftest":
            return _cmd_selftest(cfg, args.samples)
        raise ValueError(f"unknown command {cfg.command!r}")
    except ValueError as exc:
        log.error("invalid input: %s", exc)
        return 2
    except RouteDisagreement as exc:
        log.error("internal disagreement: %s", exc)
        return 3
    except Infeasible as exc:
        log.error("infeasible: %s", exc)
        return 4


if __name__ == "__main__":
    sys.exit(main())
