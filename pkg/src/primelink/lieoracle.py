"""Brute-force ground truth for the FM(n) deciders.

Enumerates tuples (A_1, ..., A_d) of n x n matrices over F_p against the
relator equations

    c_i * A_i + sum_{j != i} ell[i][j] * (A_i A_j - A_j A_i) = 0,

returning the lexicographically first nonzero solution as a certificate
that some n-dimensional representation is nontrivial. Taking the trace of
a relator kills the commutator sum and leaves c_i * tr(A_i) = 0 with c_i
invertible, so the search runs over trace-zero matrices only; that cuts
the space by a factor of p per generator and loses no solutions.

Matrices are indexed lexicographically by their n^2 - 1 free entries (the
last diagonal entry is determined by the others), so index 0 is the zero
matrix and "lexicographically first" is well defined. Small searches run
as one fully vectorized pass; larger ones fall back to a depth-first scan
that checks each relator as soon as all of its participants are assigned
and vectorizes over the final generator. Both strategies visit candidate
tuples in the same order.

The module also packages executable versions of the matrix congruence
facts the deciders lean on: nilpotency from A = [A, B] when n < p, the
commutator and p-th-power congruences in the 1 + p^k matrix groups, and
the triangular-form congruences mod p^2.
"""

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from multiprocessing import get_context

import numpy as np

from .errors import Infeasible, RouteDisagreement
from .linkdata import LinkingLike, RelationSystem, as_relation_system
from .modarith import _require_odd_prime

__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_SEED",
    "HomWitness",
    "check_hom",
    "commutator_congruence_check",
    "cycle_system",
    "find_nontrivial_hom",
    "is_nilpotent",
    "lemma_bb_exhaustive",
    "normalized_failure_system",
    "normalized_failure_witness",
    "triangular_lemma_checks",
]

DEFAULT_BUDGET = 1_000_000_000
DEFAULT_SEED = 1729

_MESH_LIMIT = 1 << 21          # candidate tuples handled in one vectorized pass
_TABLE_BYTES = 64 << 20        # precomputed commutator table size cap

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class HomWitness:
    """A nonzero matrix tuple satisfying every relator equation.

    Certifies that the system's linking algebra has a nontrivial
    n-dimensional representation, i.e. that FM(n) fails.
    """

    system: RelationSystem
    n: int
    mats: tuple[Matrix, ...]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.system.p,
            "mats": [[list(row) for row in m] for m in self.mats],
        }


def check_hom(system: LinkingLike, mats) -> bool:
    """True iff the matrix tuple satisfies all d relator equations over F_p."""
    sys_ = as_relation_system(system)
    p, d = sys_.p, sys_.d
    if len(mats) != d:
        raise ValueError(f"expected {d} matrices, got {len(mats)}")
    arrs = [np.asarray(m, dtype=np.int64) % p for m in mats]
    n = arrs[0].shape[0] if arrs else 0
    if any(a.shape != (n, n) for a in arrs):
        raise ValueError("matrices must share one square dimension")
    for i in range(d):
        acc = sys_.c[i] * arrs[i]
        for j in range(d):
            lij = sys_.ell[i][j]
            if j != i and lij:
                acc = acc + lij * (arrs[i] @ arrs[j] - arrs[j] @ arrs[i])
        if (acc % p).any():
            return False
    return True


def cycle_system(p: int, m: int, c) -> RelationSystem:
    """The d = 2m cyclic relation system: generator i couples only to i+1.

    ell[i][(i+1) mod d] = 1 and every other entry is 0; all c entries must
    be nonzero mod p and m >= 2.
    """
    _require_odd_prime(p)
    if m < 2:
        raise ValueError(f"cycle systems require m >= 2, got m={m}")
    d = 2 * m
    cc = [int(x) % p for x in c]
    if len(cc) != d:
        raise ValueError(f"c must have length 2m = {d}, got {len(cc)}")
    if any(x == 0 for x in cc):
        raise ValueError("zero c entry in cycle system")
    ell = tuple(
        tuple(1 if j == (i + 1) % d else 0 for j in range(d))
        for i in range(d)
    )
    return RelationSystem(p=p, d=d, c=tuple(cc), ell=ell)


def normalized_failure_system(p: int) -> RelationSystem:
    """The d = 3 system every FM-failing triple rescales to.

    Relations: x1 = [x1,x2] + [x1,x3], x2 = [x2,x1] - [x2,x3],
    x3 = -[x3,x1] - [x3,x2], written in relator form with c = (-1,-1,-1).
    """
    _require_odd_prime(p)
    return RelationSystem(
        p=p,
        d=3,
        c=(p - 1, p - 1, p - 1),
        ell=((0, 1, 1), (1, 0, p - 1), (p - 1, p - 1, 0)),
    )


def normalized_failure_witness(p: int) -> tuple[Matrix, Matrix, Matrix]:
    """The explicit 2-dimensional solution of the normalized system.

    A1 = t*[[0,1],[0,0]], A2 = t*[[0,0],[1,0]], A3 = t*[[1,1],[-1,-1]]
    with t = -1/2 in F_p; valid for every odd prime p.
    """
    _require_odd_prime(p)
    t = (-pow(2, -1, p)) % p
    def scaled(rows):
        return tuple(tuple(t * x % p for x in row) for row in rows)
    return (
        scaled(((0, 1), (0, 0))),
        scaled(((0, 0), (1, 0))),
        scaled(((1, 1), (-1, -1))),
    )


# ---------------------------------------------------------------------------
# enumeration machinery


@lru_cache(maxsize=8)
def _trace_zero_basis(n: int, p: int) -> np.ndarray:
    """All trace-zero n x n matrices mod p, shape (M, n, n), lexicographic.

    The n^2 - 1 free entries run row-major with the most significant digit
    first; the bottom-right entry balances the trace.
    """
    width = n * n - 1
    count = p ** width
    a = np.arange(count, dtype=np.int64)
    flat = np.empty((count, n * n), dtype=np.int64)
    for k in range(width):
        flat[:, k] = (a // (p ** (width - 1 - k))) % p
    head_diag = [t * n + t for t in range(n - 1)]
    flat[:, -1] = (-flat[:, head_diag].sum(axis=1)) % p if head_diag else 0
    flat.setflags(write=False)
    return flat.reshape(count, n, n)


@lru_cache(maxsize=8)
def _full_basis(n: int, p: int) -> np.ndarray:
    """All n x n matrices mod p, shape (p^(n^2), n, n), lexicographic."""
    width = n * n
    count = p ** width
    a = np.arange(count, dtype=np.int64)
    flat = np.empty((count, width), dtype=np.int64)
    for k in range(width):
        flat[:, k] = (a // (p ** (width - 1 - k))) % p
    flat.setflags(write=False)
    return flat.reshape(count, n, n)


def _comm_row(basis: np.ndarray, a: int, p: int) -> np.ndarray:
    """Flattened commutators of basis[a] with every basis matrix, (M, n^2) int16."""
    mat = basis[a]
    row = (np.matmul(mat, basis) - np.matmul(basis, mat)) % p
    return row.reshape(basis.shape[0], -1).astype(np.int16)


@lru_cache(maxsize=4)
def _comm_table(n: int, p: int) -> np.ndarray | None:
    """Full trace-zero commutator table (M, M, n^2) int16, or None if too big."""
    basis = _trace_zero_basis(n, p)
    m = basis.shape[0]
    if m * m * n * n * 2 > _TABLE_BYTES:
        return None
    table = np.empty((m, m, n * n), dtype=np.int16)
    for a in range(m):
        table[a] = _comm_row(basis, a, p)
    table.setflags(write=False)
    return table


def _scan_range(system: RelationSystem, n: int, lo: int, hi: int) -> tuple[int, ...] | None:
    """Search with the first generator index restricted to [lo, hi).

    The d index positions split into a depth-first prefix and a vectorized
    tail block. Every relator whose participants all sit in the prefix is
    checked the moment its last participant is assigned, pruning whole
    subtrees; the remaining relators are evaluated over the block in one
    numpy pass. The prefix depth is chosen so the block fits the size cap
    while keeping every prunable relator in the prefix. Tuples are visited
    in lexicographic order, so the first hit is the minimum of the range.
    """
    p, d = system.p, system.d
    basis = _trace_zero_basis(n, p)
    m = basis.shape[0]
    n2 = n * n
    flat16 = basis.reshape(m, n2).astype(np.int16)
    c = system.c
    ell = system.ell

    involved = [[j for j in range(d) if j != i and ell[i][j]] for i in range(d)]
    ready = [max([i] + involved[i]) for i in range(d)]

    # smallest prefix depth whose tail block fits the cap
    t_block = d - 1
    while t_block > 0 and m ** (d - t_block + 1) <= _MESH_LIMIT:
        t_block -= 1
    if m ** d <= _MESH_LIMIT:
        depth = 0
    else:
        # keep every relator that can prune inside the prefix
        t_prune = max((ready[i] + 1 for i in range(d) if ready[i] < d - 1), default=0)
        depth = max(t_block, t_prune)

    table = _comm_table(n, p)
    if table is None:
        # vector-vector commutator terms need the full table; without one,
        # grow the prefix until at most the final axis stays vectorized
        while depth < d - 1 and any(
            j >= depth for i in range(depth, d) for j in involved[i]
        ):
            depth += 1
    neg_table = None
    if table is not None and any(
        j >= depth and j < i for i in range(depth, d) for j in involved[i]
    ):
        neg_table = (p - table) % p

    assign = [0] * d
    rows: list[np.ndarray | None] = [None] * max(depth, 1)
    axes = d - depth
    blocked = [i for i in range(d) if ready[i] >= depth]
    scalar_at = [[i for i in range(d) if ready[i] == t] for t in range(depth)]

    def row_of(t: int) -> np.ndarray:
        """Commutators of the matrix assigned at prefix position t, (m, n^2)."""
        if table is not None:
            return table[assign[t]]
        if rows[t] is None:
            rows[t] = _comm_row(basis, assign[t], p)
        return rows[t]

    def scalar_ok(i: int) -> bool:
        ai = basis[assign[i]]
        acc = c[i] * ai
        for j in involved[i]:
            aj = basis[assign[j]]
            acc = acc + ell[i][j] * (ai @ aj - aj @ ai)
        return not (acc % p).any()

    def axis_shape(pos: int, length: int) -> list[int]:
        shape = [1] * axes + [n2]
        shape[pos - depth] = length
        return shape

    def pair_term(i: int, j: int, s0: int, s1: int) -> np.ndarray:
        """C[a_i, a_j] broadcastable over the block; position `depth` is sliced."""
        if i >= depth and j >= depth:
            if i < j:
                src, first, second = table, i, j
            else:
                src, first, second = neg_table, j, i
            arr = src[s0:s1] if first == depth else src
            shape = [1] * axes + [n2]
            shape[first - depth] = arr.shape[0]
            shape[second - depth] = m
            return arr.reshape(shape)
        if i >= depth:
            col = (p - row_of(j)) % p  # C[x, a_j] = -C[a_j, x] over all x
            arr = col[s0:s1] if i == depth else col
            return arr.reshape(axis_shape(i, arr.shape[0]))
        rowv = row_of(i)  # C[a_i, x] over all x
        arr = rowv[s0:s1] if j == depth else rowv
        return arr.reshape(axis_shape(j, arr.shape[0]))

    def block_scan(s0: int, s1: int, zero_prefix: bool) -> tuple[int, ...] | None:
        shape = tuple([s1 - s0] + [m] * (axes - 1))
        ok = np.ones(shape, dtype=bool)
        for i in blocked:
            rel = np.zeros(shape + (n2,), dtype=np.int16)
            if i < depth:
                rel += c[i] * flat16[assign[i]]
            else:
                arr = flat16[s0:s1] if i == depth else flat16
                rel += (c[i] * arr).reshape(axis_shape(i, arr.shape[0]))
            for j in involved[i]:
                if i < depth and j < depth:
                    ai, aj = basis[assign[i]], basis[assign[j]]
                    entry = ((ai @ aj - aj @ ai) % p).reshape(n2).astype(np.int16)
                    rel += ell[i][j] * entry
                else:
                    rel += ell[i][j] * pair_term(i, j, s0, s1)
            rel %= p
            ok &= ~rel.any(axis=-1)
        flat_ok = ok.reshape(-1)
        if zero_prefix and s0 == 0:
            flat_ok[0] = False  # the all-zero tuple is not a witness
        hits = np.flatnonzero(flat_ok)
        if hits.size == 0:
            return None
        coords = list(np.unravel_index(int(hits[0]), shape))
        coords[0] += s0
        return tuple(assign[:depth]) + tuple(int(x) for x in coords)

    def rec(t: int, zero_prefix: bool) -> tuple[int, ...] | None:
        if t == depth:
            base_lo, base_hi = (lo, hi) if depth == 0 else (0, m)
            per_unit = m ** (axes - 1)
            step = max(1, _MESH_LIMIT // per_unit)
            for s0 in range(base_lo, base_hi, step):
                res = block_scan(s0, min(s0 + step, base_hi), zero_prefix)
                if res is not None:
                    return res
            return None
        start, stop = (lo, hi) if t == 0 else (0, m)
        for a in range(start, stop):
            assign[t] = a
            rows[t] = None
            if all(scalar_ok(i) for i in scalar_at[t]):
                res = rec(t + 1, zero_prefix and a == 0)
                if res is not None:
                    return res
        return None

    return rec(0, True)


def _scan_worker(args) -> tuple[int, ...] | None:
    p, d, c, ell, n, lo, hi = args
    system = RelationSystem(p=p, d=d, c=tuple(c), ell=tuple(map(tuple, ell)))
    return _scan_range(system, n, lo, hi)


def find_nontrivial_hom(system: LinkingLike, n: int,
                        budget: int = DEFAULT_BUDGET,
                        jobs: int = 1) -> HomWitness | None:
    """Exhaustively search for a nonzero tuple satisfying every relator.

    Returns the lexicographically first HomWitness, or None when the full
    space contains no nonzero solution. Raises Infeasible, before doing
    any work, when p^((n^2-1)*d) exceeds the candidate-tuple budget;
    "infeasible" is never conflated with "none found".

    With jobs > 1 the first generator's index range is partitioned across
    worker processes; workers share nothing and the reducer picks the
    earliest range's witness, so the result is identical to a serial run.
    """
    sys_ = as_relation_system(system)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    p, d = sys_.p, sys_.d
    m = p ** (n * n - 1)
    total = m ** d if d else 0
    if total > budget:
        raise Infeasible(
            f"{total} candidate tuples exceed the budget of {budget}; "
            f"raise the budget to force the search"
        )
    if d == 0:
        return None
    if jobs > 1 and total > _MESH_LIMIT:
        bounds = [(w * m) // jobs for w in range(jobs + 1)]
        args = [
            (p, d, sys_.c, sys_.ell, n, bounds[w], bounds[w + 1])
            for w in range(jobs)
            if bounds[w] < bounds[w + 1]
        ]
        idx = None
        with ProcessPoolExecutor(max_workers=len(args), mp_context=get_context("fork")) as pool:
            for res in pool.map(_scan_worker, args):
                if res is not None:
                    idx = res
                    break
    else:
        idx = _scan_range(sys_, n, 0, m)
    if idx is None:
        return None
    basis = _trace_zero_basis(n, p)
    mats = tuple(
        tuple(tuple(int(x) for x in row) for row in basis[a])
        for a in idx
    )
    witness = HomWitness(system=sys_, n=n, mats=mats)
    if not check_hom(sys_, witness.mats):
        raise RouteDisagreement("enumerator produced a tuple that check_hom rejects")
    return witness


# ---------------------------------------------------------------------------
# executable congruence facts


def is_nilpotent(mat, p: int) -> bool:
    """True iff the n x n matrix over F_p satisfies A^n = 0."""
    a = np.asarray(mat, dtype=np.int64) % p
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError("expected a nonempty square matrix")
    x = a
    for _ in range(a.shape[0] - 1):
        x = x @ a % p
    return not x.any()


def lemma_bb_exhaustive(n: int, p: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Check, over every pair (A, B), that A = AB - BA forces A nilpotent.

    Runs over all p^(2n^2) pairs of n x n matrices mod p; requires n < p
    (the statement is specific to that range) and the pair count to fit
    the budget.
    """
    _require_odd_prime(p)
    if not 1 <= n < p:
        raise ValueError(f"requires 1 <= n < p, got n={n}, p={p}")
    total = p ** (2 * n * n)
    if total > budget:
        raise Infeasible(f"{total} matrix pairs exceed the budget of {budget}")
    full = _full_basis(n, p)
    power = full
    for _ in range(n - 1):
        power = np.matmul(power, full) % p
    nilpotent = ~power.any(axis=(1, 2))
    for a in np.flatnonzero(~nilpotent):
        mat = full[a]
        comms = (np.matmul(mat, full) - np.matmul(full, mat)) % p
        if (comms == mat).all(axis=(1, 2)).any():
            return False
    return True


def _ident(n: int) -> list[list[int]]:
    return [[1 if r == s else 0 for s in range(n)] for r in range(n)]


def _mat_mul(a, b, mod: int) -> list[list[int]]:
    n = len(a)
    return [
        [sum(a[r][t] * b[t][s] for t in range(n)) % mod for s in range(n)]
        for r in range(n)
    ]


def _mat_add(a, b, mod: int) -> list[list[int]]:
    return [[(x + y) % mod for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_scale(k: int, a, mod: int) -> list[list[int]]:
    return [[k * x % mod for x in row] for row in a]


def _mat_pow(a, e: int, mod: int) -> list[list[int]]:
    out = _ident(len(a))
    base = [row[:] for row in a]
    while e:
        if e & 1:
            out = _mat_mul(out, base, mod)
        base = _mat_mul(base, base, mod)
        e >>= 1
    return out


def _inv_one_plus(x, p: int, k: int, level: int) -> list[list[int]]:
    """Inverse of X = 1 + N mod p^k, where N = 0 mod p^level.

    The Neumann series sum (-N)^t terminates once t * level >= k.
    """
    mod = p ** k
    n = len(x)
    nmat = _mat_add(x, _mat_scale(mod - 1, _ident(n), mod), mod)
    neg = _mat_scale(mod - 1, nmat, mod)
    acc = _ident(n)
    term = _ident(n)
    steps = -(-k // level)  # ceil
    for _ in range(steps):
        term = _mat_mul(term, neg, mod)
        acc = _mat_add(acc, term, mod)
    return acc


def commutator_congruence_check(p: int, i: int, j: int,
                                samples: int = 1000,
                                seed: int = DEFAULT_SEED,
                                n: int = 2) -> bool:
    """Randomized check of two congruences in the 1 + p^k matrix groups.

    For X = 1 + p^i A and Y = 1 + p^j B with random integer matrices A, B:

        [X, Y] = 1 + p^(i+j) [A, B]   mod p^(i+j+1)
        X^p    = 1 + p^(i+1) A        mod p^(i+2)

    Returns True iff both hold for every sample. The sampling is seeded,
    so runs are reproducible.
    """
    _require_odd_prime(p)
    if i < 1 or j < 1:
        raise ValueError(f"levels must satisfy i, j >= 1, got i={i}, j={j}")
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = random.Random(f"commcheck:{seed}:{p}:{i}:{j}:{n}")
    k1 = i + j + 1
    mod1 = p ** k1
    k2 = i + 2
    mod2 = p ** k2
    ident = _ident(n)
    for _ in range(samples):
        a = [[rng.randrange(mod1) for _ in range(n)] for _ in range(n)]
        b = [[rng.randrange(mod1) for _ in range(n)] for _ in range(n)]
        x = _mat_add(ident, _mat_scale(p ** i, a, mod1), mod1)
        y = _mat_add(ident, _mat_scale(p ** j, b, mod1), mod1)
        xi = _inv_one_plus(x, p, k1, i)
        yi = _inv_one_plus(y, p, k1, j)
        comm = _mat_mul(_mat_mul(xi, yi, mod1), _mat_mul(x, y, mod1), mod1)
        ab = _mat_add(
            _mat_mul(a, b, p),
            _mat_scale(p - 1, _mat_mul(b, a, p), p),
            p,
        )
        expected = _mat_add(ident, _mat_scale(p ** (i + j), ab, mod1), mod1)
        if comm != expected:
            return False
        x2 = _mat_add(ident, _mat_scale(p ** i, a, mod2), mod2)
        lhs = _mat_pow(x2, p, mod2)
        a_mod_p = [[v % p for v in row] for row in a]
        expected2 = _mat_add(ident, _mat_scale(p ** (i + 1), a_mod_p, mod2), mod2)
        if lhs != expected2:
            return False
    return True


def _det2(mat, mod: int) -> int:
    return (mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]) % mod


def _inv2(mat, mod: int) -> list[list[int]]:
    det = _det2(mat, mod)
    dinv = pow(det, -1, mod)
    return [
        [mat[1][1] * dinv % mod, (-mat[0][1]) * dinv % mod],
        [(-mat[1][0]) * dinv % mod, mat[0][0] * dinv % mod],
    ]


def triangular_lemma_checks(p: int, samples: int = 500,
                            seed: int = DEFAULT_SEED) -> bool:
    """Randomized check of the three triangular-form congruences mod p^2.

    With C = [[1,1],[0,1]]:

      * for X = 1 + pA and Y = C mod p, the commutator [X, Y] equals
        1 + p*[[-c, a-d-c], [0, c]] mod p^2, where A = [[a,b],[c,d]];
      * for h = 1 + [[pa, 1+pe], [pc, pf]] with p^3 dividing pc (part of
        the triangularized shape), h^p = 1 + p*[[0,1],[0,0]] mod p^2;
      * a determinant-one matrix of the form 1 + pN has tr(N) = 0 mod p
        (the construction works mod p^3 so the determinant can be pinned
        exactly while entries stay free).

    Samples whose intermediate matrices were not invertible would be
    regenerated silently, though the shapes used here are always
    invertible. Seeded and reproducible.
    """
    _require_odd_prime(p)
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = random.Random(f"trilemma:{seed}:{p}")
    mod2 = p * p
    mod3 = p ** 3
    ident = _ident(2)
    cmat = [[1, 1], [0, 1]]
    for _ in range(samples):
        # commutator congruence for X = 1 + pA against Y = C mod p
        while True:
            a = [[rng.randrange(mod2) for _ in range(2)] for _ in range(2)]
            r = [[rng.randrange(p) for _ in range(2)] for _ in range(2)]
            y = _mat_add(cmat, _mat_scale(p, r, mod2), mod2)
            if _det2(y, mod2) % p != 0:
                break
        x = _mat_add(ident, _mat_scale(p, a, mod2), mod2)
        comm = _mat_mul(
            _mat_mul(_inv2(x, mod2), _inv2(y, mod2), mod2),
            _mat_mul(x, y, mod2),
            mod2,
        )
        aa, dd, cc = a[0][0] % p, a[1][1] % p, a[1][0] % p
        inner = [[(-cc) % p, (aa - dd - cc) % p], [0, cc]]
        if comm != _mat_add(ident, _mat_scale(p, inner, mod2), mod2):
            return False
        # p-th power of the near-triangular shape; the triangularization
        # forces the lower-left entry of h - 1 to be 0 mod p^3, which at
        # mod p^2 precision makes it vanish outright
        nmat = [
            [p * rng.randrange(mod2) % mod2, (1 + p * rng.randrange(mod2)) % mod2],
            [0, p * rng.randrange(mod2) % mod2],
        ]
        h = _mat_add(ident, nmat, mod2)
        if _mat_pow(h, p, mod2) != _mat_add(ident, _mat_scale(p, [[0, 1], [0, 0]], mod2), mod2):
            return False
        # trace of N vanishes mod p once det(1 + pN) is pinned to 1
        while True:
            n0 = [[rng.randrange(mod2) for _ in range(2)] for _ in range(2)]
            x0 = _mat_add(ident, _mat_scale(p, n0, mod3), mod3)
            det0 = _det2(x0, mod3)
            if det0 % p != 0:
                break
        u = pow(det0, -1, mod3)
        xs = [[x0[0][0] * u % mod3, x0[0][1]], [x0[1][0] * u % mod3, x0[1][1]]]
        if _det2(xs, mod3) != 1:
            return False
        trace_n = ((xs[0][0] - 1) // p + (xs[1][1] - 1) // p) % p
        if trace_n != 0:
            return False
    return True
