"""Modular arithmetic in the order-p subgroup of (Z/qZ)*.

Primality testing, enumeration of the primes q with q = 1 mod p and
q != 1 mod p^2, primitive roots, p-th-power residue tests, and the small
discrete logarithms that define linking numbers between primes.

All functions are pure and PrimeRecord values are immutable, so everything
here may be called concurrently without restriction.
"""

from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "PrimeRecord",
    "eligible_primes",
    "is_prime",
    "iter_eligible_q",
    "linking_number",
    "make_prime_record",
    "pth_power_residue",
    "smallest_primitive_root",
]

# Miller-Rabin witness set proven deterministic for every n < 2^64.
_MR_BASES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MAX_INPUT = 2**64 - 1


def is_prime(n: int) -> bool:
    """Deterministic primality test for 2 <= n < 2^64.

    Raises ValueError outside that range; inside it the answer carries no
    probabilistic error.
    """
    if not 2 <= n <= _MAX_INPUT:
        raise ValueError(f"is_prime expects 2 <= n < 2**64, got {n}")
    for small in _SMALL_PRIMES:
        if n == small:
            return True
        if n % small == 0:
            return False
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _require_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


def _prime_factors(n: int) -> list[int]:
    """Distinct prime factors by trial division; adequate for q - 1 at desk scale."""
    out = []
    for f in (2, 3):
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
    f = 5
    while f * f <= n:
        for step in (f, f + 2):
            if n % step == 0:
                out.append(step)
                while n % step == 0:
                    n //= step
        f += 6
    if n > 1:
        out.append(n)
    return out


def smallest_primitive_root(q: int) -> int:
    """Least g >= 2 of multiplicative order q - 1 mod the prime q.

    Primitivity is certified by checking g^((q-1)/r) != 1 for every prime
    r dividing q - 1, never by trusting a table.
    """
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if q == 2:
        return 1
    phi = q - 1
    factors = _prime_factors(phi)
    for g in range(2, q):
        if all(pow(g, phi // r, q) != 1 for r in factors):
            return g
    raise ArithmeticError(f"no primitive root below {q}; impossible for prime q")


@dataclass(frozen=True)
class PrimeRecord:
    """A prime q = 1 mod p with q != 1 mod p^2, plus its derived constants.

    c is ((q-1)/p) mod p and is forced nonzero by the p^2 condition.
    g is the chosen primitive root mod q and zeta = g^((q-1)/p) is the
    resulting primitive p-th root of unity mod q.
    """

    q: int
    p: int
    c: int
    g: int
    zeta: int


def make_prime_record(q: int, p: int, root: int | None = None) -> PrimeRecord:
    """Validate that q is eligible for the modulus p and package its constants.

    `root` overrides the default smallest-primitive-root policy; the
    override must itself be a primitive root mod q. Rejections name the
    offending value.
    """
    _require_odd_prime(p)
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if q % p != 1:
        raise ValueError(f"{q} is not congruent to 1 mod {p}")
    if (q - 1) % (p * p) == 0:
        raise ValueError(f"{q} is congruent to 1 mod {p}**2")
    k = (q - 1) // p
    if root is None:
        g = smallest_primitive_root(q)
    else:
        g = int(root)
        if not 2 <= g < q or any(pow(g, (q - 1) // r, q) == 1 for r in _prime_factors(q - 1)):
            raise ValueError(f"{root} is not a primitive root mod {q}")
    return PrimeRecord(q=q, p=p, c=k % p, g=g, zeta=pow(g, k, q))


def iter_eligible_q(p: int, bound: int) -> Iterator[int]:
    """Yield the eligible primes q <= bound in ascending order, as plain ints."""
    _require_odd_prime(p)
    if bound < 0:
        raise ValueError(f"bound must be nonnegative, got {bound}")
    for q in range(p + 1, bound + 1, p):
        if (q - 1) // p % p == 0:
            continue
        if is_prime(q):
            yield q


def eligible_primes(p: int, bound: int) -> list[PrimeRecord]:
    """All PrimeRecords with q <= bound, ascending, constants populated."""
    return [make_prime_record(q, p) for q in iter_eligible_q(p, bound)]


def linking_number(qi: Union[int, PrimeRecord], qj: PrimeRecord, p: int) -> int:
    """The unique l in F_p with qi^((qj.q-1)/p) = zeta_j^(-l) mod qj.q.

    qi may be a PrimeRecord or any integer not divisible by qj.q. The
    discrete log is found by a direct scan over the p exponents of the
    order-p subgroup, which is trivially auditable and fast for small p.
    """
    a = qi.q if isinstance(qi, PrimeRecord) else int(qi)
    if p != qj.p:
        raise ValueError(f"modulus mismatch: p={p} but record carries p={qj.p}")
    q = qj.q
    a %= q
    if a == 0:
        raise ValueError(f"{qi} is divisible by {q}; linking number undefined")
    target = pow(a, (q - 1) // p, q)
    z = 1
    for e in range(p):
        if z == target:
            return (-e) % p
        z = z * qj.zeta % q
    raise ArithmeticError(f"{target} lies outside the order-{p} subgroup mod {q}")


def pth_power_residue(a: Union[int, PrimeRecord], qj: PrimeRecord, p: int) -> bool:
    """True iff a is a p-th power mod qj.q, i.e. a^((q-1)/p) = 1 mod q.

    Equivalent to linking_number(a, qj, p) == 0, but computed with a single
    modular power and no discrete log.
    """
    v = a.q if isinstance(a, PrimeRecord) else int(a)
    if p != qj.p:
        raise ValueError(f"modulus mismatch: p={p} but record carries p={qj.p}")
    v %= qj.q
    if v == 0:
        raise ValueError(f"{a} is divisible by {qj.q}; residue test undefined")
    return pow(v, (qj.q - 1) // p, qj.q) == 1
