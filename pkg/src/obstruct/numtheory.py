"""Exact integer number theory for the surgery obstructions.

Everything here is computed with exact integer (or ``Fraction``) arithmetic:
deterministic factorization, Legendre symbols and square roots modulo n, the
quadratic character ``chi_8m`` on units mod 8m, and membership plus density
computations for two density-zero sets of integers:

* ``S``  -- n such that every odd prime divisor of n^2 + 1 is 1 mod 8;
* ``Sprime`` -- n such that no prime divisor of n - 1 is 3 mod 4, or no
  prime divisor of n + 1 is 3 mod 4 (vacuous divisor sets qualify).

``Sk(k)`` and ``Tk(k)`` are the periodic supersets cut out by the first k
primes congruent to 5 mod 8 (n^2 != -1 mod p_i) and to 3 mod 4 (p_i does not
divide n) respectively; their exact densities are the products returned by
:func:`product_bound`.

Inputs are restricted to signed 64-bit range.  All functions are pure; the
prime sieve and the chi_8m table are memoized but immutable once built, so
concurrent use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

MAX_INPUT = 2**63 - 1

# Trial division handles all factors up to this bound; anything larger goes
# through Miller-Rabin / Pollard rho.
_TRIAL_LIMIT = 1000

# Candidate primes p = a, a + 8m, ... for chi_8m are searched up to this cap
# by default.  Dirichlet guarantees one exists but gives no effective bound.
DEFAULT_PRIME_SEARCH_CAP = 10**7


class PrimeSearchCapExceeded(RuntimeError):
    """No prime found in the arithmetic progression below the search cap."""


def _check_width(n: int, what: str = "argument") -> None:
    if abs(n) > MAX_INPUT:
        raise OverflowError(f"{what} {n} exceeds the supported 64-bit range")


@lru_cache(maxsize=None)
def _sieve_primes(limit: int = 10**4) -> tuple[int, ...]:
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return tuple(i for i, f in enumerate(flags) if f)


# Deterministic Miller-Rabin witnesses, sufficient for all n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for 64-bit integers."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of odd composite n (Brent's cycle variant).

    Deterministic: the polynomial offsets c = 1, 2, ... are tried in order.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, 10**6):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise RuntimeError(f"pollard rho failed on {n}")  # pragma: no cover


@dataclass(frozen=True)
class Factorization:
    """A complete prime factorization: value == prod(p**e)."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prod = 1
        prev = 1
        for p, e in self.factors:
            if p <= prev or e < 1:
                raise ValueError("factors must be ascending primes with e >= 1")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prod *= p**e
            prev = p
        if prod != self.value:
            raise ValueError("factor list does not multiply to the value")

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


@lru_cache(maxsize=65536)
def factor(n: int) -> Factorization:
    """Complete prime factorization of n >= 1.

    Trial division by primes below 1000, then deterministic Miller-Rabin and
    Pollard rho on whatever is left.  Results are immutable and memoized.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}: need n >= 1")
    _check_width(n)
    found: dict[int, int] = {}
    m = n
    for p in _sieve_primes():
        if p > _TRIAL_LIMIT or p * p > m:
            break
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    if 1 < m <= _TRIAL_LIMIT * _TRIAL_LIMIT:
        # no factor <= _TRIAL_LIMIT remains, so m is prime
        found[m] = found.get(m, 0) + 1
        m = 1
    stack = [m] if m > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return Factorization(n, tuple(sorted(found.items())))


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p: 0, +1 or -1."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _sqrt_mod_prime(a: int, p: int) -> int | None:
    """A square root of a modulo the odd prime p, or None (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks with the smallest quadratic non-residue as generator.
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _sqrt_mod_odd_prime_power(a: int, p: int, e: int) -> int | None:
    """A square root of a modulo p**e (p odd), or None."""
    pe = p**e
    a %= pe
    if a == 0:
        return pow(p, (e + 1) // 2, pe) % pe
    t = 0
    while a % p == 0:
        a //= p
        t += 1
    if t % 2 == 1:
        return None
    r = _sqrt_mod_prime(a % p, p)
    if r is None:
        return None
    # Hensel: lift r from mod p to mod p^(e-t)
    pk = p
    while pk < p ** (e - t):
        pk2 = pk * pk if pk * pk < p ** (e - t) else p ** (e - t)
        inv = pow(2 * r, -1, pk2)
        r = (r - (r * r - a) * inv) % pk2
        pk = pk2
    return r * p ** (t // 2) % pe


def _sqrt_mod_two_power(a: int, k: int) -> int | None:
    """A square root of a modulo 2**k, or None."""
    mod = 1 << k
    a %= mod
    if a == 0:
        return (1 << ((k + 1) // 2)) % mod
    t = 0
    while a % 2 == 0:
        a //= 2
        t += 1
    if t % 2 == 1:
        return None
    j = k - t  # a is an odd square mod 2^j iff the usual 2-adic criteria hold
    if j == 1:
        r = 1
    elif j == 2:
        if a % 4 != 1:
            return None
        r = 1
    else:
        if a % 8 != 1:
            return None
        r = 1
        for i in range(3, j):
            if (r * r - a) % (1 << (i + 1)) != 0:
                r += 1 << (i - 1)
    return r * (1 << (t // 2)) % mod


def square_root_mod(a: int, n: int) -> int | None:
    """A witness x in [0, n) with x^2 = a (mod n), or None if a is not a
    square modulo n.

    Decides via the factorization of n, Legendre symbols lifted through odd
    prime powers, the standard 2-adic criteria, and a CRT combination; the
    witness is deterministic.
    """
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    _check_width(n)
    _check_width(a)
    a %= n
    if n == 1:
        return 0
    x, mod = 0, 1
    for p, e in factor(n).factors:
        pe = p**e
        r = _sqrt_mod_two_power(a, e) if p == 2 else _sqrt_mod_odd_prime_power(a, p, e)
        if r is None:
            return None
        # CRT: combine x mod `mod` with r mod pe
        inv = pow(mod, -1, pe)
        x = x + mod * ((r - x) * inv % pe)
        mod *= pe
    x %= n
    return min(x, (n - x) % n)


def is_square_mod(a: int, n: int) -> bool:
    """True iff a is a perfect square modulo n >= 1."""
    return square_root_mod(a, n) is not None


@lru_cache(maxsize=None)
def _chi_8m_cached(a: int, m: int, cap: int) -> int:
    mod = 8 * m
    p = a
    while p <= cap:
        if p > 1 and (2 * m) % p != 0 and is_prime(p):
            return legendre(2 * m % p, p)
        p += mod
    raise PrimeSearchCapExceeded(
        f"no prime congruent to {a} mod {mod} found below {cap}"
    )


def chi_8m(a: int, m: int, cap: int = DEFAULT_PRIME_SEARCH_CAP) -> int:
    """The real character a -> (2m / p) on units mod 8m, for odd m >= 1.

    Here p is the smallest prime congruent to a mod 8m (not dividing 2m); the
    value does not depend on which such prime is used, by quadratic
    reciprocity, which is what makes this a well-defined character.
    """
    if m < 1 or m % 2 == 0:
        raise ValueError(f"m must be an odd positive integer, got {m}")
    _check_width(a)
    a %= 8 * m
    if gcd(a, 8 * m) != 1:
        raise ValueError(f"{a} is not a unit mod {8 * m}")
    return _chi_8m_cached(a, m, cap)


def _no_prime_divisor_in_class(d: int, residue: int, modulus: int) -> bool:
    """True iff no prime divisor of d >= 1 is congruent to residue mod modulus.

    Early-exits as soon as a bad prime turns up, without insisting on a full
    factorization of what remains.
    """
    while d % 2 == 0:
        d //= 2  # 2 is neither 3 mod 4 nor 5 mod 8, the only classes used
    for p in _sieve_primes():
        if p == 2:
            continue
        if p > _TRIAL_LIMIT or p * p > d:
            break
        if d % p == 0:
            if p % modulus == residue:
                return False
            while d % p == 0:
                d //= p
    stack = [d] if d > 1 else []
    while stack:
        c = stack.pop()
        if is_prime(c) or c <= _TRIAL_LIMIT * _TRIAL_LIMIT:
            # anything left has no factor below _TRIAL_LIMIT, so c is prime
            if c % modulus == residue:
                return False
            continue
        f = _pollard_rho(c)
        stack.append(f)
        stack.append(c // f)
    return True


def in_S(n: int) -> bool:
    """True iff every odd prime divisor of n^2 + 1 is congruent to 1 mod 8.

    Vacuously true when n^2 + 1 has no odd prime divisor (n = 1).
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if n > isqrt(MAX_INPUT - 1):
        raise OverflowError(f"n^2 + 1 exceeds the supported range for n = {n}")
    m = n * n + 1
    if m % 2 == 0:
        m //= 2  # n odd gives n^2 + 1 = 2 mod 4, a single factor of 2
    # Odd prime divisors of n^2 + 1 are all 1 mod 4, so membership fails
    # exactly when some divisor is 5 mod 8.  A cofactor of 1-mod-4 primes
    # that is itself 5 mod 8 must contain one, so we can stop early there.
    for p in _sieve_primes():
        if p > _TRIAL_LIMIT or p * p > m:
            break
        if p % 4 == 1 and m % p == 0:
            if p % 8 == 5:
                return False
            while m % p == 0:
                m //= p
    stack = [m] if m > 1 else []
    while stack:
        c = stack.pop()
        if c % 8 == 5:
            return False  # some prime divisor of c must itself be 5 mod 8
        if is_prime(c) or c <= _TRIAL_LIMIT * _TRIAL_LIMIT:
            if c % 8 != 1:
                return False
            continue
        f = _pollard_rho(c)
        stack.append(f)
        stack.append(c // f)
    return True


def in_Sprime(n: int) -> bool:
    """True iff no prime divisor of n - 1 is 3 mod 4, or none of n + 1 is.

    Empty divisor sets (n - 1 = 1) count as satisfying the condition.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    _check_width(n + 1)
    return _no_prime_divisor_in_class(n - 1, 3, 4) or _no_prime_divisor_in_class(
        n + 1, 3, 4
    )


@lru_cache(maxsize=None)
def primes_in_class(k: int, residue: int, modulus: int) -> tuple[int, ...]:
    """The first k primes congruent to residue mod modulus."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = []
    p = 1
    while len(out) < k:
        p += 1
        if p % modulus == residue and is_prime(p):
            out.append(p)
    return tuple(out)


@dataclass(frozen=True)
class ResidueSet:
    """One of the residue-condition sets S, Sprime, Sk(k) or Tk(k).

    ``Sk(k)`` keeps n with n^2 != -1 mod p for each of the first k primes
    p = 5 mod 8; ``Tk(k)`` keeps n not divisible by any of the first k primes
    p = 3 mod 4.  Both are periodic, with period the product of their primes.
    """

    kind: str
    k: int | None = None

    def __post_init__(self) -> None:
        if self.kind in ("S", "Sprime"):
            if self.k is not None:
                raise ValueError(f"{self.kind} takes no parameter")
        elif self.kind in ("Sk", "Tk"):
            if self.k is None or self.k < 0:
                raise ValueError(f"{self.kind} needs k >= 0")
        else:
            raise ValueError(f"unknown residue set kind {self.kind!r}")

    @staticmethod
    def parse(token: str) -> "ResidueSet":
        """Parse a CLI token: ``S``, ``Sprime``, ``Sk:k`` or ``Tk:k``."""
        if token in ("S", "Sprime"):
            return ResidueSet(token)
        for kind in ("Sk", "Tk"):
            if token.startswith(kind + ":"):
                return ResidueSet(kind, int(token[len(kind) + 1 :]))
        raise ValueError(f"cannot parse residue set {token!r}")

    def name(self) -> str:
        if self.kind in ("S", "Sprime"):
            return self.kind
        return f"{self.kind}:{self.k}"

    def primes(self) -> tuple[int, ...]:
        if self.kind == "Sk":
            return primes_in_class(self.k, 5, 8)
        if self.kind == "Tk":
            return primes_in_class(self.k, 3, 4)
        raise ValueError(f"{self.kind} has no defining prime list")

    def contains(self, n: int) -> bool:
        if n < 1:
            raise ValueError(f"need n >= 1, got {n}")
        if self.kind == "S":
            return in_S(n)
        if self.kind == "Sprime":
            return n >= 2 and in_Sprime(n)
        if self.kind == "Sk":
            return all(n * n % p != p - 1 for p in self.primes())
        return all(n % p != 0 for p in self.primes())

    def period(self) -> int:
        """Period of the membership pattern (Sk/Tk only)."""
        prod = 1
        for p in self.primes():
            prod *= p
        return prod


def density(rset: ResidueSet, limit: int) -> Fraction:
    """Exact density |{1..limit} intersect rset| / limit."""
    if limit < 1:
        raise ValueError(f"need limit >= 1, got {limit}")
    count = sum(1 for n in range(1, limit + 1) if rset.contains(n))
    return Fraction(count, limit)


def product_bound(kind: str, k: int) -> Fraction:
    """The exact density of Sk(k) or Tk(k) as a product over its primes.

    Sk: prod (1 - 2/p) over the first k primes p = 5 mod 8 (-1 has exactly
    two square roots mod each).  Tk: prod (1 - 1/p) over the first k primes
    p = 3 mod 4.
    """
    if kind not in ("Sk", "Tk"):
        raise ValueError(f"product bound is defined for Sk/Tk, not {kind!r}")
    excluded = 2 if kind == "Sk" else 1
    out = Fraction(1)
    for p in ResidueSet(kind, k).primes():
        out *= Fraction(p - excluded, p)
    return out
