"""Counting torsors over Q for constant Z/2 and for μ_m, m prime, by height.

Quadratic classes (Z/2-torsors) are squarefree d with height the absolute
discriminant of Q(√d). A μ_m-torsor class is an element of Q*/Q*^m,
written as sign · ∏ p^{e_p} with 1 ≤ e_p < m (the sign only matters for
m = 2); its height is the product of the primes p ∤ m in its support.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import InsufficientSamples, UnsupportedModulus, ValidationError

SUPPORTED_MODULI = (2, 3, 5)


# sieves ------------------------------------------------------------------------

def squarefree_sieve(n: int) -> np.ndarray:
    """Boolean array ``sf`` with ``sf[k]`` true iff k is squarefree (``sf[0]`` false)."""
    sf = np.ones(n + 1, dtype=bool)
    sf[0] = False
    p = 2
    while p * p <= n:
        sf[p * p::p * p] = False
        p += 1
    return sf


def prime_sieve(n: int) -> np.ndarray:
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if is_p[p]:
            is_p[p * p::p] = False
    return np.flatnonzero(is_p)


def smallest_prime_factors(n: int) -> np.ndarray:
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in prime_sieve(n):
        block = spf[p::p]
        block[block == 0] = p
    return spf


def factor_with(spf: np.ndarray, k: int) -> list[int]:
    """Distinct prime factors of k using a smallest-prime-factor table."""
    out = []
    while k > 1:
        p = int(spf[k])
        out.append(p)
        while k % p == 0:
            k //= p
    return out


def is_squarefree(k: int) -> bool:
    """Trial division."""
    k = abs(k)
    if k == 0:
        return False
    d = 2
    while d * d <= k:
        if k % (d * d) == 0:
            return False
        if k % d == 0:
            k //= d
        d += 1
    return True


@dataclass(frozen=True)
class CountResult:
    bound: int
    total: int
    connected: int

    @property
    def disconnected(self) -> int:
        return self.total - self.connected


def _as_bound(B) -> int:
    if isinstance(B, str):
        B = float(B)
    if isinstance(B, float):
        if not math.isfinite(B):
            raise ValidationError("bound must be finite")
        return math.floor(B)
    return math.floor(Fraction(B))


# quadratic classes ----------------------------------------------------------------

def quadratic_height(d: int) -> int:
    """|disc Q(√d)|: |d| if d ≡ 1 mod 4, else 4|d|."""
    return abs(d) if d % 4 == 1 else 4 * abs(d)


@dataclass(frozen=True)
class QuadraticClass:
    d: int

    @property
    def height(self) -> int:
        return quadratic_height(self.d)

    @property
    def connected(self) -> bool:
        return self.d != 1


def iter_quadratic_classes(B) -> Iterator[QuadraticClass]:
    """Classes of height ≤ B, ordered by (height, d)."""
    B = _as_bound(B)
    if B < 1:
        return
    sf = squarefree_sieve(B)
    found = []
    for n in np.flatnonzero(sf):
        n = int(n)
        for d in (n, -n):
            if quadratic_height(d) <= B:
                found.append(QuadraticClass(d))
    found.sort(key=lambda c: (c.height, c.d))
    yield from found


def quadratic_counts(bounds: Sequence) -> list[CountResult]:
    """Counts at each bound from a single sieve up to the largest.

    An odd squarefree n carries one sign of height n and one of height 4n;
    an even one has height 4n for both signs.
    """
    bs = [_as_bound(b) for b in bounds]
    top = max(bs + [1])
    sf = squarefree_sieve(top)
    idx = np.arange(top + 1)
    odd = np.cumsum(sf & (idx % 2 == 1))
    even = np.cumsum(sf & (idx % 2 == 0))
    out = []
    for b in bs:
        if b < 1:
            out.append(CountResult(b, 0, 0))
            continue
        total = int(odd[b] + odd[b // 4] + 2 * even[b // 4])
        out.append(CountResult(b, total, total - 1))
    return out


def count_quadratic(B) -> CountResult:
    return quadratic_counts([B])[0]


# Kummer classes --------------------------------------------------------------------

@dataclass(frozen=True)
class KummerClass:
    m: int
    sign: int
    exponents: tuple        # ((p, e_p), ...) with 1 <= e_p < m, p increasing

    @property
    def rep(self) -> int:
        out = self.sign
        for p, e in self.exponents:
            out *= p ** e
        return out

    @property
    def height(self) -> int:
        return math.prod(p for p, _ in self.exponents if self.m % p)

    @property
    def is_trivial(self) -> bool:
        return self.sign == 1 and not self.exponents

    @property
    def connected(self) -> bool:
        # x^m - rep is irreducible over Q for m prime iff rep is not an m-th power
        return not self.is_trivial

    @property
    def ab(self) -> tuple[int, int]:
        """(a, b) with class a·b² (meaningful for m = 3)."""
        a = math.prod(p for p, e in self.exponents if e == 1)
        b = math.prod(p for p, e in self.exponents if e == 2)
        return a, b


def _check_modulus(m: int):
    if m not in SUPPORTED_MODULI:
        raise UnsupportedModulus(f"m = {m} not in {SUPPORTED_MODULI}")


def iter_kummer_classes(m: int, B) -> Iterator[KummerClass]:
    """Classes of height ≤ B, ordered by (height, rep)."""
    _check_modulus(m)
    B = _as_bound(B)
    if B < 1:
        return
    sf = squarefree_sieve(B)
    spf = smallest_prime_factors(max(B, m))
    signs = (1, -1) if m == 2 else (1,)
    found = []
    for n in np.flatnonzero(sf):
        n = int(n)
        if math.gcd(n, m) != 1:
            continue
        primes = factor_with(spf, n)
        for exps in itertools.product(range(1, m), repeat=len(primes)):
            for em in range(m):
                pairs = list(zip(primes, exps))
                if em:
                    pairs.append((m, em))
                pairs.sort()
                for s in signs:
                    found.append(KummerClass(m, s, tuple(pairs)))
    found.sort(key=lambda c: (c.height, abs(c.rep), c.rep))
    yield from found


def kummer_weights(m: int, top: int) -> np.ndarray:
    """w[n] = (m−1)^ω(n) for squarefree n coprime to m, else 0."""
    w = np.ones(top + 1, dtype=np.int64)
    w[0] = 0
    if m - 1 != 1:
        for p in prime_sieve(top):
            w[p::p] *= (m - 1)
    w[m::m] = 0
    w[~squarefree_sieve(top)] = 0
    return w


def kummer_counts(m: int, bounds: Sequence) -> list[CountResult]:
    """Counts at each bound: m·(2 if m = 2)·Σ_{n ≤ B} w[n]; only the trivial class is disconnected."""
    _check_modulus(m)
    bs = [_as_bound(b) for b in bounds]
    top = max(bs + [1])
    cum = np.cumsum(kummer_weights(m, top))
    factor = m * (2 if m == 2 else 1)
    out = []
    for b in bs:
        if b < 1:
            out.append(CountResult(b, 0, 0))
            continue
        total = factor * int(cum[b])
        out.append(CountResult(b, total, total - 1))
    return out


def count_kummer(m: int, B) -> CountResult:
    return kummer_counts(m, [B])[0]


def decade_bounds(B) -> list[int]:
    """Checkpoints 10, 100, ... below B, followed by B itself."""
    B = _as_bound(B)
    out = []
    k = 10
    while k < B:
        out.append(k)
        k *= 10
    out.append(B)
    return out


# growth fitting -------------------------------------------------------------------

@dataclass(frozen=True)
class GrowthEstimate:
    alpha: float
    beta: float
    const: float
    residuals: tuple
    samples: tuple = field(repr=False)

    def report(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "const": self.const,
                "residuals": list(self.residuals),
                "samples": [[b, n] for b, n in self.samples]}


def fit_growth(samples: Sequence[tuple]) -> GrowthEstimate:
    """Least squares for log N = α log B + β log log B + const."""
    pts = [(float(b), float(n)) for b, n in samples]
    if len(pts) < 4:
        raise InsufficientSamples(f"need at least 4 samples, got {len(pts)}")
    Bs = np.array([b for b, _ in pts])
    Ns = np.array([n for _, n in pts])
    if np.any(np.diff(Bs) <= 0):
        raise InsufficientSamples("bounds must be strictly increasing")
    if Bs[0] <= math.e:
        raise InsufficientSamples("bounds must exceed e so that log log B is positive")
    if Bs[-1] / Bs[0] < 100:
        raise InsufficientSamples("samples must span at least two decades")
    if np.any(Ns <= 0):
        raise InsufficientSamples("counts must be positive")
    X = np.column_stack([np.log(Bs), np.log(np.log(Bs)), np.ones_like(Bs)])
    y = np.log(Ns)
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    res = y - X @ coef
    return GrowthEstimate(float(coef[0]), float(coef[1]), float(coef[2]),
                          tuple(float(r) for r in res), tuple(pts))
