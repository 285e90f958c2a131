"""Irreducible-degree profiles without equal-degree splitting.

The sampling experiments only need how many irreducible factors of each
degree a polynomial has (distinct and with multiplicity), or the largest
factor degree; none of that requires separating same-degree factors.  This
module computes those profiles via squarefree decomposition plus
distinct-degree factorization, with a baby-step/giant-step interval variant
for large degrees, and is cross-checked against `polynomials.factorize`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._kernels import (
    ModulusKernel,
    np_divmod,
    np_gcd,
    np_monic,
    np_trim,
)
from .polynomials import Polynomial, factorize, squarefree_decomposition
from .stats import FactorStats


@dataclass
class DegreeProfile:
    distinct: dict[int, int]
    with_mult: dict[int, int]
    x_mult: int
    degree: int
    complete: bool
    remaining_degree: int  # unresolved degree mass (with multiplicity)

    def largest(self) -> int:
        if not self.complete:
            raise ValueError("largest degree undefined on a truncated profile")
        best = 1 if self.x_mult else 0
        if self.distinct:
            best = max(best, max(self.distinct))
        return best

    def total_mult(self) -> int:
        if not self.complete:
            raise ValueError("total count undefined on a truncated profile")
        return sum(self.with_mult.values())

    def stats(self, N: int) -> FactorStats:
        nd = tuple(self.distinct.get(i, 0) for i in range(1, N + 1))
        nm = tuple(self.with_mult.get(i, 0) for i in range(1, N + 1))
        lnd = Fraction(self.largest(), self.degree) if self.degree > 0 else Fraction(0)
        return FactorStats(nd, nm, lnd, self.total_mult(), self.x_mult)

    def mass_identity_holds(self) -> bool:
        """sum d*N'_d + x_mult + remaining == deg f."""
        used = sum(d * c for d, c in self.with_mult.items())
        return used + self.x_mult + self.remaining_degree == self.degree


def profile_from_factorization(f: Polynomial, seed: int = 0) -> DegreeProfile:
    """Reference route via complete factorization (small inputs, oracles)."""
    fac = factorize(f, seed)
    distinct: dict[int, int] = {}
    with_mult: dict[int, int] = {}
    x_mult = 0
    for g, m in fac.factors:
        if g.degree == 1 and g.c == (0, 1):
            x_mult = m
            continue
        distinct[g.degree] = distinct.get(g.degree, 0) + 1
        with_mult[g.degree] = with_mult.get(g.degree, 0) + m
    return DegreeProfile(distinct, with_mult, x_mult, f.degree, True, 0)


def degree_profile(f: Polynomial, max_degree: int | None = None) -> DegreeProfile:
    """Degree profile of f; the factor x is tracked separately, never counted.

    max_degree=None resolves everything; otherwise only degrees up to
    max_degree are resolved and the leftover degree mass (counted with
    multiplicity) is reported as remaining_degree.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no degree profile")
    if f.ctx.e != 1:
        prof = profile_from_factorization(f)
        return _truncate(prof, max_degree) if max_degree is not None else prof
    return _profile_prime(f, max_degree)


def _truncate(prof: DegreeProfile, N: int) -> DegreeProfile:
    rem = sum(d * c for d, c in prof.with_mult.items() if d > N)
    return DegreeProfile(
        {d: c for d, c in prof.distinct.items() if d <= N},
        {d: c for d, c in prof.with_mult.items() if d <= N},
        prof.x_mult,
        prof.degree,
        rem == 0,
        rem,
    )


def _profile_prime(f: Polynomial, max_degree: int | None) -> DegreeProfile:
    p = f.ctx.p
    coeffs = list(f.c)
    x_mult = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        x_mult += 1
    distinct: dict[int, int] = {}
    with_mult: dict[int, int] = {}
    remaining = 0
    if len(coeffs) >= 2:
        body = Polynomial(f.ctx, coeffs).monic()
        for part, mult in squarefree_decomposition(body):
            v = np_monic(np.asarray(part.c, dtype=np.int64), p)
            counts, rem = _DDFEngine(p, v).run(max_degree)
            for d, cnt in counts.items():
                distinct[d] = distinct.get(d, 0) + cnt
                with_mult[d] = with_mult.get(d, 0) + cnt * mult
            remaining += rem * mult
    return DegreeProfile(
        distinct, with_mult, x_mult, f.degree, remaining == 0, remaining
    )


def _h_minus_x(h: list[int] | np.ndarray, p: int) -> np.ndarray:
    arr = np.zeros(max(len(h), 2), dtype=np.int64)
    arr[: len(h)] = h
    arr[1] = (arr[1] - 1) % p
    return np_trim(arr)


def _sub_lists(a: list[int], b: list[int], p: int) -> np.ndarray:
    n = max(len(a), len(b), 1)
    arr = np.zeros(n, dtype=np.int64)
    arr[: len(a)] = a
    bb = np.zeros(n, dtype=np.int64)
    bb[: len(b)] = b
    return np_trim((arr - bb) % p)


class _DDFEngine:
    """Distinct-degree counting for one monic squarefree polynomial over F_p."""

    INTERVAL_MIN_DEGREE = 72  # below this, the sequential chain is cheaper

    def __init__(self, p: int, v: np.ndarray):
        self.p = p
        self.v = np_trim(v)

    def run(self, upto: int | None) -> tuple[dict[int, int], int]:
        """({degree: count}, unresolved degree mass)."""
        degv = len(self.v) - 1
        if degv <= 0:
            return {}, 0
        if degv == 1:
            return ({1: 1}, 0) if (upto is None or upto >= 1) else ({}, 1)
        if upto is None and degv >= self.INTERVAL_MIN_DEGREE:
            return self._interval()
        return self._sequential(upto)

    def _sequential(self, upto: int | None) -> tuple[dict[int, int], int]:
        p = self.p
        v = self.v
        out: dict[int, int] = {}
        mk = ModulusKernel(p, v.tolist())
        h = mk.powmod([0, 1], p)  # x^(p^d) mod v, d = 1
        d = 1
        while True:
            degv = len(v) - 1
            if degv == 0:
                return out, 0
            if degv < 2 * d:
                # every remaining factor has degree >= d: v is irreducible
                if upto is not None and degv > upto:
                    return out, degv
                out[degv] = out.get(degv, 0) + 1
                return out, 0
            if upto is not None and d > upto:
                return out, degv
            g = np_gcd(v, _h_minus_x(h, p), p)
            if len(g) > 1:
                out[d] = out.get(d, 0) + (len(g) - 1) // d
                v, _ = np_divmod(v, g, p)
                v = np_monic(v, p)
                if len(v) - 1 == 0:
                    return out, 0
                mk = ModulusKernel(p, v.tolist())
                h = mk.rem(h)
            h = mk.powmod(h, p)
            d += 1

    def _powers(self, mk: ModulusKernel, h: list[int], t: int) -> list[list[int]]:
        powers = [[1], list(h)]
        for _ in range(2, t + 1):
            powers.append(mk.mulmod(powers[-1], h))
        return powers

    def _interval(self) -> tuple[dict[int, int], int]:
        p = self.p
        v0 = self.v
        n = len(v0) - 1
        out: dict[int, int] = {}
        mk = ModulusKernel(p, v0.tolist())
        t = math.isqrt(n) + 1
        m = math.isqrt(max(n // 2, 1)) + 1
        h1 = mk.powmod([0, 1], p)
        h1_powers = self._powers(mk, h1, t)
        # baby steps: h_list[j] = x^(p^j) mod v0
        h_list: list[list[int]] = [[0, 1], h1]
        for _ in range(2, m + 1):
            h_list.append(mk.compose(h_list[-1], h1_powers))

        v = v0
        # first interval: degrees 1..m one by one (divisor collisions within
        # an interval are only possible here, so resolve it sequentially)
        for d in range(1, m + 1):
            degv = len(v) - 1
            if degv == 0:
                return out, 0
            if degv < 2 * d:
                out[degv] = out.get(degv, 0) + 1
                return out, 0
            g = np_gcd(v, _h_minus_x(h_list[d], p), p)
            if len(g) > 1:
                out[d] = out.get(d, 0) + (len(g) - 1) // d
                v = np_monic(np_divmod(v, g, p)[0], p)

        # giant steps: H = x^(p^(km)), interval k covers ((k-1)m, km]
        hm_powers = self._powers(mk, h_list[m], t)
        H = h_list[m]
        k = 2
        while True:
            degv = len(v) - 1
            if degv == 0:
                return out, 0
            if degv < 2 * ((k - 1) * m + 1):
                out[degv] = out.get(degv, 0) + 1
                return out, 0
            H = mk.compose(H, hm_powers)
            acc = [1]
            for j in range(m):
                acc = mk.mulmod(acc, _sub_lists(H, h_list[j], p).tolist())
            g = np_gcd(v, np.asarray(acc, dtype=np.int64), p)
            if len(g) > 1:
                gg = g
                for j in range(m - 1, -1, -1):  # degrees km-j ascending
                    if len(gg) - 1 <= 0:
                        break
                    d = k * m - j
                    u = np_gcd(gg, _sub_lists(H, h_list[j], p), p)
                    if len(u) > 1:
                        out[d] = out.get(d, 0) + (len(u) - 1) // d
                        gg = np_monic(np_divmod(gg, u, p)[0], p)
                v = np_monic(np_divmod(v, g, p)[0], p)
            k += 1
