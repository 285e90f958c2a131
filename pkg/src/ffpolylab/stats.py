"""Per-polynomial factor statistics and mergeable empirical distributions.

The factor x is never counted in the degree-1 slots; its multiplicity is
tracked separately.  Empirical distributions merge associatively, so
per-worker accumulation followed by a fold reproduces a single-worker run
bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .polynomials import Factorization, Polynomial, is_irreducible


@dataclass(frozen=True)
class FactorStats:
    counts_distinct: tuple[int, ...]
    counts_mult: tuple[int, ...]
    largest_norm_degree: Fraction
    total_mult: int
    x_multiplicity: int


def factor_stats(fact: Factorization, N: int) -> FactorStats:
    """Statistics from a complete factorization, degrees tracked up to N."""
    if not fact.factors and fact.unit.is_zero():
        raise ValueError("zero polynomial has no factor statistics")
    nd = [0] * N
    nm = [0] * N
    x_mult = 0
    largest = 0
    total = 0
    deg_f = 0
    for g, m in fact.factors:
        deg_f += g.degree * m
        if g.degree == 1 and g.c == (0, 1):
            x_mult = m
            largest = max(largest, 1)
            continue
        total += m
        largest = max(largest, g.degree)
        if g.degree <= N:
            nd[g.degree - 1] += 1
            nm[g.degree - 1] += m
    lnd = Fraction(largest, deg_f) if deg_f else Fraction(0)
    return FactorStats(tuple(nd), tuple(nm), lnd, total, x_mult)


def multiplicity_of(f: Polynomial, phi: Polynomial) -> int:
    """Largest m with phi^m dividing f."""
    if not phi.is_monic() or phi.degree < 1 or not is_irreducible(phi):
        raise ValueError("phi must be monic irreducible")
    if f.is_zero():
        raise ValueError("zero polynomial is divisible by every power")
    m = 0
    while True:
        q, r = divmod(f, phi)
        if not r.is_zero():
            return m
        f = q
        m += 1


class EmpiricalDistribution:
    """Counts over integer key vectors; addition-mergeable."""

    __slots__ = ("counts", "trials")

    def __init__(self, counts: dict[tuple[int, ...], int] | None = None):
        self.counts = dict(counts) if counts else {}
        self.trials = sum(self.counts.values())

    def add(self, key: tuple[int, ...], n: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + n
        self.trials += n

    def merge(self, other: "EmpiricalDistribution") -> "EmpiricalDistribution":
        out = EmpiricalDistribution(self.counts)
        for k, v in other.counts.items():
            out.counts[k] = out.counts.get(k, 0) + v
        out.trials = self.trials + other.trials
        return out

    def prob(self, key) -> Fraction:
        if self.trials == 0:
            raise ValueError("empty distribution")
        return Fraction(self.counts.get(key, 0), self.trials)

    def items(self):
        return self.counts.items()

    def support(self):
        return self.counts.keys()

    def mean(self, coord: int = 0) -> float:
        if self.trials == 0:
            raise ValueError("empty distribution")
        return sum(k[coord] * c for k, c in self.counts.items()) / self.trials

    def moment(self, exponents: tuple[int, ...]) -> Fraction:
        if self.trials == 0:
            raise ValueError("empty distribution")
        tot = 0
        for k, c in self.counts.items():
            term = c
            for v, h in zip(k, exponents):
                term *= v**h
            tot += term
        return Fraction(tot, self.trials)

    def stderr_of_mean(self, coord: int = 0) -> float:
        m = self.mean(coord)
        var = (
            sum(c * (k[coord] - m) ** 2 for k, c in self.counts.items())
            / self.trials
        )
        return (var / self.trials) ** 0.5

    def to_rows(self):
        """Sorted (key..., count) rows for CSV emission."""
        for k in sorted(self.counts):
            yield (*k, self.counts[k])

    def __eq__(self, other):
        return isinstance(other, EmpiricalDistribution) and self.counts == other.counts

    def __len__(self):
        return len(self.counts)


@dataclass(frozen=True)
class ExactPMF:
    """Exact finite probability table, optionally with off-support tail mass.

    probs + tail must sum to exactly 1.
    """

    probs: dict
    tail: Fraction = field(default_factory=lambda: Fraction(0))

    def __post_init__(self):
        total = sum(self.probs.values(), Fraction(0)) + self.tail
        if total != 1:
            raise ValueError(f"PMF sums to {total}, not 1")

    def prob(self, key) -> Fraction:
        return self.probs.get(key, Fraction(0))

    def support(self):
        return self.probs.keys()

    def items(self):
        return self.probs.items()

    def mean(self, coord: int = 0) -> Fraction:
        return sum((Fraction(k[coord]) * v for k, v in self.probs.items()), Fraction(0))

    def moment(self, exponents: tuple[int, ...]) -> Fraction:
        tot = Fraction(0)
        for k, v in self.probs.items():
            term = v
            for x, h in zip(k, exponents):
                term *= Fraction(x) ** h
            tot += term
        return tot

    def restrict(self, coords: tuple[int, ...]) -> "ExactPMF":
        """Marginal over the listed coordinate positions."""
        out: dict = {}
        for k, v in self.probs.items():
            kk = tuple(k[i] for i in coords)
            out[kk] = out.get(kk, Fraction(0)) + v
        return ExactPMF(out, self.tail)


def _as_prob_table(d):
    """(table, tail) with probabilities as Fractions."""
    if isinstance(d, EmpiricalDistribution):
        if d.trials == 0:
            raise ValueError("empty distribution")
        t = d.trials
        return {k: Fraction(c, t) for k, c in d.counts.items()}, Fraction(0)
    if isinstance(d, ExactPMF):
        return dict(d.probs), d.tail
    if isinstance(d, dict):
        tbl = {k: Fraction(v) if not isinstance(v, float) else v for k, v in d.items()}
        return tbl, Fraction(0)
    raise TypeError(f"cannot interpret {type(d).__name__} as a distribution")


def tv_distance(a, b):
    """Total variation distance (1/2) sum |P_a - P_b| over the union support.

    Tail mass (probability a truncated exact law assigns outside its
    enumerated support) is assumed disjoint from the other side's support,
    which holds when the truncation covers the observed data.
    """
    pa, ta = _as_prob_table(a)
    pb, tb = _as_prob_table(b)
    keys = set(pa) | set(pb)
    total = sum(abs(pa.get(k, 0) - pb.get(k, 0)) for k in keys) + ta + tb
    return total / 2


def bootstrap_ci(
    a,
    b,
    resamples: int,
    level: float,
    gen: np.random.Generator,
) -> tuple[float, float]:
    """Percentile bootstrap interval for tv_distance(a, b).

    Only empirical inputs are resampled; exact laws are held fixed.
    """
    if not 0 < level < 1:
        raise ValueError("confidence level must be in (0,1)")

    def resampled(d):
        if not isinstance(d, EmpiricalDistribution):
            return d
        keys = list(d.counts)
        weights = np.array([d.counts[k] for k in keys], dtype=np.float64)
        weights /= weights.sum()
        draw = gen.multinomial(d.trials, weights)
        return EmpiricalDistribution(
            {k: int(c) for k, c in zip(keys, draw) if c}
        )

    vals = sorted(
        float(tv_distance(resampled(a), resampled(b))) for _ in range(resamples)
    )
    lo = vals[int((1 - level) / 2 * (resamples - 1))]
    hi = vals[int((1 + level) / 2 * (resamples - 1))]
    return lo, hi


def ks_distance(xs, ys) -> float:
    """Two-sample Kolmogorov-Smirnov statistic sup |F_x - F_y|."""
    xs = np.sort(np.asarray(xs, dtype=np.float64))
    ys = np.sort(np.asarray(ys, dtype=np.float64))
    grid = np.concatenate([xs, ys])
    fx = np.searchsorted(xs, grid, side="right") / len(xs)
    fy = np.searchsorted(ys, grid, side="right") / len(ys)
    return float(np.max(np.abs(fx - fy)))
