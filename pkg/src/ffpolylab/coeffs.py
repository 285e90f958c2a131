"""Coefficient distributions, seeded counter-based randomness, polynomial
samplers, and the reference random variables the factor statistics are
compared against (binomial, negative binomial, Poisson, geometric,
Poisson-Dirichlet stick breaking, permutation cycle counts).

Randomness is counter-based (Philox): trial t of experiment x always draws
from stream (x, t), so results are independent of how trials are split
across workers.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import ConfigError
from .fields import FieldCtx
from .polynomials import Polynomial

STICK_TOL = Fraction(1, 2**40)


def stream(master_seed: int, stream_index: int) -> np.random.Generator:
    """Independent generator for (seed, stream); pure in its arguments."""
    key = np.array(
        [master_seed & 0xFFFFFFFFFFFFFFFF, stream_index & 0xFFFFFFFFFFFFFFFF],
        dtype=np.uint64,
    )
    return np.random.Generator(np.random.Philox(key=key))


def experiment_stream(master_seed: int, experiment_id: int, trial: int) -> np.random.Generator:
    """Stream for trial t of experiment x: index (x << 32) | t."""
    if trial >= 1 << 32:
        raise ConfigError("trial index exceeds 2^32")
    return stream(master_seed, ((experiment_id & 0xFFFFFFFF) << 32) | trial)


def _parse_prob(v) -> Fraction | float:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    return float(v)


class CoefficientDistribution:
    """Probability table mu on F_q with its anti-concentration parameter eta.

    Probabilities supplied as rationals (or rational strings) are kept exact,
    which keeps every downstream convolution exact; floats are accepted as a
    fallback and tracked as inexact.
    """

    def __init__(self, ctx: FieldCtx, probs: dict):
        self.ctx = ctx
        table: dict[int, Fraction | float] = {}
        for k, v in probs.items():
            enc = ctx.element(k).val if not isinstance(k, int) else k % ctx.order
            pv = _parse_prob(v)
            if pv < 0:
                raise ConfigError("negative probability")
            if pv:
                table[enc] = table.get(enc, 0) + pv
        if not table:
            raise ConfigError("empty support")
        self.exact = all(isinstance(v, Fraction) for v in table.values())
        total = sum(table.values())
        if self.exact:
            if total != 1:
                raise ConfigError(f"probabilities sum to {total}, not 1")
        elif abs(total - 1.0) > 1e-12:
            raise ConfigError(f"probabilities sum to {total}, not 1")
        self.probs = dict(sorted(table.items()))
        self.support = tuple(self.probs)
        self._cum = np.cumsum([float(v) for v in self.probs.values()])
        self._cum[-1] = 1.0
        self._support_arr = np.array(self.support, dtype=np.int64)
        self._eta: Fraction | float | None = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def uniform(cls, ctx: FieldCtx) -> "CoefficientDistribution":
        w = Fraction(1, ctx.order)
        return cls(ctx, {v: w for v in range(ctx.order)})

    @classmethod
    def uniform_on(cls, ctx: FieldCtx, values) -> "CoefficientDistribution":
        vals = [ctx.element(v).val for v in values]
        if len(set(vals)) != len(vals):
            raise ConfigError("duplicate support points")
        w = Fraction(1, len(vals))
        return cls(ctx, {v: w for v in vals})

    @classmethod
    def point_mass(cls, ctx: FieldCtx, value) -> "CoefficientDistribution":
        return cls(ctx, {ctx.element(value).val: Fraction(1)})

    @classmethod
    def from_spec(cls, ctx: FieldCtx, support, probs) -> "CoefficientDistribution":
        if len(support) != len(probs):
            raise ConfigError("support and probs length mismatch")
        return cls(ctx, dict(zip([ctx.element(s).val for s in support], probs)))

    def mass(self, v) -> Fraction | float:
        return self.probs.get(self.ctx.element(v).val, Fraction(0))

    @property
    def denominator(self) -> int:
        """LCM of probability denominators (exact distributions only)."""
        if not self.exact:
            raise ValueError("denominator only defined for exact distributions")
        d = 1
        for v in self.probs.values():
            d = d * v.denominator // math.gcd(d, v.denominator)
        return d

    # -- eta -----------------------------------------------------------------

    @property
    def eta(self):
        """1 - max mass of a proper affine F_p subspace of F_q.

        For e = 1 this is 1 - max point mass; for e > 1 maximizing over
        affine hyperplanes {x : Tr(lambda x) = c} suffices, since every
        proper affine subspace is contained in one.
        """
        if self._eta is None:
            ctx = self.ctx
            if ctx.e == 1:
                best = max(self.probs.values())
            else:
                best = 0
                seen = set()
                for lam in range(1, ctx.order):
                    if lam in seen:
                        continue
                    # one representative per projective direction
                    for c in range(1, ctx.p):
                        seen.add(ctx.scalar_mul(c, lam))
                    masses: dict[int, Fraction | float] = {}
                    for v, w in self.probs.items():
                        t = ctx.trace_int(ctx.mul(lam, v))
                        masses[t] = masses.get(t, 0) + w
                    cand = max(masses.values())
                    if cand > best:
                        best = cand
            self._eta = 1 - best
        return self._eta

    def serialize(self) -> dict:
        return {
            "field": f"{self.ctx.p}^{self.ctx.e}",
            "support": [list(self.ctx.decode(v)) if self.ctx.e > 1 else v for v in self.support],
            "probs": [str(v) for v in self.probs.values()],
        }

    def __repr__(self):
        items = ", ".join(f"{k}:{v}" for k, v in self.probs.items())
        return f"mu[{self.ctx.p}^{self.ctx.e}]{{{items}}}"


def sample_coeff_encodings(mu: CoefficientDistribution, n: int, gen: np.random.Generator) -> np.ndarray:
    """n+1 i.i.d. encoded draws from mu (inverse CDF over canonical support)."""
    u = gen.random(n + 1)
    idx = np.searchsorted(mu._cum, u, side="right")
    return mu._support_arr[idx]


def sample_poly(mu: CoefficientDistribution, n: int, gen: np.random.Generator) -> Polynomial:
    """Random f = sum_{i<=n} eps_i x^i; degree may drop below n."""
    if n < 0:
        raise ConfigError("degree bound must be >= 0")
    return Polynomial(mu.ctx, sample_coeff_encodings(mu, n, gen).tolist())


def sample_uniform_monic(ctx: FieldCtx, n: int, gen: np.random.Generator) -> Polynomial:
    """Uniformly random monic polynomial of exact degree n."""
    if n < 1:
        raise ConfigError("monic sampler needs degree >= 1")
    lower = gen.integers(0, ctx.order, size=n)
    return Polynomial(ctx, lower.tolist() + [1])


# -- reference random variables ------------------------------------------------

_INT64_MAX = (1 << 62)


def binomial(m: int, r, gen: np.random.Generator) -> int:
    """Binomial(m, r) count."""
    if not (0 <= r <= 1):
        raise ConfigError("probability parameter out of range")
    if m >= _INT64_MAX:
        raise ConfigError("binomial parameter exceeds sampler range")
    return int(gen.binomial(m, float(r)))


def negative_binomial(m: int, r, gen: np.random.Generator) -> int:
    """Sum of m geometric(r) multiplicities: failures before the m-th success
    with failure probability r."""
    if not (0 <= r < 1):
        raise ConfigError("probability parameter out of range")
    if m >= _INT64_MAX:
        raise ConfigError("negative binomial parameter exceeds sampler range")
    return int(gen.negative_binomial(m, 1.0 - float(r)))


def poisson(lam: float, gen: np.random.Generator) -> int:
    if lam < 0:
        raise ConfigError("Poisson mean must be >= 0")
    return int(gen.poisson(lam))


def geometric(r, gen: np.random.Generator) -> int:
    """P[Z = m] = (1-r) r^m for m >= 0 (multiplicity law)."""
    if not (0 <= r < 1):
        raise ConfigError("probability parameter out of range")
    return int(gen.geometric(1.0 - float(r))) - 1


def stick_breaking_pd(gen: np.random.Generator, depth: int | None = None):
    """Stick-breaking V_i = U_i prod_{j<i}(1 - U_j), sorted descending.

    With depth=None, breaking continues until the residual stick is below
    2^-40, so the returned lengths sum to 1 within that tolerance.
    """
    lengths = []
    residual = 1.0
    tol = float(STICK_TOL)
    i = 0
    while True:
        u = gen.random()
        lengths.append(residual * u)
        residual *= 1.0 - u
        i += 1
        if depth is not None:
            if i >= depth:
                break
        elif residual < tol:
            break
    lengths.sort(reverse=True)
    return lengths


def pd_max(gen: np.random.Generator) -> float:
    """Exact draw of the maximum of the Poisson-Dirichlet process: once the
    residual stick is smaller than the current best, no later piece can win."""
    best = 0.0
    residual = 1.0
    while residual > best:
        u = gen.random()
        piece = residual * u
        if piece > best:
            best = piece
        residual *= 1.0 - u
    return best


def permutation_cycle_counts(n: int, gen: np.random.Generator) -> np.ndarray:
    """Cycle counts (C_1..C_n) of a uniform permutation of n elements.

    Sequential cycle-length sampling (Feller coupling): the cycle through the
    smallest remaining element has length uniform on {1..r}.
    """
    if n < 1:
        raise ConfigError("permutation size must be >= 1")
    counts = np.zeros(n, dtype=np.int64)
    r = n
    while r > 0:
        ell = int(gen.integers(1, r + 1))
        counts[ell - 1] += 1
        r -= ell
    return counts
