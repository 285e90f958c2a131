"""Dense univariate polynomials over F_q.

Arithmetic, Hasse derivatives, complete factorization (squarefree
decomposition, distinct-degree splitting, Cantor-Zassenhaus equal-degree
splitting), irreducibility testing, irreducible counting, and the
derivative-vector rank construction.

Coefficients are stored as integer encodings (see `fields`), constant term
first, trailing zeros trimmed; the zero polynomial has an empty coefficient
tuple and degree -1.  Prime-field arithmetic routes through the packed
kernels in `_kernels`; extension fields use the generic schoolbook path.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._kernels import ModulusKernel, list_divmod, list_gcd, list_mul
from .fields import (
    FieldCtx,
    FieldElement,
    factorint,
    make_field,
)


def binom_mod(n: int, k: int, p: int) -> int:
    """Binomial coefficient C(n, k) mod p via Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    result = 1
    while n or k:
        n, ni = divmod(n, p)
        k, ki = divmod(k, p)
        if ki > ni:
            return 0
        num = den = 1
        for j in range(ki):
            num = num * (ni - j) % p
            den = den * (j + 1) % p
        result = result * num * pow(den, p - 2, p) % p
    return result


def mobius(n: int) -> int:
    mu = 1
    for _, a in factorint(n).items():
        if a > 1:
            return 0
        mu = -mu
    return mu


def count_irreducibles(q: int, i: int) -> int:
    """Number of monic irreducibles of degree i over F_q (necklace formula)."""
    if i < 1:
        raise ValueError("degree must be >= 1")
    total = 0
    for d in _divisors(i):
        total += mobius(d) * q ** (i // d)
    assert total % i == 0
    return total // i


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


class Polynomial:
    """Immutable dense polynomial over a fixed field context."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx: FieldCtx, coeffs):
        self.ctx = ctx
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_ints(cls, ctx: FieldCtx, ints) -> "Polynomial":
        """Coefficients given as integers; embedded via F_p for e > 1."""
        return cls(ctx, [ctx.element(v).val for v in ints])

    @classmethod
    def from_elements(cls, ctx: FieldCtx, elems) -> "Polynomial":
        return cls(ctx, [ctx.element(e).val for e in elems])

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "Polynomial":
        return cls(ctx, [])

    @classmethod
    def one(cls, ctx: FieldCtx) -> "Polynomial":
        return cls(ctx, [1])

    @classmethod
    def x(cls, ctx: FieldCtx) -> "Polynomial":
        return cls(ctx, [0, 1])

    @classmethod
    def x_minus(cls, a: FieldElement) -> "Polynomial":
        return cls(a.ctx, [a.ctx.neg(a.val), 1])

    # -- structure -----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def coeff(self, i: int) -> FieldElement:
        v = self.c[i] if 0 <= i < len(self.c) else 0
        return FieldElement(self.ctx, v)

    def leading(self) -> FieldElement:
        if not self.c:
            raise ValueError("zero polynomial has no leading coefficient")
        return FieldElement(self.ctx, self.c[-1])

    def monic(self) -> "Polynomial":
        if not self.c:
            return self
        if self.c[-1] == 1:
            return self
        inv = self.ctx.inv(self.c[-1])
        return Polynomial(self.ctx, [self.ctx.mul(v, inv) for v in self.c])

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ctx == other.ctx
            and self.c == other.c
        )

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.e, self.c))

    def sort_key(self):
        """Canonical order: degree ascending, then coefficient encodings."""
        return (self.degree, self.c)

    # -- ring operations -----------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ctx != other.ctx:
            raise ValueError("mixed polynomial contexts")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        ctx = self.ctx
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = ctx.add(out[i], v)
        return Polynomial(ctx, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        ctx = self.ctx
        n = max(len(self.c), len(other.c))
        out = [
            ctx.sub(
                self.c[i] if i < len(self.c) else 0,
                other.c[i] if i < len(other.c) else 0,
            )
            for i in range(n)
        ]
        return Polynomial(ctx, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ctx, [self.ctx.neg(v) for v in self.c])

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return self.scale(other)
        self._check(other)
        ctx = self.ctx
        if not self.c or not other.c:
            return Polynomial.zero(ctx)
        if ctx.e == 1:
            return Polynomial(ctx, list_mul(list(self.c), list(other.c), ctx.p))
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
        return Polynomial(ctx, out)

    def scale(self, a) -> "Polynomial":
        v = self.ctx.element(a).val
        return Polynomial(self.ctx, [self.ctx.mul(c, v) for c in self.c])

    def shift(self, k: int) -> "Polynomial":
        """Multiply by x^k."""
        if not self.c:
            return self
        return Polynomial(self.ctx, (0,) * k + self.c)

    def __divmod__(self, other: "Polynomial"):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        ctx = self.ctx
        if ctx.e == 1:
            q, r = list_divmod(list(self.c), list(other.c), ctx.p)
            return Polynomial(ctx, q), Polynomial(ctx, r)
        a = list(self.c)
        b = other.c
        db = other.degree
        if self.degree < db:
            return Polynomial.zero(ctx), self
        inv_lead = ctx.inv(b[-1])
        q = [0] * (self.degree - db + 1)
        for i in range(self.degree - db, -1, -1):
            c = a[i + db]
            if c:
                c = ctx.mul(c, inv_lead)
                q[i] = c
                for j in range(db + 1):
                    a[i + j] = ctx.sub(a[i + j], ctx.mul(c, b[j]))
        return Polynomial(ctx, q), Polynomial(ctx, a[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, k: int) -> "Polynomial":
        result = Polynomial.one(self.ctx)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def eval(self, a) -> FieldElement:
        """Evaluate at a point; the point may live in an extension of F_p
        when this polynomial has prime-field coefficients."""
        actx = a.ctx if isinstance(a, FieldElement) else self.ctx
        a = actx.element(a)
        if actx != self.ctx and not (self.ctx.e == 1 and actx.p == self.ctx.p):
            raise ValueError("evaluation point in an incompatible field")
        acc = 0
        for cv in reversed(self.c):
            acc = actx.add(actx.mul(acc, a.val), actx.element(cv).val)
        return FieldElement(actx, acc)

    def __repr__(self):
        return f"Poly({self.ctx.p}^{self.ctx.e}: {','.join(map(str, self.c))})"


# -- text format --------------------------------------------------------------


def poly_to_text(f: Polynomial) -> str:
    """`p^e: c0,c1,...,cn` with extension coefficients as `a0+a1*t+...`."""
    ctx = f.ctx
    if ctx.e == 1:
        body = ",".join(str(v) for v in f.c)
    else:
        body = ",".join(str(FieldElement(ctx, v)) for v in f.c)
    return f"{ctx.p}^{ctx.e}: {body}"


def poly_from_text(text: str, ctx: FieldCtx | None = None) -> Polynomial:
    head, _, body = text.partition(":")
    ps, _, es = head.strip().partition("^")
    p, e = int(ps), int(es) if es else 1
    if ctx is None:
        ctx = make_field(p, e)
    elif ctx.p != p or ctx.e != e:
        raise ValueError("text field does not match supplied context")
    coeffs = []
    body = body.strip()
    if body:
        for part in body.split(","):
            part = part.strip()
            coords = [0] * ctx.e
            for term in part.split("+"):
                term = term.strip()
                if "t" in term:
                    cstr, _, tpow = term.partition("*t" if "*t" in term else "t")
                    coef = int(cstr) if cstr else 1
                    idx = int(tpow.lstrip("^")) if tpow.lstrip("^") else 1
                    coords[idx] = coef % p
                else:
                    coords[0] = int(term) % p
            coeffs.append(ctx.encode(coords))
    return Polynomial(ctx, coeffs)


# -- calculus ------------------------------------------------------------------


def derivative(f: Polynomial) -> Polynomial:
    ctx = f.ctx
    return Polynomial(
        ctx, [ctx.scalar_mul(i, f.c[i]) for i in range(1, len(f.c))]
    )


def hasse_derivative(f: Polynomial, k: int) -> Polynomial:
    """k-th Hasse derivative: sum c_i * C(i, k) x^(i-k)."""
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    if k == 0:
        return f
    ctx = f.ctx
    out = []
    for i in range(k, len(f.c)):
        out.append(ctx.scalar_mul(binom_mod(i, k, ctx.p), f.c[i]))
    return Polynomial(ctx, out)


def taylor_at(f: Polynomial, a: FieldElement) -> tuple[FieldElement, ...]:
    """Coefficients (D^(k) f(a))_k of the expansion of f around a."""
    actx = a.ctx
    if actx != f.ctx:
        if not (f.ctx.e == 1 and actx.p == f.ctx.p):
            raise ValueError("expansion point in an incompatible field")
        work = Polynomial.from_ints(actx, f.c)
    else:
        work = f
    if work.is_zero():
        return (FieldElement(actx, 0),)
    lin = Polynomial.x_minus(a)
    out = []
    for _ in range(work.degree + 1):
        work, r = divmod(work, lin)
        out.append(r.coeff(0))
    return tuple(out)


def root_multiplicity(f: Polynomial, a: FieldElement) -> int:
    """Largest r with (x-a)^r dividing f."""
    if f.is_zero():
        raise ValueError("zero polynomial divisible by every power")
    tay = taylor_at(f, a)
    r = 0
    while r < len(tay) and tay[r].is_zero():
        r += 1
    return r


# -- modular arithmetic helpers -----------------------------------------------


def powmod(g: Polynomial, e: int, f: Polynomial) -> Polynomial:
    """g^e mod f."""
    ctx = g.ctx
    if f.is_zero():
        raise ZeroDivisionError("zero modulus")
    if ctx.e == 1 and f.is_monic() and f.degree >= 1:
        mk = ModulusKernel(ctx.p, list(f.c))
        return Polynomial(ctx, mk.powmod(list(g.c), e).tolist())
    result = Polynomial.one(ctx)
    base = g % f
    while e:
        if e & 1:
            result = (result * base) % f
        base = (base * base) % f
        e >>= 1
    return result


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd."""
    a._check(b)
    ctx = a.ctx
    if ctx.e == 1:
        return Polynomial(ctx, list_gcd(list(a.c), list(b.c), ctx.p))
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


# -- factorization -------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """unit * prod factor^mult, factors monic irreducible in canonical order."""

    unit: FieldElement
    factors: tuple[tuple[Polynomial, int], ...]

    def product(self) -> Polynomial:
        out = Polynomial.one(self.unit.ctx).scale(self.unit)
        for g, m in self.factors:
            out = out * g**m
        return out

    def validate(self, f: Polynomial) -> bool:
        if self.product() != f:
            return False
        seen = set()
        for g, m in self.factors:
            if m < 1 or not g.is_monic() or g in seen or not is_irreducible(g):
                return False
            seen.add(g)
        keys = [g.sort_key() for g, _ in self.factors]
        return keys == sorted(keys)


def _pth_root(f: Polynomial) -> Polynomial:
    """Inverse Frobenius on a polynomial of the shape g(x^p)."""
    ctx = f.ctx
    p = ctx.p
    out = []
    for i in range(0, len(f.c), p):
        # coefficient p-th root: a^(p^(e-1))
        out.append(ctx.pow(f.c[i], p ** (ctx.e - 1)))
    return Polynomial(ctx, out)


def squarefree_decomposition(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Monic squarefree parts with multiplicities (characteristic-p aware)."""
    if f.is_zero():
        raise ValueError("cannot decompose the zero polynomial")
    f = f.monic()
    if f.degree == 0:
        return []
    fp = derivative(f)
    if fp.is_zero():
        inner = squarefree_decomposition(_pth_root(f))
        return [(g, m * f.ctx.p) for g, m in inner]
    out = []
    c = gcd(f, fp)
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        fac = w // y
        if fac.degree > 0:
            out.append((fac, i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        inner = squarefree_decomposition(_pth_root(c))
        out.extend((g, m * f.ctx.p) for g, m in inner)
    out.sort(key=lambda gm: gm[1])
    return out


def distinct_degree_split(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Split monic squarefree f into (product of degree-d irreducibles, d)."""
    ctx = f.ctx
    q = ctx.order
    f = f.monic()
    out = []
    v = f
    h = Polynomial.x(ctx) % v
    d = 0
    while v.degree > 0:
        d += 1
        if 2 * d > v.degree:
            out.append((v, v.degree))
            break
        h = powmod(h, q, v)
        g = gcd(v, h - Polynomial.x(ctx))
        if g.degree > 0:
            out.append((g, d))
            v = v // g
            h = h % v
    return out


def _edf_random_poly(ctx: FieldCtx, deg_bound: int, stream) -> Polynomial:
    return Polynomial(ctx, [next(stream) % ctx.order for _ in range(deg_bound)])


def equal_degree_split(f: Polynomial, d: int, seed: int = 0) -> list[Polynomial]:
    """Split monic squarefree f (all irreducible factors of degree d).

    Cantor-Zassenhaus; in characteristic 2 the additive trace map replaces
    the (q^d-1)/2 power.  Deterministic given the seed.
    """
    ctx = f.ctx
    from .fields import _splitmix64

    stream = _splitmix64(0xEDF ^ (seed * 0x9E3779B97F4A7C15 + f.degree))
    out: list[Polynomial] = []
    stack = [f.monic()]
    q = ctx.order
    while stack:
        g = stack.pop()
        if g.degree == d:
            out.append(g)
            continue
        while True:
            a = _edf_random_poly(ctx, g.degree, stream)
            if a.degree < 1:
                continue
            c = gcd(a, g)
            if 0 < c.degree < g.degree:
                stack.extend([c, g // c])
                break
            if ctx.p == 2:
                # trace map over F_2 with q = 2^e
                t = a % g
                acc = t
                for _ in range(ctx.e * d - 1):
                    t = powmod(t, 2, g)
                    acc = (acc + t) % g
                b = acc
            else:
                b = powmod(a, (q**d - 1) // 2, g) - Polynomial.one(ctx)
            c = gcd(b, g)
            if 0 < c.degree < g.degree:
                stack.extend([c, g // c])
                break
    out.sort(key=Polynomial.sort_key)
    return out


def factorize(f: Polynomial, seed: int = 0) -> Factorization:
    """Complete factorization into monic irreducibles, canonically ordered."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit = f.leading()
    fm = f.monic()
    found: list[tuple[Polynomial, int]] = []
    for part, mult in squarefree_decomposition(fm):
        for block, d in distinct_degree_split(part):
            for irr in equal_degree_split(block, d, seed):
                found.append((irr, mult))
    found.sort(key=lambda gm: gm[0].sort_key())
    return Factorization(unit=unit, factors=tuple(found))


def is_irreducible(f: Polynomial) -> bool:
    """Rabin irreducibility test for monic f of degree >= 1."""
    if f.is_zero() or f.degree < 1:
        raise ValueError("irreducibility is for polynomials of degree >= 1")
    if not f.is_monic():
        raise ValueError("irreducibility test expects a monic polynomial")
    ctx = f.ctx
    n = f.degree
    if n == 1:
        return True
    q = ctx.order
    x = Polynomial.x(ctx)
    # x^(q^n) == x mod f, and gcd(x^(q^(n/l)) - x, f) == 1 at maximal subdegrees
    powers: dict[int, Polynomial] = {}

    def xq_power(k: int) -> Polynomial:
        if k in powers:
            return powers[k]
        best = max((j for j in powers if j < k), default=0)
        h = powers.get(best, x % f)
        for _ in range(k - best):
            h = powmod(h, q, f)
        powers[k] = h
        return h

    for ell in sorted(factorint(n)):
        h = xq_power(n // ell)
        if gcd(h - x, f).degree != 0:
            return False
    return (xq_power(n) - x % f).is_zero()


def irreducibles_of_degree(ctx: FieldCtx, d: int):
    """Yield all monic irreducibles of degree d (exhaustive; small fields)."""
    q = ctx.order
    for idx in range(q**d):
        coeffs = []
        v = idx
        for _ in range(d):
            v, r = divmod(v, q)
            coeffs.append(r)
        coeffs.append(1)
        f = Polynomial(ctx, coeffs)
        if is_irreducible(f):
            yield f


# -- derivative vector matrix (joint root/derivative rank construction) -------


def derivative_vector_matrix(
    roots: list[tuple[FieldElement, int]], m: int, count: int
) -> list[list[int]]:
    """Rows i = m..m+count-1 of the vectors (C(i,k) alpha_j^(i-k))_{j,k<=K_j},
    flattened over F_p coordinates.  Full rank (count = sum e_j (K_j+1)) is the
    linear-independence property the moment comparisons rest on.
    """
    from .fields import are_conjugate, lies_in_proper_subfield

    if not roots:
        raise ValueError("need at least one root")
    p = roots[0][0].ctx.p
    for a, k in roots:
        if a.ctx.p != p:
            raise ValueError("roots must share the prime")
        if a.is_zero():
            raise ValueError("zero is excluded (factors of x are tracked separately)")
        if lies_in_proper_subfield(a):
            raise ValueError(f"{a!r} lies in a proper subfield")
        if k < 0:
            raise ValueError("derivative depth must be >= 0")
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            a, b = roots[i][0], roots[j][0]
            if a.ctx.e == b.ctx.e and a.ctx != b.ctx:
                raise ValueError("same-degree roots must share one field context")
            if a.ctx == b.ctx and are_conjugate(a, b):
                raise ValueError("roots must be pairwise non-conjugate")
    rows = []
    for i in range(m, m + count):
        row: list[int] = []
        for a, kmax in roots:
            ctx = a.ctx
            for k in range(kmax + 1):
                b = binom_mod(i, k, p)
                if b == 0 or i - k < 0:
                    row.extend([0] * ctx.e)
                else:
                    v = ctx.scalar_mul(b, ctx.pow(a.val, i - k))
                    row.extend(ctx.decode(v))
        rows.append(row)
    return rows


def matrix_rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Gaussian elimination rank over F_p."""
    mat = [list(r) for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        mat[rank] = [v * inv % p for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] % p:
                c = mat[r][col]
                mat[r] = [(mat[r][j] - c * mat[rank][j]) % p for j in range(ncols)]
        rank += 1
    return rank
