"""Exact arithmetic in F_p and F_{p^e}.

Elements of F_{p^e} are encoded as integers in [0, p^e): the base-p digits of
the encoding are the coordinates in the basis 1, t, ..., t^(e-1), where t is a
root of the defining modulus.  All context methods operate on these integer
encodings; ``FieldElement`` is a thin operator-overloading wrapper used at API
boundaries.

p is capped below 2^31 so coefficient products fit comfortably in 64-bit
intermediates throughout the package.
"""

from __future__ import annotations

import math

P_CAP = 1 << 31

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59)

# Deterministic Miller-Rabin witness set for n < 2^64 (Sinclair).
_MR_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for n < 2^64."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    if n >= 1 << 64:
        raise ValueError("primality test is deterministic only below 2^64")
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, seed: int = 1) -> int:
    """Find a nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    c = seed
    while True:
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1


def factorint(n: int) -> dict[int, int]:
    """Factor n into primes: trial division then Pollard-Brent rho.

    Intended for n up to ~2^80 (multiplicative group orders at desk scale);
    raises if an unfactored composite survives the effort cap.
    """
    if n <= 0:
        raise ValueError("factorint expects a positive integer")
    factors: dict[int, int] = {}
    for q in _SMALL_PRIMES:
        while n % q == 0:
            factors[q] = factors.get(q, 0) + 1
            n //= q
    q = 61
    while q * q <= n and q < 100_000:
        while n % q == 0:
            factors[q] = factors.get(q, 0) + 1
            n //= q
        q += 2
    stack = [n] if n > 1 else []
    effort = 0
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        effort += 1
        if effort > 64:
            raise CapExceededForFactoring(m)
        d = _pollard_brent(m)
        stack.append(d)
        stack.append(m // d)
    return factors


class CapExceededForFactoring(RuntimeError):
    def __init__(self, m: int):
        super().__init__(f"gave up factoring {m}; group order out of desk range")


def divisors_from_factors(factors: dict[int, int]) -> list[int]:
    divs = [1]
    for q, a in factors.items():
        divs = [d * q**j for d in divs for j in range(a + 1)]
    return sorted(divs)


def euler_phi(n: int, factors: dict[int, int] | None = None) -> int:
    if factors is None:
        factors = factorint(n)
    out = 1
    for q, a in factors.items():
        out *= q ** (a - 1) * (q - 1)
    return out


def _splitmix64(state: int):
    """Tiny deterministic integer stream; plumbing for seeded searches."""
    mask = (1 << 64) - 1
    while True:
        state = (state + 0x9E3779B97F4A7C15) & mask
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        yield z ^ (z >> 31)


# ---------------------------------------------------------------------------
# minimal F_p[t] helpers used only to establish/verify the field modulus
# (the module verifies its own modulus; general machinery lives elsewhere)


def _fp_polymulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    e = len(mod) - 1
    for i in range(len(res) - 1, e - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(e):
                res[i - e + j] = (res[i - e + j] - c * mod[j]) % p
    res = res[:e]
    while len(res) < e:
        res.append(0)
    return res


def _fp_poly_is_irreducible(mod: list[int], p: int) -> bool:
    """Rabin test for a monic polynomial over F_p, self-contained."""
    e = len(mod) - 1
    if e < 1 or mod[-1] != 1:
        return False
    if e == 1:
        return True

    def xq_pow(k: int) -> list[int]:
        # x^(p^k) mod `mod` by repeated p-th powering
        h = [0, 1] + [0] * (e - 2) if e >= 2 else [1]
        h = h[:e]
        for _ in range(k):
            acc = [1] + [0] * (e - 1)
            base = h
            exp = p
            while exp:
                if exp & 1:
                    acc = _fp_polymulmod(acc, base, mod, p)
                base = _fp_polymulmod(base, base, mod, p)
                exp >>= 1
            h = acc
        return h

    x = [0, 1] + [0] * (e - 2)
    x = x[:e] if e >= 2 else [0]
    if xq_pow(e) != x:
        return False
    for ell in {f for f in factorint(e)}:
        h = xq_pow(e // ell)
        diff = [(h[i] - x[i]) % p for i in range(e)]
        # gcd(diff, mod) must be 1
        a = [c % p for c in mod]
        b = diff[:]
        while any(b):
            while b and b[-1] == 0:
                b.pop()
            if not b:
                break
            if len(a) < len(b):
                a, b = b, a
                continue
            inv = pow(b[-1], p - 2, p)
            shift = len(a) - len(b)
            c = a[-1] * inv % p
            for j in range(len(b)):
                a[shift + j] = (a[shift + j] - c * b[j]) % p
            while a and a[-1] == 0:
                a.pop()
            if len(a) < len(b):
                a, b = b, a
        while a and a[-1] == 0:
            a.pop()
        if len(a) != 1:
            return False
    return True


def _find_irreducible(p: int, e: int, seed: int) -> tuple[int, ...]:
    stream = _splitmix64((seed << 8) ^ (p * 1000003 + e))
    while True:
        coeffs = [next(stream) % p for _ in range(e)] + [1]
        if coeffs[0] == 0:
            continue
        if _fp_poly_is_irreducible(coeffs, p):
            return tuple(coeffs)


class FieldCtx:
    """Immutable arithmetic context for F_{p^e}.

    Shareable across workers; all operations are pure functions of integer
    encodings.
    """

    def __init__(self, p: int, e: int, modulus: tuple[int, ...]):
        self.p = p
        self.e = e
        self.order = p**e
        self.modulus = tuple(c % p for c in modulus)
        self.zero = 0
        self.one = 1
        self._order_factors: dict[int, int] | None = None
        self._log: list[int] | None = None
        self._exp: list[int] | None = None
        self._trace_basis: list[int] | None = None
        if e > 1:
            # reduction table: t^e = -(modulus head)
            self._red = tuple((-c) % p for c in self.modulus[:e])

    # -- construction ------------------------------------------------------

    def __repr__(self):
        return f"FieldCtx(p={self.p}, e={self.e})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and self.p == other.p
            and self.e == other.e
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def serialize(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    # -- encoding ----------------------------------------------------------

    def encode(self, coords) -> int:
        """Coordinate vector (length e, residues mod p) -> integer encoding."""
        coords = list(coords)
        if len(coords) != self.e:
            raise ValueError(f"expected {self.e} coordinates, got {len(coords)}")
        val = 0
        for c in reversed(coords):
            val = val * self.p + (c % self.p)
        return val

    def decode(self, a: int) -> tuple[int, ...]:
        coords = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            coords.append(r)
        return tuple(coords)

    def element(self, v) -> "FieldElement":
        if isinstance(v, FieldElement):
            if v.ctx is not self and v.ctx != self:
                raise ValueError("element from a different field context")
            return v
        if isinstance(v, int):
            if self.e == 1:
                return FieldElement(self, v % self.p)
            if 0 <= v < self.order:
                return FieldElement(self, v)
            return FieldElement(self, v % self.p)  # integers embed via F_p
        return FieldElement(self, self.encode(v))

    def elements(self):
        """Iterate over all field elements (encodings 0..q-1)."""
        return range(self.order)

    # -- arithmetic on encodings --------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.e == 1:
            return (a + b) % p
        out = 0
        mul = 1
        for _ in range(self.e):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * mul
            mul *= p
        return out

    def sub(self, a: int, b: int) -> int:
        p = self.p
        if self.e == 1:
            return (a - b) % p
        out = 0
        mul = 1
        for _ in range(self.e):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra - rb) % p) * mul
            mul *= p
        return out

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def scalar_mul(self, c: int, a: int) -> int:
        """Multiply by c in F_p (acts coordinate-wise)."""
        p = self.p
        c %= p
        if self.e == 1:
            return a * c % p
        out = 0
        mul = 1
        for _ in range(self.e):
            a, ra = divmod(a, p)
            out += (ra * c % p) * mul
            mul *= p
        return out

    def mul(self, a: int, b: int) -> int:
        p = self.p
        if self.e == 1:
            return a * b % p
        if self._log is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_generic(a, b)

    def _mul_generic(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        ca = self.decode(a)
        cb = self.decode(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        red = self._red
        for i in range(2 * e - 2, e - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(e):
                    prod[i - e + j] += c * red[j]
        return self.encode([prod[j] % p for j in range(e)])

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        if self.e == 1:
            return pow(a, k, self.p)
        if self._log is not None and a != 0:
            return self._exp[self._log[a] * k % (self.order - 1)]
        acc = 1
        base = a
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def trace_int(self, a: int) -> int:
        """Absolute trace down to F_p, returned as a residue in [0, p)."""
        if self.e == 1:
            return a
        if self._trace_basis is None:
            basis = []
            for i in range(self.e):
                x = self.encode([0] * i + [1] + [0] * (self.e - 1 - i))
                t = x
                s = x
                for _ in range(self.e - 1):
                    t = self.frobenius(t)
                    s = self.add(s, t)
                basis.append(s % self.p)  # trace lands in F_p: encoding == residue
            self._trace_basis = basis
        coords = self.decode(a)
        return sum(c * tb for c, tb in zip(coords, self._trace_basis)) % self.p

    # -- small-field acceleration -------------------------------------------

    def ensure_tables(self) -> None:
        """Build discrete-log multiplication tables (fields up to 2^16)."""
        if self._log is not None or self.e == 1:
            return
        if self.order > 1 << 16:
            raise ValueError("log tables only built for fields up to 2^16")
        facs = self.order_factors()
        g = None
        for cand in range(2, self.order):
            if all(
                self.pow(cand, (self.order - 1) // q) != 1 for q in facs
            ):
                g = cand
                break
        assert g is not None
        exp = [1] * (2 * (self.order - 1))
        log = [0] * self.order
        x = 1
        for i in range(self.order - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_generic(x, g)
        for i in range(self.order - 1, 2 * (self.order - 1)):
            exp[i] = exp[i - (self.order - 1)]
        self._exp = exp
        self._log = log

    # -- multiplicative structure -------------------------------------------

    def order_factors(self) -> dict[int, int]:
        if self._order_factors is None:
            self._order_factors = factorint(self.order - 1)
        return self._order_factors

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("multiplicative order of zero")
        n = self.order - 1
        order = n
        for q in self.order_factors():
            while order % q == 0 and self.pow(a, order // q) == 1:
                order //= q
        return order

    def random_element(self, stream) -> int:
        return next(stream) % self.order


class FieldElement:
    """Value in F_{p^e}; a plain immutable wrapper over an integer encoding."""

    __slots__ = ("ctx", "val")

    def __init__(self, ctx: FieldCtx, val: int):
        self.ctx = ctx
        self.val = val

    @property
    def coords(self) -> tuple[int, ...]:
        return self.ctx.decode(self.val)

    def is_zero(self) -> bool:
        return self.val == 0

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("mixed field contexts")
            return other.val
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.add(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.sub(self.val, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.sub(v, self.val))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.val))

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement(self.ctx, self.ctx.scalar_mul(other, self.val))
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.mul(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.mul(self.val, self.ctx.inv(v)))

    def __pow__(self, k: int):
        return FieldElement(self.ctx, self.ctx.pow(self.val, k))

    def inv(self):
        return FieldElement(self.ctx, self.ctx.inv(self.val))

    def trace(self) -> int:
        """Absolute field trace, as an F_p residue."""
        return self.ctx.trace_int(self.val)

    def mult_order(self) -> int:
        return self.ctx.mult_order(self.val)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.val == other.val
        if isinstance(other, int):
            return self.val == self.ctx.element(other).val
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.e, self.val))

    def __repr__(self):
        if self.ctx.e == 1:
            return f"{self.val}"
        terms = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*t" if c != 1 else "t")
            else:
                terms.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
        return "+".join(terms) if terms else "0"


def make_field(p: int, e: int = 1, modulus=None, seed: int = 0) -> FieldCtx:
    """Build F_{p^e}.

    If no modulus is supplied, a monic irreducible of degree e is found by a
    seeded random search and recorded on the context, so runs reproduce.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p >= P_CAP:
        raise ValueError(f"p must be below 2^31, got {p}")
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    if e == 1:
        return FieldCtx(p, 1, (0, 1))
    if modulus is not None:
        mod = [c % p for c in modulus]
        if len(mod) != e + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not _fp_poly_is_irreducible(mod, p):
            raise ValueError("supplied modulus is reducible")
        return FieldCtx(p, e, tuple(mod))
    return FieldCtx(p, e, _find_irreducible(p, e, seed))


def trace(a: FieldElement) -> int:
    """Field trace Tr(a) = sum of a^(p^j) over j < e, as an F_p residue."""
    return a.trace()


def mult_order(a: FieldElement) -> int:
    return a.mult_order()


def lies_in_proper_subfield(a: FieldElement) -> bool:
    """True iff a lies in F_{p^d} for some proper divisor d of e."""
    ctx = a.ctx
    if ctx.e == 1:
        return False
    for d in divisors_from_factors(factorint(ctx.e)):
        if d < ctx.e and ctx.pow(a.val, ctx.p**d) == a.val:
            return True
    return False


def are_conjugate(a: FieldElement, b: FieldElement) -> bool:
    """True iff b = a^(p^j) for some j < e (Galois conjugacy over F_p)."""
    if a.ctx != b.ctx:
        raise ValueError("conjugacy requires a common field context")
    x = a.val
    for _ in range(a.ctx.e):
        if x == b.val:
            return True
        x = a.ctx.frobenius(x)
    return False


def minimal_polynomial_coeffs(a: FieldElement) -> tuple[int, ...]:
    """Coefficients over F_p of the minimal polynomial of a (monic)."""
    ctx = a.ctx
    conjugates = []
    x = a.val
    while x not in conjugates:
        conjugates.append(x)
        x = ctx.frobenius(x)
    # expand prod (X - c) with coefficients in F_{p^e}
    coeffs = [1]
    for c in conjugates:
        nxt = [0] * (len(coeffs) + 1)
        for i, co in enumerate(coeffs):
            nxt[i + 1] = ctx.add(nxt[i + 1], co)
            nxt[i] = ctx.sub(nxt[i], ctx.mul(co, c))
        coeffs = nxt
    out = []
    for co in coeffs:
        dec = ctx.decode(co)
        assert all(c == 0 for c in dec[1:]), "minimal polynomial not over F_p"
        out.append(dec[0])
    return tuple(out)
