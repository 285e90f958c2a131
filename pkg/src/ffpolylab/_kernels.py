"""Fast dense polynomial arithmetic over prime fields.

Coefficient vectors are packed into one large integer with fixed-width slots
(Kronecker substitution); a single big-integer multiply then performs the
whole schoolbook convolution in C.  gmpy2's GMP integers take over the
multiplies (~6x faster than CPython ints at degree ~500).  Reduction against
a fixed monic modulus is Barrett-style: one multiply by the precomputed
power-series inverse of the reversed modulus yields the quotient.

Coefficient vectors at this layer are numpy int64 arrays (ascending order,
reduced mod p, trailing zeros trimmed); list in/out wrappers sit at the
bottom for the generic polynomial layer.  Everything here assumes e = 1.
"""

from __future__ import annotations

import numpy as np

try:
    import gmpy2

    _mpz = gmpy2.mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpz = int

_EMPTY = np.zeros(0, dtype=np.int64)


def np_trim(a: np.ndarray) -> np.ndarray:
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return a[:n]


def np_monic(a: np.ndarray, p: int) -> np.ndarray:
    if len(a) and a[-1] != 1:
        a = (a * pow(int(a[-1]), p - 2, p)) % p
    return a


def as_coeff_array(c) -> np.ndarray:
    return np.asarray(c, dtype=np.int64)


class PrimeKernel:
    """Packed multiply for F_p[x], sized for products up to a length cap."""

    __slots__ = ("p", "slot_bytes", "slot_bits", "cap", "_dtype")

    def __init__(self, p: int, cap: int):
        self.p = p
        self.cap = cap
        maxval = cap * (p - 1) * (p - 1)
        if maxval < 1 << 32:
            self.slot_bytes = 4
            self._dtype = "<u4"
        elif maxval < 1 << 64:
            self.slot_bytes = 8
            self._dtype = "<u8"
        else:
            raise ValueError("p too large for the packed kernel at this length")
        self.slot_bits = 8 * self.slot_bytes

    def pack(self, arr: np.ndarray):
        if len(arr) == 0:
            return _mpz(0)
        return _mpz(int.from_bytes(arr.astype(self._dtype).tobytes(), "little"))

    def unpack(self, val, nslots: int) -> np.ndarray:
        """nslots coefficients, reduced mod p."""
        if nslots <= 0:
            return _EMPTY
        b = int(val).to_bytes(nslots * self.slot_bytes, "little")
        arr = np.frombuffer(b, dtype=self._dtype).astype(np.int64)
        arr %= self.p
        return arr

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if len(a) == 0 or len(b) == 0:
            return _EMPTY
        prod = self.pack(a) * self.pack(b)
        return np_trim(self.unpack(prod, len(a) + len(b) - 1))


class ModulusKernel:
    """Modular arithmetic against a fixed monic modulus f of degree m."""

    def __init__(self, p: int, f):
        f = np_trim(as_coeff_array(f))
        if len(f) == 0 or f[-1] != 1:
            raise ValueError("modulus must be monic")
        self.p = p
        self.f = f
        self.m = len(f) - 1
        self.kern = PrimeKernel(p, 2 * max(self.m, 1) + 1)
        self.pf = self.kern.pack(f)
        self._inv_packed = None
        self._inv_prec = 0

    def _ensure_inverse(self, prec: int) -> None:
        if self._inv_prec >= prec:
            return
        rev = self.f[::-1]
        inv = np.ones(1, dtype=np.int64)
        k = 1
        kern = self.kern
        p = self.p
        while k < prec:
            k = min(2 * k, prec)
            t = kern.mul(rev[:k], inv)[:k]
            t = (-t) % p
            if len(t):
                t[0] = (t[0] + 2) % p
            else:
                t = np.array([2 % p], dtype=np.int64)
            inv = kern.mul(inv, t)[:k]
        if len(inv) < prec:
            inv = np.concatenate([inv, np.zeros(prec - len(inv), dtype=np.int64)])
        self._inv_packed = kern.pack(inv)
        self._inv_prec = prec

    def rem(self, c: np.ndarray) -> np.ndarray:
        c = np_trim(c)
        if len(c) <= self.m:
            return c
        dq = len(c) - 1 - self.m
        self._ensure_inverse(max(self.m, dq + 1))
        kern = self.kern
        top_rev = np.ascontiguousarray(c[::-1][: dq + 1])
        q_rev = kern.unpack(
            kern.pack(top_rev) * self._inv_packed, dq + 1
        )
        q = np.ascontiguousarray(q_rev[::-1])
        qf = kern.unpack(kern.pack(q) * self.pf, min(len(q) + self.m, self.m))
        r = c[: self.m] - qf[: self.m]
        r %= self.p
        return np_trim(r)

    def mulmod(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.rem(self.kern.mul(a, b))

    def sqmod(self, a: np.ndarray) -> np.ndarray:
        if len(a) == 0:
            return a
        pa = self.kern.pack(a)
        return self.rem(np_trim(self.kern.unpack(pa * pa, 2 * len(a) - 1)))

    def powmod(self, a, e: int) -> np.ndarray:
        a = self.rem(as_coeff_array(a))
        if e == 0:
            return np.ones(1, dtype=np.int64)
        result = a
        for bit in bin(e)[3:]:
            result = self.sqmod(result)
            if bit == "1":
                result = self.mulmod(result, a)
        return result

    def powers(self, h: np.ndarray, t: int) -> list[np.ndarray]:
        """[h^0, h^1, ..., h^t] mod f."""
        out = [np.ones(1, dtype=np.int64), self.rem(as_coeff_array(h))]
        for _ in range(2, t + 1):
            out.append(self.mulmod(out[-1], out[1]))
        return out

    def compose(self, g: np.ndarray, h_powers: list[np.ndarray]) -> np.ndarray:
        """g(h) mod f, Brent-Kung style, with h^0..h^t precomputed.

        Baby linear combinations run as one int64 matmul; t is a tuning
        knob (larger t = fewer modular multiplies per composition).
        """
        g = np_trim(as_coeff_array(g))
        if len(g) == 0:
            return _EMPTY
        t = len(h_powers) - 1
        m = self.m
        p = self.p
        nblocks = (len(g) + t - 1) // t
        H = np.zeros((t, m), dtype=np.int64)
        for j in range(t):
            hp = h_powers[j]
            H[j, : len(hp)] = hp
        B = np.zeros((nblocks, t), dtype=np.int64)
        for i in range(nblocks):
            chunk = g[i * t : (i + 1) * t]
            B[i, : len(chunk)] = chunk
        if t * (p - 1) * (p - 1) < 1 << 63:
            inner = (B @ H) % p
        else:
            inner = np.zeros((nblocks, m), dtype=np.int64)
            half = 1 << 16
            Bh, Bl = np.divmod(B, half)
            inner = ((Bh @ H % p) * (half % p) + Bl @ H) % p
        ht = h_powers[t]
        result = np_trim(inner[nblocks - 1].copy())
        for i in range(nblocks - 2, -1, -1):
            result = self.mulmod(result, ht)
            row = inner[i]
            if len(result) < m:
                out = row.copy()
                out[: len(result)] += result
                out[: len(result)] %= p
                result = np_trim(out)
            else:
                result = np_trim((result + row) % p)
        return result


def np_divmod(a: np.ndarray, b: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Quotient and remainder over F_p via top-down elimination."""
    a, b = np_trim(a), np_trim(b)
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    la, lb = len(a), len(b)
    if la < lb:
        return _EMPTY, a.copy()
    a = a % p
    q = np.zeros(la - lb + 1, dtype=np.int64)
    inv_lead = pow(int(b[-1]), p - 2, p)
    body = b[:-1]
    for i in range(la - 1, lb - 2, -1):
        c = int(a[i])
        if c:
            c = c * inv_lead % p
            sh = i - (lb - 1)
            q[sh] = c
            seg = a[sh : i]
            seg -= c * body
            seg %= p
    return q, np_trim(a[: lb - 1])


def np_rem(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np_divmod(a, b, p)[1]


def np_gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Monic gcd over F_p; ping-pong in-place Euclid elimination."""
    A = np_trim(np.asarray(a, dtype=np.int64) % p).copy()
    B = np_trim(np.asarray(b, dtype=np.int64) % p).copy()
    if len(A) < len(B):
        A, B = B, A
    while len(B):
        lb = len(B)
        inv_lead = pow(int(B[-1]), p - 2, p)
        body = B[: lb - 1]
        for i in range(len(A) - 1, lb - 2, -1):
            c = int(A[i])
            if c:
                c = c * inv_lead % p
                seg = A[i - lb + 1 : i]
                seg -= c * body
                seg %= p
        n = lb - 1
        while n and not A[n - 1]:
            n -= 1
        A, B = B, A[:n]
    return np_monic(A, p)


# -- list-level entry points for the generic polynomial layer ----------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


_NP_DISPATCH = 24  # above this length the numpy elimination path wins


def list_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    kern = PrimeKernel(p, min(len(a), len(b)))
    return kern.mul(as_coeff_array(a), as_coeff_array(b)).tolist()


def list_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    """Division in F_p[x] on int lists (ascending coefficients)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) >= _NP_DISPATCH:
        q, r = np_divmod(as_coeff_array(a), as_coeff_array(b), p)
        return q.tolist(), r.tolist()
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    if da < db:
        return [], a
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * (da - db + 1)
    for i in range(da - db, -1, -1):
        c = a[i + db] % p
        if c:
            c = c * inv_lead % p
            q[i] = c
            for j in range(db + 1):
                a[i + j] = (a[i + j] - c * b[j]) % p
    return q, _trim(a[:db])


def list_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic gcd in F_p[x] on int lists."""
    if max(len(a), len(b)) >= _NP_DISPATCH:
        return np_gcd(as_coeff_array(a), as_coeff_array(b), p).tolist()
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = list_divmod(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a
