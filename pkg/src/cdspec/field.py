"""Arithmetic, characters, and character sums over GF(p^n).

Field elements are encoded as integers in [0, p^n): the little-endian
base-p digits of the encoding are the coefficients of the residue
polynomial.  A FieldContext carries dense log/antilog, trace, and
quadratic-character tables whenever the field order fits under the
table cap; all operations fall back to polynomial arithmetic otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    CharTwoUnsupported,
    DivisionByZero,
    FieldTooLarge,
    LeadingCoeffZero,
    NotPrime,
    ParseError,
    ReducibleModulus,
    WrongCharacteristic,
)

DEFAULT_ENUM_CAP = 1 << 22
DEFAULT_TABLE_CAP = 1 << 22

_VEC_CHUNK = 1 << 16


# ---------------------------------------------------------------------------
# Integer helpers
# ---------------------------------------------------------------------------

def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def prime_factors(m: int) -> list[int]:
    """Distinct prime factors of m, ascending."""
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out.append(m)
    return out


def encode_digits(digits: Sequence[int], p: int) -> int:
    v = 0
    for d in reversed(digits):
        v = v * p + d
    return v


def decode_digits(value: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        value, d = divmod(value, p)
        out.append(d)
    return out


# ---------------------------------------------------------------------------
# Polynomials over GF(p), as coefficient lists (low to high, no trailing zeros)
# ---------------------------------------------------------------------------

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df and a:
        k = len(a) - 1 - df
        c = (a[-1] * inv_lead) % p
        for i, fi in enumerate(f):
            a[k + i] = (a[k + i] - c * fi) % p
        _ptrim(a)
    return a


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    acc = _pmod(base, f, p)
    while e > 0:
        if e & 1:
            result = _pmod(_pmul(result, acc, p), f, p)
        acc = _pmod(_pmul(acc, acc, p), f, p)
        e >>= 1
    return result


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Rabin test for a monic polynomial over GF(p)."""
    f = _ptrim(list(coeffs))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    # x^(p^m) mod f by iterated Frobenius
    h = list(x)
    powers = {}
    for m in range(1, n + 1):
        h = _ppowmod(h, p, f, p)
        powers[m] = list(h)
    # x^(p^n) must reduce to x
    if powers[n] != x:
        return False
    for r in prime_factors(n):
        g = list(powers[n // r])
        # gcd(x^(p^(n/r)) - x, f) must be 1
        g = list(g)
        while len(g) < 2:
            g.append(0)
        g[1] = (g[1] - 1) % p
        if len(_pgcd(f, _ptrim(g), p)) != 1:
            return False
    return True


def find_irreducible(p: int, n: int, index: int = 0) -> tuple[int, ...]:
    """index-th monic irreducible of degree n, ordered by the integer value
    of the non-leading coefficient vector (constant term varying fastest)."""
    seen = 0
    for k in range(p ** n):
        coeffs = decode_digits(k, p, n) + [1]
        if is_irreducible(coeffs, p):
            if seen == index:
                return tuple(coeffs)
            seen += 1
    raise ReducibleModulus(f"no irreducible of degree {n} over GF({p}) at index {index}")


# ---------------------------------------------------------------------------
# Field specification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """Characteristic p, extension degree n, optional modulus (coefficients
    low to high, length n+1, monic).  Modulus is auto-selected when absent."""

    p: int
    n: int
    modulus: Optional[tuple[int, ...]] = None


def parse_field_spec(text: str) -> FieldSpec:
    """Parse "p^n" or "p^n/c0,c1,...,cn" (modulus coefficients low to high)."""
    body, _, mod_part = text.partition("/")
    try:
        p_str, _, n_str = body.partition("^")
        p = int(p_str)
        n = int(n_str) if n_str else 1
    except ValueError as exc:
        raise ParseError(f"bad field spec {text!r}") from exc
    modulus = None
    if mod_part:
        try:
            modulus = tuple(int(c) for c in mod_part.split(","))
        except ValueError as exc:
            raise ParseError(f"bad modulus in {text!r}") from exc
    return FieldSpec(p=p, n=n, modulus=modulus)


def format_field_spec(ctx: "FieldContext") -> str:
    return f"{ctx.p}^{ctx.n}/" + ",".join(str(c) for c in ctx.modulus)


# ---------------------------------------------------------------------------
# Field context
# ---------------------------------------------------------------------------

class FieldContext:
    """Immutable handle on a concrete GF(p^n).  Construct via build_context."""

    def __init__(self, spec: FieldSpec, modulus: tuple[int, ...], table_cap: int):
        self.spec = FieldSpec(spec.p, spec.n, modulus)
        self.p = spec.p
        self.n = spec.n
        self.q = spec.p ** spec.n
        self.modulus = modulus
        self.neg_one = 1 if self.p == 2 else self.p - 1
        self._mod_list = list(modulus)
        # x^(n+t) mod modulus for t in [0, n-2], as digit rows
        self._red_rows = self._reduction_rows()
        self._q1_factors = prime_factors(self.q - 1) if self.q > 2 else []
        self.generator = self._find_generator()
        self.has_tables = self.q <= table_cap
        self.exp = None
        self.log = None
        self.chi_table = None
        self.trace_table = None
        self.succ = None
        self.negt = None
        self._pow_cache: dict[int, np.ndarray] = {}
        if self.has_tables:
            self._build_tables()

    # -- construction internals ------------------------------------------

    def _reduction_rows(self) -> list[list[int]]:
        p, n = self.p, self.n
        rows = []
        cur = _pmod([0] * n + [1], self._mod_list, p)  # x^n mod f
        for _ in range(max(n - 1, 0)):
            row = cur + [0] * (n - len(cur))
            rows.append(row[:n])
            cur = _pmod([0] + cur, self._mod_list, p)  # multiply by x
        return rows

    def _find_generator(self) -> int:
        order = self.q - 1
        for cand in range(1, self.q):
            if all(self._pow_scalar(cand, order // r) != 1 for r in self._q1_factors):
                return cand
        raise ReducibleModulus(f"no generator found; modulus {self.modulus} is not irreducible")

    def _build_tables(self) -> None:
        p, n, q = self.p, self.n, self.q
        order = q - 1
        block = math.isqrt(order) + 1
        g1 = np.empty(block, dtype=np.int64)
        cur = 1
        for j in range(block):
            g1[j] = cur
            cur = self._mul_scalar(cur, self.generator)
        gb = int(g1[-1])
        gb = self._mul_scalar(gb, self.generator)  # generator^block
        n_blocks = (order + block - 1) // block
        g2 = np.empty(n_blocks, dtype=np.int64)
        cur = 1
        for j in range(n_blocks):
            g2[j] = cur
            cur = self._mul_scalar(cur, gb)
        idx = np.arange(order, dtype=np.int64)
        exp = self.vec_mul_poly(g2[idx // block], g1[idx % block])
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = idx
        if log[0] != -1 or int((log[1:] >= 0).sum()) != order:
            raise ReducibleModulus(
                f"element {self.generator} does not generate GF({p}^{n})^*"
            )
        self.exp = exp
        self.log = log
        X = np.arange(q, dtype=np.int64)
        d0 = X % p
        self.succ = X - d0 + (d0 + 1) % p
        self.negt = self.vec_sub(np.int64(0), X)
        if p != 2:
            chi = np.zeros(q, dtype=np.int64)
            chi[exp] = 1 - 2 * (idx & 1)
            self.chi_table = chi
        # absolute trace: sum of Frobenius iterates
        frob = np.empty(q, dtype=np.int64)
        frob[0] = 0
        frob[exp] = exp[(idx * p) % order]
        acc = X.copy()
        cur_arr = X
        for _ in range(n - 1):
            cur_arr = frob[cur_arr]
            acc = self.vec_add(acc, cur_arr)
        self.trace_table = acc

    # -- scalar arithmetic ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        out, pk = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * pk
            pk *= p
        return out

    def sub(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        out, pk = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da - db) % p) * pk
            pk *= p
        return out

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.log is not None:
            return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])
        return self._mul_scalar(a, b)

    def _mul_scalar(self, a: int, b: int) -> int:
        p, n = self.p, self.n
        prod = _pmul(decode_digits(a, p, n), decode_digits(b, p, n), p)
        return encode_digits(_pmod(prod, self._mod_list, p), p)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0")
        if self.log is not None:
            return int(self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)])
        return self._pow_scalar(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero("inverse of 0")
            return 0
        e %= self.q - 1
        if self.log is not None:
            return int(self.exp[(self.log[a] * e) % (self.q - 1)])
        return self._pow_scalar(a, e)

    def _pow_scalar(self, a: int, e: int) -> int:
        result = 1
        acc = a
        while e > 0:
            if e & 1:
                result = self._mul_scalar(result, acc)
            acc = self._mul_scalar(acc, acc)
            e >>= 1
        return result

    def trace(self, x: int) -> int:
        if self.trace_table is not None:
            return int(self.trace_table[x])
        acc, cur = x, x
        for _ in range(self.n - 1):
            cur = self.pow(cur, self.p)
            acc = self.add(acc, cur)
        return acc

    def chi(self, x: int) -> int:
        if self.p == 2:
            raise CharTwoUnsupported("quadratic character needs odd characteristic")
        if self.chi_table is not None:
            return int(self.chi_table[x])
        if x == 0:
            return 0
        t = self.pow(x, (self.q - 1) // 2)
        return 1 if t == 1 else -1

    def element_from_int(self, k: int) -> int:
        """Prime-subfield constant k mod p."""
        return k % self.p

    # -- vectorised arithmetic on encoding arrays -------------------------

    def vec_add(self, a, b):
        p = self.p
        if p == 2:
            return np.bitwise_xor(a, b)
        ra = np.asarray(a, dtype=np.int64)
        rb = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(ra, rb).shape, dtype=np.int64)
        pk = 1
        for _ in range(self.n):
            out += ((ra % p + rb % p) % p) * pk
            ra = ra // p
            rb = rb // p
            pk *= p
        return out

    def vec_sub(self, a, b):
        p = self.p
        if p == 2:
            return np.bitwise_xor(a, b)
        ra = np.asarray(a, dtype=np.int64)
        rb = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(ra, rb).shape, dtype=np.int64)
        pk = 1
        for _ in range(self.n):
            out += ((ra % p - rb % p) % p) * pk
            ra = ra // p
            rb = rb // p
            pk *= p
        return out

    def vec_mul_poly(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise field product by polynomial convolution; table-free."""
        p, n = self.p, self.n
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.empty(a.shape, dtype=np.int64)
        for lo in range(0, a.size, _VEC_CHUNK):
            hi = min(lo + _VEC_CHUNK, a.size)
            out[lo:hi] = self._mul_poly_chunk(a[lo:hi], b[lo:hi])
        return out

    def _mul_poly_chunk(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        p, n = self.p, self.n
        if n == 1:
            return (a * b) % p
        da = [(a // p ** i) % p for i in range(n)]
        db = [(b // p ** i) % p for i in range(n)]
        conv = [np.zeros(a.shape, dtype=np.int64) for _ in range(2 * n - 1)]
        for i in range(n):
            for j in range(n):
                conv[i + j] += da[i] * db[j]
        for t in range(n - 2, -1, -1):
            top = conv[n + t] % p
            row = self._red_rows[t]
            for j in range(n):
                if row[j]:
                    conv[j] += top * row[j]
        out = np.zeros(a.shape, dtype=np.int64)
        pk = 1
        for j in range(n):
            out += (conv[j] % p) * pk
            pk *= p
        return out

    def vec_scale(self, arr: np.ndarray, c: int) -> np.ndarray:
        """c * arr elementwise (tables required)."""
        self.require_tables()
        if c == 0:
            return np.zeros_like(arr)
        if c == 1:
            return arr.copy()
        out = np.zeros_like(arr)
        nz = arr != 0
        out[nz] = self.exp[(self.log[arr[nz]] + self.log[c]) % (self.q - 1)]
        return out

    def pow_table(self, d: int) -> np.ndarray:
        """x^d for every x; d must be in [1, q-1]."""
        self.require_tables()
        if not 1 <= d <= self.q - 1:
            raise ValueError(f"exponent {d} out of range [1, {self.q - 1}]")
        cached = self._pow_cache.get(d)
        if cached is not None:
            return cached
        order = self.q - 1
        idx = np.arange(order, dtype=np.int64)
        t = np.zeros(self.q, dtype=np.int64)
        t[self.exp] = self.exp[(idx * d) % order]
        if len(self._pow_cache) >= 4:
            self._pow_cache.pop(next(iter(self._pow_cache)))
        self._pow_cache[d] = t
        return t

    def require_tables(self) -> None:
        if not self.has_tables:
            raise FieldTooLarge(
                f"GF({self.p}^{self.n}) exceeds the table cap; enumeration unavailable"
            )

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        return f"FieldContext(GF({self.p}^{self.n}), modulus={self.modulus})"


def build_context(
    spec: FieldSpec,
    *,
    enum_cap: int = DEFAULT_ENUM_CAP,
    table_cap: int = DEFAULT_TABLE_CAP,
) -> FieldContext:
    """Validate spec, select/verify the modulus, and build a FieldContext."""
    if not is_prime(spec.p):
        raise NotPrime(f"p must be prime, got {spec.p}")
    if spec.n < 1:
        raise ParseError(f"degree must be >= 1, got {spec.n}")
    q = spec.p ** spec.n
    if q > enum_cap:
        raise FieldTooLarge(f"q = {spec.p}^{spec.n} exceeds enumeration cap {enum_cap}")
    if spec.modulus is None:
        modulus = find_irreducible(spec.p, spec.n)
    else:
        modulus = tuple(int(c) % spec.p for c in spec.modulus)
        if len(modulus) != spec.n + 1 or modulus[-1] != 1:
            raise ReducibleModulus(
                f"modulus must be monic of degree {spec.n}: {spec.modulus}"
            )
        if not is_irreducible(modulus, spec.p):
            raise ReducibleModulus(f"modulus {spec.modulus} is reducible over GF({spec.p})")
    return FieldContext(spec, modulus, table_cap)


# ---------------------------------------------------------------------------
# Spec-level operations
# ---------------------------------------------------------------------------

def ff_add(ctx: FieldContext, a: int, b: int) -> int:
    return ctx.add(a, b)


def ff_sub(ctx: FieldContext, a: int, b: int) -> int:
    return ctx.sub(a, b)


def ff_mul(ctx: FieldContext, a: int, b: int) -> int:
    return ctx.mul(a, b)


def ff_inv(ctx: FieldContext, a: int) -> int:
    return ctx.inv(a)


def ff_pow(ctx: FieldContext, a: int, e: int) -> int:
    return ctx.pow(a, e)


def trace_abs(ctx: FieldContext, x: int) -> int:
    """Absolute trace x + x^p + ... + x^(p^(n-1)), a prime-field value."""
    return ctx.trace(x)


def quad_char(ctx: FieldContext, x: int) -> int:
    """Quadratic character: +1 for nonzero squares, -1 for nonsquares, 0 at 0."""
    return ctx.chi(x)


def gcd_pk1(p: int, k: int, n: int) -> int:
    """gcd(p^k + 1, p^n - 1) via the three-branch closed form."""
    if p == 2:
        return (2 ** math.gcd(2 * k, n) - 1) // (2 ** math.gcd(k, n) - 1)
    if (n // math.gcd(n, k)) % 2 == 1:
        return 2
    return p ** math.gcd(k, n) + 1


def quadratic_solution_count(ctx: FieldContext, a: int, b: int) -> int:
    """Number of roots of x^2 + a*x + b in the field (0, 1, or 2)."""
    if ctx.p == 2:
        if a == 0:
            return 1  # x -> x^2 is a bijection in characteristic 2
        t = ctx.mul(b, ctx.inv(ctx.mul(a, a)))
        return 2 if ctx.trace(t) == 0 else 0
    four = 4 % ctx.p
    disc = ctx.sub(ctx.mul(a, a), ctx.mul(four, b))
    s = ctx.chi(disc)
    if s == 1:
        return 2
    if s == 0:
        return 1
    return 0


def char_sum_quadratic(ctx: FieldContext, a2: int, a1: int, a0: int) -> int:
    """Sum of chi(a2*x^2 + a1*x + a0) over the field, in closed form."""
    if ctx.p == 2:
        raise CharTwoUnsupported("character sums need odd characteristic")
    if a2 == 0:
        raise LeadingCoeffZero("leading coefficient must be nonzero")
    four = 4 % ctx.p
    disc = ctx.sub(ctx.mul(a1, a1), ctx.mul(four, ctx.mul(a0, a2)))
    if disc == 0:
        return (ctx.q - 1) * ctx.chi(a2)
    return -ctx.chi(a2)


def gamma_5n_direct(ctx: FieldContext) -> int:
    """Sum of chi(x*(x-1)*(x+1)) over GF(5^n), by direct enumeration."""
    if ctx.p != 5:
        raise WrongCharacteristic(f"requires characteristic 5, got {ctx.p}")
    ctx.require_tables()
    X = np.arange(ctx.q, dtype=np.int64)
    cubes = ctx.pow_table(3)
    vals = ctx.vec_sub(cubes, X)  # x^3 - x = x(x-1)(x+1)
    return int(ctx.chi_table[vals].sum(dtype=np.int64))


def partition_by_chi(ctx: FieldContext) -> tuple[int, int, int, int]:
    """Counts of x outside {0, -1} by (chi(x), chi(x+1)) sign pattern,
    ordered (+,+), (+,-), (-,+), (-,-)."""
    if ctx.p == 2:
        raise CharTwoUnsupported("partition needs odd characteristic")
    ctx.require_tables()
    X = np.arange(ctx.q, dtype=np.int64)
    cx = ctx.chi_table[X]
    cy = ctx.chi_table[ctx.succ]
    mask = (X != 0) & (X != ctx.neg_one)
    out = []
    for i, j in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        out.append(int(np.count_nonzero(mask & (cx == i) & (cy == j))))
    return tuple(out)
