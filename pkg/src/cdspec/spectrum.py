"""Exhaustive c-differential statistics of power maps x^d.

The single difference function Delta_c(x) = (x+1)^d - c*x^d determines the
whole c-DDT of a power map: row a scales to row 1, and the row-0 counts are
controlled by gcd(d, q-1).  Everything here is one histogram pass over the
field, so costs are O(q) per (d, c).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as _field
from typing import Optional

import numpy as np

from .errors import BudgetExceeded
from .field import FieldContext

DEFAULT_N4_BUDGET = 625


def normalize_exponent(d: int, q: int) -> int:
    """Reduce d into [1, q-1]; x^d depends only on d mod (q-1) there."""
    if d <= 0:
        raise ValueError(f"exponent must be positive, got {d}")
    if q == 2:
        return 1
    r = d % (q - 1)
    return q - 1 if r == 0 else r


@dataclass
class PowerMapCase:
    """A power map x^d over a fixed field, differentiated with multiplier c."""

    ctx: FieldContext
    d: int
    c: int

    def __post_init__(self) -> None:
        self.d = normalize_exponent(self.d, self.ctx.q)
        if not 0 <= self.c < self.ctx.q:
            raise ValueError(f"c encoding {self.c} outside [0, {self.ctx.q})")
        self._hist: Optional[np.ndarray] = None

    def delta_values(self) -> np.ndarray:
        """Delta_c(x) for every x, as an encoding array."""
        ctx = self.ctx
        ctx.require_tables()
        powd = ctx.pow_table(self.d)
        shifted = powd[ctx.succ]  # (x+1)^d
        return ctx.vec_sub(shifted, ctx.vec_scale(powd, self.c))

    def delta_histogram(self) -> np.ndarray:
        """Counts of Delta_c preimages per output value b."""
        if self._hist is None:
            self._hist = np.bincount(self.delta_values(), minlength=self.ctx.q)
        return self._hist


@dataclass
class CDiffSpectrum:
    """Sparse multiset {i -> omega_i}; omega_0 is always materialised."""

    q: int
    d: int
    c: int
    uniformity: int
    omega: dict[int, int]

    def positive(self) -> dict[int, int]:
        return {i: w for i, w in self.omega.items() if w > 0}

    def sum_omega(self) -> int:
        return sum(self.omega.values())

    def sum_i_omega(self) -> int:
        return sum(i * w for i, w in self.omega.items())

    def sum_i2_omega(self) -> int:
        return sum(i * i * w for i, w in self.omega.items())

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "d": self.d,
            "c": self.c,
            "uniformity": self.uniformity,
            "omega": {str(i): w for i, w in sorted(self.omega.items())},
        }


def c_delta(case: PowerMapCase, b: int) -> int:
    """Number of x with (x+1)^d - c*x^d = b."""
    return int(case.delta_histogram()[b])


def c_ddt_entry(case: PowerMapCase, a: int, b: int) -> int:
    """c-DDT entry at (a, b).  Row a != 0 scales to row 1; row 0 counts
    solutions of (1-c)*x^d = b."""
    ctx = case.ctx
    if a != 0:
        scale = ctx.inv(ctx.pow(a, case.d))
        return c_delta(case, ctx.mul(b, scale))
    one_minus_c = ctx.sub(1, case.c)
    if one_minus_c == 0:
        return ctx.q if b == 0 else 0
    t = ctx.mul(b, ctx.inv(one_minus_c))
    if t == 0:
        return 1
    e = math.gcd(case.d, ctx.q - 1)
    return e if ctx.pow(t, (ctx.q - 1) // e) == 1 else 0


def c_spectrum(case: PowerMapCase) -> CDiffSpectrum:
    """Full spectrum of the a = 1 row: omega_i = #{b : c_delta(b) = i}."""
    hist = case.delta_histogram()
    counts = np.bincount(hist)
    uniformity = int(hist.max())
    omega = {0: int(counts[0])}
    for i in range(1, len(counts)):
        if counts[i]:
            omega[i] = int(counts[i])
    spec = CDiffSpectrum(q=case.ctx.q, d=case.d, c=case.c, uniformity=uniformity, omega=omega)
    if spec.sum_omega() != spec.q or spec.sum_i_omega() != spec.q:
        raise AssertionError(f"spectrum fails the counting identity: {spec}")
    return spec


def c_uniformity(case: PowerMapCase) -> tuple[int, str]:
    """Uniformity (max spectrum index) plus PcN/APcN classification."""
    u = c_spectrum(case).uniformity
    if u == 1:
        label = "PcN"
    elif u == 2:
        label = "APcN"
    else:
        label = f"(c,{u})-uniform"
    return u, label


def n4_bruteforce(case: PowerMapCase, budget: int = DEFAULT_N4_BUDGET) -> int:
    """Count quadruples with x1 - x2 + x3 - x4 = 0 and
    x1^d - c*x2^d + c*x3^d - x4^d = 0, by exhaustive enumeration.

    Pairs (x1, x2) and (x4, x3) sharing the difference alpha = x1 - x2 are
    enumerated per alpha; matching quadruples are counted through the
    per-alpha value histograms.
    """
    ctx = case.ctx
    q = ctx.q
    if q > budget:
        raise BudgetExceeded(f"N4 enumeration over q={q} exceeds budget {budget}")
    ctx.require_tables()
    powd = ctx.pow_table(case.d)
    c_powd = ctx.vec_scale(powd, case.c)
    X = np.arange(q, dtype=np.int64)
    total = 0
    for alpha in range(q):
        x2 = ctx.vec_sub(X, np.int64(alpha))
        vals = ctx.vec_sub(powd, c_powd[x2])  # x^d - c*(x-alpha)^d over all x
        h = np.bincount(vals, minlength=q)
        total += int(np.dot(h, h))
    return total


@dataclass
class IdentityReport:
    """Outcome of the spectrum counting identities."""

    eq1_ok: bool
    eq2_ok: Optional[bool]  # None when the quadruple count was not checked
    messages: list[str] = _field(default_factory=list)


def check_identities(spectrum: CDiffSpectrum, n4: Optional[int] = None) -> IdentityReport:
    """Verify sum(omega) = sum(i*omega) = q, and when a quadruple count is
    supplied, sum(i^2*omega) = (N4 - 1)/(q - 1) - gcd(d, q - 1)."""
    q = spectrum.q
    messages = []
    eq1_ok = True
    if spectrum.sum_omega() != q:
        eq1_ok = False
        messages.append(f"sum(omega) = {spectrum.sum_omega()} != q = {q}")
    if spectrum.sum_i_omega() != q:
        eq1_ok = False
        messages.append(f"sum(i*omega) = {spectrum.sum_i_omega()} != q = {q}")
    eq2_ok: Optional[bool] = None
    if n4 is not None:
        if spectrum.c == 1:
            messages.append("second identity undefined for c = 1; skipped")
        else:
            e = math.gcd(spectrum.d, q - 1)
            lhs = spectrum.sum_i2_omega()
            eq2_ok = (n4 - 1) % (q - 1) == 0 and lhs == (n4 - 1) // (q - 1) - e
            if not eq2_ok:
                messages.append(
                    f"sum(i^2*omega) = {lhs} but (N4-1)/(q-1) - gcd(d,q-1) = "
                    f"({n4}-1)/{q - 1} - {e}"
                )
    return IdentityReport(eq1_ok=eq1_ok, eq2_ok=eq2_ok, messages=messages)
