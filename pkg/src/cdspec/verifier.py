"""Brute-force vs. closed-form verification, sweeps, scans, and identity fuzzing."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

from .closed_forms import SpectrumPrediction, dispatch
from .errors import BudgetExceeded
from .field import (
    DEFAULT_ENUM_CAP,
    DEFAULT_TABLE_CAP,
    FieldContext,
    FieldSpec,
    build_context,
)
from .spectrum import (
    DEFAULT_N4_BUDGET,
    CDiffSpectrum,
    PowerMapCase,
    c_spectrum,
    check_identities,
    n4_bruteforce,
)

MATCH = "MATCH"
MISMATCH = "MISMATCH"
NO_PREDICTOR = "NO_PREDICTOR"
PREDICTOR_INCONSISTENT = "PREDICTOR_INCONSISTENT"


class SplitMix64:
    """splitmix64 stream; fixed so seeded runs reproduce across implementations."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next() % bound


@dataclass
class VerifyReport:
    p: int
    n: int
    modulus: tuple[int, ...]
    d: int
    c: int
    computed: CDiffSpectrum
    predictions: list[SpectrumPrediction]
    n4: Optional[int]
    eq1_ok: bool
    eq2_ok: Optional[bool]  # None = skipped (over budget or c = 1)
    verdict: str
    matched_theorem: Optional[str]

    def as_dict(self) -> dict:
        return {
            "case": {
                "p": self.p,
                "n": self.n,
                "modulus": list(self.modulus),
                "d": self.d,
                "c": self.c,
            },
            "computed": self.computed.as_dict(),
            "predictions": [pr.as_dict() for pr in self.predictions],
            "n4": self.n4,
            "eq1": self.eq1_ok,
            "eq2": self.eq2_ok,
            "verdict": self.verdict,
            "matched": self.matched_theorem,
        }


def verify_with_context(
    ctx: FieldContext, d: int, c: int, *, n4_budget: int = DEFAULT_N4_BUDGET
) -> VerifyReport:
    """Compute the spectrum, run the dispatcher, and compare multisets.

    Zero-count entries are ignored in the comparison.  The quadruple-count
    identity is checked when c != 1 and q fits the budget, else skipped.
    """
    case = PowerMapCase(ctx, d, c)
    computed = c_spectrum(case)
    preds = dispatch(ctx, case.d, c)
    n4 = None
    if c != 1 and ctx.q <= n4_budget:
        n4 = n4_bruteforce(case, budget=n4_budget)
    idrep = check_identities(computed, n4)
    target = computed.positive()
    matched = next(
        (pr for pr in preds if pr.consistent and pr.positive() == target), None
    )
    if not preds:
        verdict = NO_PREDICTOR
    elif matched is not None:
        verdict = MATCH
    elif all(not pr.consistent for pr in preds):
        verdict = PREDICTOR_INCONSISTENT
    else:
        verdict = MISMATCH
    return VerifyReport(
        p=ctx.p,
        n=ctx.n,
        modulus=ctx.modulus,
        d=case.d,
        c=c,
        computed=computed,
        predictions=preds,
        n4=n4,
        eq1_ok=idrep.eq1_ok,
        eq2_ok=idrep.eq2_ok,
        verdict=verdict,
        matched_theorem=matched.theorem.value if matched else None,
    )


def verify_case(
    p: int,
    n: int,
    d: int,
    c: int,
    *,
    modulus: Optional[tuple[int, ...]] = None,
    n4_budget: int = DEFAULT_N4_BUDGET,
    enum_cap: int = DEFAULT_ENUM_CAP,
    table_cap: int = DEFAULT_TABLE_CAP,
) -> VerifyReport:
    ctx = build_context(FieldSpec(p, n, modulus), enum_cap=enum_cap, table_cap=table_cap)
    return verify_with_context(ctx, d, c, n4_budget=n4_budget)


@dataclass
class SweepResult:
    p: int
    n: int
    modulus: tuple[int, ...]
    d: int
    reports: list[VerifyReport]
    tallies: dict[str, int]

    def as_dict(self) -> dict:
        return {
            "case": {"p": self.p, "n": self.n, "modulus": list(self.modulus), "d": self.d},
            "tallies": self.tallies,
            "reports": [r.as_dict() for r in self.reports],
        }


def sweep_c(
    p: int,
    n: int,
    d: int,
    *,
    modulus: Optional[tuple[int, ...]] = None,
    n4_budget: int = 0,
    enum_cap: int = DEFAULT_ENUM_CAP,
    table_cap: int = DEFAULT_TABLE_CAP,
    ctx: Optional[FieldContext] = None,
) -> SweepResult:
    """One verify report per c in GF(q) except c = 1.

    The quadruple-count check defaults off here (it multiplies the sweep cost
    by q); pass n4_budget to enable it.
    """
    if ctx is None:
        ctx = build_context(FieldSpec(p, n, modulus), enum_cap=enum_cap, table_cap=table_cap)
    reports = []
    for c in range(ctx.q):
        if c == 1:
            continue
        reports.append(verify_with_context(ctx, d, c, n4_budget=n4_budget))
    tallies = {
        "pcn": sum(1 for r in reports if r.computed.uniformity == 1),
        "apcn": sum(1 for r in reports if r.computed.uniformity == 2),
        MATCH: sum(1 for r in reports if r.verdict == MATCH),
        MISMATCH: sum(1 for r in reports if r.verdict == MISMATCH),
        NO_PREDICTOR: sum(1 for r in reports if r.verdict == NO_PREDICTOR),
        PREDICTOR_INCONSISTENT: sum(
            1 for r in reports if r.verdict == PREDICTOR_INCONSISTENT
        ),
    }
    return SweepResult(
        p=p, n=n, modulus=ctx.modulus, d=reports[0].d if reports else d,
        reports=reports, tallies=tallies,
    )


def cyclotomic_class(p: int, q: int, d: int) -> list[int]:
    """The orbit of d under multiplication by p mod (q-1), ascending.

    Residue 0 mod (q-1) stands for the exponent q-1 itself.
    """
    order = q - 1
    if order == 1:
        return [1]
    members = set()
    cur = d % order
    while (cur or order) not in members:
        members.add(cur or order)
        cur = (cur * p) % order
    return sorted(members)


def cyclotomic_representatives(p: int, q: int) -> Iterator[int]:
    """Smallest member of each orbit {d * p^i mod (q-1)} over d in [1, q-1]."""
    order = q - 1
    if order == 1:
        yield 1
        return
    seen = bytearray(order)
    for d in range(1, q):
        r = d % order
        if seen[r]:
            continue
        cur = r
        while not seen[cur]:
            seen[cur] = 1
            cur = (cur * p) % order
        yield d


@dataclass
class ScanResult:
    p: int
    n: int
    modulus: tuple[int, ...]
    c: int
    max_uniformity: int
    rows: list[dict]  # {"d": ..., "uniformity": ..., "omega": {...}}

    def as_dict(self) -> dict:
        return {
            "case": {
                "p": self.p,
                "n": self.n,
                "modulus": list(self.modulus),
                "c": self.c,
                "max_uniformity": self.max_uniformity,
            },
            "rows": self.rows,
        }


def scan_exponents(
    p: int,
    n: int,
    c: int,
    max_uniformity: int,
    *,
    modulus: Optional[tuple[int, ...]] = None,
    enum_cap: int = DEFAULT_ENUM_CAP,
    table_cap: int = DEFAULT_TABLE_CAP,
    ctx: Optional[FieldContext] = None,
) -> ScanResult:
    """All cyclotomic-class representatives d whose uniformity stays under
    the threshold, with their spectra."""
    if ctx is None:
        ctx = build_context(FieldSpec(p, n, modulus), enum_cap=enum_cap, table_cap=table_cap)
    rows = []
    for d in cyclotomic_representatives(p, ctx.q):
        spec = c_spectrum(PowerMapCase(ctx, d, c))
        if spec.uniformity <= max_uniformity:
            rows.append(
                {
                    "d": d,
                    "class": cyclotomic_class(p, ctx.q, d),
                    "uniformity": spec.uniformity,
                    "omega": {str(i): w for i, w in sorted(spec.omega.items())},
                }
            )
    return ScanResult(
        p=p, n=n, modulus=ctx.modulus, c=c, max_uniformity=max_uniformity, rows=rows
    )


_FUZZ_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass
class FuzzReport:
    seed: int
    count: int
    budget: int
    cases: list[dict]
    failures: list[dict]
    has_char2_case: bool
    has_gcd_gt1_case: bool

    @property
    def all_ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "count": self.count,
            "budget": self.budget,
            "passes": self.count - len(self.failures),
            "failures": self.failures,
            "has_char2_case": self.has_char2_case,
            "has_gcd_gt1_case": self.has_gcd_gt1_case,
            "cases": self.cases,
        }


def fuzz_identities(seed: int, count: int, budget: int = 343) -> FuzzReport:
    """Random (p, n, d, c != 1) cases with q <= budget; both spectrum
    identities are checked exactly, the second via the quadruple count."""
    if budget < 4:
        raise BudgetExceeded(f"fuzz budget must be at least 4, got {budget}")
    rng = SplitMix64(seed)
    ctx_cache: dict[tuple[int, int], FieldContext] = {}
    cases = []
    failures = []
    has_char2 = False
    has_gcd = False
    for _ in range(count):
        p = _FUZZ_PRIMES[rng.below(len(_FUZZ_PRIMES))]
        n_min = 2 if p == 2 else 1  # q = 2 leaves no exponent in [1, q-2]
        n_max = n_min
        while p ** (n_max + 1) <= budget:
            n_max += 1
        n = n_min + rng.below(n_max - n_min + 1)
        q = p ** n
        d = 1 + rng.below(q - 2)
        u = rng.below(q - 1)
        c = u if u == 0 else u + 1  # uniform over GF(q) \ {1}
        ctx = ctx_cache.get((p, n))
        if ctx is None:
            ctx = build_context(FieldSpec(p, n))
            ctx_cache[(p, n)] = ctx
        case = PowerMapCase(ctx, d, c)
        spec = c_spectrum(case)
        n4 = n4_bruteforce(case, budget=q)
        rep = check_identities(spec, n4)
        entry = {
            "p": p,
            "n": n,
            "d": case.d,
            "c": c,
            "n4": n4,
            "eq1": rep.eq1_ok,
            "eq2": rep.eq2_ok,
        }
        cases.append(entry)
        if not (rep.eq1_ok and rep.eq2_ok):
            failures.append(entry)
        has_char2 = has_char2 or p == 2
        has_gcd = has_gcd or math.gcd(case.d, q - 1) > 1
    return FuzzReport(
        seed=seed,
        count=count,
        budget=budget,
        cases=cases,
        failures=failures,
        has_char2_case=has_char2,
        has_gcd_gt1_case=has_gcd,
    )
