import math

import numpy as np
import pytest

from cdspec import (
    BudgetExceeded,
    PowerMapCase,
    c_ddt_entry,
    c_delta,
    c_spectrum,
    c_uniformity,
    check_identities,
    n4_bruteforce,
    normalize_exponent,
)
from cdspec.spectrum import CDiffSpectrum
from cdspec.verifier import SplitMix64

from conftest import get_ctx


def _delta_count_scalar(ctx, d, c, b):
    """Independent per-b count of solutions of (x+1)^d - c*x^d = b."""
    return sum(
        1
        for x in range(ctx.q)
        if ctx.sub(ctx.pow(ctx.add(x, 1), d), ctx.mul(c, ctx.pow(x, d))) == b
    )


def _n4_triple_loop(ctx, d, c):
    """Literal enumeration of (x1, x2, x3) with x4 = x1 - x2 + x3."""
    q = ctx.q
    powd = [ctx.pow(x, d) for x in range(q)]
    total = 0
    for x1 in range(q):
        for x2 in range(q):
            head = ctx.sub(powd[x1], ctx.mul(c, powd[x2]))
            diff = ctx.sub(x1, x2)
            for x3 in range(q):
                x4 = ctx.add(diff, x3)
                if ctx.add(head, ctx.sub(ctx.mul(c, powd[x3]), powd[x4])) == 0:
                    total += 1
    return total


# ---------------------------------------------------------------------------
# Exponent normalisation
# ---------------------------------------------------------------------------

def test_normalize_exponent():
    assert normalize_exponent(3, 25) == 3
    assert normalize_exponent(24, 25) == 24
    assert normalize_exponent(25, 25) == 1
    assert normalize_exponent(48, 25) == 24
    with pytest.raises(ValueError):
        normalize_exponent(0, 25)


def test_case_rejects_bad_c():
    with pytest.raises(ValueError):
        PowerMapCase(get_ctx(5, 1), 3, 5)


# ---------------------------------------------------------------------------
# c_delta / c_ddt_entry
# ---------------------------------------------------------------------------

def test_c_delta_gf5_examples():
    case = PowerMapCase(get_ctx(5, 1), 3, 4)  # c = -1
    assert c_delta(case, 1) == 2  # x in {0, 3}
    assert c_delta(case, 2) == 0


def test_c_delta_c0_bijective():
    for p, n, d in [(5, 1, 3), (2, 3, 3), (7, 1, 5)]:
        ctx = get_ctx(p, n)
        assert math.gcd(d, ctx.q - 1) == 1
        case = PowerMapCase(ctx, d, 0)
        for b in range(ctx.q):
            assert c_delta(case, b) == 1


def test_c_delta_matches_scalar_count():
    rng = SplitMix64(11)
    for p, n in [(2, 3), (3, 2), (5, 1), (7, 1)]:
        ctx = get_ctx(p, n)
        for _ in range(10):
            d = 1 + rng.below(ctx.q - 2) if ctx.q > 3 else 1
            c = rng.below(ctx.q)
            case = PowerMapCase(ctx, d, c)
            for b in range(ctx.q):
                assert c_delta(case, b) == _delta_count_scalar(ctx, d, c, b)


def test_ddt_row_scaling_law():
    rng = SplitMix64(17)
    for p, n in [(3, 2), (5, 1), (5, 2), (2, 4), (11, 1), (5, 3)]:
        ctx = get_ctx(p, n)
        for _ in range(8):
            d = 1 + rng.below(ctx.q - 2)
            c = rng.below(ctx.q)
            case = PowerMapCase(ctx, d, c)
            for _ in range(12):
                a = 1 + rng.below(ctx.q - 1)
                b = rng.below(ctx.q)
                direct = sum(
                    1
                    for x in range(ctx.q)
                    if ctx.sub(
                        ctx.pow(ctx.add(x, a), case.d),
                        ctx.mul(c, ctx.pow(x, case.d)),
                    )
                    == b
                )
                assert c_ddt_entry(case, a, b) == direct


def test_ddt_row_zero():
    ctx = get_ctx(5, 1)
    case = PowerMapCase(ctx, 3, 4)  # gcd(3, 4) = 1, c != 1
    assert c_ddt_entry(case, 0, 0) == 1
    for b in range(1, 5):
        assert c_ddt_entry(case, 0, b) == 1  # bijection when gcd = 1
    gold = PowerMapCase(get_ctx(5, 1), 2, 0)  # gcd(2, 4) = 2, c = 0
    counts = [c_ddt_entry(gold, 0, b) for b in range(5)]
    assert counts[0] == 1 and sorted(counts[1:]) == [0, 0, 2, 2]
    classical = PowerMapCase(ctx, 3, 1)  # c = 1: row 0 is degenerate
    assert c_ddt_entry(classical, 0, 0) == 5
    assert c_ddt_entry(classical, 0, 2) == 0


# ---------------------------------------------------------------------------
# Spectra
# ---------------------------------------------------------------------------

def test_spectrum_gf5_cube():
    spec = c_spectrum(PowerMapCase(get_ctx(5, 1), 3, 4))
    assert spec.omega == {0: 2, 1: 1, 2: 2}
    assert spec.uniformity == 2


def test_spectrum_gf5_identity():
    spec = c_spectrum(PowerMapCase(get_ctx(5, 1), 1, 4))
    assert spec.positive() == {1: 5}
    assert spec.omega[0] == 0  # omega_0 is always materialised


def test_spectrum_gf9_d6():
    spec = c_spectrum(PowerMapCase(get_ctx(3, 2), 6, 2))
    assert spec.positive() == {0: 4, 1: 1, 2: 4}


def test_spectrum_c1_classical_row():
    # x^3 over GF(8) is APN: the a = 1 row has only 0s and 2s
    spec = c_spectrum(PowerMapCase(get_ctx(2, 3), 3, 1))
    assert spec.positive() == {0: 4, 2: 4}


def test_uniformity_classification():
    assert c_uniformity(PowerMapCase(get_ctx(5, 1), 1, 4)) == (1, "PcN")
    assert c_uniformity(PowerMapCase(get_ctx(5, 1), 3, 4)) == (2, "APcN")
    assert c_uniformity(PowerMapCase(get_ctx(7, 1), 5, 3))[1] == "(c,3)-uniform"


def test_every_spectrum_satisfies_counting_identity():
    rng = SplitMix64(23)
    for p, n in [(2, 4), (3, 3), (5, 2), (7, 2), (13, 1)]:
        ctx = get_ctx(p, n)
        for _ in range(25):
            d = 1 + rng.below(ctx.q - 2)
            c = rng.below(ctx.q)
            spec = c_spectrum(PowerMapCase(ctx, d, c))
            assert spec.sum_omega() == ctx.q
            assert spec.sum_i_omega() == ctx.q


# ---------------------------------------------------------------------------
# Quadruple counts
# ---------------------------------------------------------------------------

def test_n4_gf5_linear():
    assert n4_bruteforce(PowerMapCase(get_ctx(5, 1), 1, 4)) == 25


def test_n4_gf5_cube():
    assert n4_bruteforce(PowerMapCase(get_ctx(5, 1), 3, 4)) == 41


def test_n4_gf25_d11():
    assert n4_bruteforce(PowerMapCase(get_ctx(5, 2), 11, 4)) == 1009


def test_n4_matches_triple_loop():
    rng = SplitMix64(31)
    for p, n in [(2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]:
        ctx = get_ctx(p, n)
        for _ in range(6):
            d = 1 + rng.below(ctx.q - 2) if ctx.q > 3 else 1
            c = rng.below(ctx.q)
            case = PowerMapCase(ctx, d, c)
            assert n4_bruteforce(case) == _n4_triple_loop(ctx, case.d, c), (p, n, d, c)


def test_n4_budget():
    with pytest.raises(BudgetExceeded):
        n4_bruteforce(PowerMapCase(get_ctx(3, 6), 4, 2))
    assert n4_bruteforce(PowerMapCase(get_ctx(3, 6), 4, 2), budget=729) > 0


def test_n4_minus_one_divisible_by_q_minus_1():
    rng = SplitMix64(37)
    for p, n in [(3, 2), (5, 1), (7, 1), (2, 4)]:
        ctx = get_ctx(p, n)
        for _ in range(10):
            d = 1 + rng.below(ctx.q - 2)
            u = rng.below(ctx.q - 1)
            c = u if u == 0 else u + 1  # c != 1
            n4 = n4_bruteforce(PowerMapCase(ctx, d, c))
            assert (n4 - 1) % (ctx.q - 1) == 0


# ---------------------------------------------------------------------------
# Identities
# ---------------------------------------------------------------------------

def test_check_identities_examples():
    spec = CDiffSpectrum(q=5, d=3, c=4, uniformity=2, omega={0: 2, 1: 1, 2: 2})
    rep = check_identities(spec)
    assert rep.eq1_ok and rep.eq2_ok is None
    rep = check_identities(spec, n4=41)
    assert rep.eq1_ok and rep.eq2_ok  # 9 = 40/4 - 1
    rep = check_identities(spec, n4=45)
    assert rep.eq2_ok is False and rep.messages


def test_check_identities_tampered():
    bad = CDiffSpectrum(q=5, d=3, c=4, uniformity=2, omega={1: 5, 2: 1})
    rep = check_identities(bad)
    assert not rep.eq1_ok
    assert rep.messages


def test_check_identities_c1_skips_eq2():
    spec = c_spectrum(PowerMapCase(get_ctx(2, 3), 3, 1))
    rep = check_identities(spec, n4=1)
    assert rep.eq2_ok is None


def test_eq2_inversion_matches_bruteforce():
    rng = SplitMix64(43)
    for p, n in [(2, 4), (3, 3), (5, 2), (7, 2), (5, 4), (13, 2)]:
        ctx = get_ctx(p, n)
        for _ in range(4):
            d = 1 + rng.below(ctx.q - 2)
            u = rng.below(ctx.q - 1)
            c = u if u == 0 else u + 1
            case = PowerMapCase(ctx, d, c)
            spec = c_spectrum(case)
            n4 = n4_bruteforce(case, budget=ctx.q)
            assert check_identities(spec, n4).eq2_ok, (p, n, d, c)


# ---------------------------------------------------------------------------
# Structural properties
# ---------------------------------------------------------------------------

def test_involution_parity_even_d_c_minus_one():
    # x -> -x-1 fixes Delta_{-1} when d is even, pairing solutions off the
    # fixed point -1/2; every count is even except at b = Delta(-1/2).
    for p, n in [(3, 2), (3, 3), (3, 6), (5, 2), (7, 2), (11, 1), (13, 1)]:
        ctx = get_ctx(p, n)
        for d in (2, 4, 6):
            case = PowerMapCase(ctx, d, ctx.neg_one)
            hist = case.delta_histogram()
            xf = ctx.neg(ctx.inv(2 % ctx.p))
            b_star = ctx.sub(
                ctx.pow(ctx.add(xf, 1), case.d),
                ctx.mul(ctx.neg_one, ctx.pow(xf, case.d)),
            )
            assert hist[b_star] % 2 == 1
            mask = np.ones(ctx.q, dtype=bool)
            mask[b_star] = False
            assert not np.any(hist[mask] % 2)


def _field_sqrt(ctx, s):
    if s == 0:
        return 0
    l = int(ctx.log[s])
    assert l % 2 == 0
    return int(ctx.exp[l // 2])


def _quadratic_roots(ctx, a, b):
    """Roots of z^2 + a*z + b via the discriminant, odd characteristic."""
    four = 4 % ctx.p
    disc = ctx.sub(ctx.mul(a, a), ctx.mul(four, b))
    if ctx.chi(disc) == -1:
        return []
    r = _field_sqrt(ctx, disc)
    half = ctx.inv(2 % ctx.p)
    z1 = ctx.mul(half, ctx.sub(r, a))
    z2 = ctx.mul(half, ctx.sub(ctx.neg(r), a))
    return [z1] if z1 == z2 else [z1, z2]


def test_nonsquare_shift_character_property():
    # Over GF(5^n): for nonsquare b outside {1, -1}, if x^2+x-1/b and
    # y^2+y+1/b are both solvable, every root z of z^2+(1-2/b)z-1/b has
    # chi(z(z+1)) = -1.
    for n in (1, 2, 3, 4):
        ctx = get_ctx(5, n)
        hits = 0
        for b in range(2, ctx.q):
            if b == ctx.neg_one or ctx.chi(b) != -1:
                continue
            binv = ctx.inv(b)
            if not _quadratic_roots(ctx, 1, ctx.neg(binv)):
                continue
            if not _quadratic_roots(ctx, 1, binv):
                continue
            a = ctx.sub(1, ctx.mul(2, binv))
            for z in _quadratic_roots(ctx, a, ctx.neg(binv)):
                hits += 1
                assert ctx.chi(ctx.mul(z, ctx.add(z, 1))) == -1
        if n >= 2:
            assert hits > 0  # the hypothesis set is nonempty


def test_basis_independence_of_spectra():
    from cdspec import FieldSpec, build_context, find_irreducible

    for p, n, d, c_const in [(3, 2, 6, "neg1"), (2, 4, 14, 0), (5, 2, 11, "neg1"), (3, 3, 24, 2)]:
        ctx_a = get_ctx(p, n)
        alt = find_irreducible(p, n, 1)
        assert alt != ctx_a.modulus
        ctx_b = build_context(FieldSpec(p, n, alt))
        c_a = ctx_a.neg_one if c_const == "neg1" else c_const
        c_b = ctx_b.neg_one if c_const == "neg1" else c_const
        spec_a = c_spectrum(PowerMapCase(ctx_a, d, c_a))
        spec_b = c_spectrum(PowerMapCase(ctx_b, d, c_b))
        assert spec_a.omega == spec_b.omega
