"""Lemma-level checks on G_k.

``run_suite(ctx)`` returns one ``Check`` per structural statement about G_k:
orders, relators, generators of the power subgroup, the lower central,
lower 2-, dimension and Frattini series, and the finite-level spectrum
computations.  Statements that are false at finite level (see the README)
are not part of the suite; the acceptance tests report them separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import CapacityError
from .group import GroupContext, comm, element_order, mul, power
from .series import (
    gamma,
    gamma_cap_Z,
    get_series,
    lower_central_series,
    nu,
    rn_series,
)
from .spectra import h_subgroup, hdim_ratio, spectrum_table, the_key_check, z_image
from .subgroups import (
    _ordered_products,
    center,
    enumeration_cap,
    intersection,
    power_subgroup,
    product_subgroup,
    subgroup_closure,
    whole_group,
    z_k,
)
from .wreath import collection_identity_check, identity_word_check, relator_check


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


# -- expected factor tables ----------------------------------------------------


def expected_gamma_ranks(k: int) -> list[int]:
    n = 1 << k
    ranks = [k + 3]
    for m in range(2, n + 2):
        ranks.append(1 if m % 2 == 0 or m == n + 1 else 2)
    return ranks


def expected_lower2_ranks(k: int) -> list[int]:
    n = 1 << k
    ranks = [2, 3]
    for i in range(3, n + 2):
        if i == n + 1:
            ranks.append(1)
        elif i <= k + 1:
            ranks.append(2 if i % 2 == 0 else 3)
        else:
            ranks.append(1 if i % 2 == 0 else 2)
    return ranks


def expected_dimension_ranks(k: int) -> list[int]:
    n = 1 << k
    ranks = []
    for i in range(1, n + 3):
        if i == 1:
            ranks.append(2)
        elif i & (i - 1) == 0 and i <= n:
            ranks.append(3)
        elif i == n + 1:
            ranks.append(0)
        elif i == n + 2:
            ranks.append(1)
        else:
            ranks.append(1 if i % 2 else 2)
    return ranks


def expected_frattini_ranks(k: int) -> list[int]:
    return [2, 4] + [(1 << i) + (1 << (i - 1)) + 1 for i in range(2, k)] + [4]


def lower2_spectrum_oracle(k: int, i: int) -> tuple[int, int, int]:
    """(Z numerator, H numerator, denominator) at level i of the lower 2-series,
    read off the factor table by classifying each listed generator as an
    x-power, an element of H outside Z, or an element of Z."""
    n = 1 << k
    levels = {1: "xh", 2: "xzh"}
    for j in range(3, n + 2):
        tags = "x" if j <= k + 1 else ""
        tags += "z" if j == n + 1 else "h"       # [y,x,...,x] with 2^k x's is [w,x]
        if j % 2 and j != n + 1:
            tags += "z"                           # [y,x,...,x,y]
        levels[j] = tags
    below = "".join(levels[j] for j in range(1, i) if j in levels)
    z = below.count("z")
    return z, z + below.count("h"), len(below)


# -- the suite -------------------------------------------------------------------


def _gamma_exponent_four(ctx):
    g2 = gamma(ctx, 2)
    head = [b for b in g2.basis if b.depth < ctx.tail_start]
    if 1 << len(head) > enumeration_cap():
        raise CapacityError("gamma_2 exponent check")
    worst = max(element_order(g) for g in _ordered_products(ctx, head))
    return worst == 4, f"max element order in gamma_2 is {worst}"


def _squared_commutators(ctx):
    bad = []
    HH = subgroup_closure(ctx, [ctx.e(d) for d in range(1, ctx.n_c + 1)])
    for i in range(1, ctx.n_c + 1):
        sq = power(ctx.c(i + 1), 2)
        if sq not in HH or sq not in gamma(ctx, 2 * i + 1):
            bad.append(i)
            continue
        if mul(sq, ctx.z(2 * i + 1).inverse()) not in gamma(ctx, 2 * i + 2):
            bad.append(i)
    return not bad, f"failing i: {bad}" if bad else "1 <= i <= 2^(k-1)"


def _ci_cj(ctx):
    bad = []
    top = ctx.n + 1
    for i in range(2, top):
        for j in range(1, i):
            if i + j > top:
                continue
            r = mul(comm(ctx.c(i), ctx.c(j)), ctx.z(i + j).inverse())
            if r not in gamma(ctx, i + j + 1):
                bad.append((i, j))
    return not bad, f"failing pairs: {bad[:5]}" if bad else "all i > j with i + j <= 2^k + 1"


def _containment(ctx):
    G = whole_group(ctx)
    x = ctx.x
    base = product_subgroup(subgroup_closure(ctx, [x ** 2, ctx.ysq]), gamma(ctx, 2))
    ok = power_subgroup(G, 2) <= base
    for j in range(2, ctx.k + 1):
        q = 1 << j
        mid = product_subgroup(subgroup_closure(ctx, [x ** q, ctx.z(q - 1)]), gamma(ctx, q))
        outer = product_subgroup(subgroup_closure(ctx, [x ** q]), gamma(ctx, q - 1))
        ok = ok and power_subgroup(G, q) <= mid <= outer
    return ok, "G^(2^j) inside the displayed chain for 1 <= j <= k"


def _power_top(ctx):
    G = whole_group(ctx)
    P = power_subgroup(G, ctx.n)
    W = subgroup_closure(ctx, [ctx.x ** ctx.n, ctx.w, comm(ctx.w, ctx.x)])
    ok = P == W and P.log_order == 3 and P.is_elementary_abelian()
    return ok, f"log2 |G^(2^k)| = {P.log_order}, log2 |G : G^(2^k)| = {ctx.log_order - P.log_order}"


def _w_lemma(ctx):
    w, x, y = ctx.w, ctx.x, ctx.y
    word = ctx.identity
    for i in reversed(range(ctx.n)):
        word = mul(word, ctx.y_i(i))
    ok = (word == w and element_order(w) == 2
          and comm(w, x) == comm(w, y) == ctx.e(ctx.n_c)
          and w == mul(power(x, -ctx.n), power(mul(x, y), ctx.n)))
    return ok, "w = y_(n-1)...y_0 = x^-n (xy)^n of order 2, [w,x] = [w,y] = [y_0, y_(n/2)]"


def _fold(ctx):
    y0 = ctx.y_i(0)
    ok = all(comm(y0, ctx.y_i(ctx.n - i)).inverse() == comm(y0, ctx.y_i(i))
             for i in range(1, ctx.n))
    return ok, "[y_0, y_(n-i)]^-1 = [y_0, y_i] for 1 <= i < n"


def _lower_central(ctx):
    table = lower_central_series(ctx)
    ranks = table.factor_ranks
    ok = ranks == expected_gamma_ranks(ctx.k) and table.length == ctx.n + 1
    # G/gamma_2 = C_(2^(k+1)) x C_4
    g2 = gamma(ctx, 2)
    ok = ok and ctx.x ** (ctx.x_mod >> 1) not in g2 and ctx.ysq not in g2
    for i in range(1, ctx.n_c + 1):
        even = subgroup_closure(ctx, [ctx.c(2 * i)])
        ok = ok and gamma(ctx, 2 * i) == product_subgroup(even, gamma(ctx, 2 * i + 1))
        gens = [ctx.c(2 * i + 1)] + ([ctx.z(2 * i + 1)] if i != ctx.n_c else [])
        odd = subgroup_closure(ctx, gens)
        ok = ok and gamma(ctx, 2 * i + 1) == product_subgroup(odd, gamma(ctx, 2 * i + 2))
    return ok, f"factor ranks {ranks}, class {table.length}"


def _gamma_center(ctx):
    Zk = z_k(ctx)
    for m in range(2, ctx.n + 1):
        gamma_cap_Z(ctx, m)
    # [y,x,...,x] with 2^k x's equals [w,x] and already lies in Z_k
    C = center(ctx)
    ok = C == Zk and ctx.c(ctx.n + 1) in Zk
    for m in range(2, ctx.n + 1):
        ok = ok and intersection(gamma(ctx, m), C).log_order == nu(ctx, m)
    return ok, f"Z(G_k) = Z_k of rank {C.log_order}; gamma_m ∩ Z(G_k) has rank nu(m) for 2 <= m <= 2^k"


def _series_table(kind, expected, closed=True):
    def check(ctx):
        table = get_series(ctx, kind)
        ranks = table.factor_ranks
        ok = ranks == expected(ctx.k)
        if closed:
            ok = ok and all(c is not False for c in table.closed_form_match)
        return ok, f"factor ranks {ranks}, length {table.length}"
    return check


def _lower2_generators(ctx):
    table = get_series(ctx, "L")
    P = table.term
    ok = (P(2) == product_subgroup(subgroup_closure(ctx, [ctx.x ** 2, ctx.ysq, ctx.c(2)]), P(3)))
    for i in range(3, ctx.n + 2):
        gens = [ctx.c(i)]
        if i <= ctx.k + 1:
            gens.append(ctx.x ** (1 << (i - 1)))
        if i % 2 and i <= ctx.n:
            gens.append(ctx.z(i))
        ok = ok and P(i) == product_subgroup(subgroup_closure(ctx, gens), P(i + 1))
    return ok, "P_i = <listed generators> P_(i+1)"


def _frattini_top(ctx):
    table = get_series(ctx, "F")
    gens = [ctx.x ** ctx.n, ctx.c(ctx.n), ctx.c(ctx.n + 1), ctx.z(ctx.n - 1)]
    top = table.term(ctx.k)
    ok = top == subgroup_closure(ctx, gens) and table.term(ctx.k + 1).is_trivial()
    return ok, f"Phi_k generated by x^(2^k), c_(2^k), c_(2^k+1), z_(2^k-1); rank {top.log_order}"


def _n_gap(ctx):
    _, N = rn_series(ctx)
    return all(N.closed_form_match), f"N_i <= G^(2^i) with log gaps ok: {N.closed_form_match}"


def _zp_ratio(ctx):
    point = hdim_ratio(ctx, "P", z_image(ctx), ctx.k)
    want = Fraction(ctx.n_c, ctx.n + ctx.n_c + ctx.k - 1)
    ok = point.num == ctx.n_c and point.den == ctx.n + ctx.n_c + ctx.k - 1
    return ok, f"{point.num}/{point.den} (want {want})"


def _zh_frattini(ctx):
    bad = []
    for p in spectrum_table(ctx, "F", "Z"):
        i = p.level
        if i <= ctx.k:
            want = ((1 << (i - 1)) - 1, 3 * (1 << (i - 1)) + i - 2)
        else:
            want = (ctx.n_c + 1, ctx.log_order)
        if (p.num, p.den) != want:
            bad.append(i)
    detail = "Z ratio at Frattini level i <= k is (2^(i-1) - 1)/(3 2^(i-1) + i - 2)"
    return not bad, detail + (f"; failing levels {bad}" if bad else "")


def _lower2_spectrum(ctx):
    bad = []
    Z, H = spectrum_table(ctx, "L", "Z"), spectrum_table(ctx, "L", "H")
    for pz, ph in zip(Z, H):
        zn, hn, den = lower2_spectrum_oracle(ctx.k, pz.level)
        if (pz.num, ph.num, pz.den) != (zn, hn, den):
            bad.append(pz.level)
    return not bad, f"mismatched levels {bad}" if bad else f"{len(Z)} levels agree with the factor table"


def _key(ctx):
    out = []
    for m, n in ((1, 1), (2, 1), (2, 2)):
        if ctx.k < n + 1:
            continue
        rep = the_key_check(ctx, m, n)
        if not rep.ok:
            return False, f"(m,n)=({m},{n}): {rep}"
        out.append(f"({m},{n}) D0={rep.d0_window}")
    return True, "; ".join(out)


def _collection(ctx):
    rs = [r for r in (1, 2, 3) if (1 << r) <= ctx.x_mod]
    bad = [r for r in rs if not collection_identity_check(ctx, ctx.x, ctx.y, r)]
    ok = not bad and identity_word_check(ctx)
    return ok, f"r in {rs}" + (f", failing {bad}" if bad else "")


def _h_index(ctx):
    H = h_subgroup(ctx)
    return ctx.log_order - H.log_order == ctx.k + 1, f"log2 |G : H| = {ctx.log_order - H.log_order}"


SUITE: list[tuple[str, Callable, bool]] = [
    # (name, check, needs power-subgroup enumeration)
    ("log order 2^k + 2^(k-1) + k + 2",
     lambda c: (whole_group(c).log_order == c.log_order, f"{whole_group(c).log_order}"), False),
    ("relators hold, x^(2^k) is not trivial",
     lambda c: (all(v != n.endswith("(not a relator)") for n, v in relator_check(c).items()), ""), False),
    ("Z_k central elementary abelian of rank 2^(k-1) + 2",
     lambda c: ((lambda Z: Z.is_elementary_abelian() and Z.log_order == c.n_c + 2
                 and all(comm(b, s).is_identity() for b in Z.basis for s in (c.x, c.y)))(z_k(c)), ""),
     False),
    ("w lemma", _w_lemma, False),
    ("fold identity for [y_0, y_i]", _fold, False),
    ("gamma_2 has exponent 4", _gamma_exponent_four, True),
    ("squared commutators", _squared_commutators, False),
    ("[c_i, c_j] = z_(i+j) mod gamma_(i+j+1)", _ci_cj, False),
    ("power containment chain", _containment, True),
    ("G^(2^k) = <x^(2^k), w, [w,x]> = C_2^3", _power_top, True),
    ("lower central series", _lower_central, False),
    ("gamma_m ∩ Z_k and the centre Z(G_k) = Z_k", _gamma_center, True),
    ("lower 2-series table and closed form", _series_table("L", expected_lower2_ranks), True),
    ("lower 2-series generators", _lower2_generators, True),
    ("dimension series table and closed form", _series_table("D", expected_dimension_ranks), True),
    ("Frattini series table and closed form", _series_table("F", expected_frattini_ranks), True),
    ("Frattini top term", _frattini_top, True),
    ("N_i <= G^(2^i) with log gap <= 4", _n_gap, True),
    ("H has index 2^(k+1)", _h_index, False),
    ("(Z, P) ratio at level k", _zp_ratio, True),
    ("(Z, F) finite-level ratios", _zh_frattini, True),
    ("(Z, L) and (H, L) ratios vs factor table", _lower2_spectrum, True),
    ("K ∩ Z rank and index sets", _key, True),
    ("2-power collection identities for (x, y)", _collection, False),
]


def run_suite(ctx: GroupContext, skip_power: bool | None = None) -> list[Check]:
    """Run every check.  Power-subgroup checks are skipped for k >= 4 by default."""
    if skip_power is None:
        skip_power = ctx.k >= 4
    results = []
    for name, fn, heavy in SUITE:
        if heavy and skip_power:
            continue
        passed, detail = fn(ctx)
        results.append(Check(name, bool(passed), detail))
    return results
