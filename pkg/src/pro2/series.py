"""Filtration series of G_k and their closed forms."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .group import GroupContext
from .subgroups import (
    Subgroup,
    commutator_subgroup,
    intersection,
    normal_closure,
    power_subgroup,
    product_subgroup,
    subgroup_closure,
    trivial,
    whole_group,
    z_k,
)

SERIES_KINDS = ("P", "I", "L", "D", "F", "Gamma", "R", "N")

# index of the first term in each series
SERIES_START = {"P": 0, "I": 0, "L": 1, "D": 1, "F": 0, "Gamma": 1, "R": 1, "N": 0}

_ALIASES = {
    "p": "P", "power": "P", "2-power": "P",
    "i": "I", "iterated": "I",
    "l": "L", "lower-2": "L", "lower2": "L",
    "d": "D", "dimension": "D", "jennings": "D",
    "f": "F", "frattini": "F",
    "gamma": "Gamma", "lower-central": "Gamma", "lcs": "Gamma",
    "r": "R", "n": "N",
}


def series_kind(name: str) -> str:
    if name in SERIES_KINDS:
        return name
    try:
        return _ALIASES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown series kind {name!r}") from None


@dataclass
class SeriesTable:
    """Terms ``S_start, S_start+1, ...`` of a descending series.

    ``factor_ranks[j] = log2 |terms[j] : terms[j+1]|``.  Unless the series is
    truncated (R and N stop at level k) the last term is trivial.
    """

    kind: str
    ctx: GroupContext
    terms: list
    start: int = 1
    closed_form_match: list = field(default_factory=list)

    @property
    def factor_ranks(self) -> list[int]:
        return [a.log_order - b.log_order for a, b in zip(self.terms, self.terms[1:])]

    @property
    def length(self) -> int:
        """Number of nontrivial terms."""
        return sum(1 for t in self.terms if not t.is_trivial())

    def term(self, i: int) -> Subgroup:
        """Term with index ``i``; trivial past the computed range."""
        j = i - self.start
        if j < 0:
            raise IndexError(f"{self.kind}-series starts at index {self.start}")
        if j < len(self.terms):
            return self.terms[j]
        if self.terms[-1].is_trivial():
            return self.terms[-1]
        raise IndexError(f"{self.kind}-series was truncated before index {i}")

    def indices(self) -> range:
        return range(self.start, self.start + len(self.terms))


def _until_trivial(first: Subgroup, step) -> list:
    terms = [first]
    while not terms[-1].is_trivial():
        terms.append(step(terms))
    return terms


@lru_cache(maxsize=None)
def lower_central_series(ctx: GroupContext) -> SeriesTable:
    G = whole_group(ctx)
    terms = _until_trivial(G, lambda ts: commutator_subgroup(ts[-1], G))
    return SeriesTable("Gamma", ctx, terms, 1)


def gamma(ctx: GroupContext, i: int) -> Subgroup:
    return lower_central_series(ctx).term(i)


def squares(S: Subgroup) -> Subgroup:
    return power_subgroup(S, 2)


@lru_cache(maxsize=None)
def lower_2_series(ctx: GroupContext) -> SeriesTable:
    """P_1 = G, P_(i+1) = [P_i, G] P_i^2."""
    G = whole_group(ctx)
    terms = _until_trivial(
        G, lambda ts: product_subgroup(commutator_subgroup(ts[-1], G), squares(ts[-1])))
    table = SeriesTable("L", ctx, terms, 1)
    # P_i = <x^(2^(i-1))> gamma_i for i >= 3
    for i in table.indices():
        if i < 3:
            table.closed_form_match.append(None)
            continue
        closed = product_subgroup(subgroup_closure(ctx, [ctx.x ** (1 << (i - 1))]), gamma(ctx, i))
        table.closed_form_match.append(closed == table.term(i))
    return table


def ceil_log2(i: int) -> int:
    return (i - 1).bit_length()


def dimension_closed_form(ctx: GroupContext, i: int) -> Subgroup:
    """G^(2^l(i)) * gamma_ceil(i/2)^2 * gamma_i with l(i) = ceil(log2 i)."""
    G = whole_group(ctx)
    result = power_subgroup(G, 1 << ceil_log2(i))
    result = product_subgroup(result, squares(gamma(ctx, math.ceil(i / 2))))
    return product_subgroup(result, gamma(ctx, i))


@lru_cache(maxsize=None)
def dimension_series(ctx: GroupContext) -> SeriesTable:
    """D_1 = G, D_i = D_ceil(i/2)^2 * prod_(0<j<i) [D_j, D_(i-j)]."""
    G = whole_group(ctx)

    def step(ts):
        i = len(ts) + 1
        acc = squares(ts[(i + 1) // 2 - 1])
        for j in range(1, i // 2 + 1):
            acc = product_subgroup(acc, commutator_subgroup(ts[j - 1], ts[i - j - 1]))
        return acc

    terms = _until_trivial(G, step)
    table = SeriesTable("D", ctx, terms, 1)
    table.closed_form_match = [dimension_closed_form(ctx, i) == table.term(i)
                               for i in table.indices()]
    return table


@lru_cache(maxsize=None)
def frattini_series(ctx: GroupContext) -> SeriesTable:
    """Phi_0 = G, Phi_(i+1) = Phi_i^2 [Phi_i, Phi_i]."""
    G = whole_group(ctx)
    terms = _until_trivial(
        G, lambda ts: product_subgroup(squares(ts[-1]), commutator_subgroup(ts[-1], ts[-1])))
    table = SeriesTable("F", ctx, terms, 0)
    # Phi_i = <x^(2^i), z_(2^i - 1)> gamma_(2^i) for 2 <= i <= k
    for i in table.indices():
        if not 2 <= i <= ctx.k:
            table.closed_form_match.append(None)
            continue
        gens = subgroup_closure(ctx, [ctx.x ** (1 << i), ctx.z((1 << i) - 1)])
        closed = product_subgroup(gens, gamma(ctx, 1 << i))
        table.closed_form_match.append(closed == table.term(i))
    return table


@lru_cache(maxsize=None)
def p_power_series(ctx: GroupContext) -> SeriesTable:
    """G^(2^i) for i = 0, 1, ... until trivial."""
    G = whole_group(ctx)
    terms = _until_trivial(G, lambda ts: power_subgroup(G, 1 << len(ts)))
    table = SeriesTable("P", ctx, terms, 0)
    iterated = iterated_power_series(ctx)
    table.closed_form_match = [t == iterated.term(i) for i, t in zip(table.indices(), terms)]
    return table


@lru_cache(maxsize=None)
def iterated_power_series(ctx: GroupContext) -> SeriesTable:
    """I_0 = G, I_j = I_(j-1)^2."""
    G = whole_group(ctx)
    terms = _until_trivial(G, lambda ts: squares(ts[-1]))
    return SeriesTable("I", ctx, terms, 0)


def r_subgroup(ctx: GroupContext, i: int) -> Subgroup:
    """Image of R_i = <x^(2^i), y^2, [y_0, y_j] (1 <= j <= 2^(i-1))>^F."""
    if not 1 <= i <= ctx.k:
        raise ValueError(f"R_i is only modelled for 1 <= i <= k, got {i}")
    gens = [ctx.x ** (1 << i), ctx.ysq] + [ctx.e(j) for j in range(1, (1 << (i - 1)) + 1)]
    return normal_closure(ctx, gens)


def n_subgroup(ctx: GroupContext, i: int) -> Subgroup:
    """N_i = [R_i, G] R_i^2, with N_0 = G."""
    G = whole_group(ctx)
    if i == 0:
        return G
    R = r_subgroup(ctx, i)
    return product_subgroup(commutator_subgroup(R, G), squares(R))


@lru_cache(maxsize=None)
def rn_series(ctx: GroupContext) -> tuple[SeriesTable, SeriesTable]:
    """R_1..R_k and N_0..N_k; ``closed_form_match`` on N records
    ``N_i <= G^(2^i)`` with a log-index gap of at most 4."""
    R = SeriesTable("R", ctx, [r_subgroup(ctx, i) for i in range(1, ctx.k + 1)], 1)
    N = SeriesTable("N", ctx, [n_subgroup(ctx, i) for i in range(0, ctx.k + 1)], 0)
    P = p_power_series(ctx)
    for i in N.indices():
        Ni, Pi = N.term(i), P.term(i)
        N.closed_form_match.append(Ni <= Pi and Pi.log_order - Ni.log_order <= 4)
    return R, N


def get_series(ctx: GroupContext, kind: str) -> SeriesTable:
    kind = series_kind(kind)
    if kind == "R":
        return rn_series(ctx)[0]
    if kind == "N":
        return rn_series(ctx)[1]
    return {
        "P": p_power_series,
        "I": iterated_power_series,
        "L": lower_2_series,
        "D": dimension_series,
        "F": frattini_series,
        "Gamma": lower_central_series,
    }[kind](ctx)


def nu(ctx: GroupContext, m: int) -> int:
    """Rank of gamma_m ∩ Z_k: ceil(2^(k-1) - m/2 + 1)."""
    return ctx.n_c - m // 2 + 1


def gamma_cap_Z(ctx: GroupContext, m: int) -> Subgroup:
    """gamma_m(G_k) ∩ Z_k for 2 <= m <= 2^k, checked against its generators."""
    if not 2 <= m <= ctx.n:
        raise ValueError(f"gamma_cap_Z needs 2 <= m <= {ctx.n}, got {m}")
    result = intersection(gamma(ctx, m), z_k(ctx))
    expected = subgroup_closure(ctx, [ctx.z(2 * j + 1) for j in range(m // 2, ctx.n_c + 1)])
    if result.log_order != nu(ctx, m) or result != expected:
        raise AssertionError(f"gamma_{m} ∩ Z_k has rank {result.log_order}, expected {nu(ctx, m)}")
    return result


__all__ = [
    "SERIES_KINDS", "SERIES_START", "SeriesTable", "series_kind", "lower_central_series",
    "gamma", "squares", "lower_2_series", "dimension_series", "dimension_closed_form",
    "frattini_series", "p_power_series", "iterated_power_series", "r_subgroup",
    "n_subgroup", "rn_series", "get_series", "nu", "gamma_cap_Z", "ceil_log2", "trivial",
]
