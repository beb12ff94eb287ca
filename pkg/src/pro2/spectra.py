"""Named subgroups and finite-level Hausdorff-dimension ratios.

At level i of a filtration series S the ratio for a subgroup K is

    log2 |K S_i : S_i| / log2 |G_k : S_i|

kept as an exact fraction.  The limits over i are the dimensions; this module
never extrapolates, it only reports per-level values next to the target.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import UndefinedRatioError
from .group import GroupContext
from .series import get_series, lower_2_series, series_kind
from .subgroups import (
    Subgroup,
    intersection,
    normal_closure,
    product_subgroup,
    subgroup_closure,
    trivial,
    whole_group,
)

NAMES = ("Z", "Zk", "H", "K", "L", "G", "trivial")

# limiting dimensions of Z and H for each series
TARGETS = {
    ("Z", "P"): Fraction(1, 3), ("H", "P"): Fraction(1),
    ("Z", "I"): Fraction(1, 3), ("H", "I"): Fraction(1),
    ("Z", "N"): Fraction(1, 3), ("H", "N"): Fraction(1),
    ("Z", "L"): Fraction(1, 5), ("H", "L"): Fraction(3, 5),
    ("Z", "D"): Fraction(1, 3), ("H", "D"): Fraction(1),
    ("Z", "F"): Fraction(1, 3), ("H", "F"): Fraction(1),
}


@dataclass(frozen=True)
class NamedSubgroupSpec:
    name: str
    m: int | None = None
    n: int | None = None

    @classmethod
    def parse(cls, text: str) -> "NamedSubgroupSpec":
        """``Z``, ``Zk``, ``H``, ``K(m,n)``, ``L(m,n)``, ``G`` or ``trivial``."""
        text = text.strip()
        if "(" in text:
            name, _, rest = text.partition("(")
            m, n = (int(p) for p in rest.rstrip(")").split(","))
            return cls(name.strip(), m, n)
        return cls(text)

    def __str__(self):
        if self.m is None:
            return self.name
        return f"{self.name}({self.m},{self.n})"


def residues(m: int, n: int, symmetric: bool) -> set[int]:
    """Residues mod 2^n: {0..m-1}, or {0, ±1, ..., ±(m-1)} when symmetric."""
    mod = 1 << n
    if symmetric:
        return {s % mod for s in range(-(m - 1), m)}
    return {s % mod for s in range(m)}


def z_image(ctx: GroupContext) -> Subgroup:
    """Image of Z = R/N in G_k: <y^2, [y_0, y_d]>, elementary abelian of rank 2^(k-1)+1."""
    return normal_closure(ctx, [ctx.ysq] + [ctx.e(d) for d in range(1, ctx.n_c + 1)])


def h_subgroup(ctx: GroupContext) -> Subgroup:
    """H_k = <y_0, ..., y_(2^k - 1)> Z, the preimage of the base group."""
    return product_subgroup(normal_closure(ctx, [ctx.y]), z_image(ctx))


def _check_mn(ctx: GroupContext, m, n):
    if m is None or n is None:
        raise ValueError("K and L need parameters (m, n)")
    if n < 0 or m < 1:
        raise ValueError(f"need m >= 1 and n >= 0, got m={m}, n={n}")
    if ctx.k < n + 1:
        raise ValueError(f"K(m,n) and L(m,n) need k >= n + 1, got k={ctx.k}, n={n}")
    if m > 1 << n:
        raise ValueError(f"need m <= 2^n, got m={m}, n={n}")


def k_subgroup(ctx: GroupContext, m: int, n: int) -> Subgroup:
    _check_mn(ctx, m, n)
    keep = residues(m, n, symmetric=False)
    return subgroup_closure(ctx, [ctx.y_i(j) for j in range(ctx.n) if j % (1 << n) in keep])


def l_subgroup(ctx: GroupContext, m: int, n: int) -> Subgroup:
    _check_mn(ctx, m, n)
    keep = residues(m, n, symmetric=True)
    gens = subgroup_closure(ctx, [ctx.y_i(j) for j in range(ctx.n) if j % (1 << n) in keep])
    return product_subgroup(gens, z_image(ctx))


def build_named(ctx: GroupContext, spec: NamedSubgroupSpec | str) -> Subgroup:
    if isinstance(spec, str):
        spec = NamedSubgroupSpec.parse(spec)
    name = spec.name
    if name == "Z":
        return z_image(ctx)
    if name == "Zk":
        return product_subgroup(z_image(ctx), subgroup_closure(ctx, [ctx.x ** ctx.n]))
    if name == "H":
        return h_subgroup(ctx)
    if name == "K":
        return k_subgroup(ctx, spec.m, spec.n)
    if name == "L":
        return l_subgroup(ctx, spec.m, spec.n)
    if name == "G":
        return whole_group(ctx)
    if name == "trivial":
        return trivial(ctx)
    raise ValueError(f"unknown named subgroup {name!r}")


@dataclass(frozen=True)
class RatioPoint:
    series: str
    level: int
    num: int        # log2 |K S_i : S_i|
    den: int        # log2 |G_k : S_i|

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)


def ratio_at(K: Subgroup, S: Subgroup, series: str = "", level: int = 0) -> RatioPoint:
    ctx = K.ctx
    den = ctx.log_order - S.log_order
    if den == 0:
        raise UndefinedRatioError(f"{series}-series term {level} is the whole group")
    num = product_subgroup(K, S).log_order - S.log_order
    return RatioPoint(series, level, num, den)


def hdim_ratio(ctx: GroupContext, kind: str, K: Subgroup, i: int) -> RatioPoint:
    kind = series_kind(kind)
    return ratio_at(K, get_series(ctx, kind).term(i), kind, i)


def spectrum_table(ctx: GroupContext, kind: str, spec: NamedSubgroupSpec | str | Subgroup,
                   ) -> list[RatioPoint]:
    """Ratios at every level from the first proper term to the first trivial one."""
    kind = series_kind(kind)
    K = spec if isinstance(spec, Subgroup) else build_named(ctx, spec)
    table = get_series(ctx, kind)
    points = []
    for i, S in zip(table.indices(), table.terms):
        if S.log_order == ctx.log_order:
            continue
        points.append(ratio_at(K, S, kind, i))
    return points


def target(spec: NamedSubgroupSpec | str, kind: str) -> Fraction | None:
    name = spec.name if isinstance(spec, NamedSubgroupSpec) else NamedSubgroupSpec.parse(spec).name
    return TARGETS.get((name, series_kind(kind)))


# -- the K ∩ Z computation behind the lower 2-series spectrum ------------------


@dataclass
class KeyReport:
    m: int
    n: int
    k: int
    rank_k_cap_z: int
    rank_z: int
    expected_rank: int | None       # None when 2m - 1 > 2^n (residues overlap)
    index_set: list[int]            # D within 1 <= j < 2^k
    d0_window: list[int]            # D ∩ {1, ..., max(2m - 1, 2^n)}
    expected_d0: list[int]
    periodic: bool                  # j in D  <=>  j + 2^n in D, inside the range
    ratios: list = field(default_factory=list)   # (level i, num, den)
    target: Fraction = Fraction(0)
    spectrum_point: Fraction | None = None

    @property
    def rank_ok(self) -> bool:
        return self.expected_rank is None or self.rank_k_cap_z == self.expected_rank

    @property
    def d0_ok(self) -> bool:
        return self.d0_window == self.expected_d0

    @property
    def ok(self) -> bool:
        return self.rank_ok and self.d0_ok and self.periodic


def index_set(ctx: GroupContext, m: int, n: int) -> list[int]:
    """{1 <= j < 2^k : c_j is congruent to an element of L(m,n) modulo P_(j+1) Z}."""
    L = l_subgroup(ctx, m, n)
    P = lower_2_series(ctx)
    return [j for j in range(1, ctx.n) if ctx.c(j) in product_subgroup(L, P.term(j + 1))]


def the_key_check(ctx: GroupContext, m: int, n: int) -> KeyReport:
    _check_mn(ctx, m, n)
    Z = z_image(ctx)
    K = k_subgroup(ctx, m, n)
    KZ = intersection(K, Z)
    overlap = 2 * m - 1 > 1 << n
    expected_rank = None if overlap else (2 * m - 1) * (1 << (ctx.k - n - 1)) + 1

    D = index_set(ctx, m, n)
    window = max(2 * m - 1, 1 << n)
    d0 = [j for j in D if j <= window]
    members = set(D)
    step = 1 << n
    periodic = all((j in members) == (j + step in members) for j in range(1, ctx.n - step))

    ratios = []
    P = lower_2_series(ctx)
    for i in range(1, ctx.n + 3):
        PZ = intersection(P.term(i), Z)
        den = Z.log_order - PZ.log_order
        if den:
            num = product_subgroup(KZ, PZ).log_order - PZ.log_order
            ratios.append((i, num, den))

    point = None
    if (1 << n) < 2 * m <= 2 << n:
        point = Fraction(3, 5) + Fraction(2 * m, 5 << n)
    return KeyReport(m, n, ctx.k, KZ.log_order, Z.log_order, expected_rank, D, d0,
                     list(range(1, 2 * m)), periodic, ratios,
                     Fraction(2 * m - 1, 1 << n), point)
