"""Independent models and brute-force checks.

W_k = C_2 wr C_(2^k) is modelled directly as pairs (shift, bit-vector); the
canonical projection G_k -> W_k forgets the central part.  The module also
holds breadth-first closure, the relator suite of the presentation and the
check of the two 2-power collection identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import CapacityError
from .group import Element, GroupContext, comm, mul, power
from .subgroups import Subgroup, normal_closure


@dataclass(frozen=True)
class WreathElement:
    """``x^t * prod y_i^(v_i)`` in C_2 wr C_(2^k)."""

    k: int
    t: int
    v: int

    @property
    def n(self) -> int:
        return 1 << self.k

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        if other.k != self.k:
            raise ValueError("wreath elements of different levels")
        n = self.n
        s = other.t
        rotated = ((self.v << s) | (self.v >> (n - s))) & ((1 << n) - 1) if s else self.v
        return WreathElement(self.k, (self.t + s) % n, rotated ^ other.v)

    def is_identity(self) -> bool:
        return self.t == 0 and self.v == 0

    @classmethod
    def identity(cls, k: int) -> "WreathElement":
        return cls(k, 0, 0)

    @classmethod
    def generators(cls, k: int) -> tuple["WreathElement", "WreathElement"]:
        return cls(k, 1, 0), cls(k, 0, 1)


def wreath_order(k: int) -> int:
    return 1 << ((1 << k) + k)


def project(g: Element) -> WreathElement:
    """Canonical projection G_k -> W_k with kernel Z_k."""
    ctx = g.ctx
    return WreathElement(ctx.k, g.a % ctx.n, g.e)


def bfs_closure(ctx: GroupContext, gens: list | None = None, cap: int = 1 << 18) -> set:
    """All elements reachable from the identity by right multiplication."""
    gens = [ctx.x, ctx.y] if gens is None else list(gens)
    seen = {ctx.identity}
    frontier = [ctx.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = mul(g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        if len(seen) > cap:
            raise CapacityError(f"breadth-first closure exceeded {cap} elements")
        frontier = nxt
    return seen


def bfs_wreath(k: int, cap: int = 1 << 20) -> set:
    gens = WreathElement.generators(k)
    seen = {WreathElement.identity(k)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = g * s
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        if len(seen) > cap:
            raise CapacityError(f"breadth-first closure exceeded {cap} elements")
        frontier = nxt
    return seen


def relators(ctx: GroupContext) -> dict[str, Element]:
    """Every relator of the presentation of G_k, evaluated in normal form."""
    x, y = ctx.x, ctx.y
    n = ctx.n
    out = {
        f"x^{2 * n}": power(x, 2 * n),
        "y^4": power(y, 4),
        f"[x^{n},y]": comm(power(x, n), y),
        "[y^2,x]": comm(power(y, 2), x),
    }
    y0 = ctx.y_i(0)
    for i in range(1, ctx.n_c + 1):
        c = comm(y0, ctx.y_i(i))
        out[f"[y_0,y_{i}]^2"] = power(c, 2)
        out[f"[y_0,y_{i},x]"] = comm(c, x)
        out[f"[y_0,y_{i},y]"] = comm(c, y)
    return out


def relator_check(ctx: GroupContext) -> dict[str, bool]:
    """Map relator name -> evaluates to the identity.  The non-relator
    ``x^(2^k)`` is reported under its own name and must be False."""
    report = {name: g.is_identity() for name, g in relators(ctx).items()}
    report[f"x^{ctx.n} (not a relator)"] = power(ctx.x, ctx.n).is_identity()
    return report


# -- 2-power collection identities --------------------------------------------


def _commutator_words(u: Element, v: Element, max_weight: int, shapes: str = "left"):
    """Commutators in {u, v} as (value, weight, weight in v), deduplicated.

    ``shapes="left"`` builds left-normed commutators only; ``"all"`` also
    brackets any two previously built commutators.
    """
    by_weight: dict[int, dict] = {1: {(u.key, 0): u, (v.key, 1): v}}
    letters = ((u, 0), (v, 1))
    for w in range(2, max_weight + 1):
        level: dict = {}
        for (key, vw), g in by_weight[w - 1].items():
            for h, hv in letters:
                val = comm(g, h)
                if not val.is_identity():
                    level.setdefault((val.key, vw + hv), val)
        if shapes == "all":
            for w1 in range(2, w - 1):
                w2 = w - w1
                for (_, v1), g in by_weight[w1].items():
                    for (_, v2), h in by_weight[w2].items():
                        val = comm(g, h)
                        if not val.is_identity():
                            level.setdefault((val.key, v1 + v2), val)
        by_weight[w] = level
    for w, level in by_weight.items():
        for (_, vw), g in level.items():
            yield g, w, vw


def collection_kernel(ctx: GroupContext, u: Element, v: Element, r: int,
                      max_weight: int | None = None, shapes: str = "left") -> Subgroup:
    """K(u, v): normal closure of commutators of weight >= 2^r with weight
    >= 2 in v, plus 2^(r-s+1)-th powers of such commutators of weight < 2^s."""
    # beyond the nilpotency class every commutator is trivial
    max_weight = max_weight or ctx.n + 2
    gens = []
    q = 1 << r
    for g, w, vw in _commutator_words(u, v, max_weight, shapes):
        if vw < 2:
            continue
        if w >= q:
            gens.append(g)
        for s in range(1, r + 1):
            if w < (1 << s):
                gens.append(power(g, 1 << (r - s + 1)))
    return normal_closure(ctx, gens)


def _binomial_product(head: Element, tail: Element, q: int) -> Element:
    """prod_(j=1..q) [head, tail, ..., tail]^C(q, j) with j - 1 copies of tail."""
    ctx = head.ctx
    result = ctx.identity
    term = head
    for j in range(1, q + 1):
        result = mul(result, power(term, comb(q, j)))
        term = comm(term, tail)
    return result


@dataclass
class CollectionResult:
    eq1: bool
    eq2: bool

    def __bool__(self):
        return self.eq1 and self.eq2


def collection_identity_check(ctx: GroupContext, a: Element, b: Element, r: int,
                              shapes: str = "left") -> CollectionResult:
    """Check both 2^r-th power collection formulas modulo their kernels:

        (ab)^q   = a^q b^q [b,a]^C(q,2) ... [b,a,...,a]      mod K(a, b)
        [a^q, b] = [a,b]^q [a,b,a]^C(q,2) ... [a,b,a,...,a]  mod K(a, [a,b])
    """
    if r < 1 or (1 << r) > ctx.x_mod:
        raise ValueError(f"need 1 <= r and 2^r <= 2^(k+1), got r={r}")
    q = 1 << r
    lhs1 = power(mul(a, b), q)
    rhs1 = mul(power(a, q), power(b, q))
    term = comm(b, a)
    for j in range(2, q + 1):
        rhs1 = mul(rhs1, power(term, comb(q, j)))
        term = comm(term, a)
    K1 = collection_kernel(ctx, a, b, r, shapes=shapes)
    eq1 = mul(power(lhs1, -1), rhs1) in K1

    ab = comm(a, b)
    lhs2 = comm(power(a, q), b)
    rhs2 = _binomial_product(ab, a, q)
    K2 = collection_kernel(ctx, a, ab, r, shapes=shapes)
    eq2 = mul(power(lhs2, -1), rhs2) in K2
    return CollectionResult(eq1, eq2)


def identity_word_check(ctx: GroupContext) -> bool:
    """``[a^q, b] = a^-q (a [a,b])^q`` on the generators, for every q = 2^r."""
    x, y = ctx.x, ctx.y
    r = 1
    while (1 << r) <= ctx.x_mod:
        q = 1 << r
        for a, b in ((x, y), (y, x)):
            if comm(power(a, q), b) != mul(power(a, -q), power(mul(a, comm(a, b)), q)):
                return False
        r += 1
    return True


__all__ = [
    "WreathElement", "wreath_order", "project", "bfs_closure", "bfs_wreath", "relators",
    "relator_check", "collection_kernel", "collection_identity_check", "CollectionResult",
    "identity_word_check",
]
