"""Subgroups of G_k held as induced (echelon) bases.

A basis is a list of elements with pairwise distinct depths.  Each coordinate
prefix ``G(>= d)`` of the normal form is a subgroup on which coordinate ``d``
is additive, so sifting by the basis element of matching depth strictly
increases depth.  A subgroup S then equals the set of ordered products
``b_1^e_1 ... b_r^e_r`` and has order ``2^r``.

Closure runs a worklist to the fixpoint where every square ``b_i^2`` and
every commutator ``[b_j, b_i]`` sifts to the identity; by downward induction
on depth that makes the set of ordered products closed under multiplication.
Normal closure additionally sifts the conjugates of each basis element by
``x`` and ``y``.
"""

from __future__ import annotations

import os
from collections import deque
from typing import Iterable, Iterator

from .errors import CapacityError, ContextMismatchError, NotNormalError
from .group import Element, GroupContext, comm, conj, inv, mul, power

DEFAULT_CAP = 1 << 22


def enumeration_cap() -> int:
    """Enumeration cap, overridable through the ``PRO2_CAP`` environment variable."""
    raw = os.environ.get("PRO2_CAP")
    if raw:
        return int(raw, 0)
    return DEFAULT_CAP


def _sift(g: Element, pivots: dict) -> Element:
    while not g.is_identity():
        entry = pivots.get(g.depth)
        if entry is None:
            return g
        g = mul(entry[1], g)
    return g


class Subgroup:
    """A subgroup of G_k given by an induced basis."""

    __slots__ = ("ctx", "_pivots", "_basis")

    def __init__(self, ctx: GroupContext, pivots: dict):
        self.ctx = ctx
        self._pivots = pivots
        self._basis = tuple(pivots[d][0] for d in sorted(pivots))

    @property
    def basis(self) -> tuple[Element, ...]:
        return self._basis

    @property
    def depths(self) -> tuple[int, ...]:
        return tuple(sorted(self._pivots))

    @property
    def log_order(self) -> int:
        return len(self._pivots)

    @property
    def order(self) -> int:
        return 1 << len(self._pivots)

    def sift(self, g: Element) -> Element:
        if g.ctx.k != self.ctx.k:
            raise ContextMismatchError(f"element of G_{g.ctx.k} sifted in G_{self.ctx.k}")
        return _sift(g, self._pivots)

    def __contains__(self, g: Element) -> bool:
        return self.sift(g).is_identity()

    def __le__(self, other: "Subgroup") -> bool:
        return all(b in other for b in self._basis)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ctx == other.ctx and self.log_order == other.log_order and self <= other

    __hash__ = None

    def is_trivial(self) -> bool:
        return not self._pivots

    def basis_from(self, position: int) -> list[Element]:
        """Basis elements of depth >= ``position``; they span ``S ∩ G(>= position)``."""
        return [self._pivots[d][0] for d in sorted(self._pivots) if d >= position]

    def is_normal(self) -> bool:
        return all(conj(b, s) in self for b in self._basis for s in (self.ctx.x, self.ctx.y))

    def is_abelian(self) -> bool:
        basis = self._basis
        return all(comm(b, c).is_identity() for i, b in enumerate(basis) for c in basis[i + 1:])

    def is_elementary_abelian(self) -> bool:
        return self.is_abelian() and all(mul(b, b).is_identity() for b in self._basis)

    def elements(self) -> Iterator[Element]:
        return _ordered_products(self.ctx, list(self._basis))

    def __repr__(self):
        return f"Subgroup(k={self.ctx.k}, log_order={self.log_order})"


def _ordered_products(ctx: GroupContext, basis: list) -> Iterator[Element]:
    stack = [(0, ctx.identity)]
    r = len(basis)
    while stack:
        i, prefix = stack.pop()
        if i == r:
            yield prefix
            continue
        stack.append((i + 1, mul(prefix, basis[i])))
        stack.append((i + 1, prefix))


def _close(ctx: GroupContext, gens: Iterable[Element], conjugators: tuple = (),
           pivots: dict | None = None) -> Subgroup:
    pivots = dict(pivots) if pivots else {}
    queue = deque()
    for g in gens:
        if g.ctx.k != ctx.k:
            raise ContextMismatchError(f"generator from G_{g.ctx.k} in G_{ctx.k}")
        queue.append(g)
    while queue:
        r = _sift(queue.popleft(), pivots)
        if r.is_identity():
            continue
        others = [entry[0] for entry in pivots.values()]
        pivots[r.depth] = (r, inv(r))
        queue.append(mul(r, r))
        queue.extend(comm(r, b) for b in others)
        queue.extend(conj(r, s) for s in conjugators)
    return Subgroup(ctx, pivots)


def trivial(ctx: GroupContext) -> Subgroup:
    return Subgroup(ctx, {})


def whole_group(ctx: GroupContext) -> Subgroup:
    return subgroup_closure(ctx, [ctx.x, ctx.y])


def subgroup_closure(ctx: GroupContext, gens: Iterable[Element]) -> Subgroup:
    return _close(ctx, gens)


def normal_closure(ctx: GroupContext, gens: Iterable[Element]) -> Subgroup:
    return _close(ctx, gens, (ctx.x, ctx.y))


def sift(g: Element, S: Subgroup) -> Element:
    return S.sift(g)


def _check_pair(A: Subgroup, B: Subgroup) -> GroupContext:
    if A.ctx != B.ctx:
        raise ContextMismatchError(f"subgroups of G_{A.ctx.k} and G_{B.ctx.k}")
    return A.ctx


def commutator_subgroup(A: Subgroup, B: Subgroup) -> Subgroup:
    """``[A, B]`` for normal subgroups A and B."""
    ctx = _check_pair(A, B)
    for S, label in ((A, "first"), (B, "second")):
        if not S.is_normal():
            raise NotNormalError(f"{label} operand of [A, B] is not normal in G_{ctx.k}")
    return normal_closure(ctx, (comm(a, b) for a in A.basis for b in B.basis))


def product_subgroup(A: Subgroup, B: Subgroup) -> Subgroup:
    """``A B``; equals the join, so one operand should normalise the other."""
    ctx = _check_pair(A, B)
    if B.log_order > A.log_order:
        A, B = B, A
    return _close(ctx, B.basis, pivots=A._pivots)


def power_subgroup(A: Subgroup, q: int, cap: int | None = None) -> Subgroup:
    """``A^q = <a^q : a in A>`` by exhaustive enumeration of A.

    For even q only coset representatives of ``A ∩ Z_k`` are enumerated:
    Z_k consists of central involutions, so ``(a z)^q = a^q`` there.
    """
    if q < 1 or q & (q - 1):
        raise ValueError(f"q must be a power of 2, got {q}")
    ctx = A.ctx
    if q == 1:
        return A
    cap = enumeration_cap() if cap is None else cap
    head = [b for b in A.basis if b.depth < ctx.tail_start]
    if 1 << len(head) > cap:
        raise CapacityError(f"enumerating 2^{len(head)} elements exceeds cap {cap}")
    powers = {}
    for a in _ordered_products(ctx, head):
        p = power(a, q)
        if not p.is_identity():
            powers.setdefault(p.key, p)
    return subgroup_closure(ctx, powers.values())


def intersection(A: Subgroup, B: Subgroup, cap: int | None = None) -> Subgroup:
    """``A ∩ B``.

    When one operand lies in Z_k the other is first cut down to its basis
    tail, which spans ``S ∩ Z_k``; both then live in an elementary abelian
    group where coordinates are linear and a GF(2) Zassenhaus step applies.
    Otherwise the smaller operand is enumerated (subject to the cap).
    """
    ctx = _check_pair(A, B)
    tail = ctx.tail_start
    if all(d >= tail for d in B.depths):
        A, B = B, A
    if all(d >= tail for d in A.depths):
        result = _linear_intersection(ctx, A.basis, B.basis_from(tail))
    else:
        if B.log_order < A.log_order:
            A, B = B, A
        if A.order > (enumeration_cap() if cap is None else cap):
            raise CapacityError(f"intersection needs to enumerate {A.order} elements")
        result = trivial(ctx)
        for g in A.elements():
            if g in B and g not in result:
                result = _close(ctx, [g], pivots=result._pivots)
    assert all(b in A and b in B for b in result.basis)
    return result


def _linear_intersection(ctx: GroupContext, left: list, right: list) -> Subgroup:
    """Zassenhaus on packed coordinate keys inside Z_k."""
    width = ctx.log_order
    rows = [(b.key << width) | b.key for b in left] + [b.key << width for b in right]
    reduced = _echelon(rows)
    mask = (1 << width) - 1
    meet = [r & mask for r in reduced if not r >> width]
    return subgroup_closure(ctx, [ctx.from_key(v) for v in meet if v])


def _echelon(rows: list[int]) -> list[int]:
    """Row echelon basis over GF(2) with pivots at the highest set bit."""
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in pivots:
                pivots[top] = r
                break
            r ^= pivots[top]
    return list(pivots.values())


def z_k(ctx: GroupContext) -> Subgroup:
    """Z_k = <x^(2^k), y^2, [y_0, y_d]>, the image of R_k."""
    gens = [ctx.x ** ctx.n, ctx.ysq] + [ctx.e(d) for d in range(1, ctx.n_c + 1)]
    return normal_closure(ctx, gens)


def center(ctx: GroupContext, cap: int | None = None) -> Subgroup:
    """Centre of G_k, enumerating coset representatives of the central Z_k."""
    G = whole_group(ctx)
    head = [b for b in G.basis if b.depth < ctx.tail_start]
    cap = enumeration_cap() if cap is None else cap
    if 1 << len(head) > cap:
        raise CapacityError(f"centre computation needs 2^{len(head)} representatives")
    central = [g for g in _ordered_products(ctx, head)
               if comm(g, ctx.x).is_identity() and comm(g, ctx.y).is_identity()]
    return subgroup_closure(ctx, central + list(z_k(ctx).basis))
