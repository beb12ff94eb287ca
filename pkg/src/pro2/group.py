"""Normal-form arithmetic in the finite quotients G_k.

G_k is generated by ``x`` and ``y`` subject to

    x^(2^(k+1)), y^4, [x^(2^k), y], [y^2, x],
    [y_0, y_i]^2, [y_0, y_i, x], [y_0, y_i, y]     (1 <= i <= 2^(k-1))

where ``y_i = y^(x^i) = x^-i y x^i``.  Every element has a unique normal form

    x^a * y_0^e_0 ... y_(n-1)^e_(n-1) * (y^2)^delta * e_1^f_1 ... e_(n/2)^f_(n/2)

with ``n = 2^k`` and ``e_d = [y_0, y_d]``.  The elements ``y^2`` and ``e_d``
are central involutions, ``y_i^2 = y^2`` for every ``i`` and
``[y_i, y_j] = e_fold(j - i)`` with ``fold(t) = min(t mod n, n - t mod n)``.
Collection therefore only ever pushes corrections into the central part.

Commutators are left-normed with ``[a, b] = a^-1 b^-1 a b``.

Coordinates (used for echelon bases) are laid out as

    x-bits 0..k-1 | e_0..e_(n-1) | x-bit k | delta | f_1..f_(n/2)

so that the central subgroup Z_k = <x^(2^k), y^2, e_d> is a tail of the
coordinate chain.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

from .errors import ContextMismatchError

BitsLike = Union[int, str, Sequence[int]]


def _bits_to_int(bits: BitsLike, length: int) -> int:
    if isinstance(bits, int):
        value = bits
    else:
        if len(bits) != length:
            raise ValueError(f"expected {length} bits, got {len(bits)}")
        value = 0
        for i, b in enumerate(bits):
            if int(b) not in (0, 1):
                raise ValueError(f"not a bit: {b!r}")
            value |= int(b) << i
    if value < 0 or value >> length:
        raise ValueError(f"bit vector {value:#x} does not fit in {length} bits")
    return value


def _int_to_bits(value: int, length: int) -> str:
    return "".join("1" if value >> i & 1 else "0" for i in range(length))


@dataclass(frozen=True)
class GroupContext:
    """Level ``k`` of the tower G_k together with its derived sizes."""

    k: int
    n: int = field(init=False, compare=False)
    n_c: int = field(init=False, compare=False)
    x_mod: int = field(init=False, compare=False)
    log_order: int = field(init=False, compare=False)
    _fold_bits: tuple = field(init=False, compare=False, repr=False)
    _cross_table: object = field(init=False, compare=False, repr=False, default=None)

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise ValueError(f"level k must be an integer >= 2, got {self.k!r}")
        k = self.k
        n = 1 << k
        set_ = object.__setattr__
        set_(self, "n", n)
        set_(self, "n_c", n >> 1)
        set_(self, "x_mod", n << 1)
        set_(self, "log_order", n + (n >> 1) + k + 2)
        # _fold_bits[t] is the f-mask of e_fold(t) for 1 <= t < n
        set_(self, "_fold_bits", (0,) + tuple(1 << (min(t, n - t) - 1) for t in range(1, n)))
        if n <= 8:
            set_(self, "_cross_table", self._build_cross_table())

    # -- collection helpers ---------------------------------------------------

    def _cross_slow(self, left: int, right: int) -> int:
        """f-mask of the commutators produced by moving every ``y_i`` (i in
        ``right``) leftwards past every ``y_j`` (j in ``left``) with j > i."""
        f = 0
        fold = self._fold_bits
        for t in range(1, self.n):
            if ((left >> t) & right).bit_count() & 1:
                f ^= fold[t]
        return f

    def _build_cross_table(self) -> list:
        size = 1 << self.n
        return [[self._cross_slow(left, right) for right in range(size)] for left in range(size)]

    def cross(self, left: int, right: int) -> int:
        table = self._cross_table
        if table is not None:
            return table[left][right]
        return self._cross_slow(left, right)

    def fold(self, t: int) -> int:
        """Index d with ``[y_0, y_t] = e_d``; 0 when ``t`` is a multiple of n."""
        t %= self.n
        return min(t, self.n - t)

    # -- coordinates ----------------------------------------------------------

    @property
    def tail_start(self) -> int:
        """Coordinate position of x^(2^k); positions from here on span Z_k."""
        return self.k + self.n

    @property
    def central_start(self) -> int:
        """Coordinate position of y^2; positions from here on span <y^2, e_d>."""
        return self.k + self.n + 1

    def coordinate_names(self) -> list[str]:
        names = [f"x^{1 << b}" for b in range(self.k)]
        names += [f"y_{i}" for i in range(self.n)]
        names.append(f"x^{self.n}")
        names.append("y^2")
        names += [f"[y_0,y_{d}]" for d in range(1, self.n_c + 1)]
        return names

    # -- constructors ---------------------------------------------------------

    def element(self, a: int = 0, e: BitsLike = 0, delta: int = 0, f: BitsLike = 0) -> "Element":
        """Element with the given normal-form coordinates.

        ``e`` and ``f`` accept an int bitmask (bit i = index i) or a bit
        string / sequence in index order, so ``e="1100"`` means ``y_0 y_1``.
        """
        if delta not in (0, 1):
            raise ValueError(f"delta must be a bit, got {delta!r}")
        return Element(self, a % self.x_mod, _bits_to_int(e, self.n), delta,
                       _bits_to_int(f, self.n_c))

    def from_key(self, key: int) -> "Element":
        k, n = self.k, self.n
        a = (key & ((1 << k) - 1)) | (((key >> (k + n)) & 1) << k)
        e = (key >> k) & ((1 << n) - 1)
        delta = (key >> (k + n + 1)) & 1
        f = key >> (k + n + 2)
        return Element(self, a, e, delta, f)

    @property
    def identity(self) -> "Element":
        return Element(self, 0, 0, 0, 0)

    @property
    def x(self) -> "Element":
        return Element(self, 1, 0, 0, 0)

    @property
    def y(self) -> "Element":
        return Element(self, 0, 1, 0, 0)

    def y_i(self, i: int) -> "Element":
        if not 0 <= i < self.n:
            raise IndexError(f"y_i needs 0 <= i < {self.n}, got {i}")
        return Element(self, 0, 1 << i, 0, 0)

    def e(self, d: int) -> "Element":
        """The central commutator ``[y_0, y_d]`` for ``1 <= d <= 2^(k-1)``."""
        if not 1 <= d <= self.n_c:
            raise IndexError(f"[y_0, y_d] needs 1 <= d <= {self.n_c}, got {d}")
        return Element(self, 0, 0, 0, 1 << (d - 1))

    @property
    def ysq(self) -> "Element":
        return Element(self, 0, 0, 1, 0)

    @property
    def w(self) -> "Element":
        """``w = y_(n-1) ... y_1 y_0``; all reordering corrections cancel."""
        return Element(self, 0, (1 << self.n) - 1, 0, 0)

    def c(self, i: int) -> "Element":
        """Left-normed ``[y, x, ..., x]`` with ``i - 1`` copies of x; ``c(1) = y``."""
        if i < 1:
            raise IndexError(f"c(i) needs i >= 1, got {i}")
        return comm_left(self.y, self.x, i - 1)

    def z(self, i: int) -> "Element":
        """``[y, x, ..., x, y]`` with ``i - 2`` copies of x, i.e. ``[c(i-1), y]``."""
        if i < 2:
            raise IndexError(f"z(i) needs i >= 2, got {i}")
        return comm(self.c(i - 1), self.y)

    def random_element(self, rng: random.Random) -> "Element":
        return Element(self, rng.randrange(self.x_mod), rng.getrandbits(self.n),
                       rng.getrandbits(1), rng.getrandbits(self.n_c))

    def all_elements(self) -> Iterator["Element"]:
        for key in range(1 << self.log_order):
            yield self.from_key(key)

    def __repr__(self):
        return f"GroupContext(k={self.k})"


class Element:
    """An element of G_k in normal form.  Immutable."""

    __slots__ = ("ctx", "a", "e", "delta", "f")

    def __init__(self, ctx: GroupContext, a: int, e: int, delta: int, f: int):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "f", f)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    @property
    def key(self) -> int:
        """Coordinate vector packed into an int (bit p = coordinate p)."""
        ctx = self.ctx
        k, n = ctx.k, ctx.n
        a = self.a
        return ((a & ((1 << k) - 1)) | (self.e << k) | ((a >> k) << (k + n))
                | (self.delta << (k + n + 1)) | (self.f << (k + n + 2)))

    @property
    def depth(self) -> int:
        """Index of the first nonzero coordinate; ``log_order`` for the identity."""
        key = self.key
        if not key:
            return self.ctx.log_order
        return (key & -key).bit_length() - 1

    def is_identity(self) -> bool:
        return not (self.a or self.e or self.delta or self.f)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (self.ctx.k == other.ctx.k and self.a == other.a and self.e == other.e
                and self.delta == other.delta and self.f == other.f)

    def __hash__(self):
        return hash((self.ctx.k, self.a, self.e, self.delta, self.f))

    def __mul__(self, other: "Element") -> "Element":
        return mul(self, other)

    def __pow__(self, n: int) -> "Element":
        return power(self, n)

    def inverse(self) -> "Element":
        return inv(self)

    def __repr__(self):
        ctx = self.ctx
        return (f"Element(k={ctx.k}, a={self.a}, e={_int_to_bits(self.e, ctx.n)}, "
                f"delta={self.delta}, f={_int_to_bits(self.f, ctx.n_c)})")


def _check_same(g: Element, h: Element) -> GroupContext:
    if g.ctx.k != h.ctx.k:
        raise ContextMismatchError(f"elements from G_{g.ctx.k} and G_{h.ctx.k}")
    return g.ctx


def generator(ctx: GroupContext, name: str, index: int | None = None) -> Element:
    """Named element: ``x``, ``y``, ``y_i`` (index i), ``c_d`` (index d, the
    commutator ``[y_0, y_d]``), ``ysq`` or ``w``."""
    if name == "x":
        return ctx.x
    if name == "y":
        return ctx.y
    if name == "ysq":
        return ctx.ysq
    if name == "w":
        return ctx.w
    if name in ("y_i", "c_d"):
        if index is None:
            raise ValueError(f"generator {name!r} needs an index")
        return ctx.y_i(index) if name == "y_i" else ctx.e(index)
    raise ValueError(f"unknown generator {name!r}")


def mul(g: Element, h: Element) -> Element:
    ctx = _check_same(g, h)
    n = ctx.n
    e, delta, f = g.e, g.delta, g.f
    # move x^(h.a) to the left: conjugation by x^s shifts every index by s
    s = h.a & (n - 1)
    if s and e:
        cut = n - s
        low = e & ((1 << cut) - 1)
        high = e ^ low
        if low and high:
            # wrapped indices move in front of the unwrapped ones
            f ^= ctx.cross(high, low)
        e = (low << s) | (high >> cut)
    e2 = h.e
    if e and e2:
        f ^= ctx.cross(e, e2)
        delta ^= (e & e2).bit_count() & 1
    return Element(ctx, (g.a + h.a) & (ctx.x_mod - 1), e ^ e2, delta ^ h.delta, f ^ h.f)


def inv(g: Element) -> Element:
    ctx = g.ctx
    e = g.e
    # (y_i1 ... y_im)^-1 = y_im ... y_i1 * y^(2m), reordered ascending
    body = Element(ctx, 0, e, g.delta ^ (e.bit_count() & 1), g.f ^ ctx.cross(e, e))
    if not g.a:
        return body
    return mul(body, Element(ctx, (-g.a) & (ctx.x_mod - 1), 0, 0, 0))


def power(g: Element, n: int) -> Element:
    if n < 0:
        g, n = inv(g), -n
    result = g.ctx.identity
    base = g
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def comm(g: Element, h: Element) -> Element:
    """``[g, h] = g^-1 h^-1 g h``."""
    return mul(mul(inv(g), inv(h)), mul(g, h))


def comm_left(g: Element, h: Element, m: int = 1) -> Element:
    """``[g, h, ..., h]`` with ``m`` copies of ``h``; ``m = 0`` returns ``g``."""
    for _ in range(m):
        g = comm(g, h)
    return g


def commutator(*elements: Element) -> Element:
    """Left-normed ``[a, b, c, ...] = [[a, b], c, ...]``."""
    if len(elements) < 2:
        raise ValueError("a commutator needs at least two entries")
    result = elements[0]
    for h in elements[1:]:
        result = comm(result, h)
    return result


def conj(g: Element, h: Element) -> Element:
    """``g^h = h^-1 g h``."""
    return mul(mul(inv(h), g), h)


def element_order(g: Element) -> int:
    order = 1
    while not g.is_identity():
        g = mul(g, g)
        order <<= 1
    return order


def coords(g: Element) -> tuple[int, ...]:
    key = g.key
    return tuple(key >> p & 1 for p in range(g.ctx.log_order))


def depth(g: Element) -> int:
    return g.depth
