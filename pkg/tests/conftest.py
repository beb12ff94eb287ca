"""Shared fixtures.

The independent oracle is sympy's coset enumeration on the raw presentation
of G_2: it knows nothing about the normal form, only the relators.
"""

import random

import pytest

from pro2 import GroupContext


def _raw_presentation(k):
    from sympy.combinatorics.fp_groups import FpGroup
    from sympy.combinatorics.free_groups import free_group

    F, x, y = free_group("x, y")
    n = 2 ** k

    def cm(a, b):
        return a**-1 * b**-1 * a * b

    def yi(i):
        return x**-i * y * x**i

    rels = [x ** (2 * n), y**4, cm(x**n, y), cm(y**2, x)]
    for i in range(1, n // 2 + 1):
        e = cm(yi(0), yi(i))
        rels += [e**2, cm(e, x), cm(e, y)]
    return FpGroup(F, rels)


class CosetOracle:
    """Regular permutation action of G_2 on its 1024 cosets of the trivial subgroup."""

    def __init__(self, k=2):
        from sympy.combinatorics import Permutation

        fp = _raw_presentation(k)
        table = fp.coset_enumeration([]).table
        self.degree = len(table)
        # columns are x, x^-1, y, y^-1
        self.px = Permutation([row[0] for row in table])
        self.py = Permutation([row[2] for row in table])
        self.ctx = GroupContext(k)
        self._cache = {}

    def perm(self, g):
        """Permutation of a normal-form element, built from its coordinates only."""
        from sympy.combinatorics import Permutation

        key = g.key
        if key in self._cache:
            return self._cache[key]
        ctx = self.ctx
        p = Permutation(list(range(self.degree)))
        xp = self.px ** g.a
        p = p * xp
        for i in range(ctx.n):
            if g.e >> i & 1:
                p = p * (self.px ** -i * self.py * self.px ** i)
        if g.delta:
            p = p * self.py ** 2
        y0 = self.py
        for d in range(1, ctx.n_c + 1):
            if g.f >> (d - 1) & 1:
                yd = self.px ** -d * self.py * self.px ** d
                p = p * (~y0 * ~yd * y0 * yd)
        self._cache[key] = p
        return p

    def group(self):
        from sympy.combinatorics import PermutationGroup

        return PermutationGroup([self.px, self.py])


@pytest.fixture(scope="session")
def coset_oracle():
    pytest.importorskip("sympy")
    return CosetOracle(2)


@pytest.fixture(params=[2, 3])
def ctx(request):
    return GroupContext(request.param)


@pytest.fixture
def rng():
    return random.Random(20240611)
