"""Type A_n root combinatorics: roots e_i - e_j, S_{n+1} action, convex order, bases."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterable, NamedTuple

MAX_BASE_SEARCH_RANK = 6


class RootError(ValueError):
    pass


class NoAdaptedBase(RootError):
    pass


class Root(NamedTuple):
    """The root e_i - e_j (indices from 1)."""

    i: int
    j: int

    @property
    def positive(self) -> bool:
        return self.i < self.j

    def __neg__(self) -> "Root":
        return Root(self.j, self.i)

    @property
    def height(self) -> int:
        return self.j - self.i

    def vector(self, n: int) -> tuple[int, ...]:
        v = [0] * (n + 1)
        v[self.i - 1] += 1
        v[self.j - 1] -= 1
        return tuple(v)

    def plus(self, other: "Root") -> "Root | None":
        """Sum inside the root system, or None when it is not a root."""
        if self.j == other.i and self.i != other.j:
            return Root(self.i, other.j)
        if other.j == self.i and other.i != self.j:
            return Root(other.i, self.j)
        return None

    def __str__(self):
        return f"e{self.i}-e{self.j}"


def _check_rank(n: int):
    if not isinstance(n, int) or n < 1:
        raise RootError(f"rank must be a positive integer, got {n!r}")


def simple_root(i: int) -> Root:
    return Root(i, i + 1)


def positive_roots(n: int) -> list[Root]:
    _check_rank(n)
    return [Root(i, j) for i in range(1, n + 2) for j in range(i + 1, n + 2)]


def all_roots(n: int) -> list[Root]:
    pos = positive_roots(n)
    return pos + [-r for r in pos]


def longest_word(n: int) -> list[int]:
    """The reduced word s_1...s_n s_1...s_{n-1} ... s_1 for w0."""
    _check_rank(n)
    return [i for top in range(n, 0, -1) for i in range(1, top + 1)]


def reflect(i: int, root: Root) -> Root:
    """s_i swaps the indices i and i+1."""
    swap = {i: i + 1, i + 1: i}
    return Root(swap.get(root.i, root.i), swap.get(root.j, root.j))


@lru_cache(maxsize=None)
def _convex_order(n: int) -> tuple[Root, ...]:
    word = longest_word(n)
    out = []
    for k, ik in enumerate(word):
        beta = simple_root(ik)
        for i in reversed(word[:k]):
            beta = reflect(i, beta)
        out.append(beta)
    if sorted(out) != positive_roots(n) or len(set(out)) != len(out):
        raise RootError("reduced word does not enumerate the positive roots")
    return tuple(out)


def convex_order(n: int) -> list[Root]:
    """beta_k = s_{i_1}...s_{i_{k-1}}(alpha_{i_k}) for the fixed reduced word of w0."""
    return list(_convex_order(n))


def apply_perm(w: tuple[int, ...], root: Root) -> Root:
    """w acts by relabelling indices; w[k-1] is the image of k."""
    return Root(w[root.i - 1], w[root.j - 1])


def standard_base(n: int) -> tuple[Root, ...]:
    return tuple(simple_root(i) for i in range(1, n + 1))


def base_coordinates(root: Root, base: tuple[Root, ...], n: int) -> list[Fraction]:
    """Coefficients of root in the basis `base` (exact Gaussian elimination)."""
    if len(base) != n:
        raise RootError("a base of A_n has n elements")
    # rows are the n+1 coordinates, columns the base vectors; the system is consistent
    rows = [[Fraction(b.vector(n)[r]) for b in base] + [Fraction(root.vector(n)[r])] for r in range(n + 1)]
    piv_row = 0
    pivots = []
    for col in range(n):
        pr = next((r for r in range(piv_row, n + 1) if rows[r][col] != 0), None)
        if pr is None:
            raise RootError("base vectors are linearly dependent")
        rows[piv_row], rows[pr] = rows[pr], rows[piv_row]
        pv = rows[piv_row][col]
        rows[piv_row] = [x / pv for x in rows[piv_row]]
        for r in range(n + 1):
            if r != piv_row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[piv_row])]
        pivots.append(piv_row)
        piv_row += 1
    for r in range(piv_row, n + 1):
        if rows[r][n] != 0:
            raise RootError(f"{root} is not in the span of the base")
    return [rows[r][n] for r in pivots]


def is_base(base: Iterable[Root], n: int) -> bool:
    """Every root is an integer combination of `base` with coefficients of one sign."""
    base = tuple(base)
    if len(base) != n or len(set(base)) != n:
        return False
    try:
        for r in all_roots(n):
            coords = base_coordinates(r, base, n)
            if any(c.denominator != 1 for c in coords):
                return False
            if not (all(c >= 0 for c in coords) or all(c <= 0 for c in coords)):
                return False
    except RootError:
        return False
    return True


def positive_system(base: tuple[Root, ...], n: int) -> frozenset[Root]:
    """Roots that are nonnegative combinations of `base`."""
    out = set()
    for r in all_roots(n):
        if all(c >= 0 for c in base_coordinates(r, base, n)):
            out.add(r)
    return frozenset(out)


def _infer_rank(groups) -> int:
    top = 1
    for g in groups:
        for r in g:
            top = max(top, r.i, r.j)
    return top - 1


def find_adapted_base(N_a, N_s, T_s, n: int | None = None) -> tuple[Root, ...]:
    """A base B with N_a inside the B-positive roots and B minus N_a made of positive roots.

    The candidates are the S_{n+1}-images of the standard base; the lexicographically
    least qualifying one is returned.
    """
    N_a = frozenset(Root(*r) for r in N_a)
    N_s = frozenset(Root(*r) for r in N_s)
    T_s = frozenset(Root(*r) for r in T_s)
    if n is None:
        n = _infer_rank((N_a, N_s, T_s))
    _check_rank(n)
    if n > MAX_BASE_SEARCH_RANK:
        raise RootError(f"base search is capped at rank {MAX_BASE_SEARCH_RANK}")
    for group, name in ((N_s, "N_s"), (T_s, "T_s")):
        if any(-r not in group for r in group):
            raise NoAdaptedBase(f"{name} is not symmetric")
    if N_a & (N_s | T_s) or N_s & T_s:
        raise NoAdaptedBase("partition data overlaps")
    std = standard_base(n)
    best = None
    for w in permutations(range(1, n + 2)):
        base = tuple(apply_perm(w, r) for r in std)
        pos = frozenset(Root(w[a], w[b]) for a in range(n + 1) for b in range(a + 1, n + 1))
        if not N_a <= pos:
            continue
        if any(not r.positive for r in base if r not in N_a):
            continue
        if best is None or base < best:
            best = base
    if best is None:
        raise NoAdaptedBase("no adapted base for the given partition")
    if not is_base(best, n):
        raise RootError("internal error: Weyl image of the standard base is not a base")
    return best
