"""North-east lattice paths and the two-exponent matrix families.

A composition whose parts all equal k or l maps to a path (north at k,
east at l); the number of irreducible matrices in the associated family is
p^((k - ceil(k/2)) * Area), and summing p^Area over all paths to a fixed
endpoint gives a Gaussian binomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .hnf import HNFMatrix
from .partitions import Composition
from .polyp import PolyP, gaussian_binomial

NORTH = "N"
EAST = "E"


@dataclass(frozen=True)
class LatticePath:
    steps: tuple[str, ...]

    def __post_init__(self):
        if any(s not in (NORTH, EAST) for s in self.steps):
            raise ValueError("steps must be 'N' or 'E'")

    @property
    def endpoint(self) -> tuple[int, int]:
        return (self.steps.count(EAST), self.steps.count(NORTH))


def area(path: LatticePath) -> int:
    """Enclosed area, computed as the number of (north, east) inversions:
    pairs i < j with step i north and step j east.  Each east step at
    height h contributes h unit squares under the path."""
    height = 0
    total = 0
    for s in path.steps:
        if s == NORTH:
            height += 1
        else:
            total += height
    return total


def iter_paths(u: int, v: int) -> Iterator[LatticePath]:
    """All north-east paths from the origin to (u, v)."""
    for north_positions in itertools.combinations(range(u + v), v):
        steps = [EAST] * (u + v)
        for i in north_positions:
            steps[i] = NORTH
        yield LatticePath(tuple(steps))


def path_from_composition(alpha, k: int, l: int) -> LatticePath:
    """Path with step i north when alpha_i = k and east when alpha_i = l."""
    parts = tuple(alpha.parts if isinstance(alpha, Composition) else alpha)
    if k == l:
        raise ValueError("the two part values must differ")
    steps = []
    for x in parts:
        if x == k:
            steps.append(NORTH)
        elif x == l:
            steps.append(EAST)
        else:
            raise ValueError(f"part {x} is neither {k} nor {l}")
    return LatticePath(tuple(steps))


def two_value_compositions(n: int, d: int, k: int, l: int) -> Iterator[Composition]:
    """All arrangements of d parts k and (n-1-d) parts l."""
    if k == l:
        raise ValueError("the two part values must differ")
    if not 0 <= d <= n - 1:
        raise ValueError("d must lie in [0, n-1]")
    for pos in itertools.combinations(range(n - 1), d):
        parts = [l] * (n - 1)
        for i in pos:
            parts[i] = k
        yield Composition(parts)


def _family_check(alpha_parts, k, l):
    if k == l:
        raise ValueError("the two part values must differ")
    if l < -(-k // 2):
        raise ValueError(f"need l >= ceil(k/2) = {-(-k // 2)}, got l = {l}")
    if any(x not in (k, l) for x in alpha_parts):
        raise ValueError("every part must equal k or l")


def family_matrices(alpha, k: int, l: int, p: int) -> Iterator[HNFMatrix]:
    """The two-exponent family with diagonal alpha: entry (i, j) runs over
    multiples of p^ceil(k/2) in [0, p^k) when (alpha_i, alpha_j) = (k, l)
    with i < j, every other off-diagonal entry is 0, and the last column is
    all ones.  Every yielded matrix is an irreducible subring matrix."""
    parts = tuple(alpha.parts if isinstance(alpha, Composition) else alpha)
    _family_check(parts, k, l)
    half = -(-k // 2)
    m = len(parts)
    n = m + 1
    slots = [
        (i, j)
        for i in range(m)
        for j in range(i + 1, m)
        if parts[i] == k and parts[j] == l
    ]
    values = range(0, p**k, p**half)
    base = [[0] * n for _ in range(n)]
    for i in range(m):
        base[i][i] = p ** parts[i]
        base[i][n - 1] = 1
    base[n - 1][n - 1] = 1
    for vals in itertools.product(values, repeat=len(slots)):
        rows = [row[:] for row in base]
        for (i, j), v in zip(slots, vals):
            rows[i][j] = v
        yield HNFMatrix.from_rows(p, rows)


def family_count(alpha, k: int, l: int) -> PolyP:
    """p^((k - ceil(k/2)) * Area(P_alpha)) as a PolyP monomial."""
    parts = tuple(alpha.parts if isinstance(alpha, Composition) else alpha)
    _family_check(parts, k, l)
    a = area(path_from_composition(parts, k, l))
    return PolyP.monomial((k - (-(-k // 2))) * a)


def path_area_identity_check(u: int, v: int, q: int) -> bool:
    """True iff sum over paths to (u, v) of q^Area equals [u+v, v]_p at q."""
    if u < 0 or v < 0:
        raise ValueError("endpoint coordinates must be nonnegative")
    if u + v > 16:
        raise ValueError("u + v > 16 is beyond exhaustive path enumeration")
    total = sum(q ** area(P) for P in iter_paths(u, v))
    return total == gaussian_binomial(u + v, v)(q)
