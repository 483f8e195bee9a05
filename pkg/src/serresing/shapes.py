"""Chart classes and chain combinatorics.

Each embedding j carries a shape letter (which of the two Weyl-translate
charts is used) and a side letter; together with (k_j, s_j) this pins down
the local chart up to isomorphism, labelled by a class in {1,...,5}, or
EMPTY when the shape condition cuts the chart down to nothing:

  1  P^1 x P^1                (both projections onto projective lines)
  2  P^1 x A^1
  3  blowup of the cone D^2 + BC = 0   (the only singular image chart)
  4  A^2
  5  A^1 x P^1

Chains are maximal runs with class-3 interior; the contracting ones (left
end of class 1 or 2, right end of class 1 or 5) are where the resolution
contracts a projective line and singularities can appear downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .weights import (
    CyclicWindow,
    GammaProfile,
    ID,
    LEFT,
    RIGHT,
    TypeProfile,
    W0,
)

# Shape letters: the chart translate is either the antidiagonal matrix
# [[0,1],[v,0]] or the diagonal matrix diag(1, v).
ANTIDIAG = "antidiag"
DIAG = "diag"

EMPTY = 0


class ChartEmptyError(ValueError):
    pass


def chart_class(side: str, wshape: str, k: int, s: str) -> int:
    """The isomorphism class in {1..5} of the side-restricted chart, or EMPTY.

    Raises on combinations ruled out by smallness (k = 0 forces s = id).
    """
    if k < 0:
        raise ValueError("pairing must be nonnegative")
    if k == 0 and s != ID:
        raise ValueError("invalid (k, s): smallness forces s = id when k = 0")
    if s not in (ID, W0) or wshape not in (ANTIDIAG, DIAG) or side not in (LEFT, RIGHT):
        raise ValueError("bad side/shape/Weyl letter")
    if side == LEFT:
        if wshape == ANTIDIAG:
            return 1 if (k, s) == (1, W0) else 2
        return 2 if k == 0 else EMPTY
    # side R
    if k == 0:
        return 5
    if k == 1:
        if wshape == ANTIDIAG:
            return 3 if s == W0 else 4
        return 3 if s == ID else 4
    return 4


def class_tuple(profile: TypeProfile, shape: tuple[str, ...]) -> tuple[int, ...]:
    if len(shape) != profile.f:
        raise ValueError("shape length must equal f")
    return tuple(
        chart_class(profile.side[j], shape[j], profile.pairing[j], profile.weyl[j])
        for j in range(profile.f)
    )


def all_shapes(f: int):
    return product((ANTIDIAG, DIAG), repeat=f)


@dataclass(frozen=True)
class Chain:
    """A cyclic run (start, ..., end) of length >= 2 whose interior indices
    all have class 3 and whose endpoints do not."""

    start: int
    length: int

    def indices(self, f: int) -> tuple[int, ...]:
        return tuple((self.start + i) % f for i in range(self.length))

    def end(self, f: int) -> int:
        return (self.start + self.length - 1) % f


@dataclass(frozen=True)
class ChainSet:
    f: int
    chains: tuple[Chain, ...]
    all_class3: bool
    contracting: tuple[Chain, ...]


def chain_decomposition(classes: tuple[int, ...]) -> ChainSet:
    """All chains of a class tuple, plus the contracting subset.

    The class tuple must have no EMPTY entry (an empty chart has no chains).
    """
    f = len(classes)
    if EMPTY in classes:
        raise ChartEmptyError("chart empty: class tuple contains an EMPTY entry")
    non3 = [j for j in range(f) if classes[j] != 3]
    if not non3:
        return ChainSet(f, (), True, ())
    chains = []
    for idx, j in enumerate(non3):
        nxt = non3[(idx + 1) % len(non3)]
        length = ((nxt - j - 1) % f) + 2
        chains.append(Chain(j, length))
    star = tuple(
        t
        for t in chains
        if classes[t.start] in (1, 2) and classes[t.end(f)] in (1, 5)
    )
    return ChainSet(f, tuple(chains), False, star)


def collapse_windows(g: GammaProfile) -> list[CyclicWindow]:
    """Cyclic gamma-windows of the form (p-1, 1, ..., 1, 0), length >= 2.

    These detect exactly the profiles for which some shape admits a
    contracting chain; the shortest window length is the singular-locus
    codimension.
    """
    p, f, gam = g.p, g.f, g.gamma
    out = []
    for start in range(f):
        if gam[start] != p - 1:
            continue
        for length in range(2, f + 1):
            w = CyclicWindow(start, length)
            idx = w.indices(f)
            if gam[idx[-1]] != 0:
                continue
            if all(gam[j] == 1 for j in idx[1:-1]):
                out.append(w)
    out.sort(key=lambda w: (w.length, w.start))
    return out


def min_contracting_codim(profile: TypeProfile) -> int | None:
    """min(length(chain) - 1) over all shapes and contracting chains, or None
    when no shape has one.  Shapes producing an empty chart are skipped."""
    best: int | None = None
    for shape in all_shapes(profile.f):
        classes = class_tuple(profile, shape)
        if EMPTY in classes:
            continue
        cs = chain_decomposition(classes)
        for t in cs.contracting:
            d = t.length - 1
            if best is None or d < best:
                best = d
    return best


# The eight local chart presentations, keyed by (k bucket, s, shape letter).
# Values are the template case ids used by the chart laboratory.
_CASE_IDS = {
    (">1", W0, ANTIDIAG): 1,
    (">=1", W0, DIAG): 2,
    (">=1", ID, ANTIDIAG): 3,
    (">1", ID, DIAG): 4,
    ("=1", W0, ANTIDIAG): 5,
    ("=1", ID, DIAG): 6,
    ("=0", ID, ANTIDIAG): 7,
    ("=0", ID, DIAG): 8,
}


def template_case(k: int, s: str, wshape: str) -> int:
    """Which of the eight X-matrix templates covers (k, s, shape)."""
    if k == 0 and s != ID:
        raise ValueError("invalid (k, s): smallness forces s = id when k = 0")
    if k == 0:
        return 7 if wshape == ANTIDIAG else 8
    if s == W0:
        if wshape == DIAG:
            return 2
        return 5 if k == 1 else 1
    if wshape == ANTIDIAG:
        return 3
    return 6 if k == 1 else 4
