"""Serre weight combinatorics: character exponents, maximal-interval
decompositions, tame type profiles and descent-data exponents.

Indices live in Z/fZ throughout; cyclic intervals are stored as
(start, length) with 2 <= length <= f.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .field import is_prime

ID = "id"
W0 = "w0"
LEFT = "L"
RIGHT = "R"


@dataclass(frozen=True)
class SerreWeight:
    """An irreducible GL_2(k)-representation, encoded by twist and symmetric
    power exponents (m_j, n_j) per embedding, 0 <= n_j <= p-1."""

    p: int
    f: int
    m: tuple[int, ...]
    n: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p) or self.p <= 3:
            raise ValueError(f"p must be a prime > 3, got {self.p}")
        if self.f < 1:
            raise ValueError("f must be >= 1")
        if len(self.m) != self.f or len(self.n) != self.f:
            raise ValueError("m and n must have length f")
        for nj in self.n:
            if not 0 <= nj <= self.p - 1:
                raise ValueError(f"n_j out of range [0, p-1]: {nj}")

    @classmethod
    def of(cls, p: int, n: tuple[int, ...] | list[int], m=None) -> "SerreWeight":
        n = tuple(n)
        m = tuple(m) if m is not None else (0,) * len(n)
        return cls(p, len(n), m, n)

    def is_steinberg(self) -> bool:
        return all(nj == self.p - 1 for nj in self.n)

    def rotate(self, shift: int) -> "SerreWeight":
        f = self.f
        m = tuple(self.m[(j + shift) % f] for j in range(f))
        n = tuple(self.n[(j + shift) % f] for j in range(f))
        return SerreWeight(self.p, f, m, n)


@dataclass(frozen=True)
class CyclicWindow:
    """The cyclic interval {start, start+1, ..., start+length-1} in Z/fZ."""

    start: int
    length: int

    def indices(self, f: int) -> tuple[int, ...]:
        return tuple((self.start + i) % f for i in range(self.length))

    def end(self, f: int) -> int:
        return (self.start + self.length - 1) % f


@dataclass(frozen=True)
class GammaProfile:
    """Exponents of the character ratio attached to a weight, with the
    hypothesis flag for the interval decomposition."""

    p: int
    f: int
    gamma: tuple[int, ...]
    hypothesis_ok: bool = dc_field(init=False)

    def __post_init__(self):
        for g in self.gamma:
            if not 0 <= g <= self.p - 1:
                raise ValueError("gamma entries must lie in [0, p-1]")
        h = (self.p - 1) // 2
        ok = all(g <= h for g in self.gamma) or any(g < h for g in self.gamma)
        object.__setattr__(self, "hypothesis_ok", ok)

    @property
    def half(self) -> int:
        return (self.p - 1) // 2


def gamma_from_weight(w: SerreWeight) -> GammaProfile:
    """gamma_j = p - 1 - n_j."""
    return GammaProfile(w.p, w.f, tuple(w.p - 1 - nj for nj in w.n))


@dataclass(frozen=True)
class MaximalIntervals:
    """Maximal cyclic intervals with small start, large interior/end, and the
    derived start / end / non-start index sets."""

    f: int
    intervals: tuple[CyclicWindow, ...]

    @property
    def starts(self) -> frozenset[int]:
        return frozenset(w.start for w in self.intervals)

    @property
    def ends(self) -> frozenset[int]:
        return frozenset(w.end(self.f) for w in self.intervals)

    @property
    def non_starts(self) -> frozenset[int]:
        out: set[int] = set()
        for w in self.intervals:
            out.update(w.indices(self.f)[1:])
        return frozenset(out)

    def covered(self) -> frozenset[int]:
        out: set[int] = set()
        for w in self.intervals:
            out.update(w.indices(self.f))
        return frozenset(out)

    def interval_of(self, j: int) -> CyclicWindow | None:
        for w in self.intervals:
            if j % self.f in w.indices(self.f):
                return w
        return None


class HypothesisError(ValueError):
    pass


class OriginError(ValueError):
    pass


def maximal_intervals(g: GammaProfile) -> MaximalIntervals:
    """All maximal cyclic intervals whose start has gamma < (p-1)/2, interior
    gamma >= (p-1)/2 and end gamma > (p-1)/2."""
    if not g.hypothesis_ok:
        raise HypothesisError("interval-decomposition hypothesis fails for this profile")
    f, h, gam = g.f, g.half, g.gamma
    candidates = []
    for start in range(f):
        for length in range(2, f + 1):
            w = CyclicWindow(start, length)
            idx = w.indices(f)
            if gam[idx[0]] >= h:
                continue
            if gam[idx[-1]] <= h:
                continue
            if any(gam[j] < h for j in idx[1:-1]):
                continue
            candidates.append(w)
    sets = {w: set(w.indices(f)) for w in candidates}
    maximal = [
        w
        for w in candidates
        if not any(w2 is not w and sets[w] < sets[w2] for w2 in candidates)
    ]
    maximal.sort(key=lambda w: (w.start, w.length))
    return MaximalIntervals(f, tuple(maximal))


def rotate(g: GammaProfile, shift: int) -> GammaProfile:
    """Relabel indices j -> j - shift (entry at old index `shift` moves to 0)."""
    f = g.f
    return GammaProfile(g.p, f, tuple(g.gamma[(j + shift) % f] for j in range(f)))


def origin_ok(g: GammaProfile) -> bool:
    """Index 0 is outside every interval, or sits at an interval start."""
    m = maximal_intervals(g)
    return 0 not in m.non_starts


def find_origin_shift(g: GammaProfile) -> int:
    """Smallest shift whose rotation satisfies the origin condition."""
    for shift in range(g.f):
        if origin_ok(rotate(g, shift)):
            return shift
    raise OriginError("no rotation satisfies the origin condition")


@dataclass(frozen=True)
class TypeProfile:
    """Per-embedding tame type data: the root pairing k_j, the Weyl letters
    s_j and the orientation letters, the component side, and optional central
    shifts c_j (so mu_j = (k_j + c_j, c_j))."""

    p: int
    f: int
    pairing: tuple[int, ...]      # <mu_j, alpha-check>
    weyl: tuple[str, ...]         # s_j in {id, w0}
    orientation: tuple[str, ...]  # in {id, w0}
    side: tuple[str, ...]         # in {L, R}
    shifts: tuple[int, ...] | None = None

    def __post_init__(self):
        for seq in (self.pairing, self.weyl, self.orientation, self.side):
            if len(seq) != self.f:
                raise ValueError("profile tuples must have length f")
        for j, k in enumerate(self.pairing):
            if k < 0 or k > self.p - 2:
                raise ValueError(f"pairing out of range at {j}: {k}")
            if k == 0 and self.weyl[j] != ID:
                raise ValueError("smallness requires s_j = id when the pairing is 0")
        for s in self.weyl + self.orientation:
            if s not in (ID, W0):
                raise ValueError(f"bad Weyl letter {s!r}")
        for s in self.side:
            if s not in (LEFT, RIGHT):
                raise ValueError(f"bad side letter {s!r}")

    def mu(self, j: int) -> tuple[int, int]:
        if self.shifts is None:
            raise ValueError("profile carries no central shifts")
        c = self.shifts[j % self.f]
        return (self.pairing[j % self.f] + c, c)

    def with_shifts(self, shifts: tuple[int, ...]) -> "TypeProfile":
        return TypeProfile(
            self.p, self.f, self.pairing, self.weyl, self.orientation, self.side, tuple(shifts)
        )


def type_profile(g: GammaProfile, m: MaximalIntervals, shifts=None) -> TypeProfile:
    """Apply the four-case rule for (k_j, s_j, orientation_j, side_j).

    The decomposition m is taken as given; pass the output of
    maximal_intervals for weight-derived profiles.  Requires the origin
    condition (0 not in any non-start position).
    """
    if 0 in m.non_starts:
        raise OriginError("rotate labels first: index 0 sits inside an interval")
    f, p, gam = g.f, g.p, g.gamma
    starts, ends, covered = m.starts, m.ends, m.covered()
    pairing, weyl, orient, side = [], [], [], []
    for j in range(f):
        if j in starts:
            k, s, so, sd = gam[j] + 1, W0, W0, LEFT
        elif j in ends:
            k, s, so, sd = p - gam[j], W0, ID, RIGHT
        elif j in covered:
            k, s, so, sd = p - 1 - gam[j], ID, W0, LEFT
        else:
            k, s, so, sd = gam[j], ID, ID, RIGHT
        pairing.append(k)
        weyl.append(s)
        orient.append(so)
        side.append(sd)
    return TypeProfile(
        p, f, tuple(pairing), tuple(weyl), tuple(orient), tuple(side),
        tuple(shifts) if shifts is not None else None,
    )


def weight_type_profile(w: SerreWeight) -> tuple[TypeProfile, int] | None:
    """Rotate, decompose and build the type profile for a weight.

    Returns (profile, shift) where shift is the rotation applied to satisfy
    the origin condition, or None when the hypothesis fails.
    """
    g = gamma_from_weight(w)
    if not g.hypothesis_ok:
        return None
    try:
        shift = find_origin_shift(g)
    except OriginError:
        return None
    gr = rotate(g, shift)
    return type_profile(gr, maximal_intervals(gr)), shift


@dataclass(frozen=True)
class DescentExponents:
    """Per-embedding exponent pairs of the descent-data characters."""

    f: int
    pairs: tuple[tuple[int, int], ...]


def _apply_weyl(letter: str, pair: tuple[int, int]) -> tuple[int, int]:
    return (pair[1], pair[0]) if letter == W0 else pair


def descent_exponents(profile: TypeProfile) -> DescentExponents:
    """Exponent pairs a^(j) = sum_i alpha_{-j+i} p^i, where alpha_0 = mu_0 and
    alpha_l twists mu_{f-l} by the tail product of the Weyl letters.

    Verifies the consistency congruence a^(j+1) == p * a^(j) componentwise
    modulo p^f - 1, which expresses that all embeddings induce the same
    character data.
    """
    p, f = profile.p, profile.f
    alphas = [profile.mu(0)]
    for l in range(1, f):
        # product s_{f-1}^{-1} ... s_{f-l}^{-1} collapses to a parity of swaps
        swaps = sum(1 for i in range(f - l, f) if profile.weyl[i] == W0)
        pair = profile.mu(f - l)
        alphas.append(_apply_weyl(W0 if swaps % 2 else ID, pair))
    pairs = []
    for j in range(f):
        a0 = sum(alphas[(-j + i) % f][0] * p ** i for i in range(f))
        a1 = sum(alphas[(-j + i) % f][1] * p ** i for i in range(f))
        pairs.append((a0, a1))
    modulus = p ** f - 1
    for j in range(f):
        nxt = pairs[(j + 1) % f]
        cur = pairs[j]
        if (nxt[0] - p * cur[0]) % modulus or (nxt[1] - p * cur[1]) % modulus:
            raise AssertionError("descent exponent consistency congruence failed")
    return DescentExponents(f, tuple(pairs))
