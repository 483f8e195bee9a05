"""Component classification for Serre weights.

Two independent routes to the same verdict:

* classify_weight: the closed-form rule on the exponent tuple n --
  Steinberg weights are smooth; all n_j = p-2 gives a non-normal component
  whose non-normal locus has codimension f; a cyclic window
  (0, p-2, ..., p-2, p-1) in n gives a normal singular component, which is
  Gorenstein (even lci) exactly when every such window has length 2, with
  singular-locus codimension the shortest window length; everything else is
  smooth.

* classify_via_charts: enumerate all 2^f shapes of the associated type
  profile, read off class tuples and chain decompositions, and decide from
  the chart geometry (an all-class-3 shape detects non-normality; a
  contracting chain detects a normal singularity of codimension
  length - 1).
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from enum import Enum
from typing import Iterator

from .shapes import (
    EMPTY,
    all_shapes,
    chain_decomposition,
    class_tuple,
)
from .weights import CyclicWindow, SerreWeight, weight_type_profile


class Verdict(str, Enum):
    SMOOTH = "SMOOTH"
    NON_NORMAL = "NON_NORMAL"
    NORMAL_SINGULAR = "NORMAL_SINGULAR"


@dataclass(frozen=True)
class ComponentDiagnosis:
    verdict: Verdict
    provenance: str
    nonnormal_codim: int | None = None
    complement_smooth: bool | None = None
    gorenstein: bool | None = None
    lci: bool | None = None
    sing_codim: int | None = None

    def __post_init__(self):
        if self.verdict is Verdict.NORMAL_SINGULAR:
            if self.gorenstein != self.lci:
                raise ValueError("gorenstein and lci must agree")
            if self.sing_codim is None or self.sing_codim < 2:
                raise ValueError("normal singular components have sing_codim >= 2")

    def same_classification(self, other: "ComponentDiagnosis") -> bool:
        """Equality ignoring provenance."""
        return (
            self.verdict == other.verdict
            and self.nonnormal_codim == other.nonnormal_codim
            and self.gorenstein == other.gorenstein
            and self.lci == other.lci
            and self.sing_codim == other.sing_codim
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict.value
        return d


def singular_windows(w: SerreWeight) -> list[CyclicWindow]:
    """Cyclic windows of n of the form (0, p-2, ..., p-2, p-1), length >= 2."""
    p, f, n = w.p, w.f, w.n
    out = []
    for start in range(f):
        if n[start] != 0:
            continue
        for length in range(2, f + 1):
            win = CyclicWindow(start, length)
            idx = win.indices(f)
            if n[idx[-1]] != p - 1:
                continue
            if all(n[j] == p - 2 for j in idx[1:-1]):
                out.append(win)
    out.sort(key=lambda win: (win.length, win.start))
    return out


def classify_weight(w: SerreWeight) -> ComponentDiagnosis:
    p, f = w.p, w.f
    if w.is_steinberg():
        return ComponentDiagnosis(Verdict.SMOOTH, "steinberg")
    case_a = all(nj == p - 2 for nj in w.n)
    windows = singular_windows(w)
    if case_a and windows:
        raise AssertionError("exponent cases (a) and (b) cannot both hold")
    if case_a:
        return ComponentDiagnosis(
            Verdict.NON_NORMAL,
            "case_a",
            nonnormal_codim=f,
            complement_smooth=True,
        )
    if windows:
        all_len2 = all(win.length == 2 for win in windows)
        return ComponentDiagnosis(
            Verdict.NORMAL_SINGULAR,
            "case_b",
            gorenstein=all_len2,
            lci=all_len2,
            sing_codim=min(win.length for win in windows),
        )
    return ComponentDiagnosis(Verdict.SMOOTH, "generic")


def classify_via_charts(w: SerreWeight) -> ComponentDiagnosis | None:
    """Chart-level classification; None when the pipeline does not apply
    (Steinberg weight, or the interval-decomposition hypothesis fails)."""
    if w.is_steinberg():
        return None
    built = weight_type_profile(w)
    if built is None:
        return None
    profile, _shift = built
    f = w.f
    saw_all3 = False
    contracting_lengths: list[int] = []
    for shape in all_shapes(f):
        classes = class_tuple(profile, shape)
        if EMPTY in classes:
            continue
        cs = chain_decomposition(classes)
        if cs.all_class3:
            saw_all3 = True
        contracting_lengths.extend(t.length for t in cs.contracting)
    if saw_all3 and contracting_lengths:
        raise AssertionError("all-class-3 shape and contracting chain cannot coexist")
    if saw_all3:
        return ComponentDiagnosis(
            Verdict.NON_NORMAL,
            "chart_all3",
            nonnormal_codim=f,
            complement_smooth=True,
        )
    if contracting_lengths:
        all_len3 = all(l == 3 for l in contracting_lengths)
        return ComponentDiagnosis(
            Verdict.NORMAL_SINGULAR,
            "chart_contracting",
            gorenstein=all_len3,
            lci=all_len3,
            sing_codim=min(contracting_lengths) - 1,
        )
    return ComponentDiagnosis(Verdict.SMOOTH, "chart_smooth")


@dataclass(frozen=True)
class WeightRow:
    weight: SerreWeight
    rule: ComponentDiagnosis
    charts: ComponentDiagnosis | None

    @property
    def chart_applicable(self) -> bool:
        return self.charts is not None

    @property
    def agreement(self) -> bool | None:
        if self.charts is None:
            return None
        return self.rule.same_classification(self.charts)


class EnumerationBoundError(ValueError):
    pass


def classify_row(w: SerreWeight) -> WeightRow:
    return WeightRow(w, classify_weight(w), classify_via_charts(w))


def enumerate_weights(
    p: int,
    f: int,
    bound: int = 10 ** 6,
    jobs: int = 1,
) -> Iterator[WeightRow]:
    """Classify every weight with m = 0 and n in [0, p-1]^f, both ways,
    in lexicographic n order."""
    total = p ** f
    if total > bound:
        raise EnumerationBoundError(f"p^f = {total} exceeds the bound {bound}")
    weights = [
        SerreWeight.of(p, _unrank(i, p, f)) for i in range(total)
    ]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(classify_row, weights, chunksize=64))
        yield from rows
        return
    for w in weights:
        yield classify_row(w)


def _unrank(i: int, p: int, f: int) -> tuple[int, ...]:
    digits = []
    for _ in range(f):
        digits.append(i % p)
        i //= p
    return tuple(reversed(digits))


def census(rows: list[WeightRow]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for row in rows:
        counts[row.rule.verdict.value] = counts.get(row.rule.verdict.value, 0) + 1
    return counts
