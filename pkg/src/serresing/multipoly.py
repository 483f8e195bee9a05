"""Sparse multivariate polynomials over a FieldSpec, just enough for ideal
evaluation and Jacobian computations on the explicit charts."""

from __future__ import annotations

from typing import Mapping

from .field import FieldElement, FieldSpec


class MultiPoly:
    """Polynomial in named variables; terms map exponent tuples to nonzero
    coefficients.  The variable list is fixed at construction."""

    __slots__ = ("field", "vars", "terms")

    def __init__(self, field: FieldSpec, variables: tuple[str, ...], terms: Mapping[tuple[int, ...], FieldElement] | None = None):
        self.field = field
        self.vars = tuple(variables)
        clean: dict[tuple[int, ...], FieldElement] = {}
        if terms:
            for mono, c in terms.items():
                c = field.elem(c)
                if not c.is_zero():
                    clean[tuple(mono)] = c
        self.terms = clean

    @classmethod
    def constant(cls, field: FieldSpec, variables: tuple[str, ...], c) -> "MultiPoly":
        zero_mono = (0,) * len(variables)
        return cls(field, variables, {zero_mono: field.elem(c)})

    @classmethod
    def var(cls, field: FieldSpec, variables: tuple[str, ...], name: str) -> "MultiPoly":
        i = variables.index(name)
        mono = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls(field, variables, {mono: field.one})

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "MultiPoly"):
        if self.vars != other.vars or self.field != other.field:
            raise ValueError("mixed polynomial rings")

    def __add__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = MultiPoly.constant(self.field, self.vars, other)
        self._check(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = s
        return MultiPoly(self.field, self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.field, self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = MultiPoly.constant(self.field, self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            c0 = self.field.elem(other)
            return MultiPoly(self.field, self.vars, {m: c0 * c for m, c in self.terms.items()})
        self._check(other)
        out: dict[tuple[int, ...], FieldElement] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(mono)
                t = c1 * c2
                s = t if s is None else s + t
                if s.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = s
        return MultiPoly(self.field, self.vars, out)

    __rmul__ = __mul__

    def diff(self, name: str) -> "MultiPoly":
        i = self.vars.index(name)
        out: dict[tuple[int, ...], FieldElement] = {}
        for mono, c in self.terms.items():
            e = mono[i]
            if e == 0:
                continue
            new = list(mono)
            new[i] = e - 1
            nc = c * e
            if not nc.is_zero():
                out[tuple(new)] = nc
        return MultiPoly(self.field, self.vars, out)

    def evaluate(self, point: Mapping[str, FieldElement]) -> FieldElement:
        acc = self.field.zero
        vals = [self.field.elem(point[v]) for v in self.vars]
        for mono, c in self.terms.items():
            t = c
            for v, e in zip(vals, mono):
                for _ in range(e):
                    t = t * v
            acc = acc + t
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            c = self.terms[mono]
            factors = [f"{v}^{e}" if e > 1 else v for v, e in zip(self.vars, mono) if e]
            parts.append("*".join([repr(c)] + factors) if factors else repr(c))
        return " + ".join(parts)


def poly_ring(field: FieldSpec, variables: tuple[str, ...]):
    """Convenience: (constant-builder, {name: generator})."""
    gens = {name: MultiPoly.var(field, variables, name) for name in variables}

    def const(c):
        return MultiPoly.constant(field, variables, c)

    return const, gens
