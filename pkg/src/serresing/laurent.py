"""Laurent polynomials in one variable v over a finite field, and the 2x2
matrix algebra over them used by the local chart computations.

Finite support makes every power-series condition decidable exactly:
"unit of F[[v]]" is "nonzero constant term", "v times a unit" is
"v-valuation exactly one".
"""

from __future__ import annotations

from typing import Mapping

from .field import FieldElement, FieldSpec
from .linalg import GFMatrix


class LaurentPoly:
    """Finite-support map {exponent of v: nonzero coefficient}; immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Mapping[int, FieldElement] | None = None):
        self.field = field
        clean: dict[int, FieldElement] = {}
        if coeffs:
            for exp, c in coeffs.items():
                c = field.elem(c)
                if not c.is_zero():
                    clean[int(exp)] = c
        self.coeffs = clean

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, field: FieldSpec) -> "LaurentPoly":
        return cls(field)

    @classmethod
    def const(cls, field: FieldSpec, c) -> "LaurentPoly":
        return cls(field, {0: field.elem(c)})

    @classmethod
    def v_power(cls, field: FieldSpec, n: int, c=1) -> "LaurentPoly":
        return cls(field, {n: field.elem(c)})

    # -- predicates ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def has_negative_exponent(self) -> bool:
        return any(e < 0 for e in self.coeffs)

    def v_valuation(self) -> int:
        if not self.coeffs:
            raise ValueError("valuation undefined for the zero polynomial")
        return min(self.coeffs)

    def coeff(self, exp: int) -> FieldElement:
        return self.coeffs.get(exp, self.field.zero)

    def divisible_by_v(self) -> bool:
        """v | p, with the zero polynomial counting as divisible."""
        return all(e >= 1 for e in self.coeffs)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return LaurentPoly(self.field, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.field, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, FieldElement)):
            c = self.field.elem(other)
            return LaurentPoly(self.field, {e: c * x for e, x in self.coeffs.items()})
        out: dict[int, FieldElement] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = out.get(e)
                t = c1 * c2
                s = t if s is None else s + t
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return LaurentPoly(self.field, out)

    __rmul__ = __mul__

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by v^n."""
        return LaurentPoly(self.field, {e + n: c for e, c in self.coeffs.items()})

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, self.field.e, tuple(sorted((e, c.code) for e, c in self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                parts.append(f"{c!r}")
            elif e == 1:
                parts.append(f"{c!r}*v")
            else:
                parts.append(f"{c!r}*v^{e}")
        return " + ".join(parts)


def v_valuation(p: LaurentPoly) -> int:
    return p.v_valuation()


class Mat2Laurent:
    """2x2 matrix (a b / c d) over Laurent polynomials; immutable."""

    __slots__ = ("field", "a", "b", "c", "d")

    def __init__(self, field: FieldSpec, a: LaurentPoly, b: LaurentPoly, c: LaurentPoly, d: LaurentPoly):
        self.field = field
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls, field: FieldSpec) -> "Mat2Laurent":
        one = LaurentPoly.const(field, 1)
        zero = LaurentPoly.zero(field)
        return cls(field, one, zero, zero, one)

    @classmethod
    def from_consts(cls, field: FieldSpec, a, b, c, d) -> "Mat2Laurent":
        def lp(x):
            return LaurentPoly.const(field, field.elem(x))

        return cls(field, lp(a), lp(b), lp(c), lp(d))

    @classmethod
    def from_gf_matrix(cls, m: GFMatrix) -> "Mat2Laurent":
        if m.rows != 2 or m.cols != 2:
            raise ValueError("expected a 2x2 matrix")
        return cls.from_consts(m.field, m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def diag_v_power(cls, field: FieldSpec, nu: tuple[int, int]) -> "Mat2Laurent":
        """diag(v^{nu0}, v^{nu1})."""
        zero = LaurentPoly.zero(field)
        return cls(
            field,
            LaurentPoly.v_power(field, nu[0]),
            zero,
            zero,
            LaurentPoly.v_power(field, nu[1]),
        )

    def entries(self) -> tuple[LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly]:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other) -> "Mat2Laurent":
        if isinstance(other, (int, FieldElement, LaurentPoly)):
            s = other if isinstance(other, LaurentPoly) else LaurentPoly.const(self.field, other)
            return Mat2Laurent(self.field, self.a * s, self.b * s, self.c * s, self.d * s)
        return Mat2Laurent(
            self.field,
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElement, LaurentPoly)):
            return self.__mul__(other)
        return NotImplemented

    def det(self) -> LaurentPoly:
        return self.a * self.d - self.b * self.c

    def __eq__(self, other):
        return (
            isinstance(other, Mat2Laurent)
            and self.field == other.field
            and self.entries() == other.entries()
        )

    def __hash__(self):
        return hash(self.entries())

    def __repr__(self):
        return f"[[{self.a!r}, {self.b!r}], [{self.c!r}, {self.d!r}]]"

    def key(self) -> tuple:
        """Hashable canonical form (used for image-point dedup)."""
        return tuple(
            tuple(sorted((e, c.code) for e, c in entry.coeffs.items()))
            for entry in self.entries()
        )


def mat_mul(a: Mat2Laurent, b: Mat2Laurent) -> Mat2Laurent:
    if a.field != b.field:
        raise ValueError("mixed-field matrix product")
    return a * b


def ad_diag_conj(m: Mat2Laurent, nu: tuple[int, int]) -> Mat2Laurent:
    """Conjugate by diag(v^{nu0}, v^{nu1}): scales only the off-diagonal."""
    k = nu[0] - nu[1]
    return Mat2Laurent(m.field, m.a, m.b.shift(k), m.c.shift(-k), m.d)


def is_admissible(m: Mat2Laurent) -> bool:
    """Entries in F[[v]], upper triangular mod v, det = v times a unit.

    Given finite support this means: no negative exponents anywhere, the
    (2,1) entry divisible by v, and the determinant nonzero of v-valuation
    exactly 1.
    """
    for entry in m.entries():
        if entry.has_negative_exponent():
            return False
    if not m.c.divisible_by_v():
        return False
    det = m.det()
    return (not det.is_zero()) and det.v_valuation() == 1


class ProjPoint:
    """A point of P^1 in normalized form: [x:1] when y != 0, else [1:0]."""

    __slots__ = ("field", "x", "y")

    def __init__(self, field: FieldSpec, x, y):
        x = field.elem(x)
        y = field.elem(y)
        if x.is_zero() and y.is_zero():
            raise ValueError("(0, 0) does not define a projective point")
        if not y.is_zero():
            self.x = x / y
            self.y = field.one
        else:
            self.x = field.one
            self.y = field.zero
        self.field = field

    @classmethod
    def all_points(cls, field: FieldSpec) -> list["ProjPoint"]:
        pts = [cls(field, field.from_code(c), field.one) for c in range(field.q)]
        pts.append(cls(field, field.one, field.zero))
        return pts

    def coords(self) -> tuple[FieldElement, FieldElement]:
        return (self.x, self.y)

    def is_infinity(self) -> bool:
        return self.y.is_zero()

    def act_right(self, g: GFMatrix) -> "ProjPoint":
        """Image of the row vector (x, y) under right multiplication by g."""
        nx = self.x * g[0, 0] + self.y * g[1, 0]
        ny = self.x * g[0, 1] + self.y * g[1, 1]
        return ProjPoint(self.field, nx, ny)

    def __eq__(self, other):
        return (
            isinstance(other, ProjPoint)
            and self.field == other.field
            and self.x == other.x
            and self.y == other.y
        )

    def __hash__(self):
        return hash((self.x.code, self.y.code))

    def __repr__(self):
        return f"[{self.x!r}:{self.y!r}]"
