"""Exact arithmetic in small finite fields F_{p^e}, p an odd prime > 3.

Elements are stored as integers in [0, p^e) whose base-p digits are the
coefficients of the canonical representative modulo a fixed irreducible
polynomial.  One defining polynomial per (p, e) is shipped as data; a
deterministic smallest-coefficient search covers anything not in the table.
Every defining polynomial is re-verified at construction time.

For small orders (q <= 256) multiplication and inversion run off precomputed
tables; larger fields fall back to digit-level polynomial arithmetic.
"""

from __future__ import annotations

import random
from typing import Iterator, Sequence

# Lexicographically-first monic irreducible polynomial per (p, e), stored as
# little-endian coefficient tuples including the leading 1.
SHIPPED_IRREDUCIBLES: dict[tuple[int, int], tuple[int, ...]] = {
    (5, 2): (2, 0, 1),
    (5, 3): (1, 1, 0, 1),
    (5, 4): (2, 0, 0, 0, 1),
    (7, 2): (1, 0, 1),
    (7, 3): (1, 0, 0, 1),
    (7, 4): (1, 1, 0, 0, 1),
    (11, 2): (1, 0, 1),
    (11, 3): (1, 0, 0, 1),
    (11, 4): (2, 1, 0, 0, 1),
    (13, 2): (2, 0, 1),
    (13, 3): (2, 0, 0, 1),
    (13, 4): (2, 0, 0, 0, 1),
    (17, 2): (3, 0, 1),
    (17, 3): (3, 1, 0, 1),
    (17, 4): (3, 0, 0, 0, 1),
    (19, 2): (1, 0, 1),
    (19, 3): (1, 0, 0, 1),
    (19, 4): (8, 1, 0, 0, 1),
    (23, 2): (1, 0, 1),
    (23, 3): (1, 0, 0, 1),
    (23, 4): (2, 1, 0, 0, 1),
    (29, 2): (2, 0, 1),
    (29, 3): (4, 1, 0, 1),
    (29, 4): (2, 0, 0, 0, 1),
    (31, 2): (1, 0, 1),
    (31, 3): (1, 0, 0, 1),
    (31, 4): (1, 1, 0, 0, 1),
}

_TABLE_LIMIT = 256  # q up to this gets full multiplication/inverse tables


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# dense polynomial helpers over F_p (little-endian coefficient lists)
# ---------------------------------------------------------------------------

def _poly_trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    e = len(f) - 1
    r = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                r[i + j] = (r[i + j] + ai * bj) % p
    for i in range(len(r) - 1, e - 1, -1):
        c = r[i]
        if c:
            r[i] = 0
            for j in range(e + 1):
                r[i - e + j] = (r[i - e + j] - c * f[j]) % p
    return _poly_trim(r)


def _poly_powmod(base: Sequence[int], n: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    b = list(base)
    while n:
        if n & 1:
            result = _poly_mulmod(result, b, f, p)
        b = _poly_mulmod(b, b, f, p)
        n >>= 1
    return result


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _poly_trim([c % p for c in a])
    b = _poly_trim([c % p for c in b])
    while b != [0]:
        # a mod b
        r = list(a)
        while len(r) >= len(b) and r != [0]:
            inv = pow(b[-1], -1, p)
            c = r[-1] * inv % p
            shift = len(r) - len(b)
            for j in range(len(b)):
                r[shift + j] = (r[shift + j] - c * b[j]) % p
            _poly_trim(r)
            if len(r) < len(b):
                break
        a, b = b, _poly_trim(r)
    return a


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    """Degree-e f is irreducible iff it shares no root with F_{p^d}, d <= e/2."""
    e = len(f) - 1
    if e == 1:
        return True
    if f[-1] % p != 1:
        return False
    for d in range(1, e // 2 + 1):
        xp = _poly_powmod([0, 1], p ** d, f, p)
        g = list(xp) + [0] * max(0, 2 - len(xp))
        g[1] = (g[1] - 1) % p
        if len(_poly_gcd(f, g, p)) > 1:
            return False
    return True


def _search_irreducible(p: int, e: int) -> tuple[int, ...]:
    for code in range(p ** e):
        coeffs = []
        c = code
        for _ in range(e):
            coeffs.append(c % p)
            c //= p
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise RuntimeError(f"no irreducible polynomial of degree {e} over F_{p}")  # pragma: no cover


class FieldSpec:
    """The field F_{p^e} with a fixed defining polynomial.

    Two specs compare equal iff they have the same (p, e, poly), so elements
    of independently-constructed copies of the same field interoperate.
    """

    __slots__ = ("p", "e", "q", "poly", "_mul_table", "_inv_table", "_codes")

    def __init__(self, p: int, e: int = 1, poly: Sequence[int] | None = None):
        if not is_prime(p) or p <= 3:
            raise ValueError(f"characteristic must be a prime > 3, got {p}")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        if poly is None:
            if e == 1:
                poly = (0, 1)
            else:
                poly = SHIPPED_IRREDUCIBLES.get((p, e)) or _search_irreducible(p, e)
        poly = tuple(c % p for c in poly)
        if len(poly) != e + 1 or poly[-1] != 1:
            raise ValueError("defining polynomial must be monic of degree e")
        if e > 1 and not _is_irreducible(poly, p):
            raise ValueError("defining polynomial is reducible")
        self.p = p
        self.e = e
        self.q = p ** e
        self.poly = poly
        self._mul_table: list[list[int]] | None = None
        self._inv_table: list[int] | None = None
        self._codes = None

    # -- identity ----------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.e == other.e
            and self.poly == other.poly
        )

    def __hash__(self):
        return hash((self.p, self.e, self.poly))

    def __repr__(self):
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    # -- code-level arithmetic ---------------------------------------------
    def _digits(self, code: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(code % p)
            code //= p
        return out

    def _encode(self, digits: Sequence[int]) -> int:
        code = 0
        for c in reversed(list(digits[: self.e])):
            code = code * self.p + (c % self.p)
        return code

    def add_codes(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def neg_code(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return self._encode([(-x) % self.p for x in self._digits(a)])

    def _mul_codes_raw(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        r = _poly_mulmod(self._digits(a), self._digits(b), self.poly, self.p)
        return self._encode(r + [0] * (self.e - len(r)))

    def mul_codes(self, a: int, b: int) -> int:
        if self.q <= _TABLE_LIMIT:
            if self._mul_table is None:
                self._build_tables()
            return self._mul_table[a][b]
        return self._mul_codes_raw(a, b)

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.q <= _TABLE_LIMIT:
            if self._inv_table is None:
                self._build_tables()
            return self._inv_table[a]
        return self.pow_code(a, self.q - 2)

    def pow_code(self, a: int, n: int) -> int:
        n %= self.q - 1 if a != 0 else 1
        result = 1
        while n:
            if n & 1:
                result = self._mul_codes_raw(result, a)
            a = self._mul_codes_raw(a, a)
            n >>= 1
        return result

    def _build_tables(self):
        q = self.q
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            row = mul[a]
            for b in range(a, q):
                v = self._mul_codes_raw(a, b)
                row[b] = v
                mul[b][a] = v
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self.pow_code(a, q - 2)
        self._mul_table = mul
        self._inv_table = inv

    # -- element construction ----------------------------------------------
    def elem(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        return FieldElement(self, self._encode(list(value)))

    def from_code(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise ValueError("element code out of range")
        return FieldElement(self, code)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> Iterator["FieldElement"]:
        for code in range(self.q):
            yield FieldElement(self, code)

    def random(self, rng: random.Random) -> "FieldElement":
        return FieldElement(self, rng.randrange(self.q))

    def random_nonzero(self, rng: random.Random) -> "FieldElement":
        return FieldElement(self, rng.randrange(1, self.q))

    def sqrt(self, a: "FieldElement") -> "FieldElement | None":
        """A square root of a in this field, or None (exhaustive scan)."""
        for code in range(self.q):
            if self._mul_codes_raw(code, code) == a.code:
                return FieldElement(self, code)
        return None


class FieldElement:
    """An element of a FieldSpec; immutable, hashable."""

    __slots__ = ("field", "code")

    def __init__(self, field: FieldSpec, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Canonical coefficient vector of length e over the prime field."""
        return tuple(self.field._digits(self.code))

    def is_zero(self) -> bool:
        return self.code == 0

    def __bool__(self):
        return self.code != 0

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("mixed-field arithmetic")
            return other
        if isinstance(other, int):
            return FieldElement(self.field, other % self.field.p)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add_codes(self.code, o.code))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_code(self.code))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_codes(self.code, o.code))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv_code(self.code))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FieldElement(self.field, self.field.pow_code(self.code, n))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.code == other % self.field.p and self.code < self.field.p
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.code == other.code
        )

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.code))

    def __repr__(self):
        if self.field.e == 1:
            return str(self.code)
        return f"{self.coeffs}"


def GF(p: int, e: int = 1, poly: Sequence[int] | None = None) -> FieldSpec:
    return FieldSpec(p, e, poly)
