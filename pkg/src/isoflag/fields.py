"""Exact scalar arithmetic: rational square-root towers and finite fields.

Two kinds of field are supported, behind one element interface:

* ``TowerField`` -- the rationals with a chain of square roots adjoined.
  Elements are dense coordinate vectors of ``Fraction`` of length ``2**depth``;
  the vector splits recursively into ``lo + hi*sqrt(r_d)`` halves.
* ``FiniteField`` -- GF(p**m) with a fixed canonical modulus: the
  lexicographically least monic irreducible polynomial of degree m over GF(p)
  (coefficient tuples compared most-significant first).  Elements are tuples of
  m integers in [0, p), little-endian polynomial coordinates.

``sqrt_extend`` returns a deterministic square root, extending the field by one
radicand (tower case) or doubling the extension degree (finite case) when the
argument is not a square.  Characteristic 2 uses the Frobenius inverse and never
extends.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Optional, Sequence, Union

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

Scalar = Union[int, Fraction]

#: Hard bound on tower depth; exceeding it raises TowerDepthExceeded.
DEFAULT_TOWER_DEPTH_BOUND = 8

#: Finite fields larger than this are refused by the brute-force search steps.
FINITE_SCAN_CAP = 10**6


class TowerDepthExceeded(Exception):
    pass


class FiniteScanCapExceeded(Exception):
    pass


# ---------------------------------------------------------------------------
# Rational square-root towers
# ---------------------------------------------------------------------------

def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vneg(a):
    return tuple(-x for x in a)


def _vscale(a, c):
    return tuple(x * c for x in a)


class TowerField:
    """Q with the given radicands adjoined in order.

    ``radicands[d]`` is the coordinate vector (length ``2**d``) of the element
    whose square root generates level ``d+1``.
    """

    def __init__(self, radicands: tuple = (), depth_bound: int = DEFAULT_TOWER_DEPTH_BOUND):
        self.radicands = radicands
        self.depth_bound = depth_bound
        self.depth = len(radicands)
        self.dim = 1 << self.depth

    kind = "rational-tower"
    char = 0
    is_finite = False

    def __eq__(self, other):
        return isinstance(other, TowerField) and self.radicands == other.radicands

    def __hash__(self):
        return hash(("tower", self.radicands))

    def __repr__(self):
        return f"TowerField(depth={self.depth})"

    def extends(self, other: "TowerField") -> bool:
        return (isinstance(other, TowerField)
                and self.radicands[:other.depth] == other.radicands)

    def element(self, coords: Sequence[Fraction]) -> "FieldElement":
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.dim:
            raise ValueError("coordinate length mismatch")
        return FieldElement(self, coords)

    def from_int(self, n: Scalar) -> "FieldElement":
        return self.element((Fraction(n),) + (Fraction(0),) * (self.dim - 1))

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def lift(self, elem: "FieldElement") -> "FieldElement":
        assert self.extends(elem.field)
        pad = (Fraction(0),) * (self.dim - len(elem.coords))
        return FieldElement(self, tuple(elem.coords) + pad)

    def extend(self, radicand_coords: tuple) -> "TowerField":
        if self.depth + 1 > self.depth_bound:
            raise TowerDepthExceeded(f"tower depth bound {self.depth_bound} exceeded")
        return TowerField(self.radicands + (radicand_coords,), self.depth_bound)

    # -- recursive coordinate arithmetic ------------------------------------

    def _mul(self, d: int, a, b):
        if d == 0:
            return (a[0] * b[0],)
        h = 1 << (d - 1)
        a1, a2 = a[:h], a[h:]
        b1, b2 = b[:h], b[h:]
        r = self.radicands[d - 1]
        lo = _vadd(self._mul(d - 1, a1, b1), self._mul(d - 1, self._mul(d - 1, a2, b2), r))
        hi = _vadd(self._mul(d - 1, a1, b2), self._mul(d - 1, a2, b1))
        return lo + hi

    def _inv(self, d: int, a):
        if d == 0:
            if a[0] == 0:
                raise ZeroDivisionError("inverse of zero")
            return (1 / a[0],)
        h = 1 << (d - 1)
        a1, a2 = a[:h], a[h:]
        r = self.radicands[d - 1]
        if all(x == 0 for x in a2):
            return self._inv(d - 1, a1) + (Fraction(0),) * h
        norm = _vsub(self._mul(d - 1, a1, a1), self._mul(d - 1, self._mul(d - 1, a2, a2), r))
        ninv = self._inv(d - 1, norm)
        return self._mul(d - 1, a1, ninv) + _vneg(self._mul(d - 1, a2, ninv))

    def _sqrt(self, d: int, a) -> Optional[tuple]:
        """A square root of the depth-d vector ``a``, or None."""
        if d == 0:
            q = a[0]
            if q == 0:
                return (Fraction(0),)
            if q < 0:
                return None
            rn, rd = isqrt(q.numerator), isqrt(q.denominator)
            if rn * rn == q.numerator and rd * rd == q.denominator:
                return (Fraction(rn, rd),)
            return None
        h = 1 << (d - 1)
        a1, a2 = a[:h], a[h:]
        r = self.radicands[d - 1]
        zero = (Fraction(0),) * h
        if all(x == 0 for x in a2):
            c = self._sqrt(d - 1, a1)
            if c is not None:
                return c + zero
            if all(x == 0 for x in a1):
                return zero + zero
            t = self._mul(d - 1, a1, self._inv(d - 1, r))
            dd = self._sqrt(d - 1, t)
            if dd is not None:
                return zero + dd
            return None
        # (c + d*sqrt(r))^2 = a1 + a2*sqrt(r): c^2 is a root of
        # u^2 - a1*u + a2^2*r/4, so a1^2 - a2^2*r must be a square below.
        disc = _vsub(self._mul(d - 1, a1, a1),
                     self._mul(d - 1, self._mul(d - 1, a2, a2), r))
        s = self._sqrt(d - 1, disc)
        if s is None:
            return None
        half = Fraction(1, 2)
        for u in (_vscale(_vadd(a1, s), half), _vscale(_vsub(a1, s), half)):
            c = self._sqrt(d - 1, u)
            if c is None or all(x == 0 for x in c):
                continue
            dd = self._mul(d - 1, _vscale(a2, half), self._inv(d - 1, c))
            root = c + dd
            if self._mul(d, root, root) == tuple(a):
                return root
        return None

    def sqrt_or_none(self, elem: "FieldElement") -> Optional["FieldElement"]:
        root = self._sqrt(self.depth, elem.coords)
        if root is None:
            return None
        return self.element(_canonical_tower_root(root))

    def to_json(self):
        return {
            "kind": "rational-tower",
            "radicands": [[str(c) for c in r] for r in self.radicands],
        }


def _canonical_tower_root(coords):
    """Pick the representative whose first nonzero rational coordinate is > 0."""
    for c in coords:
        if c != 0:
            return coords if c > 0 else _vneg(coords)
    return coords


RATIONALS = TowerField(())


# ---------------------------------------------------------------------------
# Finite fields GF(p**m)
# ---------------------------------------------------------------------------

def _poly_trim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def _poly_mulmod(a, b, modulus, p):
    """Product of little-endian coefficient tuples, reduced mod (modulus, p)."""
    m = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # reduce: modulus is monic of degree m
    for i in range(len(prod) - 1, m - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(m):
                prod[i - m + j] = (prod[i - m + j] - c * modulus[j]) % p
    prod = prod[:m]
    prod += [0] * (m - len(prod))
    return tuple(prod)


def _poly_powmod(a, e, modulus, p):
    m = len(modulus) - 1
    result = tuple([1] + [0] * (m - 1))
    base = a
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, modulus, p)
        base = _poly_mulmod(base, base, modulus, p)
        e >>= 1
    return result


@lru_cache(maxsize=None)
def _canonical_modulus(p: int, m: int) -> tuple:
    """Little-endian coefficients of the canonical degree-m modulus over GF(p)."""
    if m == 1:
        return (0, 1)
    for enc in range(p ** m):
        digits = []
        n = enc
        for _ in range(m):
            digits.append(n % p)
            n //= p
        poly_desc = [1] + list(reversed(digits))  # sympy wants descending order
        if gf_irreducible_p(poly_desc, p, ZZ):
            return tuple(digits) + (1,)
    raise AssertionError("no irreducible polynomial found")


@lru_cache(maxsize=None)
def get_finite_field(p: int, m: int = 1) -> "FiniteField":
    if p < 2 or any(p % d == 0 for d in range(2, isqrt(p) + 1)):
        raise ValueError(f"characteristic {p} is not prime")
    return FiniteField(p, m)


class FiniteField:
    """GF(p**m) with the canonical modulus. Use :func:`get_finite_field`."""

    kind = "finite"
    is_finite = True

    def __init__(self, p: int, m: int):
        self.p = p
        self.m = m
        self.q = p ** m
        self.char = p
        self.modulus = _canonical_modulus(p, m)
        self._embed_images: dict = {}

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash(("finite", self.p, self.m))

    def extends(self, other) -> bool:
        return (isinstance(other, FiniteField) and other.p == self.p
                and self.m % other.m == 0)

    def element(self, coords) -> "FieldElement":
        coords = tuple(int(c) % self.p for c in coords)
        if len(coords) != self.m:
            raise ValueError("coordinate length mismatch")
        return FieldElement(self, coords)

    def from_int(self, n: Scalar) -> "FieldElement":
        if isinstance(n, Fraction):
            if n.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by characteristic")
            return self.from_int(n.numerator) / self.from_int(n.denominator)
        return self.element((n % self.p,) + (0,) * (self.m - 1))

    @property
    def zero(self):
        return self.element((0,) * self.m)

    @property
    def one(self):
        return self.from_int(1)

    def encode(self, coords) -> int:
        """Canonical integer encoding of little-endian coordinates."""
        n = 0
        for c in reversed(coords):
            n = n * self.p + c
        return n

    def decode(self, n: int) -> tuple:
        digits = []
        for _ in range(self.m):
            digits.append(n % self.p)
            n //= self.p
        return tuple(digits)

    def _embedding_image(self, sub: "FiniteField") -> tuple:
        """Image of ``sub``'s generator under the canonical embedding."""
        key = (sub.p, sub.m)
        if key in self._embed_images:
            return self._embed_images[key]
        if self.q > FINITE_SCAN_CAP:
            raise FiniteScanCapExceeded(f"embedding search in {self!r} exceeds scan cap")
        for enc in range(self.q):
            cand = self.decode(enc)
            acc = self.zero.coords
            # evaluate sub.modulus at cand, Horner little-endian
            for c in reversed(sub.modulus):
                acc = _poly_mulmod(acc, cand, self.modulus, self.p)
                acc = tuple((a + (c if i == 0 else 0)) % self.p for i, a in enumerate(acc))
            if all(a == 0 for a in acc):
                self._embed_images[key] = cand
                return cand
        raise AssertionError("no embedding root found")

    def lift(self, elem: "FieldElement") -> "FieldElement":
        sub = elem.field
        assert self.extends(sub)
        if sub.m == self.m:
            return FieldElement(self, elem.coords)
        if sub.m == 1:
            return self.from_int(elem.coords[0])
        gen = self._embedding_image(sub)
        acc = self.zero.coords
        for c in reversed(elem.coords):
            acc = _poly_mulmod(acc, gen, self.modulus, self.p)
            acc = tuple((a + (c if i == 0 else 0)) % self.p for i, a in enumerate(acc))
        return FieldElement(self, acc)

    def sqrt_or_none(self, elem: "FieldElement") -> Optional["FieldElement"]:
        if elem.is_zero:
            return elem
        if self.p == 2:
            # Frobenius inverse: squaring is bijective, the root is a^(q/2).
            return elem ** (2 ** (self.m - 1)) if self.m > 1 else elem
        euler = elem ** ((self.q - 1) // 2)
        if euler != self.one:
            return None
        if self.q % 4 == 3:
            root = elem ** ((self.q + 1) // 4)
        else:
            root = None
            if self.q > FINITE_SCAN_CAP:
                raise FiniteScanCapExceeded(f"sqrt scan in {self!r} exceeds cap")
            for enc in range(1, self.q):
                cand = FieldElement(self, self.decode(enc))
                if cand * cand == elem:
                    root = cand
                    break
            assert root is not None
        other = -root
        if self.encode(other.coords) < self.encode(root.coords):
            root = other
        return root

    def to_json(self):
        return {
            "kind": "finite",
            "p": self.p,
            "m": self.m,
            "modulus": list(self.modulus),
        }


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

class FieldElement:
    """Immutable scalar in a TowerField or FiniteField."""

    __slots__ = ("field", "coords", "_hash")

    def __init__(self, field, coords):
        self.field = field
        self.coords = tuple(coords)
        self._hash = None

    # -- coercion -----------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            return self, self.field.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if self.field == other.field:
            return self, other
        if self.field.extends(other.field):
            return self, self.field.lift(other)
        if other.field.extends(self.field):
            return other.field.lift(self), other
        raise TypeError(f"incompatible fields {self.field!r} and {other.field!r}")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        f = a.field
        if f.is_finite:
            return FieldElement(f, tuple((x + y) % f.p for x, y in zip(a.coords, b.coords)))
        return FieldElement(f, _vadd(a.coords, b.coords))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if f.is_finite:
            return FieldElement(f, tuple((-x) % f.p for x in self.coords))
        return FieldElement(f, _vneg(self.coords))

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        f = a.field
        if f.is_finite:
            return FieldElement(f, _poly_mulmod(a.coords, b.coords, f.modulus, f.p))
        return FieldElement(f, f._mul(f.depth, a.coords, b.coords))

    __rmul__ = __mul__

    def inverse(self):
        f = self.field
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        if f.is_finite:
            # Lagrange: a^(q-2)
            return self ** (f.q - 2)
        return FieldElement(f, f._inv(f.depth, self.coords))

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- predicates ---------------------------------------------------------

    @property
    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __eq__(self, other):
        try:
            pair = self._pair(other)
        except TypeError:
            return False
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a.coords == b.coords

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.coords))
        return self._hash

    def __repr__(self):
        return f"FieldElement({self.field!r}, {list(self.coords)})"

    def to_json(self):
        return [str(c) for c in self.coords]


# ---------------------------------------------------------------------------
# sqrt_extend
# ---------------------------------------------------------------------------

def sqrt_extend(x: FieldElement):
    """Deterministic square root of ``x``; extends the field when needed.

    Returns ``(root, field)`` where ``root * root == x`` holds in ``field``.
    ``field`` is ``x.field`` when x is a square there, otherwise a one-step
    extension (one radicand adjoined, or GF(p^{2m})).
    """
    f = x.field
    root = f.sqrt_or_none(x)
    if root is not None:
        return root, f
    if f.is_finite:
        ext = get_finite_field(f.p, 2 * f.m)
        lifted = ext.lift(x)
        root = ext.sqrt_or_none(lifted)
        assert root is not None, "quadratic extension must contain the root"
        return root, ext
    ext = f.extend(x.coords)
    coords = ((Fraction(0),) * f.dim
              + (Fraction(1),) + (Fraction(0),) * (f.dim - 1))
    return FieldElement(ext, coords), ext
