"""Exact-rational geometric algebra of the 2D conformal model.

The algebra is generated by four vectors ``e0, e1, e2, e`` with Gram matrix

    e1.e1 = e2.e2 = 1,  e0.e0 = e.e = 0,  e0.e = -1,  all others 0.

Basis blades are outer products of generators in increasing index order and
are keyed by a 4-bit mask (bit 0 = e0, bit 1 = e1, bit 2 = e2, bit 3 = e).
Because the metric is not diagonal the blade products are derived once from
the Gram matrix and cached.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Scalar = Union[int, Fraction]

GENERATORS = ("e0", "e1", "e2", "e")
N_GEN = 4

GRAM: Tuple[Tuple[int, ...], ...] = (
    (0, 0, 0, -1),
    (0, 1, 0, 0),
    (0, 0, 1, 0),
    (-1, 0, 0, 0),
)


class DegenerateInput(ValueError):
    """Raised when an operation is undefined for the given (degenerate) data."""


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _indices(mask: int) -> Tuple[int, ...]:
    return tuple(i for i in range(N_GEN) if mask >> i & 1)


def _vec_wedge_blade(i: int, mask: int) -> Tuple[Tuple[int, int], ...]:
    if mask >> i & 1:
        return ()
    below = _popcount(mask & ((1 << i) - 1))
    return ((mask | 1 << i, -1 if below % 2 else 1),)


def _vec_inner_blade(i: int, mask: int) -> Tuple[Tuple[int, int], ...]:
    out = []
    for m, j in enumerate(_indices(mask)):
        g = GRAM[i][j]
        if g:
            out.append((mask & ~(1 << j), g if m % 2 == 0 else -g))
    return tuple(out)


@lru_cache(maxsize=None)
def _blade_product(a: int, b: int) -> Tuple[Tuple[int, Fraction], ...]:
    """Geometric product of two basis blades as ((mask, coeff), ...)."""
    if a == 0:
        return ((b, Fraction(1)),)
    i = _indices(a)[0]
    rest = a & ~(1 << i)
    acc: Dict[int, Fraction] = {}
    # blade(a) = e_i ^ rest = e_i * rest - (e_i _| rest)
    for m, c in _blade_product(rest, b):
        for mm, s in _vec_inner_blade(i, m) + _vec_wedge_blade(i, m):
            acc[mm] = acc.get(mm, 0) + c * s
    for m, s in _vec_inner_blade(i, rest):
        for mm, c in _blade_product(m, b):
            acc[mm] = acc.get(mm, 0) - s * c
    return tuple((m, Fraction(c)) for m, c in sorted(acc.items()) if c)


class Multivector:
    """Immutable element of the 16-dimensional algebra with rational coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Scalar] = ()):
        c = {}
        for k, v in dict(coeffs).items():
            if not 0 <= k < 16:
                raise ValueError(f"blade index out of range: {k}")
            if v:
                c[k] = Fraction(v)
        self._c: Dict[int, Fraction] = c
        self._hash = None

    @classmethod
    def scalar(cls, value: Scalar) -> "Multivector":
        return cls({0: value})

    @classmethod
    def vector(cls, coords: Sequence[Scalar]) -> "Multivector":
        """Vector from coordinates on (e0, e1, e2, e)."""
        if len(coords) != N_GEN:
            raise ValueError("a vector needs 4 coordinates")
        return cls({1 << i: x for i, x in enumerate(coords)})

    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._c)

    def __getitem__(self, blade: int) -> Fraction:
        return self._c.get(blade, Fraction(0))

    def __iter__(self):
        return iter(sorted(self._c.items()))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Multivector.scalar(other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other: "Multivector | Scalar") -> "Multivector":
        if not isinstance(other, Multivector):
            other = Multivector.scalar(other)
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return Multivector(c)

    __radd__ = __add__

    def __neg__(self) -> "Multivector":
        return Multivector({k: -v for k, v in self._c.items()})

    def __sub__(self, other: "Multivector | Scalar") -> "Multivector":
        if not isinstance(other, Multivector):
            other = Multivector.scalar(other)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "Multivector":
        return Multivector.scalar(other) - self

    def __mul__(self, other: "Multivector | Scalar") -> "Multivector":
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return Multivector({k: v * other for k, v in self._c.items()})

    def __rmul__(self, other: Scalar) -> "Multivector":
        return Multivector({k: other * v for k, v in self._c.items()})

    def __truediv__(self, other: Scalar) -> "Multivector":
        return Multivector({k: v / other for k, v in self._c.items()})

    def grade(self, i: int) -> "Multivector":
        return grade_part(self, i)

    def scalar_part(self) -> Fraction:
        return self._c.get(0, Fraction(0))

    def grades(self) -> Tuple[int, ...]:
        return tuple(sorted({_popcount(k) for k in self._c}))

    def vector_coords(self) -> Tuple[Fraction, ...]:
        return tuple(self[1 << i] for i in range(N_GEN))

    def __repr__(self) -> str:
        if not self._c:
            return "Multivector(0)"
        parts = []
        for k, v in sorted(self._c.items()):
            name = "^".join(GENERATORS[i] for i in _indices(k)) or "1"
            parts.append(f"{v}*{name}")
        return "Multivector(" + " + ".join(parts) + ")"


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    acc: Dict[int, Fraction] = {}
    for ka, va in a._c.items():
        for kb, vb in b._c.items():
            for k, s in _blade_product(ka, kb):
                acc[k] = acc.get(k, 0) + va * vb * s
    return Multivector(acc)


def chain_product(vs: Iterable[Multivector]) -> Multivector:
    out = Multivector.scalar(1)
    for v in vs:
        out = geometric_product(out, v)
    return out


def grade_part(a: Multivector, i: int) -> Multivector:
    if not 0 <= i <= N_GEN:
        raise ValueError(f"grade must lie in 0..{N_GEN}, got {i}")
    return Multivector({k: v for k, v in a._c.items() if _popcount(k) == i})


def reverse(a: Multivector) -> Multivector:
    out = {}
    for k, v in a._c.items():
        g = _popcount(k)
        out[k] = -v if (g * (g - 1) // 2) % 2 else v
    return Multivector(out)


def inner_product(u: Multivector, v: Multivector) -> Fraction:
    """Symmetric bilinear form on vectors: the scalar part of (uv + vu)/2."""
    cu, cv = u.vector_coords(), v.vector_coords()
    return sum(
        (cu[i] * cv[j] * GRAM[i][j] for i in range(N_GEN) for j in range(N_GEN) if GRAM[i][j]),
        Fraction(0),
    )


def outer_product(a: Multivector, b: Multivector) -> Multivector:
    """Outer product, built from the graded parts of the geometric product."""
    acc = Multivector()
    for ka, va in a._c.items():
        ga = _popcount(ka)
        for kb, vb in b._c.items():
            gb = _popcount(kb)
            if ga + gb > N_GEN:
                continue
            blade = Multivector({k: s for k, s in _blade_product(ka, kb)})
            acc = acc + grade_part(blade, ga + gb) * (va * vb)
    return acc


def wedge(*vs: Multivector) -> Multivector:
    out = Multivector.scalar(1)
    for v in vs:
        out = outer_product(out, v)
    return out


E0 = Multivector.vector((1, 0, 0, 0))
E1 = Multivector.vector((0, 1, 0, 0))
E2 = Multivector.vector((0, 0, 1, 0))
EINF = Multivector.vector((0, 0, 0, 1))

# Orientation is fixed once: I4 = e0 ^ e1 ^ e2 ^ e.
I4 = Multivector({0b1111: 1})
I4_INV = -I4
assert geometric_product(I4, I4_INV) == Multivector.scalar(1)


def dual(a: Multivector) -> Multivector:
    return geometric_product(a, I4_INV)


def bracket(a: Multivector) -> Fraction:
    """Coordinate of the grade-4 part of ``a`` with respect to I4."""
    return grade_part(a, 4)[0b1111]


def square_bracket_num(vs: Sequence[Multivector]) -> Fraction:
    if len(vs) < 4 or len(vs) % 2:
        return Fraction(0)
    return bracket(chain_product(vs))


def angular_bracket_num(vs: Sequence[Multivector]) -> Fraction:
    return chain_product(vs).scalar_part()


@dataclass(frozen=True)
class EmbeddedPoint:
    x: Fraction
    y: Fraction
    mv: Multivector


def embed_point(x: Scalar, y: Scalar) -> EmbeddedPoint:
    x, y = Fraction(x), Fraction(y)
    mv = Multivector.vector((1, x, y, (x * x + y * y) / 2))
    return EmbeddedPoint(x, y, mv)


class _Infinity:
    """Marker for an undefined (right-angle) tangent."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()


def full_angle_tan(p1: EmbeddedPoint, p2: EmbeddedPoint, p3: EmbeddedPoint):
    """Tangent of the full angle at p2 from ray p2->p1 to ray p2->p3."""
    pts = [(p.x, p.y) for p in (p1, p2, p3)]
    if len(set(pts)) < 3:
        raise DegenerateInput("full angle needs three distinct points")
    chain = [EINF, p1.mv, p2.mv, p3.mv]
    num = square_bracket_num(chain)
    den = angular_bracket_num(chain)
    if den == 0:
        return INFINITY
    return num / den


def random_rational(rng: random.Random, bound: int = 50, max_den: int = 20) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))


def random_point(rng: random.Random, bound: int = 50, max_den: int = 20) -> EmbeddedPoint:
    return embed_point(random_rational(rng, bound, max_den), random_rational(rng, bound, max_den))


def random_null_vector(rng: random.Random) -> Multivector:
    """A random scaled point: null, generically independent of e."""
    p = random_point(rng)
    s = random_rational(rng, 9, 5) or Fraction(1)
    return p.mv * s


def random_multivector(rng: random.Random, bound: int = 9) -> Multivector:
    return Multivector({k: Fraction(rng.randint(-bound, bound), rng.randint(1, 4)) for k in range(16)})
