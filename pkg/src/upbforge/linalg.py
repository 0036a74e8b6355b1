"""Small-dimension complex linear algebra in exact-rational or float mode.

Exact scalars are Gaussian rationals (:class:`QComplex`, a pair of
:class:`fractions.Fraction`); float scalars are plain Python ``complex``.
The two never mix: any arithmetic between them raises ``TypeError``.

Kronecker products use the "last factor varies fastest" index order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
import math
from typing import Iterable, Sequence, Union

EXACT = "exact"
FLOAT = "float"

#: Relative tolerance used for every float-mode zero test.
EPS = 1e-9


class ModeError(TypeError):
    """Raised when exact and float quantities are combined."""


class DimensionError(ValueError):
    """Raised on mismatched vector dimensions."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise ModeError(f"cannot use {type(x).__name__} as an exact rational")


class QComplex:
    """Complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _as_fraction(re)
        self.im = _as_fraction(im)

    @classmethod
    def _coerce(cls, other) -> "QComplex":
        if isinstance(other, QComplex):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return cls(other)
        raise ModeError(f"cannot mix exact scalar with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        return QComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return QComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QComplex(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("division by exact zero")
        return QComplex((self.re * o.re + self.im * o.im) / n,
                        (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return QComplex(-self.re, -self.im)

    def conjugate(self) -> "QComplex":
        return QComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.sqrt(self.abs2())

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, complex | float):
            raise ModeError("cannot compare exact scalar with float")
        try:
            o = self._coerce(other)
        except ModeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return f"QComplex({self.re})"
        return f"QComplex({self.re}, {self.im})"


Scalar = Union[QComplex, complex]


def scalar_mode(z) -> str:
    if isinstance(z, QComplex):
        return EXACT
    if isinstance(z, (complex, float)):
        return FLOAT
    if isinstance(z, (int, Fraction)) and not isinstance(z, bool):
        return EXACT
    raise ModeError(f"unsupported scalar type {type(z).__name__}")


def _to_mode(z, mode: str) -> Scalar:
    if mode == EXACT:
        if isinstance(z, QComplex):
            return z
        if isinstance(z, (int, Fraction)) and not isinstance(z, bool):
            return QComplex(z)
        raise ModeError(f"float value {z!r} in exact vector")
    if isinstance(z, QComplex):
        raise ModeError("exact scalar in float vector")
    return complex(z)


@dataclass(frozen=True)
class Vector:
    """Immutable complex vector; ``mode`` is ``"exact"`` or ``"float"``."""

    components: tuple
    mode: str = EXACT

    def __init__(self, components: Iterable, mode: str | None = None):
        comps = list(components)
        if not comps:
            raise DimensionError("vector dimension must be >= 1")
        if mode is None:
            mode = FLOAT if any(isinstance(c, (complex, float)) for c in comps) else EXACT
        if mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown mode {mode!r}")
        object.__setattr__(self, "components", tuple(_to_mode(c, mode) for c in comps))
        object.__setattr__(self, "mode", mode)

    @property
    def dim(self) -> int:
        return len(self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def is_zero(self) -> bool:
        if self.mode == EXACT:
            return not any(self.components)
        return self.norm() == 0.0

    def norm(self) -> float:
        if self.mode == EXACT:
            return math.sqrt(sum(c.abs2() for c in self.components))
        return math.sqrt(sum(abs(c) ** 2 for c in self.components))

    def scaled(self, s) -> "Vector":
        return Vector([c * s for c in self.components], self.mode)

    def to_float(self) -> "Vector":
        if self.mode == FLOAT:
            return self
        return Vector([complex(c) for c in self.components], FLOAT)

    def __repr__(self):
        def fmt(c):
            if isinstance(c, QComplex):
                return str(c.re) if c.im == 0 else f"{c.re}{'+' if c.im >= 0 else '-'}{abs(c.im)}i"
            return repr(c)

        return f"Vector([{', '.join(fmt(c) for c in self.components)}], {self.mode!r})"


def vec(*components, mode: str | None = None) -> Vector:
    """Shorthand: ``vec(1, 2, -1)``; accepts ``"p/q"`` strings in exact mode."""
    comps = [QComplex(c) if isinstance(c, str) else c for c in components]
    return Vector(comps, mode)


def _check_pair(a: Vector, b: Vector) -> None:
    if a.mode != b.mode:
        raise ModeError(f"mode mismatch: {a.mode} vs {b.mode}")
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")


def _check_family(vs: Sequence[Vector]) -> tuple[int, str] | None:
    if not vs:
        return None
    d, mode = vs[0].dim, vs[0].mode
    for v in vs[1:]:
        if v.mode != mode:
            raise ModeError("mixed modes in vector family")
        if v.dim != d:
            raise DimensionError("mixed dimensions in vector family")
    return d, mode


def inner_product(a: Vector, b: Vector) -> Scalar:
    """Return <a|b>, conjugate-linear in ``a``."""
    _check_pair(a, b)
    if a.mode == EXACT:
        re = Fraction(0)
        im = Fraction(0)
        for x, y in zip(a.components, b.components):
            # conj(x) * y
            re += x.re * y.re + x.im * y.im
            im += x.re * y.im - x.im * y.re
        return QComplex(re, im)
    return sum((x.conjugate() * y for x, y in zip(a.components, b.components)), 0j)


def is_orthogonal(a: Vector, b: Vector, eps: float = EPS) -> bool:
    """Exact zero test in exact mode; normalized ``|<a|b>| <= eps`` in float mode."""
    ip = inner_product(a, b)
    if a.mode == EXACT:
        return not ip
    na, nb = a.norm(), b.norm()
    if na == 0.0 or nb == 0.0:
        return True
    return abs(ip) <= eps * na * nb


def _row_echelon(rows: list[list], mode: str, eps: float = EPS) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    if mode == FLOAT:
        # unit rows so the pivot threshold is relative
        scaled = []
        for r in m:
            n = math.sqrt(sum(abs(x) ** 2 for x in r))
            if n > 0:
                scaled.append([x / n for x in r])
        m = scaled
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        if mode == EXACT:
            p = next((i for i in range(r, len(m)) if m[i][c]), None)
        else:
            best = max(range(r, len(m)), key=lambda i: abs(m[i][c]))
            p = best if abs(m[best][c]) > eps else None
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if (f if mode == EXACT else abs(f) > 0):
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(vs: Sequence[Vector], eps: float = EPS) -> int:
    """Dimension of the span of ``vs`` (0 for an empty list)."""
    info = _check_family(vs)
    if info is None:
        return 0
    _, mode = info
    return len(_row_echelon([list(v.components) for v in vs], mode, eps)[1])


def orthocomplement_basis(vs: Sequence[Vector], dim: int | None = None,
                          mode: str | None = None, eps: float = EPS) -> list[Vector]:
    """Basis of ``{x : <v|x> = 0 for all v in vs}``.

    ``dim`` and ``mode`` are only needed when ``vs`` is empty, in which case
    the standard basis is returned.
    """
    info = _check_family(vs)
    if info is None:
        if dim is None:
            raise ValueError("dim is required for an empty family")
        mode = mode or EXACT
        one, zero = (QComplex(1), QComplex(0)) if mode == EXACT else (1 + 0j, 0j)
        return [Vector([one if i == j else zero for i in range(dim)], mode) for j in range(dim)]
    d, mode = info
    # <v|x> = 0  <=>  conj(v) . x = 0: null space of the conjugated rows
    rows = [[c.conjugate() for c in v.components] for v in vs]
    rref, pivots = _row_echelon(rows, mode, eps)
    free = [c for c in range(d) if c not in pivots]
    one, zero = (QComplex(1), QComplex(0)) if mode == EXACT else (1 + 0j, 0j)
    basis = []
    for f in free:
        x = [zero] * d
        x[f] = one
        for row, pc in zip(rref, pivots):
            x[pc] = -row[f]
        basis.append(Vector(x, mode))
    return basis


def tensor(vs: Sequence[Vector]) -> Vector:
    """Kronecker product, last factor varying fastest."""
    if not vs:
        raise DimensionError("tensor of an empty list")
    _, mode = (vs[0].dim, vs[0].mode)
    for v in vs:
        if v.mode != mode:
            raise ModeError("mixed modes in tensor product")

    def kron(a: list, b: Vector) -> list:
        return [x * y for x in a for y in b.components]

    return Vector(reduce(kron, vs[1:], list(vs[0].components)), mode)


# -- JSON ------------------------------------------------------------------


def _fraction_to_json(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def scalar_to_json(z: Scalar) -> list:
    if isinstance(z, QComplex):
        return [_fraction_to_json(z.re), _fraction_to_json(z.im)]
    return [z.real, z.imag]


def vector_to_json(v: Vector) -> list:
    return [scalar_to_json(c) for c in v.components]


def _parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise ValueError("boolean is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise ValueError(f"exact component must be a 'p/q' string, got {x!r}")


def vector_from_json(data, mode: str) -> Vector:
    if not isinstance(data, list) or not data:
        raise ValueError("vector must be a non-empty JSON array")
    comps = []
    for pair in data:
        if not isinstance(pair, list) or len(pair) != 2:
            raise ValueError(f"vector component must be [re, im], got {pair!r}")
        if mode == EXACT:
            comps.append(QComplex(_parse_rational(pair[0]), _parse_rational(pair[1])))
        elif mode == FLOAT:
            if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair):
                raise ValueError(f"float component must be numbers, got {pair!r}")
            comps.append(complex(pair[0], pair[1]))
        else:
            raise ValueError(f"unknown mode {mode!r}")
    return Vector(comps, mode)


def format_vector(v: Vector) -> str:
    """Compact human-readable form, e.g. ``(1, -2/3, 1+i)``."""

    def fmt(c):
        if isinstance(c, QComplex):
            if c.im == 0:
                return str(c.re)
            if c.re == 0:
                return f"{c.im}i"
            return f"{c.re}{'+' if c.im > 0 else '-'}{abs(c.im)}i"
        if abs(c.imag) <= 1e-15 * max(1.0, abs(c.real)):
            return f"{c.real:.6g}"
        return f"{c.real:.6g}{c.imag:+.6g}i"

    return "(" + ", ".join(fmt(c) for c in v.components) + ")"
