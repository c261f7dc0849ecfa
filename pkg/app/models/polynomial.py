"""
Sparse multivariate polynomials with exact rational coefficients.

Variables are indexed from 0; exponent vectors are dense tuples of length
``num_vars``. Instances are immutable.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt
from types import MappingProxyType
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from app.utils.exceptions import DimensionError, InvalidParameterError
from app.utils.rationals import to_fraction


Exponents = Tuple[int, ...]
RationalPoint = Tuple[Fraction, ...]


def make_point(coords: Iterable[Any]) -> RationalPoint:
    """Build a RationalPoint from ints, Fractions, floats or "num/den" strings."""
    return tuple(to_fraction(c) for c in coords)


def exact_sqrt(value: Fraction) -> Optional[Fraction]:
    """Return the rational square root of value, or None if it is irrational."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


class Orientation(str, Enum):
    """Sign convention of a sphere constraint."""

    INSIDE_POSITIVE = "inside-positive"
    OUTSIDE_POSITIVE = "outside-positive"


@dataclass(frozen=True)
class CircleShape:
    """
    Circle (or cylinder over a circle) recognised from a quadratic polynomial.

    The polynomial equals ``scale * (radius_squared - sum((x_a - c_a)^2))``
    over the two ``axes``; ``scale`` is negative for outside-positive holes.
    """

    axes: Tuple[int, int]
    center: Tuple[Fraction, Fraction]
    radius_squared: Fraction
    radius: Optional[Fraction]
    scale: Fraction

    @property
    def inside_positive(self) -> bool:
        return self.scale > 0

    def extremes(self) -> Tuple[Fraction, Fraction]:
        """Lowest and highest value of the first axis on the circle."""
        if self.radius is None:
            raise InvalidParameterError("Circle radius is not rational")
        return self.center[0] - self.radius, self.center[0] + self.radius


class Polynomial:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("_num_vars", "_terms", "_hash")

    def __init__(self, num_vars: int, terms: Mapping[Sequence[int], Any] | None = None):
        """
        Initialize polynomial.

        Args:
            num_vars: Number of variables (positive)
            terms: Map from exponent vectors to coefficients; zero coefficients are dropped

        Raises:
            InvalidParameterError: If num_vars is not positive or an exponent is negative
            DimensionError: If an exponent vector has the wrong length
        """
        if num_vars < 1:
            raise InvalidParameterError(f"num_vars must be positive, got {num_vars}")
        cleaned: Dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != num_vars:
                raise DimensionError(
                    f"Exponent vector {exps} has length {len(exps)}, expected {num_vars}"
                )
            if any(e < 0 for e in exps):
                raise InvalidParameterError(f"Negative exponent in {exps}")
            value = cleaned.get(exps, Fraction(0)) + to_fraction(coeff)
            if value == 0:
                cleaned.pop(exps, None)
            else:
                cleaned[exps] = value
        self._num_vars = num_vars
        self._terms = MappingProxyType(cleaned)
        self._hash: Optional[int] = None

    # === Constructors ===

    @classmethod
    def zero(cls, num_vars: int) -> "Polynomial":
        return cls(num_vars)

    @classmethod
    def constant(cls, value: Any, num_vars: int) -> "Polynomial":
        return cls(num_vars, {(0,) * num_vars: value})

    @classmethod
    def variable(cls, index: int, num_vars: int) -> "Polynomial":
        if not 0 <= index < num_vars:
            raise DimensionError(f"Variable index {index} outside 0..{num_vars - 1}")
        exps = [0] * num_vars
        exps[index] = 1
        return cls(num_vars, {tuple(exps): 1})

    # === Accessors ===

    @property
    def num_vars(self) -> int:
        return self._num_vars

    @property
    def terms(self) -> Mapping[Exponents, Fraction]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(exps) for exps in self._terms)

    def variables(self) -> List[int]:
        """Indices of variables that occur with a nonzero exponent."""
        used = set()
        for exps in self._terms:
            used.update(i for i, e in enumerate(exps) if e)
        return sorted(used)

    # === Arithmetic ===

    def _check_same_ring(self, other: "Polynomial") -> None:
        if other.num_vars != self._num_vars:
            raise DimensionError(
                f"Polynomials live in {self._num_vars} and {other.num_vars} variables"
            )

    def _coerce(self, other: Any) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check_same_ring(other)
            return other
        return Polynomial.constant(other, self._num_vars)

    def __add__(self, other: Any) -> "Polynomial":
        other = self._coerce(other)
        terms = dict(self._terms)
        for exps, coeff in other.terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + coeff
        return Polynomial(self._num_vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self._num_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Any) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "Polynomial":
        if not isinstance(other, Polynomial):
            factor = to_fraction(other)
            return Polynomial(self._num_vars, {e: c * factor for e, c in self._terms.items()})
        self._check_same_ring(other)
        terms: Dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                terms[exps] = terms.get(exps, Fraction(0)) + c1 * c2
        return Polynomial(self._num_vars, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise InvalidParameterError("Negative powers are not polynomials")
        result = Polynomial.constant(1, self._num_vars)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._num_vars == other.num_vars and dict(self._terms) == dict(other.terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._num_vars, frozenset(self._terms.items())))
        return self._hash

    # === Evaluation ===

    def _check_point(self, x: Sequence[Any]) -> None:
        if len(x) != self._num_vars:
            raise DimensionError(
                f"Point has {len(x)} coordinates, polynomial has {self._num_vars} variables"
            )

    def evaluate(self, x: Sequence[Any]) -> Fraction:
        """
        Exact value at a rational point.

        Args:
            x: Point with num_vars coordinates

        Returns:
            Fraction: p(x)

        Raises:
            DimensionError: On coordinate count mismatch
        """
        self._check_point(x)
        point = [to_fraction(c) for c in x]
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            value = coeff
            for c, e in zip(point, exps):
                if e:
                    value *= c**e
            total += value
        return total

    def partial(self, index: int) -> "Polynomial":
        """Formal derivative with respect to variable ``index``."""
        if not 0 <= index < self._num_vars:
            raise DimensionError(f"Variable index {index} outside 0..{self._num_vars - 1}")
        terms: Dict[Exponents, Fraction] = {}
        for exps, coeff in self._terms.items():
            e = exps[index]
            if e == 0:
                continue
            lowered = exps[:index] + (e - 1,) + exps[index + 1:]
            terms[lowered] = coeff * e
        return Polynomial(self._num_vars, terms)

    def gradient(self, x: Sequence[Any]) -> Tuple[Fraction, ...]:
        """
        Exact gradient at a rational point.

        Raises:
            DimensionError: On coordinate count mismatch
        """
        self._check_point(x)
        return tuple(self.partial(i).evaluate(x) for i in range(self._num_vars))

    def evaluate_array(self, coords: Sequence[np.ndarray]) -> np.ndarray:
        """
        Floating point evaluation on broadcastable coordinate arrays.

        Args:
            coords: One array per variable (e.g. from ``numpy.meshgrid``)

        Returns:
            np.ndarray: Values with the broadcast shape of ``coords``
        """
        self._check_point(coords)
        arrays = [np.asarray(c, dtype=float) for c in coords]
        shape = np.broadcast_shapes(*(a.shape for a in arrays))
        total = np.zeros(shape, dtype=float)
        for exps, coeff in self._terms.items():
            term = np.full(shape, float(coeff))
            for a, e in zip(arrays, exps):
                if e:
                    term = term * a**e
            total += term
        return total

    def gradient_norm_array(self, coords: Sequence[np.ndarray]) -> np.ndarray:
        """Euclidean norm of the gradient on coordinate arrays."""
        squares = [self.partial(i).evaluate_array(coords) ** 2 for i in range(self._num_vars)]
        return np.sqrt(np.sum(squares, axis=0))

    # === Variable maps ===

    def substitute(self, coord_map: Mapping[int, int], new_num_vars: int) -> "Polynomial":
        """
        Rename variables into a larger ring.

        The zero set of the result is the cylinder over the zero set of this
        polynomial under the projection selecting the mapped coordinates.

        Args:
            coord_map: Injective map old index -> new index
            new_num_vars: Number of variables of the target ring

        Returns:
            Polynomial: Lifted polynomial

        Raises:
            InvalidParameterError: If the map is not injective or misses a used variable
            DimensionError: If a target index does not fit in new_num_vars
        """
        if len(set(coord_map.values())) != len(coord_map):
            raise InvalidParameterError("Coordinate map must be injective")
        for target in coord_map.values():
            if not 0 <= target < new_num_vars:
                raise DimensionError(f"Target index {target} outside 0..{new_num_vars - 1}")
        missing = [i for i in self.variables() if i not in coord_map]
        if missing:
            raise InvalidParameterError(
                f"Variables {missing} occur in the polynomial but are not mapped",
                {"unmapped": missing},
            )
        terms: Dict[Exponents, Fraction] = {}
        for exps, coeff in self._terms.items():
            lifted = [0] * new_num_vars
            for old, e in enumerate(exps):
                if e:
                    lifted[coord_map[old]] = e
            terms[tuple(lifted)] = coeff
        return Polynomial(new_num_vars, terms)

    # === Shape recognition ===

    def as_circle(self) -> Optional[CircleShape]:
        """
        Recognise ``a * (sum over two axes of x^2) + linear + constant``.

        Returns:
            CircleShape | None: The circle if the polynomial has this shape
            and a positive squared radius, otherwise None
        """
        if self.degree() != 2:
            return None
        square_coeff: Dict[int, Fraction] = {}
        linear: Dict[int, Fraction] = {}
        constant = Fraction(0)
        for exps, coeff in self._terms.items():
            used = [(i, e) for i, e in enumerate(exps) if e]
            if not used:
                constant = coeff
            elif len(used) == 1 and used[0][1] == 2:
                square_coeff[used[0][0]] = coeff
            elif len(used) == 1 and used[0][1] == 1:
                linear[used[0][0]] = coeff
            else:
                return None
        if len(square_coeff) != 2 or len(set(square_coeff.values())) != 1:
            return None
        if not set(linear) <= set(square_coeff):
            return None
        axes = tuple(sorted(square_coeff))
        a = square_coeff[axes[0]]
        center = tuple(-linear.get(i, Fraction(0)) / (2 * a) for i in axes)
        radius_squared = sum((c * c for c in center), Fraction(0)) - constant / a
        if radius_squared <= 0:
            return None
        return CircleShape(
            axes=(axes[0], axes[1]),
            center=(center[0], center[1]),
            radius_squared=radius_squared,
            radius=exact_sqrt(radius_squared),
            scale=-a,
        )

    # === Text ===

    def sorted_terms(self) -> List[Tuple[Exponents, Fraction]]:
        """Terms in canonical order (descending degree, then descending exponents)."""
        return sorted(self._terms.items(), key=lambda item: (-sum(item[0]), tuple(-e for e in item[0])))

    def __repr__(self) -> str:
        return f"Polynomial({self._num_vars}, {str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            monomial = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exps) if e
            )
            if not monomial:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(monomial)
            elif coeff == -1:
                parts.append(f"-{monomial}")
            else:
                parts.append(f"{coeff}*{monomial}")
        return " + ".join(parts).replace("+ -", "- ")


def sphere_poly(
    center: Sequence[Any],
    radius: Any,
    ambient_dim: int,
    orientation: Orientation | str = Orientation.INSIDE_POSITIVE,
) -> Polynomial:
    """
    Polynomial whose zero set is the sphere of given center and radius.

    Args:
        center: Center with ambient_dim coordinates
        radius: Positive rational radius
        ambient_dim: Number of variables
        orientation: inside-positive gives r^2 - |x-c|^2, outside-positive its negation

    Returns:
        Polynomial: Sphere constraint

    Raises:
        InvalidParameterError: If the radius is not positive
        DimensionError: If the center has the wrong length
    """
    r = to_fraction(radius)
    if r <= 0:
        raise InvalidParameterError(f"Sphere radius must be positive, got {r}")
    if len(center) != ambient_dim:
        raise DimensionError(f"Center has {len(center)} coordinates, expected {ambient_dim}")
    squared_distance = Polynomial.zero(ambient_dim)
    for i, c in enumerate(make_point(center)):
        shifted = Polynomial.variable(i, ambient_dim) - c
        squared_distance = squared_distance + shifted * shifted
    inside = r * r - squared_distance
    if Orientation(orientation) is Orientation.INSIDE_POSITIVE:
        return inside
    return -inside


def evaluate(p: Polynomial, x: Sequence[Any]) -> Fraction:
    return p.evaluate(x)


def gradient(p: Polynomial, x: Sequence[Any]) -> Tuple[Fraction, ...]:
    return p.gradient(x)


def substitute_coords(p: Polynomial, coord_map: Mapping[int, int], new_num_vars: int) -> Polynomial:
    return p.substitute(coord_map, new_num_vars)
