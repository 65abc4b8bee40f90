"""Finite abelian groups in invariant-factor form, with exact phase arithmetic.

A group is Z/m1 x ... x Z/ms with m_i | m_(i+1), optionally repeated as
``blocks`` identical copies (one copy per qudit).  Elements are coordinate
tuples reduced mod the factors.  Phases are rationals mod 1 so that every
character and quadratic-form value stays exact until it is turned into a
complex number at the very end.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import BoundExceededError, GroupMismatchError

__all__ = [
    "DEFAULT_ENUM_BOUND",
    "DEFAULT_DENSE_BOUND",
    "DEFAULT_TOL",
    "RationalPhase",
    "GroupSpec",
    "GroupElement",
    "Character",
    "pairing_phase",
]

DEFAULT_ENUM_BOUND = 4096
DEFAULT_DENSE_BOUND = 4096
DEFAULT_TOL = 1e-9


class RationalPhase:
    """A phase angle p/q, stored exactly and reduced into [0, 1).

    The complex value is exp(2*pi*i*(p/q)).  Addition of phases is
    multiplication of the complex values.
    """

    __slots__ = ("fraction",)

    def __init__(self, numerator: int | Fraction | "RationalPhase", denominator: int | None = None) -> None:
        if isinstance(numerator, RationalPhase):
            frac = numerator.fraction
            if denominator is not None:
                raise TypeError("denominator not allowed when copying a RationalPhase")
        elif denominator is None:
            frac = Fraction(numerator)
        else:
            frac = Fraction(numerator, denominator)
        object.__setattr__(self, "fraction", frac % 1)

    @property
    def numerator(self) -> int:
        return self.fraction.numerator

    @property
    def denominator(self) -> int:
        return self.fraction.denominator

    def __add__(self, other: "RationalPhase") -> "RationalPhase":
        return RationalPhase(self.fraction + other.fraction)

    def __sub__(self, other: "RationalPhase") -> "RationalPhase":
        return RationalPhase(self.fraction - other.fraction)

    def __neg__(self) -> "RationalPhase":
        return RationalPhase(-self.fraction)

    def __mul__(self, n: int) -> "RationalPhase":
        return RationalPhase(self.fraction * n)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalPhase):
            return self.fraction == other.fraction
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("RationalPhase", self.fraction))

    def __repr__(self) -> str:
        return f"RationalPhase({self.fraction})"

    def __str__(self) -> str:
        return str(self.fraction)

    def is_zero(self) -> bool:
        return self.fraction == 0

    def to_complex(self) -> complex:
        if self.fraction == 0:
            return 1.0 + 0.0j
        angle = 2.0 * math.pi * float(self.fraction)
        re, im = math.cos(angle), math.sin(angle)
        # components this small are exact zeros (the angle is a rational
        # multiple of pi), so snap them for clean emission
        if abs(re) < 1e-15:
            re = 0.0
        if abs(im) < 1e-15:
            im = 0.0
        return complex(re, im)


ZERO_PHASE = RationalPhase(0)


@dataclass(frozen=True)
class GroupSpec:
    """Z/m1 x ... x Z/ms, repeated ``blocks`` times.

    ``factors`` are the invariant factors of one block; each must divide
    the next.  A spec with blocks == n models G^n with the block structure
    kept visible (coordinates are not re-normalized across blocks).
    """

    factors: tuple[int, ...]
    blocks: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.factors, tuple):
            object.__setattr__(self, "factors", tuple(self.factors))
        for m in self.factors:
            if not isinstance(m, int) or m < 1:
                raise ValueError(f"invariant factors must be positive integers, got {m!r}")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a != 0:
                raise ValueError(f"invariant factors must be ascending under divisibility, got {self.factors}")
        if self.blocks < 1:
            raise ValueError(f"blocks must be at least 1, got {self.blocks}")

    @property
    def block_order(self) -> int:
        return math.prod(self.factors)

    @property
    def order(self) -> int:
        return self.block_order ** self.blocks

    @property
    def flat_factors(self) -> tuple[int, ...]:
        return self.factors * self.blocks

    @property
    def num_coords(self) -> int:
        return len(self.factors) * self.blocks

    def base(self) -> "GroupSpec":
        return GroupSpec(self.factors, 1)

    def power(self, n: int) -> "GroupSpec":
        if n < 1:
            raise ValueError(f"power must be at least 1, got {n}")
        return GroupSpec(self.factors, self.blocks * n)

    def element(self, coords: tuple[int, ...] | list[int]) -> "GroupElement":
        coords = tuple(coords)
        if len(coords) != self.num_coords:
            raise ValueError(f"expected {self.num_coords} coordinates, got {len(coords)}")
        reduced = tuple(c % m for c, m in zip(coords, self.flat_factors))
        return GroupElement(reduced, self)

    def zero(self) -> "GroupElement":
        return GroupElement((0,) * self.num_coords, self)

    def unit(self, j: int) -> "GroupElement":
        """The j-th standard generator (flat coordinate index, 0-based)."""
        coords = [0] * self.num_coords
        coords[j] = 1 % self.flat_factors[j]
        return GroupElement(tuple(coords), self)

    def elements(self, bound: int = DEFAULT_ENUM_BOUND) -> list["GroupElement"]:
        """All elements in row-major (lexicographic) coordinate order."""
        if self.order > bound:
            raise BoundExceededError("group too large to enumerate", self.order, bound)
        return [GroupElement(coords, self) for coords in itertools.product(*(range(m) for m in self.flat_factors))]

    def iter_elements(self, bound: int = DEFAULT_ENUM_BOUND) -> Iterator["GroupElement"]:
        if self.order > bound:
            raise BoundExceededError("group too large to enumerate", self.order, bound)
        for coords in itertools.product(*(range(m) for m in self.flat_factors)):
            yield GroupElement(coords, self)

    def index_of(self, elem: "GroupElement") -> int:
        """Row-major index of ``elem`` in the elements() ordering."""
        self._check(elem)
        idx = 0
        for c, m in zip(elem.coords, self.flat_factors):
            idx = idx * m + c
        return idx

    def element_at(self, index: int) -> "GroupElement":
        if not 0 <= index < self.order:
            raise ValueError(f"index {index} out of range for group of order {self.order}")
        coords = [0] * self.num_coords
        for j in range(self.num_coords - 1, -1, -1):
            m = self.flat_factors[j]
            coords[j] = index % m
            index //= m
        return GroupElement(tuple(coords), self)

    def embed_block(self, block_elem: "GroupElement", block: int) -> "GroupElement":
        """Place a base-group element into block ``block`` (0-based), zeros elsewhere."""
        if block_elem.spec != self.base():
            raise GroupMismatchError("embed_block expects an element of the base group")
        if not 0 <= block < self.blocks:
            raise ValueError(f"block {block} out of range for {self.blocks} blocks")
        s = len(self.factors)
        coords = [0] * self.num_coords
        coords[block * s : (block + 1) * s] = block_elem.coords
        return GroupElement(tuple(coords), self)

    def _check(self, elem: "GroupElement") -> None:
        if elem.spec != self:
            raise GroupMismatchError(f"element of {elem.spec} used with {self}")

    def __str__(self) -> str:
        body = " x ".join(f"Z/{m}" for m in self.factors) if self.factors else "0"
        if self.blocks == 1:
            return body
        return f"({body})^{self.blocks}"


@dataclass(frozen=True)
class GroupElement:
    """An element of a GroupSpec, coordinates already reduced mod the factors."""

    coords: tuple[int, ...]
    spec: GroupSpec

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self.spec._check(other)
        return GroupElement(
            tuple((a + b) % m for a, b, m in zip(self.coords, other.coords, self.spec.flat_factors)),
            self.spec,
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self.spec._check(other)
        return GroupElement(
            tuple((a - b) % m for a, b, m in zip(self.coords, other.coords, self.spec.flat_factors)),
            self.spec,
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(
            tuple((-a) % m for a, m in zip(self.coords, self.spec.flat_factors)),
            self.spec,
        )

    def scale(self, n: int) -> "GroupElement":
        return GroupElement(
            tuple((n * a) % m for a, m in zip(self.coords, self.spec.flat_factors)),
            self.spec,
        )

    def __mul__(self, n: int) -> "GroupElement":
        if not isinstance(n, int):
            return NotImplemented
        return self.scale(n)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def block(self, block: int) -> "GroupElement":
        """The component in block ``block`` (0-based), as a base-group element."""
        s = len(self.spec.factors)
        if not 0 <= block < self.spec.blocks:
            raise ValueError(f"block {block} out of range for {self.spec.blocks} blocks")
        return GroupElement(self.coords[block * s : (block + 1) * s], self.spec.base())

    def replace_block(self, block: int, value: "GroupElement") -> "GroupElement":
        if value.spec != self.spec.base():
            raise GroupMismatchError("replace_block expects an element of the base group")
        s = len(self.spec.factors)
        coords = list(self.coords)
        coords[block * s : (block + 1) * s] = value.coords
        return GroupElement(tuple(coords), self.spec)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def pairing_phase(h: GroupElement, x: GroupElement) -> RationalPhase:
    """The canonical pairing <h, x> = sum_j h_j x_j / m_j mod 1."""
    h.spec._check(x)
    total = Fraction(0)
    for hj, xj, m in zip(h.coords, x.coords, h.spec.flat_factors):
        if hj and xj:
            total += Fraction(hj * xj, m)
    return RationalPhase(total)


@dataclass(frozen=True)
class Character:
    """The character chi_h(x) = exp(2 pi i <h, x>) indexed by a group element h."""

    h: GroupElement

    def phase(self, x: GroupElement) -> RationalPhase:
        return pairing_phase(self.h, x)

    def value(self, x: GroupElement) -> complex:
        return self.phase(x).to_complex()
