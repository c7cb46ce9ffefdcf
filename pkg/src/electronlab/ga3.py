"""Dense geometric algebra of 3-D Euclidean space, signature (+,+,+).

A multivector packs all eight blade coefficients into one flat value:
scalar, the three vectors e1,e2,e3, the three bivectors in cyclic order
e2e3, e3e1, e1e2, and the pseudoscalar e1e2e3. The pseudoscalar squares
to -1 and commutes with everything, so it doubles as the imaginary
unit: complex phases can be read off the (s, p) pair, and rotor phases
off the (s, b12) pair of the even subalgebra.

Orientation convention: rotor(e1e2, theta) turns e1 toward e2 for
theta > 0 in a right-handed frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

GRADES = (0, 1, 2, 3)

_UNIT_TOL = 1e-12


@dataclass(frozen=True)
class Multivector3:
    """One element of the eight-dimensional algebra.

    Components: ``s`` (grade 0), ``v1 v2 v3`` (grade 1), ``b23 b31 b12``
    (grade 2, cyclic order), ``p`` (grade 3, coefficient of e1e2e3).
    """

    s: float = 0.0
    v1: float = 0.0
    v2: float = 0.0
    v3: float = 0.0
    b23: float = 0.0
    b31: float = 0.0
    b12: float = 0.0
    p: float = 0.0

    def components(self) -> tuple[float, ...]:
        return (self.s, self.v1, self.v2, self.v3, self.b23, self.b31, self.b12, self.p)

    def __add__(self, other: "Multivector3") -> "Multivector3":
        return Multivector3(*(a + b for a, b in zip(self.components(), other.components())))

    def __sub__(self, other: "Multivector3") -> "Multivector3":
        return Multivector3(*(a - b for a, b in zip(self.components(), other.components())))

    def __neg__(self) -> "Multivector3":
        return Multivector3(*(-a for a in self.components()))

    def __mul__(self, other):
        if isinstance(other, Multivector3):
            return gp(self, other)
        return Multivector3(*(a * other for a in self.components()))

    def __rmul__(self, other):
        return Multivector3(*(other * a for a in self.components()))

    def grade(self, g: int) -> "Multivector3":
        return grade(self, g)

    def reverse(self) -> "Multivector3":
        return reverse(self)

    def norm(self) -> float:
        return math.sqrt(sum(a * a for a in self.components()))


def scalar(x: float) -> Multivector3:
    return Multivector3(s=x)


def vector(x: float, y: float, z: float) -> Multivector3:
    return Multivector3(v1=x, v2=y, v3=z)


def pseudovector(x: float, y: float, z: float) -> Multivector3:
    """Bivector dual to the vector (x, y, z): the image of i*(x e1 + y e2 + z e3)."""
    return Multivector3(b23=x, b31=y, b12=z)


ONE = scalar(1.0)
E1 = Multivector3(v1=1.0)
E2 = Multivector3(v2=1.0)
E3 = Multivector3(v3=1.0)
E23 = Multivector3(b23=1.0)
E31 = Multivector3(b31=1.0)
E12 = Multivector3(b12=1.0)
E123 = Multivector3(p=1.0)

BASIS = (ONE, E1, E2, E3, E23, E31, E12, E123)


def gp(a: Multivector3, b: Multivector3) -> Multivector3:
    """Full geometric product, expanded over the 8x8 blade table."""
    return Multivector3(
        s=(a.s * b.s + a.v1 * b.v1 + a.v2 * b.v2 + a.v3 * b.v3
           - a.b23 * b.b23 - a.b31 * b.b31 - a.b12 * b.b12 - a.p * b.p),
        v1=(a.s * b.v1 + a.v1 * b.s - a.v2 * b.b12 + a.b12 * b.v2
            + a.v3 * b.b31 - a.b31 * b.v3 - a.b23 * b.p - a.p * b.b23),
        v2=(a.s * b.v2 + a.v2 * b.s + a.v1 * b.b12 - a.b12 * b.v1
            - a.v3 * b.b23 + a.b23 * b.v3 - a.b31 * b.p - a.p * b.b31),
        v3=(a.s * b.v3 + a.v3 * b.s - a.v1 * b.b31 + a.b31 * b.v1
            + a.v2 * b.b23 - a.b23 * b.v2 - a.b12 * b.p - a.p * b.b12),
        b23=(a.s * b.b23 + a.b23 * b.s + a.v2 * b.v3 - a.v3 * b.v2
             + a.v1 * b.p + a.p * b.v1 - a.b31 * b.b12 + a.b12 * b.b31),
        b31=(a.s * b.b31 + a.b31 * b.s + a.v3 * b.v1 - a.v1 * b.v3
             + a.v2 * b.p + a.p * b.v2 - a.b12 * b.b23 + a.b23 * b.b12),
        b12=(a.s * b.b12 + a.b12 * b.s + a.v1 * b.v2 - a.v2 * b.v1
             + a.v3 * b.p + a.p * b.v3 - a.b23 * b.b31 + a.b31 * b.b23),
        p=(a.s * b.p + a.p * b.s + a.v1 * b.b23 + a.b23 * b.v1
           + a.v2 * b.b31 + a.b31 * b.v2 + a.v3 * b.b12 + a.b12 * b.v3),
    )


def grade(a: Multivector3, g: int) -> Multivector3:
    """Project onto grade g; the four projections sum back to the input."""
    if g == 0:
        return Multivector3(s=a.s)
    if g == 1:
        return Multivector3(v1=a.v1, v2=a.v2, v3=a.v3)
    if g == 2:
        return Multivector3(b23=a.b23, b31=a.b31, b12=a.b12)
    if g == 3:
        return Multivector3(p=a.p)
    raise DomainError(f"grade index must be 0..3, got {g!r}")


def reverse(a: Multivector3) -> Multivector3:
    """Reversion: grades 0 and 1 kept, grades 2 and 3 negated."""
    return Multivector3(a.s, a.v1, a.v2, a.v3, -a.b23, -a.b31, -a.b12, -a.p)


@dataclass(frozen=True)
class Rotor3:
    """Unit even multivector; rotates vectors through the sandwich product."""

    s: float
    b23: float
    b31: float
    b12: float

    def __post_init__(self):
        n2 = self.s**2 + self.b23**2 + self.b31**2 + self.b12**2
        if abs(n2 - 1.0) > _UNIT_TOL:
            raise DomainError(f"rotor norm^2 deviates from 1 by {abs(n2 - 1.0):.3e}")

    def as_multivector(self) -> Multivector3:
        return Multivector3(s=self.s, b23=self.b23, b31=self.b31, b12=self.b12)

    def reverse(self) -> "Rotor3":
        return Rotor3(self.s, -self.b23, -self.b31, -self.b12)

    def __neg__(self) -> "Rotor3":
        return Rotor3(-self.s, -self.b23, -self.b31, -self.b12)

    def apply(self, x: Multivector3) -> Multivector3:
        """Sandwich action R x R~; grade-preserving and norm-preserving."""
        return gp(gp(self.as_multivector(), x), self.reverse().as_multivector())


def rotor(plane: Multivector3, angle: float) -> Rotor3:
    """exp(-plane*angle/2) for a unit bivector plane.

    The sandwich action turns grade-1 vectors in the plane by `angle`,
    first basis vector toward the second for positive angles. The rotor
    itself is 4pi-periodic: shifting the angle by 2pi negates it while
    leaving the sandwich action unchanged.
    """
    off_grade = math.sqrt(plane.s**2 + plane.v1**2 + plane.v2**2
                          + plane.v3**2 + plane.p**2)
    if off_grade > _UNIT_TOL:
        raise DomainError("rotor plane must be a pure bivector")
    n2 = plane.b23**2 + plane.b31**2 + plane.b12**2
    if abs(n2 - 1.0) > _UNIT_TOL:
        raise DomainError(f"rotor plane norm^2 deviates from 1 by {abs(n2 - 1.0):.3e}")
    c = math.cos(angle / 2.0)
    s = math.sin(angle / 2.0)
    return Rotor3(s=c, b23=-s * plane.b23, b31=-s * plane.b31, b12=-s * plane.b12)
