"""Sign alphabets and the exact sign calculus.

Three small alphabets are kept deliberately distinct:

* :class:`FormalSign` -- the sign of a formal difference expression,
  ``PLUS``/``MINUS``/``UNKNOWN``.  ``UNKNOWN`` absorbs every operation.
* :class:`ConfigSign` -- the sign attached to a whole configuration,
  ``PLUS``/``MINUS`` when one orientation is forced, ``BOTH`` when both
  orientations are realizable.
* :class:`DetSign` -- the sign of a concrete determinant evaluation,
  ``POS``/``NEG``/``ZERO``.

Mixing them up is a category error (a ``BOTH`` is not an ``UNKNOWN``), so
they are separate enums even though the rendered symbols overlap.  The enum
values are chosen so that plain integer multiplication implements the
product rules, with 0 playing the absorbing element.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction


class FormalSign(Enum):
    """Sign of a formal expression: definite plus/minus or unknown."""

    PLUS = 1
    MINUS = -1
    UNKNOWN = 0

    def __str__(self) -> str:
        return {1: "+", -1: "-", 0: "?"}[self.value]

    @property
    def definite(self) -> bool:
        return self.value != 0


class ConfigSign(Enum):
    """Orientation sign of a configuration; BOTH marks non-fixed ones."""

    PLUS = 1
    MINUS = -1
    BOTH = 0

    def __str__(self) -> str:
        return {1: "+", -1: "-", 0: "+-"}[self.value]


class DetSign(Enum):
    """Exact sign of a real determinant evaluation."""

    POS = 1
    NEG = -1
    ZERO = 0

    def __str__(self) -> str:
        return {1: "+", -1: "-", 0: "0"}[self.value]

    @classmethod
    def of(cls, value: int | Fraction | float) -> "DetSign":
        if value > 0:
            return cls.POS
        if value < 0:
            return cls.NEG
        return cls.ZERO


def fmul(a: FormalSign, b: FormalSign) -> FormalSign:
    """Product of formal signs; UNKNOWN absorbs."""
    return FormalSign(a.value * b.value)


def fneg(a: FormalSign) -> FormalSign:
    return FormalSign(-a.value)


def fadd(a: FormalSign, b: FormalSign) -> FormalSign:
    """Sum of formal signs: like signs survive, mixed or unknown collapse."""
    if a.value == 0 or b.value == 0:
        return FormalSign.UNKNOWN
    return a if a.value == b.value else FormalSign.UNKNOWN


def fsub(a: FormalSign, b: FormalSign) -> FormalSign:
    return fadd(a, fneg(b))


def fmul_config(a: FormalSign, c: ConfigSign) -> FormalSign:
    """Product of a formal sign with a configuration sign.

    BOTH taints any definite factor into UNKNOWN; PLUS/MINUS act as
    ordinary signs.
    """
    return FormalSign(a.value * c.value)


def diff_sign(cfg, e, f, axis) -> FormalSign:
    """Formal sign of the coordinate difference of labels ``e - f`` on ``axis``.

    PLUS when ``f < e`` in the axis ordering, MINUS when ``e < f``, UNKNOWN
    when the pair is incomparable there.
    """
    if e == f:
        raise ValueError("diff_sign needs two distinct labels")
    ordering = cfg.order_for(axis)
    if ordering.less(f, e):
        return FormalSign.PLUS
    if ordering.less(e, f):
        return FormalSign.MINUS
    return FormalSign.UNKNOWN


def formal_det_sign_2x2(grid) -> FormalSign:
    """Formal determinant sign of a 2x2 grid of formal signs."""
    (a, b), (c, d) = grid
    return fsub(fmul(a, d), fmul(b, c))


def formal_det_sign_3x3(grid) -> FormalSign:
    """Formal determinant sign of a 3x3 grid of formal signs.

    Cofactor expansion along the first row, evaluated entirely inside the
    formal calculus.  For grids whose nine entries are all definite the
    result is always UNKNOWN (no 3x3 all-nonzero sign pattern determines
    the determinant sign).
    """
    (a, b, c), (d, e, f), (g, h, i) = grid
    t1 = fmul(a, fsub(fmul(e, i), fmul(f, h)))
    t2 = fmul(b, fsub(fmul(d, i), fmul(f, g)))
    t3 = fmul(c, fsub(fmul(d, h), fmul(e, g)))
    return fadd(fsub(t1, t2), t3)
