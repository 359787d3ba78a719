"""Directed-rounding arithmetic on extended-range binary floats.

An ``XReal`` wraps one raw mpmath float — arbitrary-precision mantissa plus
an unbounded big-integer exponent — together with a rounding direction.  An
Up value is maintained >= the exact quantity it stands for, a Down value <=,
and every operation preserves that side, so a chain of Up operations ends in
a certified upper bound.  Because the exponent is a plain Python integer,
magnitudes like 10**(10**9) cost a few machine words instead of overflowing.

Soundness rules enforced by the operations:

* ``add`` needs both operands on the same side; ``sub`` needs the subtrahend
  on the opposite side; negation flips the side.
* ``mul`` of two tracked values needs both payloads nonnegative (the caller
  promises the true values are nonnegative too); scaling by an exact integer
  or Fraction is always allowed, a negative scalar flips the side.
* ``log``/``exp`` are increasing, so the side passes through; their results
  are padded outward by 16 units in the last place of a 32-bit-wider working
  precision, which strictly dominates the to-nearest evaluation error.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from mpmath.libmp import (
    fone,
    from_float,
    from_int,
    from_man_exp,
    from_rational,
    fzero,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_exp,
    mpf_log,
    mpf_mul,
    mpf_neg,
    mpf_pos,
    mpf_sub,
    to_float,
    to_str,
)

DEFAULT_PREC = 128
_GUARD_BITS = 32
_PAD_SHIFT = 4  # pad = 2**_PAD_SHIFT = 16 ulps at working precision
# exp() refuses inputs above ~2**(2**28): the result's exponent integer alone
# would need more than 32 MB.  Quantities past this point must stay in log form.
_EXP_MAGNITUDE_LIMIT = 1 << 28


class Rounding(enum.Enum):
    UP = "c"    # toward +infinity
    DOWN = "f"  # toward -infinity

    def flipped(self) -> "Rounding":
        return Rounding.DOWN if self is Rounding.UP else Rounding.UP


class ExponentOverflow(ArithmeticError):
    """exp() would materialize an exponent integer too large to be useful."""


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


@dataclass(frozen=True)
class XReal:
    """One real number known to lie on the ``rounding`` side of a true value."""

    raw: tuple
    rounding: Rounding
    prec: int = DEFAULT_PREC

    def __post_init__(self) -> None:
        _require(isinstance(self.raw, tuple) and len(self.raw) == 4, "raw must be an mpf tuple")
        _require(self.prec >= 8, f"mantissa precision too small: {self.prec}")

    # ---- constructors ----

    @staticmethod
    def zero(rounding: Rounding = Rounding.UP, prec: int = DEFAULT_PREC) -> "XReal":
        return XReal(fzero, rounding, prec)

    @staticmethod
    def from_int(n: int, rounding: Rounding = Rounding.UP, prec: int = DEFAULT_PREC) -> "XReal":
        return XReal(from_int(n, prec, rounding.value), rounding, prec)

    @staticmethod
    def from_fraction(q, rounding: Rounding = Rounding.UP, prec: int = DEFAULT_PREC) -> "XReal":
        fr = Fraction(q)
        return XReal(from_rational(fr.numerator, fr.denominator, prec, rounding.value), rounding, prec)

    @staticmethod
    def from_float(x: float, rounding: Rounding = Rounding.UP, prec: int = DEFAULT_PREC) -> "XReal":
        return XReal(mpf_pos(from_float(x), prec, rounding.value), rounding, prec)

    # ---- payload queries ----

    @property
    def is_zero(self) -> bool:
        return self.raw == fzero

    def payload_sign(self) -> int:
        """-1, 0, or +1 for the stored payload."""
        if self.raw == fzero:
            return 0
        return -1 if self.raw[0] else 1

    def to_fraction(self) -> Fraction:
        """The payload as an exact rational (it is a dyadic number)."""
        sign, man, exp, _bc = self.raw
        if man == 0:
            return Fraction(0)
        val = Fraction(man) * Fraction(2) ** exp
        return -val if sign else val

    def payload_float(self) -> float:
        """The payload as a machine float (may overflow for huge exponents)."""
        return to_float(self.raw)

    def decimal(self, digits: int = 7) -> str:
        """Decimal rendering 'X.XXXXXXe+YYY', faithful for any exponent size."""
        return to_str(self.raw, digits, strip_zeros=False, min_fixed=1, max_fixed=0,
                      show_zero_exponent=True)

    # ---- ring operations ----

    def add(self, other: "XReal") -> "XReal":
        _require(other.rounding is self.rounding,
                 "add requires operands rounded in the same direction")
        prec = max(self.prec, other.prec)
        return XReal(mpf_add(self.raw, other.raw, prec, self.rounding.value), self.rounding, prec)

    def sub(self, other: "XReal") -> "XReal":
        _require(other.rounding is self.rounding.flipped(),
                 "sub requires a subtrahend rounded in the opposite direction")
        prec = max(self.prec, other.prec)
        return XReal(mpf_sub(self.raw, other.raw, prec, self.rounding.value), self.rounding, prec)

    def neg(self) -> "XReal":
        return XReal(mpf_neg(self.raw), self.rounding.flipped(), self.prec)

    def mul(self, other: "XReal") -> "XReal":
        _require(other.rounding is self.rounding,
                 "mul requires operands rounded in the same direction")
        _require(self.raw[0] == 0 and other.raw[0] == 0,
                 "mul requires nonnegative payloads (callers bound nonnegative quantities)")
        prec = max(self.prec, other.prec)
        return XReal(mpf_mul(self.raw, other.raw, prec, self.rounding.value), self.rounding, prec)

    def scale(self, k) -> "XReal":
        """Multiply by an exact int or Fraction; a negative scalar flips the side."""
        fr = Fraction(k)
        if fr == 0:
            return XReal(fzero, self.rounding, self.prec)
        rnd = self.rounding if fr > 0 else self.rounding.flipped()
        out = mpf_mul(self.raw, from_int(fr.numerator), self.prec, rnd.value)
        if fr.denominator != 1:
            out = mpf_div(out, from_int(fr.denominator), self.prec, rnd.value)
        return XReal(out, rnd, self.prec)

    def div(self, other: "XReal") -> "XReal":
        """Divide by a strictly positive bound; the denominator must be rounded
        opposite to this value when the numerator payload is nonnegative, and in
        the same direction when it is negative."""
        _require(other.raw != fzero and other.raw[0] == 0,
                 "div requires a strictly positive denominator payload")
        need = self.rounding.flipped() if self.raw[0] == 0 else self.rounding
        _require(other.rounding is need,
                 f"div requires the denominator rounded {need.name}")
        prec = max(self.prec, other.prec)
        return XReal(mpf_div(self.raw, other.raw, prec, self.rounding.value), self.rounding, prec)

    # ---- transcendental operations (monotone increasing) ----

    def _padded(self, computed: tuple) -> "XReal":
        """Round a to-nearest working-precision result outward by 16 ulps."""
        wp = self.prec + _GUARD_BITS
        _sign, man, exp, bc = computed
        if man == 0:
            pad = from_man_exp(1, -wp)
        else:
            pad = from_man_exp(1, exp + bc - wp + _PAD_SHIFT)
        if self.rounding is Rounding.DOWN:
            pad = mpf_neg(pad)
        return XReal(mpf_add(computed, pad, self.prec, self.rounding.value),
                     self.rounding, self.prec)

    def log(self) -> "XReal":
        sign, man, _exp, _bc = self.raw
        _require(man != 0 and sign == 0, "log requires a strictly positive payload")
        if self.raw == fone:
            return XReal(fzero, self.rounding, self.prec)
        return self._padded(mpf_log(self.raw, self.prec + _GUARD_BITS, "n"))

    def exp(self) -> "XReal":
        if self.raw == fzero:
            return XReal(fone, self.rounding, self.prec)
        _sign, _man, exp, bc = self.raw
        if exp + bc > _EXP_MAGNITUDE_LIMIT:
            raise ExponentOverflow(
                f"exp of a payload near 2**{exp + bc} needs about {exp + bc} bits "
                "of exponent integer; keep the quantity in log form instead")
        return self._padded(mpf_exp(self.raw, self.prec + _GUARD_BITS, "n"))

    # ---- payload comparisons (ignore the rounding tags) ----

    def cmp(self, other: "XReal") -> int:
        return mpf_cmp(self.raw, other.raw)

    def __lt__(self, other: "XReal") -> bool:
        return self.cmp(other) < 0

    def __le__(self, other: "XReal") -> bool:
        return self.cmp(other) <= 0

    def __gt__(self, other: "XReal") -> bool:
        return self.cmp(other) > 0

    def __ge__(self, other: "XReal") -> bool:
        return self.cmp(other) >= 0

    # ---- operator sugar ----

    def __add__(self, other):
        return self.add(other) if isinstance(other, XReal) else NotImplemented

    def __sub__(self, other):
        return self.sub(other) if isinstance(other, XReal) else NotImplemented

    def __neg__(self):
        return self.neg()

    def __mul__(self, other):
        if isinstance(other, XReal):
            return self.mul(other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, XReal):
            return self.div(other)
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1, 1) / other)
        return NotImplemented


def payload_rel_diff(a: XReal, b: XReal) -> float:
    """|a - b| / max(|a|, |b|) over the raw payloads, as a machine float."""
    if a.raw == fzero and b.raw == fzero:
        return 0.0
    diff = mpf_abs(mpf_sub(a.raw, b.raw, 300, "n"))
    am, bm = mpf_abs(a.raw), mpf_abs(b.raw)
    den = am if mpf_cmp(am, bm) >= 0 else bm
    return to_float(mpf_div(diff, den, 53, "n"))
