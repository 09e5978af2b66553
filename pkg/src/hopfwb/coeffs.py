"""Scalar coefficients: exact Gaussian rationals, or floating complex.

Exact values are ``QQ_I`` elements from sympy.  Anything built from ints,
``Fraction`` or rational strings stays exact; a float or complex input turns
the result floating.  Nothing degrades silently: mixing is only ever caused
by a floating input.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from sympy.polys.domains import QQ, QQ_I

ExactType = type(QQ_I(0, 0))

ZERO_Q = QQ_I(0, 0)
ONE_Q = QQ_I(1, 0)


def _qq(x) -> "QQ":
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x.strip())
        return QQ(f.numerator, f.denominator)
    return QQ(x)


def exact(re, im=0):
    """Exact coefficient ``re + i*im``; accepts ints, Fractions and "p/q" or decimal strings."""
    return QQ_I(_qq(re), _qq(im))


def coerce(x):
    if isinstance(x, ExactType):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, (int, Rational)) or type(x).__name__ == "mpq":
        return exact(x)
    if isinstance(x, str):
        return exact(x)
    if isinstance(x, (float, complex)):
        return complex(x)
    if hasattr(x, "__complex__"):
        return complex(x)
    raise TypeError(f"unsupported coefficient {x!r}")


def is_exact(x) -> bool:
    return isinstance(x, ExactType)


def iszero(x) -> bool:
    if isinstance(x, ExactType):
        return not x
    return x == 0


def to_complex(x) -> complex:
    if isinstance(x, ExactType):
        return complex(float(x.x), float(x.y))
    return complex(x)


def real_part(x) -> Fraction:
    """Exact real part as a Fraction (exact coefficients only)."""
    return Fraction(int(x.x.numerator), int(x.x.denominator))


def imag_part(x) -> Fraction:
    return Fraction(int(x.y.numerator), int(x.y.denominator))


def add(a, b):
    if isinstance(a, ExactType) and isinstance(b, ExactType):
        return a + b
    return to_complex(a) + to_complex(b)


def sub(a, b):
    if isinstance(a, ExactType) and isinstance(b, ExactType):
        return a - b
    return to_complex(a) - to_complex(b)


def mul(a, b):
    if isinstance(a, ExactType) and isinstance(b, ExactType):
        return a * b
    return to_complex(a) * to_complex(b)


def div(a, b):
    if isinstance(a, ExactType) and isinstance(b, ExactType):
        return a / b
    return to_complex(a) / to_complex(b)


def conj(a):
    if isinstance(a, ExactType):
        return QQ_I(a.x, -a.y)
    return complex(a).conjugate()


def abs_value(a) -> float:
    return abs(to_complex(a))


def fmt(x) -> dict:
    """JSON form ``{"re": "p/q", "im": "p/q"}``; floating values use ``repr`` of floats."""
    if isinstance(x, ExactType):
        return {"re": str(real_part(x)), "im": str(imag_part(x))}
    z = complex(x)
    return {"re": repr(z.real), "im": repr(z.imag)}


def parse(re="0", im="0"):
    """Inverse of :func:`fmt` for rational strings; decimals are read exactly."""
    return exact(str(re), str(im))
