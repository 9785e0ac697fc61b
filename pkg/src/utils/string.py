import logging
from fractions import Fraction
from typing import Tuple, Union

from ..core.exactmath import GaussRational

logger = logging.getLogger(__name__)


def format_rational(value: Union[int, Fraction]) -> Union[int, str]:
    """
    Serializes a rational number for JSON output.

    Args:
        value: Integer or Fraction

    Returns:
        Union[int, str]: The integer itself, or the string "a/b" when the
        value is not integral

    Raises:
        TypeError: If the value is neither an int nor a Fraction
    """
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        logger.error(f"Expected int or Fraction, got {type(value)}")
        raise TypeError("Only exact rationals can be serialized")
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def format_gauss(value: GaussRational) -> str:
    """Serializes re + im*i as "a/b+c/d*i"."""
    return str(value)


def format_point(point: Tuple[GaussRational, GaussRational]) -> str:
    """[x:y] with each coordinate printed as a Gaussian rational, dropping zero imaginary parts."""

    def coordinate(x: GaussRational) -> str:
        return str(x.re) if x.is_real() else str(x)

    return f"[{coordinate(point[0])}:{coordinate(point[1])}]"


def parse_pair(text: str) -> Tuple[int, int]:
    """
    Parses "a,b" into a pair of integers.

    Args:
        text: Two comma separated integers

    Returns:
        Tuple[int, int]: The pair

    Raises:
        ValueError: If the string does not contain exactly two integers
    """
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        logger.error(f"Expected a pair 'a,b', got {text!r}")
        raise ValueError(f"expected two comma separated integers, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        logger.error(f"Non-integer component in {text!r}")
        raise ValueError(f"expected two comma separated integers, got {text!r}")
