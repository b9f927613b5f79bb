#
# This file is part of ipalg.
#
# Copyright (C) 2025-2026 ipalg contributors
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, version 3.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program. If not, see https://www.gnu.org/licenses/.
#

import re

from fractions import Fraction
from typing import Any, Sequence, Tuple

_RATIONAL_PATTERN = re.compile(r'^[+-]?\d+(/\d+)?$')


def parse_rational(value: Any) -> Fraction:
    """
    Parses an exact rational from an integer or a "p/q" string. Floats
    and decimal strings are rejected, the models are exact by contract.
    """
    if isinstance(value, bool):
        raise ValueError(f"exact rational required, got boolean {value}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str) and _RATIONAL_PATTERN.match(value.strip()):
        try:
            return Fraction(value.strip())
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in rational {value!r}")

    raise ValueError(f"exact rational required, got {value!r}")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def normalize_direction(vector: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """
    Positive rescaling so that the first nonzero entry has absolute value 1.
    The zero vector is returned unchanged.
    """
    for entry in vector:
        if entry != 0:
            scale = abs(entry)
            return tuple(v / scale for v in vector)
    return tuple(vector)
