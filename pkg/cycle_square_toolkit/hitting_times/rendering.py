"""Text, JSON and CSV output for exact results."""

import csv
import json
from decimal import Decimal
from fractions import Fraction
from typing import Any, Dict, Iterable, TextIO

from pydantic import BaseModel, Field

from hitting_times.closed_form import HitResult

# --- Configuration ---
DEFAULT_DIGITS = 12
MAX_JSON_INT_DIGITS = 15
CSV_HEADER = ["l", "numerator", "denominator", "decimal"]


def to_decimal(value: Fraction, digits: int = DEFAULT_DIGITS) -> str:
    """
    Renders value with at most `digits` fractional digits.

    Rounding is exact and half-to-even; trailing zeros and a bare trailing dot
    are dropped, and zero is always "0".
    """
    if digits < 0:
        raise ValueError(f"digits must be non-negative, got {digits}")
    scaled = round(Fraction(value) * 10**digits)
    if scaled == 0:
        return "0"
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled))
    if digits == 0:
        return sign + text
    text = text.rjust(digits + 1, "0")
    whole, frac = text[:-digits], text[-digits:].rstrip("0")
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


def _json_safe(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value) if len(str(abs(value))) > MAX_JSON_INT_DIGITS else value
    if isinstance(value, (Fraction, Decimal)):
        return str(value)
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


class OutputRecord(BaseModel):
    """One command result: an exact value plus command-specific extras."""

    command: str
    params: Dict[str, Any]
    num: str
    den: str
    decimal: str
    digits: int
    extra: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_value(
        cls, command: str, params: Dict[str, Any], value: Fraction, digits: int = DEFAULT_DIGITS, **extra: Any
    ) -> "OutputRecord":
        value = Fraction(value)
        return cls(
            command=command,
            params=params,
            num=str(value.numerator),
            den=str(value.denominator),
            decimal=to_decimal(value, digits),
            digits=digits,
            extra=extra,
        )

    def as_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "command": self.command,
            "params": _json_safe(self.params),
            "num": self.num,
            "den": self.den,
            "decimal": self.decimal,
            "digits": self.digits,
        }
        for key, value in self.extra.items():
            payload[key] = _json_safe(value)
        return payload

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), ensure_ascii=True)

    def to_text(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        exact = self.num if self.den == "1" else f"{self.num}/{self.den}"
        line = f"{self.command} {params}: {exact} ~ {self.decimal}"
        if self.extra:
            line += " (" + ", ".join(f"{k}={_json_safe(v)}" for k, v in self.extra.items()) + ")"
        return line


def write_table_csv(rows: Iterable[HitResult], stream: TextIO, digits: int = DEFAULT_DIGITS) -> int:
    """Writes one CSV row per hitting time and returns the number of data rows."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    count = 0
    for row in rows:
        writer.writerow([row.l, row.value.numerator, row.value.denominator, to_decimal(row.value, digits)])
        count += 1
    return count
