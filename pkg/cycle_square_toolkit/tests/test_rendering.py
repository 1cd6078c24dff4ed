import io
import json
from decimal import Decimal
from fractions import Fraction

import pytest

from hitting_times.closed_form import hitting_vector
from hitting_times.rendering import OutputRecord, to_decimal, write_table_csv


@pytest.mark.parametrize(
    "value, digits, expected",
    [
        (Fraction(150, 11), 12, "13.636363636364"),
        (Fraction(5), 12, "5"),
        (Fraction(0), 12, "0"),
        (Fraction(1, 8), 2, "0.12"),  # tie rounds to even
        (Fraction(3, 8), 2, "0.38"),
        (Fraction(-1, 3), 4, "-0.3333"),
        (Fraction(-1, 1000), 2, "0"),
        (Fraction(5, 2), 0, "2"),
        (Fraction(1, 2), 3, "0.5"),
    ],
)
def test_to_decimal(value, digits, expected):
    assert to_decimal(value, digits) == expected


def test_to_decimal_rejects_negative_digits():
    with pytest.raises(ValueError):
        to_decimal(Fraction(1, 3), -1)


def test_output_record_json_keys_and_order():
    record = OutputRecord.from_value("hit", {"N": 10, "l": 5}, Fraction(150, 11), 12)
    payload = json.loads(record.to_json())
    assert list(payload) == ["command", "params", "num", "den", "decimal", "digits"]
    assert payload["num"] == "150"
    assert payload["den"] == "11"
    assert payload["decimal"] == "13.636363636364"
    assert payload["params"] == {"N": 10, "l": 5}


def test_output_record_large_integers_become_strings():
    big = 10**20
    record = OutputRecord.from_value("trees", {"N": 5}, Fraction(big), 2, count=big, small=123456789012345)
    payload = json.loads(record.to_json())
    assert payload["count"] == str(big)
    assert payload["small"] == 123456789012345
    assert payload["num"] == str(big)


def test_output_record_extra_values_are_serialized():
    record = OutputRecord.from_value("simulate", {"N": 5}, Fraction(4), 3, mean=Decimal("4.01"), z_score=None)
    payload = json.loads(record.to_json())
    assert payload["mean"] == "4.01"
    assert payload["z_score"] is None


def test_output_record_json_is_stable():
    first = OutputRecord.from_value("kirchhoff", {"N": 10}, Fraction(551, 22), 6).to_json()
    second = OutputRecord.from_value("kirchhoff", {"N": 10}, Fraction(551, 22), 6).to_json()
    assert first == second
    assert json.loads(first)["decimal"] == "25.045455"


def test_output_record_text():
    text = OutputRecord.from_value("hit", {"N": 10, "l": 5}, Fraction(150, 11)).to_text()
    assert text == "hit N=10 l=5: 150/11 ~ 13.636363636364"
    assert OutputRecord.from_value("trees", {"N": 6}, Fraction(384)).to_text() == "trees N=6: 384 ~ 384"


def test_write_table_csv_n6():
    stream = io.StringIO()
    count = write_table_csv(hitting_vector(6), stream)
    assert count == 4
    assert stream.getvalue() == "l,numerator,denominator,decimal\n0,0,1,0\n1,5,1,5\n2,5,1,5\n3,6,1,6\n"


def test_write_table_csv_decimal_column():
    stream = io.StringIO()
    write_table_csv(hitting_vector(10), stream, digits=4)
    lines = stream.getvalue().splitlines()
    assert lines[-1] == "5,150,11,13.6364"
    assert len(lines) == 1 + 6
