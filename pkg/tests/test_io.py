from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from plusone.catalog import CATALOG
from plusone.io import ParseError, normalize, parse, write

SAMPLE = """# tangent arrangement
vars: 3

1 0 0
  0  2 0   # not allowed here
"""


def test_parse_basic():
    f = parse("vars: 3\n# c\n1 0 0\n0 1 0\n0 0 1\n1 -1/2 0\n")
    assert len(f.arrangement) == 4 and f.mult is None
    assert f.arrangement[3].form == (1, Fraction(-1, 2), 0)


def test_parse_multiplicities():
    f = parse("vars: 2\n1 0 | 2\n0 1 | 1\n1 1 | 3\n")
    assert f.mult == (2, 1, 3) and f.multiplicity == (2, 1, 3)
    assert write(f.arrangement, f.mult) == "vars: 2\n1 0 | 2\n0 1 | 1\n1 1 | 3\n"


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("1 0 0\n", 1, "header"),
        ("vars: 3\n1 0\n", 2, "expected 3"),
        ("vars: 3\n1 0.5 0\n", 2, "bad coefficient"),
        ("vars: 3\n1 0 0\n# x\n2 0 0\n", 4, "repeats line 2"),
        ("vars: 3\n0 0 0\n", 2, "zero"),
        ("vars: 2\n1 0 | 2\n0 1\n", 3, "every line"),
        ("vars: 2\n1 0 | 0\n", 2, "positive"),
        ("vars: 2\n1 1/0\n", 2, "denominator"),
        (SAMPLE, 5, "expected 3"),
        ("", 1, "missing"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as e:
        parse(text, "in.txt")
    assert e.value.line == line
    assert fragment in str(e.value) and f"in.txt:{line}:" in str(e.value)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_round_trip(name):
    A = CATALOG[name].arrangement()
    text = write(A)
    assert parse(text).arrangement == A
    assert normalize(text) == text


rational = st.fractions(min_value=-5, max_value=5, max_denominator=4)
rows = st.lists(st.tuples(rational, rational, rational).filter(any), min_size=1, max_size=6)


def _render(row, rng):
    return (" " * rng).join(str(x) for x in row)


@given(rows, st.integers(1, 3), st.booleans(), st.lists(st.integers(1, 4), min_size=6, max_size=6))
def test_write_parse_equals_normalize(rs, spaces, comments, mults):
    seen, keep = set(), []
    for r in rs:
        lead = next(x for x in r if x)
        key = tuple(x / lead for x in r)
        if key not in seen:
            seen.add(key)
            keep.append(r)
    lines = ["# header comment"] if comments else []
    lines.append("vars:   3")
    use_mult = mults[0] > 2
    for k, r in enumerate(keep):
        body = _render(r, spaces)
        lines.append(f"  {body} | {mults[k]}" if use_mult else body)
        if comments:
            lines.append("")
            lines.append("# between rows")
    text = "\n".join(lines)
    f = parse(text)
    out = write(f.arrangement, f.mult)
    assert out == normalize(text)
    assert normalize(out) == out
    assert parse(out) == f
