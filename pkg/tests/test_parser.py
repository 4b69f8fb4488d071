from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacsyz.errors import InputError
from jacsyz.parser import ParseError, parse_expression, parse_point, parse_poly, parse_problem
from jacsyz.polyring import HomogeneousPoly

from conftest import XYZW, problem


def test_cayley_forms():
    f = parse_poly("x*y*z+x*y*w+x*z*w+y*z*w", XYZW)
    assert f == problem("cayley_a").f
    g = parse_poly("4*(x^3+y^3+z^3+w^3)-(x+y+z+w)^3", XYZW)
    assert g.degree == 3
    assert g.coefficient((3, 0, 0, 0)) == 3
    assert g.coefficient((1, 1, 1, 0)) == -6
    assert g == problem("cayley_b").f


def test_operators():
    xy = ("x", "y")
    assert parse_poly("x**2 - -y^2", xy) == parse_poly("x^2 + y^2", xy)
    assert parse_poly("(x+y)^2/2", xy).coefficient((1, 1)) == 1
    assert parse_expression("2 - x", xy).total_degree() == 1


def test_homogeneity_error():
    with pytest.raises(InputError, match="not homogeneous.*offending terms y"):
        parse_poly("x^2+y", ("x", "y"))


@pytest.mark.parametrize("text, pos", [("x + $", 4), ("x +", 3), ("2 x", 2), ("x / y", 2), ("u*x", 0)])
def test_parse_errors_have_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse_expression(text, ("x", "y"))
    assert info.value.position == pos


def test_points():
    assert parse_point("[-1, 1, 1/2, 1]", 4) == (-1, 1, Fraction(1, 2), 1)
    with pytest.raises(InputError):
        parse_point("[0, 0, 0]", 3)
    with pytest.raises(InputError):
        parse_point("(1, 2)", 2)
    with pytest.raises(InputError, match="expected 3"):
        parse_point("[1, 2]", 3)


def test_problem_validation():
    text = "vars: x y z\nf: y^2*z - x^3 - x^2*z   # nodal cubic\npoints:\n[0, 0, 1]\n"
    p = parse_problem(text)
    assert p.singular_points == [(0, 0, 1)]
    with pytest.raises(InputError, match="does not lie on f = 0"):
        parse_problem(text.replace("[0, 0, 1]", "[1, 1, 1]"))
    with pytest.raises(InputError, match="not singular"):
        parse_problem(text.replace("[0, 0, 1]", "[0, 1, 0]"))
    with pytest.raises(InputError, match="missing section 'f'"):
        parse_problem("vars: x y\n")


coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=7)
forms = st.dictionaries(
    st.sampled_from([(4, 0, 0), (3, 1, 0), (2, 1, 1), (0, 4, 0), (1, 0, 3), (0, 2, 2), (0, 0, 4)]),
    coeffs.filter(bool), min_size=1, max_size=7,
).map(lambda d: HomogeneousPoly(3, 4, d))


@settings(max_examples=80, deadline=None)
@given(forms)
def test_print_parse_round_trip(f):
    names = ("x", "y", "z")
    assert parse_poly(f.format(names), names) == f
