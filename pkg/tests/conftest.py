from __future__ import annotations

import pytest

from jacsyz.fixtures import CORPUS, fixture_path
from jacsyz.parser import load_problem, parse_poly
from jacsyz.report import analyze_points

XYZW = ("x", "y", "z", "w")

# degree-two syzygies among f_x, f_y, f_z, f_w of f = xyz + xyw + xzw + yzw,
# as listed by Singular
CAYLEY_A_SYZYGIES = [
    ("-2*x*w-z*w", "2*y*z+z*w", "-2*z^2-z*w", "z*w+2*w^2"),
    ("-2*y*z+2*x*w+2*y*w+z*w", "-2*y*w-z*w", "-2*y*z-2*z^2-2*y*w-3*z*w", "2*y*z+2*y*w+3*z*w+2*w^2"),
    ("x*z-x*w", "y*z-y*w", "-2*z^2-z*w", "z*w+2*w^2"),
    ("-2*x*w-z*w", "-2*x*z+2*x*w+2*y*w+z*w", "-2*x*z-2*z^2-2*x*w-3*z*w", "2*x*z+2*x*w+3*z*w+2*w^2"),
    ("2*x*w+y*w", "2*y^2+y*w", "-2*y*z-y*w", "-y*w-2*w^2"),
    ("2*x*y+4*x*w+3*y*w", "2*y^2+y*w", "-4*y*z-3*y*w-2*z*w", "-y*w-2*w^2"),
    ("0", "x*y+x*w+y*w", "-x*z-x*w-z*w", "0"),
    ("0", "0", "-x*y-x*z-y*z", "x*y+x*w+y*w"),
    ("2*x^2+x*w", "2*x*y+3*x*w+4*y*w", "-4*x*z-3*x*w-2*z*w", "-x*w-2*w^2"),
]

CAYLEY_A_NODES = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]

# expected values s_j(q_1..q_4)
CAYLEY_A_TABLE = {
    **{j: [(0, 0, 0, 0), (0, 0, 0, 0), (0, 0, -2, 0), (0, 0, 0, 2)] for j in (1, 2, 3, 4)},
    **{j: [(0, 0, 0, 0), (0, 2, 0, 0), (0, 0, 0, 0), (0, 0, 0, -2)] for j in (5, 6)},
    **{j: [(0, 0, 0, 0)] * 4 for j in (7, 8)},
    9: [(2, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, -2)],
}

# first components t_j of the Singular basis for f = 4(x^3+y^3+z^3+w^3) - (x+y+z+w)^3
CAYLEY_B_FIRST = {
    1: "-y*z+z^2+x*w+2*y*w+2*z*w+w^2",
    2: "2*x*z+3*y*z+3*z^2+x*w+6*z*w+3*w^2",
    3: "0",
    4: "2*x*y+6*y^2+2*x*z+6*y*z+3*z^2+2*x*w+6*y*w+6*z*w+3*w^2",
    5: "-y^2+y*z-x*w-2*y*w-2*z*w-w^2",
    6: "2*x*y+3*y^2+3*y*z+x*w+6*y*w+3*w^2",
    7: "3*x^2+8*x*y-3*y^2+8*x*z+12*y*z+6*z^2+8*x*w+12*y*w+12*z*w+6*w^2",
    8: "y^2-z^2",
    9: "4*x^2+8*x*y+3*y^2+8*x*z+5*y*z+4*z^2+11*x*w+14*y*w+14*z*w-5*w^2",
}

CAYLEY_B_NODES = [(-1, 1, 1, 1), (1, -1, 1, 1), (1, 1, -1, 1), (1, 1, 1, -1)]

CAYLEY_B_TABLE = {
    1: (4, 4, 4, -4),
    2: (12, 12, -4, 4),
    3: (0, 0, 0, 0),
    4: (24, 8, 8, 8),
    5: (-4, -4, -4, 4),
    6: (12, -4, 12, 4),
    7: (24, 8, 8, 8),
    8: (0, 0, 0, 0),
    9: (12, 12, 12, -12),
}

WH_CORPUS = ("cayley_a", "cayley_b", "line_arrangement", "fermat_surface", "fermat_curve", "nodal_cubic")


def form(text: str, variables=XYZW, degree: int = 2):
    p = parse_poly(text, variables)
    if p.is_zero():
        from jacsyz.polyring import HomogeneousPoly
        return HomogeneousPoly.zero(len(variables), degree)
    return p


def cayley_a_syzygies():
    return [tuple(form(c) for c in s) for s in CAYLEY_A_SYZYGIES]


_problems: dict = {}
_records: dict = {}


def problem(name: str):
    if name not in _problems:
        _problems[name] = load_problem(fixture_path(name))
    return _problems[name]


def records(name: str):
    if name not in _records:
        _records[name] = analyze_points(problem(name))
    return _records[name]


@pytest.fixture(params=CORPUS)
def corpus_name(request):
    return request.param


@pytest.fixture
def cayley_a():
    return problem("cayley_a")


@pytest.fixture
def cayley_b():
    return problem("cayley_b")


# criterion number -> (PASS/FAIL, title), filled by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        status, title = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {status} - {title}")
