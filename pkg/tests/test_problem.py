import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from icopt.problem import (
    GeneralUnicastProblem,
    IndexCodingProblem,
    ProblemSyntaxError,
    ProblemValidationError,
    dump_problem,
    no_side_info,
    parse_problem,
    side_info_total,
    to_single_unicast,
)


def _text(n, receivers):
    return json.dumps({"n": n, "receivers": receivers})


def test_parse_cyclic_example(ex1):
    text = _text(3, [{"wants": [1], "knows": [2]}, {"wants": [2], "knows": [3]}, {"wants": [3], "knows": [1]}])
    assert to_single_unicast(parse_problem(text)) == ex1


def test_scalar_wants_shorthand(ex1):
    text = _text(3, [{"wants": 1, "knows": [2]}, {"wants": 2, "knows": [3]}, {"wants": 3, "knows": [1]}])
    assert to_single_unicast(parse_problem(text)) == ex1


@pytest.mark.parametrize(
    "text",
    [
        "{not json",
        "[]",
        '{"n": 3}',
        '{"n": "3", "receivers": []}',
        '{"n": 2, "receivers": [{"knows": [1]}]}',
        '{"n": 2, "receivers": [{"wants": [1.5]}]}',
    ],
)
def test_syntax_errors(text):
    with pytest.raises(ProblemSyntaxError):
        parse_problem(text)


@pytest.mark.parametrize(
    "receivers",
    [
        [{"wants": [2], "knows": [2]}, {"wants": [1], "knows": []}],
        [{"wants": [1], "knows": [2]}, {"wants": [1], "knows": []}],
        [{"wants": [1], "knows": [5]}, {"wants": [2], "knows": []}],
        [{"wants": [1], "knows": [2, 2]}, {"wants": [2], "knows": []}],
        [{"wants": [], "knows": [2]}, {"wants": [1, 2], "knows": []}],
    ],
)
def test_validation_errors(receivers):
    with pytest.raises(ProblemValidationError):
        parse_problem(_text(2, receivers))


def test_replication():
    gp = parse_problem(_text(3, [{"wants": [1, 2], "knows": [3]}, {"wants": [3], "knows": [1]}]))
    p = to_single_unicast(gp)
    assert p.known == [(3,), (3,), (1,)]
    assert [r.wants for r in p.receivers] == [1, 2, 3]


def test_single_unicast_identity(ex2):
    assert to_single_unicast(parse_problem(dump_problem(ex2))) == ex2


def test_general_form_example3(ex3):
    gp = parse_problem(
        _text(
            4,
            [
                {"wants": [3], "knows": [4, 1]},
                {"wants": [1], "knows": [2]},
                {"wants": [4], "knows": [1]},
                {"wants": [2], "knows": [3]},
            ],
        )
    )
    p = to_single_unicast(gp)
    assert p.known == [(2,), (3,), (4, 1), (1,)]
    assert p == ex3


def test_uncovered_message_rejected():
    gp = parse_problem(_text(3, [{"wants": [1], "knows": [3]}, {"wants": [2], "knows": []}]))
    with pytest.raises(ProblemValidationError, match="x3"):
        to_single_unicast(gp)


def test_single_unicast_invariants():
    with pytest.raises(ProblemValidationError):
        IndexCodingProblem.from_known([[1], []])
    with pytest.raises(ProblemValidationError):
        IndexCodingProblem.from_known([[3], []])


def test_side_info_total(ex1, ex2):
    assert side_info_total(ex1) == 3
    assert side_info_total(ex2) == 4
    assert side_info_total(no_side_info(4)) == 0


@st.composite
def general_problems(draw):
    n = draw(st.integers(1, 6))
    perm = draw(st.permutations(range(1, n + 1)))
    cuts = sorted(draw(st.sets(st.integers(1, n - 1), max_size=n - 1))) if n > 1 else []
    groups = [perm[a:b] for a, b in zip([0] + cuts, cuts + [n])]
    receivers = []
    for wants in groups:
        others = [k for k in range(1, n + 1) if k not in wants]
        knows = draw(st.lists(st.sampled_from(others), unique=True)) if others else []
        receivers.append((tuple(wants), tuple(knows)))
    return GeneralUnicastProblem(n, tuple(receivers))


@given(general_problems())
def test_round_trip_and_replication(gp):
    assert parse_problem(dump_problem(gp)) == gp
    p = to_single_unicast(gp)
    expected = sorted((w, knows) for wants, knows in gp.receivers for w in wants)
    assert [(r.wants, r.knows) for r in p.receivers] == expected
