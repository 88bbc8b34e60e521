from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rtq.tanglecore import (
    START_STATE,
    Orientation,
    Role,
    TangleFraction,
    TangleState,
    TwistWord,
    apply_twist,
    continued_fraction,
    coprime_fractions,
    evaluate_runs,
    fraction_walk,
    state_of,
)

XM, XP, Y = Role.X_MINUS, Role.X_PLUS, Role.Y


def word(text):
    return continued_fraction(TangleFraction.parse(text))


def test_parse_and_validation():
    assert TangleFraction.parse(" 10 / 3 ") == TangleFraction(10, 3)
    assert str(TangleFraction(10, 3)) == "10/3"
    for bad in ["4/2", "1/0", "x/3", "-1/2", "3"]:
        with pytest.raises(ValueError):
            TangleFraction.parse(bad)
    assert TangleFraction(0, 1).trivial


def test_words():
    assert word("0/1").runs == ()
    assert word("4/3").runs == (1, 2, 1)
    assert word("10/3").runs == (3, 2, 1)
    assert str(word("10/3")) == "T^3 R^2 T"
    assert word("4/3").letters() == ["T", "R", "R", "T"]
    assert word("3/4").final_letter == "R"


def test_from_letters():
    assert TwistWord.from_letters("TRRT") == word("4/3")
    with pytest.raises(ValueError):
        TwistWord.from_letters("RT")
    with pytest.raises(ValueError):
        TwistWord.from_letters("TX")


def test_walk():
    assert fraction_walk(TwistWord(())) == TangleFraction(0, 1)
    assert fraction_walk(TwistWord((3,))) == TangleFraction(3, 1)
    assert fraction_walk(TwistWord((1, 2, 1))) == TangleFraction(4, 3)


def test_states():
    assert state_of(TwistWord(())) == START_STATE == TangleState(Orientation.UP, (Y, XM, XP))
    assert state_of(word("3/1")) == TangleState(Orientation.UP, (XM, Y, XP))
    assert state_of(word("3/4")) == TangleState(Orientation.OP, (XM, XP, Y))
    assert str(state_of(word("3/4"))) == "(OP,X-|X+|Y)"


def test_bad_arrangement():
    with pytest.raises(ValueError):
        TangleState(Orientation.UP, (XM, XM, Y))


@pytest.mark.parametrize("n", range(1, 17))
def test_integer_tangle_states(n):
    expected = (Y, XM, XP) if n % 2 == 0 else (XM, Y, XP)
    assert state_of(word(f"{n}/1")) == TangleState(Orientation.UP, expected)


def test_round_trip_sweep():
    fs = coprime_fractions(200)
    assert len(fs) == len(set(fs))
    for f in fs:
        w = continued_fraction(f)
        assert fraction_walk(w) == f
        # odd run count exactly when the last twist is T, i.e. u >= v
        assert (len(w.runs) % 2 == 1) == (f.u >= f.v)


def test_continued_fraction_value():
    for f in coprime_fractions(60, min_sum=2):
        runs = continued_fraction(f).runs
        value = Fraction(runs[-1])
        for r in reversed(runs[:-1]):
            value = r + 1 / value
        if len(runs) % 2 == 0:
            value = 1 / value
        assert value == Fraction(f.u, f.v)
        assert evaluate_runs(runs) == (f.u, f.v)


@given(st.text(alphabet="TR", max_size=20))
def test_state_walk_is_letterwise(letters):
    letters = "T" + letters
    s = START_STATE
    for ch in letters:
        s = apply_twist(ch, s)
    assert state_of(TwistWord.from_letters(letters)) == s


def test_each_state_has_two_exits():
    seen = {START_STATE}
    frontier = [START_STATE]
    while frontier:
        s = frontier.pop()
        outs = {apply_twist("T", s), apply_twist("R", s)}
        assert len(outs) == 2
        for o in outs - seen:
            seen.add(o)
            frontier.append(o)
    assert len(seen) == 6
