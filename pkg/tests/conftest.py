import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from alliance_pressure import AttackerParameters, AttackLevels, GameParameters, WORKED_EXAMPLE

ACCEPTANCE_RESULTS = []


def record_criterion(number, title, ok, detail=""):
    ACCEPTANCE_RESULTS.append((number, title, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(ACCEPTANCE_RESULTS):
        line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))


def small_fractions(lo, hi, max_den=12):
    return st.fractions(min_value=lo, max_value=hi, max_denominator=max_den)


@st.composite
def game_params(draw):
    v = draw(small_fractions(Fraction(1, 2), 10))
    x = draw(small_fractions(0, v)).limit_denominator(12)
    f = draw(small_fractions(0, v)).limit_denominator(12)
    if x >= v:
        x = v / 2
    if f >= v:
        f = v / 2
    return GameParameters.from_values(
        l=draw(small_fractions(-10, 20)),
        v=v,
        x=x,
        f=f,
        c=draw(small_fractions(0, 10)),
        y=draw(small_fractions(0, 10)),
    )


def unit_fractions(max_den=40):
    return small_fractions(0, 1, max_den)


@st.composite
def attack_levels(draw):
    return AttackLevels.of(draw(unit_fractions()), draw(unit_fractions()))


def random_params(rng: random.Random) -> GameParameters:
    """Valid parameter set with small-denominator rationals."""

    def frac(lo, hi, den=10):
        return Fraction(rng.randint(int(lo * den), int(hi * den)), den)

    v = frac(1, 10)
    x = frac(0, v) if rng.random() < 0.9 else Fraction(0)
    f = frac(0, v)
    x = min(x, v - Fraction(1, 10))
    f = min(f, v - Fraction(1, 10))
    return GameParameters.from_values(l=frac(-5, 15), v=v, x=x, f=f, c=frac(0, 8), y=frac(0, 6))


@pytest.fixture
def example():
    return WORKED_EXAMPLE


@pytest.fixture
def attacker():
    return AttackerParameters.of(3, 1, 1)
