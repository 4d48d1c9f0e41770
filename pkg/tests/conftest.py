import os
import sys
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
small_rationals = st.builds(Fraction, st.integers(-3, 3), st.integers(1, 2))


@st.composite
def scalars(draw):
    from twistcrit.scalars import Scalar
    return Scalar(*(draw(rationals) for _ in range(4)))


@st.composite
def characters(draw, max_pos=2, max_neg=3, sector=None):
    """Random chi with finitely many modes in [-max_neg, max_pos]."""
    from twistcrit.superalg import TwistedCharacter
    modes = [Fraction(k, 2) for k in range(-2 * max_neg, 2 * max_pos + 1)]
    chosen = draw(st.lists(st.sampled_from(modes), max_size=4, unique=True))
    coeffs = {m: draw(small_rationals) for m in chosen}
    sec = sector or draw(st.sampled_from([1, 2]))
    return TwistedCharacter.from_map(coeffs, sec)


@pytest.fixture
def half():
    return Fraction(1, 2)
