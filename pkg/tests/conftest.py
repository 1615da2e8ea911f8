import hypothesis.strategies as st
import pytest

from abeforge.corpus import load_corpus
from abeforge.terms import UNIT, Arrow, Const, Var

VAR_NAMES = ("x", "y", "z", "t", "w")


def terms(max_leaves: int = 12, with_constants: bool = False):
    leaves = [st.sampled_from(VAR_NAMES).map(Var), st.just(UNIT)]
    if with_constants:
        leaves.append(st.sampled_from(("a", "b", "c")).map(Const))
    return st.recursive(
        st.one_of(*leaves),
        lambda children: st.builds(Arrow, children, children),
        max_leaves=max_leaves,
    )


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()
