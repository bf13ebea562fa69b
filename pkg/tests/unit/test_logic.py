"""Unit tests for the formula parser and the naive evaluator."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.backend.errors import BindingError, FormulaSyntaxError, InvalidVertexError
from src.backend.logic import (
    And,
    Edge,
    Eq,
    Exists,
    ExistsUnique,
    Forall,
    Implies,
    Not,
    Or,
    evaluate,
    free_vars,
    parse,
    to_text,
)
from tests.conftest import graph

ISOLATED = "exists x forall y ! (x ~ y)"


class TestParse:
    def test_isolated_sentence(self):
        assert parse(ISOLATED) == Exists("x", Forall("y", Not(Edge("x", "y"))))

    def test_conjunction(self):
        assert parse("x ~ y & y ~ z") == And(Edge("x", "y"), Edge("y", "z"))

    def test_unique_existence(self):
        assert parse("exists! y (x ~ y)") == ExistsUnique("y", Edge("x", "y"))

    def test_precedence(self):
        assert parse("!x = y & x ~ y | y ~ z -> x = z") == Implies(
            Or(And(Not(Eq("x", "y")), Edge("x", "y")), Edge("y", "z")), Eq("x", "z")
        )

    def test_implication_is_right_associative(self):
        a, b, c = Edge("a", "b"), Edge("b", "c"), Edge("c", "d")
        assert parse("a ~ b -> b ~ c -> c ~ d") == Implies(a, Implies(b, c))

    def test_quantifier_extends_right(self):
        assert parse("exists x x ~ y & x = y") == Exists(
            "x", And(Edge("x", "y"), Eq("x", "y"))
        )

    def test_unbalanced_parenthesis(self):
        with pytest.raises(FormulaSyntaxError) as info:
            parse("(x ~ y")
        assert info.value.position == 6

    def test_missing_operator(self):
        with pytest.raises(FormulaSyntaxError):
            parse("x y")

    def test_bad_character(self):
        with pytest.raises(FormulaSyntaxError) as info:
            parse("x ~ y $")
        assert info.value.position == 6


VARIABLES = ("x", "y", "z", "w1")
variables = st.sampled_from(VARIABLES)


def formula_trees(max_leaves):
    return st.recursive(
        st.builds(Edge, variables, variables) | st.builds(Eq, variables, variables),
        lambda inner: st.one_of(
            st.builds(Not, inner),
            st.builds(And, inner, inner),
            st.builds(Or, inner, inner),
            st.builds(Implies, inner, inner),
            st.builds(Exists, variables, inner),
            st.builds(Forall, variables, inner),
            st.builds(ExistsUnique, variables, inner),
        ),
        max_leaves=max_leaves,
    )


formulas = formula_trees(12)


@st.composite
def graphs_with_assignment(draw):
    n = draw(st.integers(1, 5))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [pair for pair, k in zip(pairs, keep) if k]
    assignment = {var: draw(st.integers(1, n)) for var in VARIABLES}
    return graph(n, *edges), assignment


class TestToText:
    @given(formulas)
    def test_printing_round_trips(self, phi):
        assert parse(to_text(phi)) == phi

    def test_free_vars(self):
        assert free_vars(parse("exists x (x ~ y)")) == {"y"}


class TestEvaluate:
    def test_isolated_on_edgeless(self):
        assert evaluate(graph(3), parse(ISOLATED))

    def test_isolated_on_complete(self, complete3):
        assert not evaluate(complete3, parse(ISOLATED))

    def test_unique_neighbor(self):
        g = graph(3, (1, 2))
        assert evaluate(g, parse("exists! y (x ~ y)"), {"x": 1})
        assert not evaluate(g, parse("exists! y (x ~ y)"), {"x": 3})

    def test_unassigned_variable(self):
        with pytest.raises(BindingError):
            evaluate(graph(3), parse("x ~ y"), {"x": 1})

    def test_assignment_out_of_range(self):
        with pytest.raises(InvalidVertexError):
            evaluate(graph(3), parse("x = x"), {"x": 4})

    def test_shadowed_variable_is_restored(self):
        g = graph(3, (1, 2))
        phi = parse("(exists x (x ~ y)) & x = y")
        assert not evaluate(g, phi, {"x": 3, "y": 2})
        assert evaluate(g, phi, {"x": 2, "y": 2})

    @settings(max_examples=1000, deadline=None)
    @given(formula_trees(6), formula_trees(6), graphs_with_assignment())
    def test_de_morgan(self, a, b, case):
        g, assignment = case
        left = evaluate(g, Not(And(a, b)), assignment)
        right = evaluate(g, Or(Not(a), Not(b)), assignment)
        assert left == right
        assert left != (evaluate(g, a, assignment) and evaluate(g, b, assignment))
