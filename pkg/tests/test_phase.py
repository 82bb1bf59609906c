"""Tests for the phase expression language."""

import math

import numpy as np
import pytest

from packet_multipoles.core import Vec3
from packet_multipoles.errors import InvalidConfig, PhaseSyntaxError, SingularPoint, UnboundParameter
from packet_multipoles.phase import central_difference, classify_singularity, eval_grad, evaluate, parse
from packet_multipoles.phase.ast import BinOp, Call, Neg, Node, Num, Param, PhaseExpr, Pow, Var, to_source


def _random_smooth(rng, depth: int) -> Node:
    """A random expression in p_x, p_y, p_z that is smooth and bounded on the whole box."""
    if depth == 0 or rng.random() < 0.25:
        pick = int(rng.integers(0, 4))
        return Num(round(float(rng.uniform(0.1, 2.0)), 3)) if pick == 3 else Var(("p_x", "p_y", "p_z")[pick])
    left = _random_smooth(rng, depth - 1)
    match int(rng.integers(0, 7)):
        case 0:
            return BinOp("+", left, _random_smooth(rng, depth - 1))
        case 1:
            return BinOp("-", left, _random_smooth(rng, depth - 1))
        case 2:
            return BinOp("*", left, _random_smooth(rng, depth - 1))
        case 3:
            return Call(("sin", "cos")[int(rng.integers(0, 2))], (left,))
        case 4:
            return BinOp("/", left, BinOp("+", Num(2.0), Pow(_random_smooth(rng, depth - 1), 2)))
        case 5:
            return Call("sqrt", (BinOp("+", Num(1.0), Pow(left, 2)),))
    return Neg(left)


class TestParser:
    """Tests for parsing phase expressions."""

    def test_unary_minus_binds_looser_than_power(self):
        """-p_x^2 is -(p_x^2)."""
        assert parse("-p_x^2").root == Neg(Pow(Var("p_x"), 2))

    def test_left_associative_subtraction(self):
        """a - b - c groups as (a - b) - c."""
        assert parse("p_x - p_y - p_z").root == BinOp("-", BinOp("-", Var("p_x"), Var("p_y")), Var("p_z"))

    def test_negative_integer_exponent(self):
        """Exponents may carry a sign."""
        assert parse("p_x^-2").root == Pow(Var("p_x"), -2)

    def test_parameters_bind_at_parse_time(self):
        """Named parameters become Param nodes with their values."""
        assert parse("a*p_x", {"a": 2.5}).root == BinOp("*", Param("a", 2.5), Var("p_x"))

    @pytest.mark.parametrize(
        "source",
        [
            "3*phi_p + p_z",
            "(1/3)*(p_x^3 + 0.5*p_y^3)",
            "-sin(p_x*p_y)/(2 + p_perp^2)",
            "atan2(p_y, -p_x) - -1.5e-3",
        ],
    )
    def test_print_parse_round_trip(self, source):
        """Printing a tree and parsing it again gives the same tree."""
        expr = parse(source)
        assert parse(str(expr)) == expr

    def test_number_literal(self):
        """Scientific notation is accepted."""
        assert parse("1.5e-3").root == Num(1.5e-3)

    @pytest.mark.parametrize(
        ("source", "offset"),
        [
            ("p_x +", 5),
            ("p_x $ 1", 4),
            ("p_x + $", 6),
            ("p_x\u00a0+ $", 7),
            ("(p_x", 4),
            ("", 0),
            ("p_x p_y", 4),
        ],
    )
    def test_syntax_error_offsets(self, source, offset):
        """Errors carry the UTF-8 byte offset of the offending token."""
        with pytest.raises(PhaseSyntaxError) as exc:
            parse(source)
        assert exc.value.offset == offset

    def test_error_lists_expected_tokens(self):
        """An incomplete expression reports what could come next."""
        with pytest.raises(PhaseSyntaxError) as exc:
            parse("p_x *")
        assert "number" in exc.value.expected

    @pytest.mark.parametrize("source", ["p_x^1.5", "p_x^p_y", "atan2(p_x)", "sin p_x", "foo(p_x)", "1e999"])
    def test_rejects_malformed(self, source):
        """Fractional exponents, bad arity, unknown functions and overflow are syntax errors."""
        with pytest.raises(PhaseSyntaxError):
            parse(source)

    def test_unbound_parameter(self):
        """An unknown name is reported with its offset."""
        with pytest.raises(UnboundParameter) as exc:
            parse("p_x + alpha")
        assert exc.value.name == "alpha"
        assert exc.value.offset == 6

    def test_non_finite_parameter(self):
        """Parameter values must be finite."""
        with pytest.raises(InvalidConfig):
            parse("a*p_x", {"a": math.inf})

    def test_deep_nesting_is_refused(self):
        """Nesting deeper than the limit raises instead of recursing."""
        with pytest.raises(PhaseSyntaxError):
            parse("(" * 150 + "p_x" + ")" * 150)

    def test_fuzz_never_crashes(self, rng):
        """Random token soup either parses or raises a library error."""
        alphabet = ["p_x", "phi_p", "p_perp", "a", "b", "sin", "atan2", "1", "2.5e3", "1e400",
                    "+", "-", "*", "/", "^", "(", ")", ",", " ", "$", "²"]
        for _ in range(100_000):
            source = "".join(rng.choice(alphabet, size=rng.integers(0, 16)))
            try:
                parse(source, {"a": 0.5})
            except InvalidConfig:
                pass


class TestAutodiff:
    """Tests for forward-mode gradients."""

    def test_polynomial_gradient(self):
        """d/dp of p_x^2 p_y is (2 p_x p_y, p_x^2, 0)."""
        g = eval_grad(parse("p_x^2*p_y"), Vec3(x=2.0, y=3.0, z=1.0))
        assert g.value == 12.0
        assert g.grad == Vec3(x=12.0, y=4.0, z=0.0)

    def test_azimuth_gradient(self):
        """grad phi_p = (-p_y, p_x, 0)/p_perp^2."""
        g = eval_grad(parse("phi_p"), Vec3(x=1.0, y=1.0))
        assert g.grad.as_array() == pytest.approx([-0.5, 0.5, 0.0])

    def test_vectorized(self, rng):
        """Arrays of points evaluate in one pass."""
        points = rng.normal(size=(3, 50))
        value, grad = evaluate(parse("p_x*p_z"), points)
        assert value.shape == (50,)
        assert grad.shape == (3, 50)
        assert np.allclose(grad[0], points[2])

    def test_axis_is_singular_for_azimuth(self):
        """phi_p has no gradient on the axis."""
        with pytest.raises(SingularPoint):
            eval_grad(parse("phi_p"), Vec3(z=1.0))

    def test_values_without_derivatives_on_axis(self):
        """Values alone are still defined on the axis."""
        value, _ = evaluate(parse("phi_p"), np.zeros((3, 1)), derivatives=False)
        assert value[0] == 0.0

    @pytest.mark.parametrize("source", ["1/p_x", "p_x^-1", "sqrt(p_x - 1)"])
    def test_singular_operations(self, source):
        """Division by zero, negative powers of zero and sqrt of negatives raise."""
        with pytest.raises(SingularPoint):
            eval_grad(parse(source), Vec3())

    def test_matches_central_difference(self, rng):
        """Forward-mode gradients agree with central differences."""
        expr = parse("sin(p_x*p_y) + cos(p_z)/(2 + p_x^2) + (1/3)*p_y^3")
        points = rng.uniform(-2.0, 2.0, size=(3, 100))
        _, exact = evaluate(expr, points)
        approx = central_difference(expr, points, 1e-5)
        assert np.max(np.abs(exact - approx)) < 1e-6

    def test_random_expressions_match_central_difference(self, rng):
        """A thousand random smooth expressions differentiate consistently."""
        for _ in range(1000):
            root = _random_smooth(rng, 3)
            expr = PhaseExpr(root, to_source(root))
            points = rng.uniform(-1.5, 1.5, size=(3, 20))
            _, exact = evaluate(expr, points)
            approx = central_difference(expr, points, 1e-5)
            scale = max(1.0, float(np.max(np.abs(exact))))
            assert np.max(np.abs(exact - approx)) < 1e-5 * scale, str(expr)

    def test_random_expressions_survive_printing(self, rng):
        """Printed random expressions parse back to the same tree."""
        for _ in range(200):
            root = _random_smooth(rng, 3)
            assert parse(to_source(root)).root == root


class TestSingularityClassification:
    """Tests for syntactic singularity classes."""

    @pytest.mark.parametrize(
        ("source", "expected"),
        [
            ("0", "smooth"),
            ("p_x^2 + p_z", "smooth"),
            ("3*phi_p", "vortex(3)"),
            ("-phi_p*2 + p_z", "vortex(-2)"),
            ("phi_p/2", "unknown"),
            ("sin(phi_p)", "unknown"),
            ("1/p_perp", "unknown"),
            ("phi_p - phi_p", "smooth"),
            ("3*atan2(p_y, p_x)", "vortex(3)"),
            ("-atan2(p_y, p_x)/1 + p_z^2", "vortex(-1)"),
            ("atan2(p_y, p_x) - phi_p", "smooth"),
            ("atan2(p_y, p_x + 3)", "unknown"),
            ("sin(atan2(p_y, p_x))", "unknown"),
            ("1/sqrt(p_x^2 + p_y^2)", "unknown"),
            ("p_z/sqrt(p_y*p_y + p_x^2)", "unknown"),
            ("sqrt(p_x^2 + p_y^2)^-2", "unknown"),
            ("sqrt(p_x^2 + p_y^2)", "smooth"),
        ],
    )
    def test_classes(self, source, expected):
        """Integer multiples of phi_p are vortices; other axis dependence is unknown."""
        assert str(classify_singularity(parse(source))) == expected

    def test_parameter_coefficient(self):
        """Bound parameters fold into the winding number."""
        kind = classify_singularity(parse("n*phi_p", {"n": 4}))
        assert (kind.kind, kind.ell) == ("vortex", 4)
