import re

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photonloc import exprcore as ex
from photonloc.exprcore import (
    I, SamplePlan, SingularPointError, conjugate, diff, evaluate, evaluate_many,
    exp, p1, p2, p3, r, rho, sample_points, substitute_neg,
)


def same(a, b, points):
    va = evaluate_many([a], points)[0]
    vb = evaluate_many([b], points)[0]
    return np.allclose(va, vb, rtol=1e-12, atol=1e-12)


# -- diff -----------------------------------------------------------------------

def test_diff_radius(points):
    assert same(diff(r, 1), p1 / r, points)


def test_diff_cot_theta_along_axis(points):
    assert same(diff(p3 / rho, 3), 1 / rho, points)


def test_diff_gaussian(points):
    assert same(diff(exp(-r ** 2), 2), -2 * p2 * exp(-r ** 2), points)


def test_diff_axis_radius_ignores_p3():
    assert diff(rho, 3).is_zero
    assert diff(rho, 1) is p1 / rho


def test_diff_is_cached():
    e = p1 * exp(p2 / r)
    assert diff(e, 2) is diff(e, 2)


def test_interning_gives_identity():
    assert (p1 + r * p2) is (p1 + r * p2)
    assert (p1 - p1).is_zero


# -- eval -------------------------------------------------------------------------

def test_eval_examples():
    assert evaluate(p1 + I * r, (1, 2, 2)) == 1 + 3j
    assert evaluate(p3 / rho, (1, 0, 1)) == 1
    assert evaluate(p1 / r, (0, 3, 4)) == 0


def test_eval_singular_axis_names_rho():
    with pytest.raises(SingularPointError) as err:
        evaluate(p3 / rho, (0, 0, 1))
    assert err.value.radical == "rho"


def test_eval_singular_origin_names_r():
    with pytest.raises(SingularPointError) as err:
        evaluate(p1 / r, (0, 0, 0))
    assert err.value.radical == "r"


def test_radicals_in_numerator_are_fine_on_axis():
    assert evaluate(rho / r, (0, 0, 2)) == 0


# -- conjugate / substitute_neg ----------------------------------------------------

def test_conjugate_examples(points):
    assert same(conjugate(I * p1), -1j * p1, points)
    assert conjugate(r) is r
    g = exp(-r ** 2)
    assert same(conjugate(g + I * p2 / rho), g - I * p2 / rho, points)


def test_substitute_neg_examples(points):
    assert same(substitute_neg(p1), -p1, points)
    assert substitute_neg(r) is r
    assert same(substitute_neg(p3 / rho), -p3 / rho, points)


# -- generated corpus -----------------------------------------------------------------

leaves = st.sampled_from([p1, p2, p3, r, rho, ex.const(0.5), ex.const(-1.5 + 0.25j), I])
safe_denominators = st.sampled_from([r, rho, 1 + r ** 2, r * rho, 2 + p1 * p1])


def _extend(children):
    return st.one_of(
        st.tuples(children, children).map(lambda t: t[0] + t[1]),
        st.tuples(children, children).map(lambda t: t[0] - t[1]),
        st.tuples(children, children).map(lambda t: t[0] * t[1]),
        st.tuples(children, safe_denominators).map(lambda t: t[0] / t[1]),
        st.tuples(children, st.integers(2, 3)).map(lambda t: t[0] ** t[1]),
        st.tuples(safe_denominators, st.integers(-2, -1)).map(lambda t: t[0] ** t[1]),
        children.map(lambda c: exp(-r ** 2 + 0.3j * c / (1 + r ** 2))),
    )


exprs = st.recursive(leaves, _extend, max_leaves=8)

FD_POINTS = sample_points(SamplePlan(seed=11, count=100))


@settings(max_examples=60, deadline=None)
@given(exprs, st.integers(1, 3))
def test_diff_matches_central_difference(e, axis):
    h = 1e-5 * np.linalg.norm(FD_POINTS, axis=1)
    step = np.zeros_like(FD_POINTS)
    step[:, axis - 1] = h
    fd = (evaluate_many([e], FD_POINTS + step)[0] - evaluate_many([e], FD_POINTS - step)[0]) / (2 * h)
    sym = evaluate_many([diff(e, axis)], FD_POINTS)[0]
    val = evaluate_many([e], FD_POINTS)[0]
    scale = np.maximum(np.abs(sym), np.abs(val) / np.linalg.norm(FD_POINTS, axis=1))
    scale = np.maximum(scale, 1e-12)
    assert np.all(np.abs(fd - sym) <= 1e-6 * scale)


@settings(max_examples=60, deadline=None)
@given(exprs)
def test_neg_is_involution_and_commutes_with_conjugate(e):
    pts = FD_POINTS[:20]
    v = evaluate_many([e], pts)[0]
    np.testing.assert_allclose(evaluate_many([substitute_neg(substitute_neg(e))], pts)[0], v, rtol=1e-12)
    np.testing.assert_allclose(evaluate_many([substitute_neg(e)], pts)[0], evaluate_many([e], -pts)[0],
                               rtol=1e-12)
    a = evaluate_many([conjugate(substitute_neg(e))], pts)[0]
    b = evaluate_many([substitute_neg(conjugate(e))], pts)[0]
    np.testing.assert_allclose(a, b, rtol=1e-12)


@settings(max_examples=60, deadline=None)
@given(exprs)
def test_conjugate_matches_numeric_conjugate(e):
    pts = FD_POINTS[:20]
    v = evaluate_many([e], pts)[0]
    np.testing.assert_allclose(evaluate_many([conjugate(e)], pts)[0], np.conj(v), rtol=1e-12)
    np.testing.assert_array_equal(evaluate_many([conjugate(conjugate(e))], pts)[0], v)


@settings(max_examples=40, deadline=None)
@given(exprs)
def test_scale_bounds_value(e):
    vals, scales = evaluate_many([e], FD_POINTS[:20], with_scale=True)
    assert np.all(np.abs(vals) <= scales * (1 + 1e-12) + 1e-300)


# -- sampling ------------------------------------------------------------------------

def test_sampling_deterministic():
    plan = SamplePlan(seed=7, count=3)
    np.testing.assert_array_equal(sample_points(plan), sample_points(plan))


def test_sampling_respects_constraints():
    plan = SamplePlan(seed=3, count=500, shell=(0.5, 2.0), axis_margin=0.3)
    pts = sample_points(plan)
    radius = np.linalg.norm(pts, axis=1)
    assert np.all((radius >= 0.5 - 1e-12) & (radius <= 2.0 + 1e-12))
    assert np.all(np.hypot(pts[:, 0], pts[:, 1]) >= 0.3 * radius - 1e-12)


def test_sampling_empty():
    assert sample_points(SamplePlan(count=0)).shape == (0, 3)


@pytest.mark.parametrize("kwargs", [{"shell": (0.0, 1.0)}, {"axis_margin": 1.0}, {"axis_margin": 0.0}])
def test_bad_plans_rejected(kwargs):
    with pytest.raises(ValueError):
        SamplePlan(**kwargs)


def test_render_is_stable():
    e = p3 * p1 / (r * rho) - exp(-r ** 2) * I
    assert str(e) == "p3 * p1 / (r * rho) - i * exp(-r^2)"


def _parse_back(text: str, point) -> complex:
    src = re.sub(r"(?<![\w.])i\b", "1j", text)
    src = re.sub(r"(\d)i\b", r"\1j", src).replace("^", "**")
    x, y, z = point
    env = {"p1": x, "p2": y, "p3": z, "r": np.sqrt(x * x + y * y + z * z), "rho": np.hypot(x, y),
           "exp": np.exp}
    return complex(eval(src, {"__builtins__": {}}, env))


@settings(max_examples=80, deadline=None)
@given(exprs)
def test_render_reads_back_to_the_same_value(e):
    """Python's precedence matches the printed one, so the text is unambiguous if it evaluates back."""
    for pt in FD_POINTS[:3]:
        want = evaluate(e, pt)
        got = _parse_back(str(e), pt)
        assert abs(got - want) <= 1e-9 * (1 + abs(want)), str(e)


def test_render_signs_and_powers():
    assert str(p1 - (-I) * p2) == "p1 - (-i * p2)"
    assert str(-(-I * p3)) == "i * p3"
    assert str((r ** 2) ** 2) == "r^4"
    assert str(p1 / (-p2)) == "p1 / (-p2)"
    assert str((-p1) ** 2) == "(-p1)^2"
