"""Built-in one-parameter families for the solver, the sweep, and the demos.

Four families are provided.  ``linear`` is the exact model alpha*x + beta
(mod 1).  ``quadratic`` and ``sqrt`` shift f(x) = alpha*x^2 / alpha*sqrt(x)
into two branches on [0, 1]; the quadratic family is a contraction only for
alpha < 1/2 and the sqrt family is never Lipschitz at 0, so tongue solving is
restricted accordingly while plain orbit sweeps accept the full ranges.  The
``sine`` family grows from the generator g(x) = alpha*(x/2 + sin(x)/4); it is
parameterized by the top cut value c*, the fixed point of g + 1, which pins
the slope to alpha = 4(c* - 1)/(2c* + sin c*).
"""

from __future__ import annotations

import numpy as np

from .piecewise_map import PiecewiseMap, from_linear
from .tongue_solver import FamilyError, FamilySpec, family_from_f, family_from_g

FAMILY_NAMES = ("linear", "sine", "quadratic", "sqrt")


def sine_alpha(c_star: float) -> float:
    """Slope that makes c* the fixed point of g + 1 for the sine generator."""
    if c_star <= 1.0:
        raise FamilyError(f"c* must exceed 1, got {c_star}")
    return 4.0 * (c_star - 1.0) / (2.0 * c_star + np.sin(c_star))


def sine_generator(alpha: float):
    def g(x):
        return alpha * (0.5 * x + 0.25 * np.sin(x))

    return g


def sine_family(c_star: float) -> FamilySpec:
    """Sine-generator family with the exact top cut c*."""
    alpha = sine_alpha(c_star)
    kappa = 0.75 * alpha
    if kappa >= 1.0:
        raise FamilyError(f"c* = {c_star} gives slope {alpha:.4g}, not a contraction")
    return family_from_g(sine_generator(alpha), kappa, c_star=c_star,
                         name=f"sine(c*={c_star:g})")


def quadratic_family(alpha: float) -> FamilySpec:
    """Shifted-branch family of f(x) = alpha*x^2; a contraction for alpha < 1/2."""
    if not 0.0 < alpha < 0.5:
        raise FamilyError(f"quadratic family needs 0 < alpha < 1/2, got {alpha}")
    return family_from_f(lambda x: alpha * x * x, kappa=2.0 * alpha,
                         name=f"quadratic({alpha:g})")


def linear_f_family(alpha: float) -> FamilySpec:
    """Shifted-branch family of f(x) = alpha*x, identical to the linear model."""
    if not 0.0 < alpha < 1.0:
        raise FamilyError(f"linear family needs 0 < alpha < 1, got {alpha}")
    return family_from_f(lambda x: alpha * x, kappa=alpha, name=f"linear-f({alpha:g})")


def sqrt_family(alpha: float) -> FamilySpec:
    raise FamilyError(
        "sqrt family has unbounded slope at 0 and is not a contraction; "
        "orbit sweeps are available but tongue solving is not"
    )


def solver_family(name: str, alpha: float | None = None,
                  c_star: float | None = None) -> FamilySpec:
    """Family spec for tongue solving, keyed by CLI name."""
    if name == "linear":
        if alpha is None:
            raise FamilyError("linear family needs a slope")
        return linear_f_family(alpha)
    if name == "quadratic":
        if alpha is None:
            raise FamilyError("quadratic family needs a slope")
        return quadratic_family(alpha)
    if name == "sine":
        if c_star is None:
            raise FamilyError("sine family needs a top cut c*")
        return sine_family(c_star)
    if name == "sqrt":
        return sqrt_family(alpha if alpha is not None else 0.0)
    raise FamilyError(f"unknown family {name!r}; choose from {FAMILY_NAMES}")


def sweep_map(name: str, alpha: float, second: float) -> PiecewiseMap:
    """Concrete map at one sweep cell; ``second`` is beta (linear) or the cut c.

    Unlike :func:`solver_family` this accepts the full parameter ranges used
    by the sweeps (quadratic alpha may exceed 1/2, sqrt is allowed).
    """
    if name == "linear":
        return from_linear(alpha, second)
    if name == "quadratic":
        return _from_f_map(lambda x: alpha * x * x, min(2.0 * alpha, 1.0), second,
                           name=f"quadratic({alpha:g})@c={second:g}")
    if name == "sqrt":
        if not 0.0 < alpha < 1.0:
            raise FamilyError(f"sqrt family needs 0 < alpha < 1, got {alpha}")
        return _from_f_map(lambda x: alpha * np.sqrt(np.maximum(x, 0.0)), 1.0, second,
                           name=f"sqrt({alpha:g})@c={second:g}")
    if name == "sine":
        g = sine_generator(alpha)
        lo = g(second)
        if not lo + 1.0 > second:
            raise FamilyError(f"cut {second} is beyond the top cut of sine slope {alpha}")
        def h(x):
            return g(x) + 1.0
        return PiecewiseMap(lo, lo + 1.0, second, h, g, kappa=min(0.75 * alpha, 1.0),
                            name=f"sine({alpha:g})@c={second:g}")
    raise FamilyError(f"unknown family {name!r}; choose from {FAMILY_NAMES}")


def _from_f_map(f, kappa: float, c: float, name: str) -> PiecewiseMap:
    if not 0.0 < c < 1.0:
        raise FamilyError(f"cut must lie in (0, 1), got {c}")
    fc = f(c)

    def upper(x):
        return f(x) - fc + 1.0

    def lower(x):
        return f(x) - fc

    return PiecewiseMap(0.0, 1.0, c, upper, lower, kappa=kappa, name=name)
