"""
Parameter domain bookkeeping: derived constants, the quartic p, the cubic q
and region membership.
"""

import math

import numpy as np
from numpy.polynomial import polynomial as P

from cmcannuli.models.exceptions import DomainException
from cmcannuli.models.parameters import (
    CubicData,
    DerivedConstants,
    ParamPoint,
    QuarticData,
    RegionMembership,
)


def validate_point(p: ParamPoint, strict_gamma: bool = False) -> None:
    """
    Raise a DomainException unless alpha, beta > 0 and gamma >= 1 are finite.
    With ``strict_gamma`` the boundary case gamma = 1 is rejected as well.
    """
    values = (p.alpha, p.beta, p.gamma)

    if not all(math.isfinite(x) for x in values):
        raise DomainException(f"Non-finite parameter point {values}")
    if p.alpha <= 0.0 or p.beta <= 0.0:
        raise DomainException(f"alpha and beta must be positive, got {values}")
    if p.gamma < 1.0:
        raise DomainException(f"gamma must be at least 1, got {p.gamma}")
    if strict_gamma and p.gamma == 1.0:
        raise DomainException("This operation requires gamma > 1")


def derive_constants(p: ParamPoint) -> DerivedConstants:
    validate_point(p)

    A = 0.5 * (p.alpha + 1.0 / p.alpha)
    B = 0.5 * (p.beta + 1.0 / p.beta)
    C = 0.5 * (p.gamma - 1.0 / p.gamma)

    return DerivedConstants(A=A, B=B, C=C, a_hat=1.0 - A * B + C * C)


def quartic(p: ParamPoint) -> QuarticData:
    """
    Monomial coefficients of p(x), expanded from its factored form.

    (x - rho0)(x - rho1) = x^2 - (2A/gamma) x + 1/gamma^2 and
    (x + beta gamma)(x + gamma/beta) = x^2 + 2B gamma x + gamma^2, so the
    constant and leading coefficients are exactly -1.
    """
    constants = derive_constants(p)
    A, B, g = constants.A, constants.B, p.gamma

    coefficients = (
        -1.0,
        2.0 * A * g - 2.0 * B / g,
        4.0 * A * B - g * g - 1.0 / (g * g),
        2.0 * A / g - 2.0 * B * g,
        -1.0,
    )

    roots = sorted((1.0 / (p.alpha * g), p.alpha / g))

    return QuarticData(
        coefficients=coefficients,
        rho0=roots[0],
        rho1=roots[1],
        negative_roots=(-p.beta * g, -g / p.beta),
    )


def eval_p(data: QuarticData, x):
    return P.polyval(x, data.coefficients)


def cubic(p: ParamPoint) -> CubicData:
    constants = derive_constants(p)
    A, B, C = constants.A, constants.B, constants.C

    r3 = C * C + 1.0
    s = 1.0 - A * B
    product = 0.25 * (A - B) ** 2

    double_root = p.alpha == 1.0 or p.beta == 1.0
    vanishes_at_zero = p.alpha == p.beta or p.alpha * p.beta == 1.0

    if double_root:
        r1 = r2 = 0.5 * s
    else:
        # r2 from Vieta avoids the cancellation in (s + sqrt(disc))/2.
        r1 = 0.5 * (s - math.sqrt((A * A - 1.0) * (B * B - 1.0)))
        r2 = 0.0 if vanishes_at_zero else product / r1

    h_coefficients = (product, -s, 1.0)
    coefficients = (r3 * product, -(product + r3 * s), s + r3, -1.0)

    return CubicData(
        coefficients=coefficients,
        h_coefficients=h_coefficients,
        r1=r1,
        r2=r2,
        r3=r3,
        double_root=double_root,
        vanishes_at_zero=vanishes_at_zero,
    )


def eval_q(data: CubicData, x):
    return P.polyval(x, data.coefficients)


def eval_h(data: CubicData, x):
    return P.polyval(x, data.h_coefficients)


def auxiliary_function(constants: DerivedConstants) -> float:
    """
    L = C^2 - (A - B)^2 / (4AB); positive exactly on the region where the
    first crossing of y and z exists.
    """
    A, B, C = constants.A, constants.B, constants.C
    return C * C - (A - B) ** 2 / (4.0 * A * B)


def region_membership(p: ParamPoint) -> RegionMembership:
    constants = derive_constants(p)
    L_aux = auxiliary_function(constants)

    in_O = p.alpha >= 1.0 and p.beta >= 1.0 and p.gamma >= 1.0
    in_W = p.beta >= p.alpha and p.alpha >= 1.0 and L_aux > 0.0

    return RegionMembership(
        in_O=in_O,
        in_W=in_W,
        L_aux=L_aux,
        in_W_boundary=bool(np.isclose(L_aux, 0.0, rtol=0.0, atol=1e-14)),
        sign_remark=L_aux <= 0.0,
    )
