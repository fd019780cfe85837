"""
The family of free-boundary annuli: the rotational arc Upsilon on the level
set Per = -1/n, its roots beta1 and beta*, and the continuation in mu.
"""

import numpy as np
from loguru import logger
from opentelemetry import trace
from scipy.optimize import brentq

from cmcannuli.config import settings
from cmcannuli.construction.dynamics import find_tau, integrate_yz
from cmcannuli.construction.frame import integrate_profile_frame
from cmcannuli.construction.parameters import auxiliary_function, derive_constants
from cmcannuli.construction.periods import gamma_level, period_data
from cmcannuli.construction.spheres import find_u_star
from cmcannuli.models.exceptions import (
    BracketException,
    CMCAnnuliException,
    DomainException,
    NumericException,
)
from cmcannuli.models.family import FamilyBranch, FamilyPoint
from cmcannuli.models.parameters import ParamPoint


def _check_n(n: int):
    if n < 2:
        raise DomainException(f"n must be at least 2, got {n}")


def level_point(n: int, alpha: float, beta: float) -> ParamPoint:
    """
    The point (alpha, beta, gamma) with Per = -1/n.
    """
    _check_n(n)
    return ParamPoint(alpha=alpha, beta=beta, gamma=gamma_level(-1.0 / n, alpha, beta))


def upsilon(n: int, beta: float) -> ParamPoint:
    """
    The rotational arc beta -> (1, beta, gamma_c(1, beta)).
    """
    if beta < 1.0:
        raise DomainException(f"The arc is parametrized by beta >= 1, got {beta}")

    return level_point(n, 1.0, beta)


def family_point(n: int, alpha: float, beta: float, mu: float | None = None) -> FamilyPoint:
    """
    Evaluate u* and tau at the level-set point above (alpha, beta).

    The returned point only lies on the family when ``u_star == tau``;
    ``matching_residual`` measures the difference.
    """
    p = level_point(n, alpha, beta)
    trajectory = integrate_yz(p)

    tau = trajectory.tau if trajectory.tau is not None else find_tau(trajectory, p)
    frame_curve = integrate_profile_frame(p, trajectory)
    u_star = find_u_star(p, trajectory, frame_curve)
    periods = period_data(p)

    return FamilyPoint(
        n=n,
        mu=alpha - 1.0 if mu is None else mu,
        param=p,
        u_star=u_star,
        tau=tau,
        sigma=periods.sigma,
        per=periods.per,
    )


def matching_residual(n: int, alpha: float, beta: float) -> float:
    """
    F(alpha, beta) = u* - tau on the level set Per = -1/n.
    """
    return family_point(n, alpha, beta).matching_residual


def find_beta1(n: int, tol: float | None = None) -> float:
    """
    The root of L_aux along the arc: L_aux(Upsilon(1)) > 0 and L_aux tends
    to -inf, so the bracket [1, 2^k] is grown until it turns negative.
    """
    _check_n(n)
    tol = settings.tol_root if tol is None else tol

    def aux(beta: float) -> float:
        return auxiliary_function(derive_constants(upsilon(n, beta)))

    lower, upper = 1.0, 2.0

    for _ in range(64):
        if aux(upper) < 0.0:
            break

        lower, upper = upper, 2.0 * upper
    else:
        raise BracketException(f"L_aux stays positive along the arc for n={n}")

    logger.debug(f"beta1 bracketed in [{lower}, {upper}] for n={n}")

    beta1 = brentq(aux, lower, upper, xtol=tol, maxiter=200)

    logger.info(f"beta1 = {beta1} for n={n}")

    return beta1


def find_beta_star(
    n: int,
    beta1: float | None = None,
    points: int | None = None,
    tol: float | None = None,
) -> float:
    """
    The first sign change (negative to positive) of f(beta) = u* - tau on
    the arc, over (1, beta1).

    Parameters
    ----------
    n : int
        Number of symmetry planes.
    beta1 : float, optional
        Upper end of the search, computed when missing.
    points : int, optional
        Number of scan points.
    tol : float, optional
        Root tolerance in beta.

    Returns
    -------
    float
        beta*.

    Raises
    ------
    NumericException
        No sign change was seen; the exception carries the scan table.
    """
    _check_n(n)
    tol = settings.tol_root if tol is None else tol
    points = settings.beta_scan_points if points is None else points
    beta1 = find_beta1(n) if beta1 is None else beta1

    grid = np.append(
        np.linspace(1.0, beta1, points + 1)[:-1], beta1 - 1e-4 * (beta1 - 1.0)
    )

    def f(beta: float) -> float:
        return matching_residual(n, 1.0, beta)

    table = []
    previous = None

    for beta in grid:
        value = f(float(beta))
        table.append((float(beta), value))
        logger.debug(f"f({beta}) = {value} for n={n}")

        if previous is not None and previous[1] < 0.0 <= value:
            beta_star = brentq(f, previous[0], float(beta), xtol=tol, maxiter=200)
            logger.info(f"beta* = {beta_star} for n={n}")
            return beta_star

        previous = (float(beta), value)

    raise NumericException(
        f"u* - tau does not change sign on (1, {beta1}) for n={n}", table=table
    )


def _correct(n: int, mu: float, guess: float, width: float, tol: float) -> FamilyPoint:
    """
    Solve F(1 + mu, beta) = 0 near ``guess``, widening the bracket a few
    times before giving up.
    """
    alpha = 1.0 + mu
    cache = {}

    def F(beta: float) -> float:
        if beta not in cache:
            cache[beta] = matching_residual(n, alpha, beta)
        return cache[beta]

    for _ in range(6):
        lower, upper = max(guess - width, alpha), guess + width

        if F(lower) * F(upper) <= 0.0:
            beta = brentq(F, lower, upper, xtol=tol, maxiter=200)
            return family_point(n, alpha, beta, mu=mu)

        width *= 2.0

    raise BracketException(
        f"Corrector found no sign change around beta={guess} at mu={mu}", estimate=guess
    )


def _predict(history: list[FamilyPoint], mu: float) -> float:
    if len(history) == 1:
        return history[0].param.beta

    a, b = history[-2], history[-1]
    slope = (b.param.beta - a.param.beta) / (b.mu - a.mu)
    return b.param.beta + slope * (mu - b.mu)


def continue_family(
    n: int,
    mu_list: list[float],
    beta_star: float | None = None,
    tol: float | None = None,
    max_halvings: int | None = None,
    tracer: trace.Tracer | None = None,
) -> FamilyBranch:
    """
    Follow the curve of solutions of F(alpha, beta) = 0 from (1, beta*)
    through alpha = 1 + mu for each requested mu.

    Each step is a secant prediction in beta followed by a bracketed root
    solve. A failing step is retried at half the distance; after
    ``max_halvings`` consecutive failures the branch is returned truncated.

    Parameters
    ----------
    n : int
        Number of symmetry planes.
    mu_list : list of float
        Increasing values starting at 0.
    beta_star : float, optional
        Starting root, computed when missing.
    tol : float, optional
        Root tolerance in beta.
    max_halvings : int, optional
        Consecutive step halvings allowed.
    tracer : trace.Tracer, optional
        Tracer for the continuation span.

    Returns
    -------
    FamilyBranch
        The accepted points, one per reached mu.
    """
    _check_n(n)

    mu_values = [float(m) for m in mu_list]

    if not mu_values or mu_values[0] != 0.0 or np.any(np.diff(mu_values) <= 0.0):
        raise DomainException(f"mu values must start at 0 and increase, got {mu_list}")

    tol = settings.tol_root if tol is None else tol
    max_halvings = settings.max_halvings if max_halvings is None else max_halvings
    tracer = tracer or trace.get_tracer("cmcannuli-family-solver")

    with tracer.start_as_current_span(
        "continue_family",
        attributes={"n": n, "mu_max": mu_values[-1], "mu_count": len(mu_values)},
    ) as span:
        beta_star = find_beta_star(n) if beta_star is None else beta_star
        start = family_point(n, 1.0, beta_star, mu=0.0)

        accepted = [start]
        history = [start]

        for target in mu_values[1:]:
            halvings = 0
            goal = target

            while history[-1].mu < target:
                guess = _predict(history, goal)
                width = max(2.0 * abs(guess - history[-1].param.beta), 1e-4)

                try:
                    point = _correct(n, goal, guess, width, tol)
                except CMCAnnuliException as e:
                    if halvings >= max_halvings:
                        notice = (
                            f"Continuation stopped before mu={target} after "
                            f"{halvings} halvings (last attempt mu={goal}): {e}"
                        )
                        logger.warning(notice)
                        span.set_status(trace.Status(trace.StatusCode.OK))
                        span.set_attribute("family:truncated", True)
                        return FamilyBranch(
                            n=n, points=accepted, truncated=True, notice=notice
                        )

                    halvings += 1
                    goal = history[-1].mu + 0.5 * (goal - history[-1].mu)
                    logger.warning(f"Corrector failed, halving the step to mu={goal}")
                    continue

                history.append(point)
                halvings = 0
                goal = target

            accepted.append(history[-1])
            logger.info(
                f"Accepted mu={target}: beta={history[-1].param.beta}, "
                f"gamma={history[-1].param.gamma}"
            )

        span.set_status(trace.Status(trace.StatusCode.OK))
        span.set_attribute("family:truncated", False)

        return FamilyBranch(n=n, points=accepted)
