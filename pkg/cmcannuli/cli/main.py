"""
The cmcannuli command line: period maps, family roots, construction,
verification and sweeps.
"""

import argparse as ap
import sys
from pathlib import Path

import numpy as np
from loguru import logger

from cmcannuli.config import settings
from cmcannuli.models.exceptions import CMCAnnuliException, DomainException

TOLERANCE_FLAGS = ("ode", "root", "quad", "geom")


def _parser() -> ap.ArgumentParser:
    parser = ap.ArgumentParser(
        prog="cmcannuli",
        description="Construct and verify free boundary CMC annuli in the unit ball",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="Repeat for more output"
    )

    for name in TOLERANCE_FLAGS:
        parser.add_argument(
            f"--tol-{name}",
            type=float,
            default=None,
            help=f"Override the {name} tolerance (also CMCAF_TOL_{name.upper()})",
        )

    commands = parser.add_subparsers(dest="command", required=True)

    for name, help in (("per", "Print Per(alpha, beta, gamma)"), ("sigma", "Print sigma")):
        command = commands.add_parser(name, help=help)
        command.add_argument("--alpha", type=float, required=True)
        command.add_argument("--beta", type=float, required=True)
        command.add_argument("--gamma", type=float, required=True)

    level = commands.add_parser("level", help="Print gamma with Per = -1/n")
    level.add_argument("--n", type=int, required=True)
    level.add_argument("--alpha", type=float, required=True)
    level.add_argument("--beta", type=float, required=True)

    family = commands.add_parser("family", help="Find beta1 and beta* for n")
    family.add_argument("--n", type=int, required=True)
    family.add_argument("--report", type=Path, default=None)

    def add_grid(command):
        command.add_argument("--u-samples", type=int, default=None)
        command.add_argument("--v-samples", type=int, default=None)

    construct = commands.add_parser("construct", help="Build and verify one annulus")
    construct.add_argument("--n", type=int, required=True)
    construct.add_argument("--mu", type=float, required=True)
    construct.add_argument(
        "--steps", type=int, default=4, help="Continuation steps from mu = 0"
    )
    add_grid(construct)
    construct.add_argument("--mesh", type=Path, default=None)
    construct.add_argument("--report", type=Path, default=None)

    verify = commands.add_parser("verify", help="Re-verify stored artifacts")
    verify.add_argument("--report", type=Path, required=True)
    verify.add_argument("--mesh", type=Path, default=None)

    sweep = commands.add_parser("sweep", help="Sweep the family in mu")
    sweep.add_argument("--n", type=int, required=True)
    sweep.add_argument("--mu-max", type=float, required=True)
    sweep.add_argument("--steps", type=int, required=True)
    sweep.add_argument("--csv", type=Path, required=True)
    add_grid(sweep)

    return parser


def _configure(args: ap.Namespace):
    logger.remove()
    level = ("WARNING", "INFO", "DEBUG")[min(args.verbose, 2)]
    logger.add(sys.stderr, level=level)

    for name in TOLERANCE_FLAGS:
        value = getattr(args, f"tol_{name}")
        if value is not None:
            setattr(settings, f"tol_{name}", value)


def _resolution(args: ap.Namespace) -> tuple[int, int]:
    u_samples = settings.u_samples if args.u_samples is None else args.u_samples
    v_samples = settings.v_samples(args.n) if args.v_samples is None else args.v_samples

    if v_samples % (2 * args.n) != 0:
        raise DomainException(f"--v-samples must be a multiple of 2n = {2 * args.n}")

    return u_samples, v_samples


def _point(args: ap.Namespace):
    from cmcannuli.models.parameters import ParamPoint

    return ParamPoint(alpha=args.alpha, beta=args.beta, gamma=args.gamma)


def _per(args) -> int:
    from cmcannuli.construction.periods import per_map

    print(repr(per_map(_point(args))))
    return 0


def _sigma(args) -> int:
    from cmcannuli.construction.periods import sigma_period

    print(repr(sigma_period(_point(args))))
    return 0


def _level(args) -> int:
    from cmcannuli.construction.family import level_point

    print(repr(level_point(args.n, args.alpha, args.beta).gamma))
    return 0


def _family(args) -> int:
    from cmcannuli.artifacts.report import family_report, write_report
    from cmcannuli.construction.annulus import boundary_sphere
    from cmcannuli.construction.family import family_point, find_beta1, find_beta_star

    beta1 = find_beta1(args.n)
    beta_star = find_beta_star(args.n, beta1=beta1)
    fp = family_point(args.n, 1.0, beta_star, mu=0.0)

    print(f"beta1 = {beta1!r}")
    print(f"beta* = {beta_star!r}")
    print(f"gamma* = {fp.param.gamma!r}")
    print(f"u* = {fp.u_star!r}")
    print(f"tau = {fp.tau!r}")
    print(f"H = {0.5 * boundary_sphere(fp)[1]!r}")

    path = args.report or Path(f"family-n{args.n}.json")
    write_report(family_report(fp, beta1), path)

    return 0


def _print_verdicts(verdicts) -> bool:
    for verdict in verdicts:
        flag = "pass" if verdict.passed else "FAIL"
        print(f"{verdict.name:16s} {flag}  residual={verdict.residual:.3e}  {verdict.details}")

    return all(v.passed for v in verdicts)


def _construct(args) -> int:
    from cmcannuli.artifacts.mesh import export_mesh
    from cmcannuli.artifacts.report import annulus_report, write_report
    from cmcannuli.construction.annulus import assemble_annulus
    from cmcannuli.construction.family import continue_family
    from cmcannuli.verification.runner import verify_model_sync

    if args.mu < 0.0 or args.steps < 1:
        raise DomainException(f"Need mu >= 0 and steps >= 1, got {args.mu}, {args.steps}")

    resolution = _resolution(args)
    mu_list = [0.0] if args.mu == 0.0 else list(np.linspace(0.0, args.mu, args.steps + 1))
    branch = continue_family(args.n, mu_list)

    if branch.truncated:
        logger.error(branch.notice)
        return 1

    model = assemble_annulus(branch.points[-1], resolution)
    model = model.with_verdicts(verify_model_sync(model))

    passed = _print_verdicts(model.verdicts)

    if args.mesh is not None:
        export_mesh(model, args.mesh)

    if args.report is not None:
        write_report(annulus_report(model), args.report)

    return 0 if passed else 1


def _verify(args) -> int:
    from cmcannuli.artifacts.mesh import load_mesh
    from cmcannuli.artifacts.report import read_report
    from cmcannuli.construction.annulus import assemble_annulus
    from cmcannuli.models.family import FamilyPoint
    from cmcannuli.models.parameters import ParamPoint
    from cmcannuli.verification.runner import verify_model_sync

    report = read_report(args.report)

    fp = FamilyPoint(
        n=report.n,
        mu=report.mu,
        param=ParamPoint(alpha=report.alpha, beta=report.beta, gamma=report.gamma),
        u_star=report.u_star,
        tau=report.tau,
        sigma=report.sigma,
        per=report.per,
    )

    model = assemble_annulus(fp, report.grid)
    passed = _print_verdicts(verify_model_sync(model))

    if args.mesh is not None:
        vertices, faces = load_mesh(args.mesh)

        if vertices.shape != model.vertices().shape or not np.array_equal(faces, model.faces()):
            print("mesh             FAIL  stored mesh does not match the report grid")
            return 1

        deviation = float(np.max(np.abs(vertices - model.vertices())))
        matches = deviation <= settings.tol_geom
        print(
            f"mesh             {'pass' if matches else 'FAIL'}  "
            f"max vertex deviation={deviation:.3e}"
        )
        passed = passed and matches

    return 0 if passed else 1


def _sweep(args) -> int:
    from cmcannuli.artifacts.sweep import sweep_family, write_sweep_csv

    rows = sweep_family(args.n, args.mu_max, args.steps, _resolution(args))
    write_sweep_csv(rows, args.csv)

    accepted = sum(row.passed for row in rows)
    print(f"accepted {accepted} of {args.steps + 1} mu values, written to {args.csv}")

    return 0 if rows and all(row.passed for row in rows) else 1


COMMANDS = {
    "per": _per,
    "sigma": _sigma,
    "level": _level,
    "family": _family,
    "construct": _construct,
    "verify": _verify,
    "sweep": _sweep,
}


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    _configure(args)

    try:
        return COMMANDS[args.command](args)
    except DomainException as e:
        logger.error(f"Invalid input: {e}")
        return 2
    except CMCAnnuliException as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
