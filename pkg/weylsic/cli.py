"""
``weylsic`` command line: every check and search as a subcommand.

A JSON `.Report` goes to stdout, a short human summary to stderr. The exit
code is 0 on pass, 1 when a claim fails, 2 on usage or input errors and 3
when a search, budget or truncation runs out.
"""

import argparse
import sys

from weylsic._version import __version__
from weylsic.clifford import (
    SymplecticMatrix,
    block_spectrum,
    clifford_group_closure,
    metaplectic_unitary,
    sl2_order,
    snap_error,
    verify_monomiality,
    zauner_block_diagonalize,
    zauner_spectrum,
    zauner_unitary,
)
from weylsic.common import (
    CLOSURE_BUDGET,
    DEBUG,
    DEFAULT_CHECK_TOL,
    EXIT_FAIL,
    EXIT_INCOMPLETE,
    EXIT_PASS,
    EXIT_USAGE,
    INFO,
    PHASE_PERMUTATION,
    SEARCH_METHODS,
    STANDARD,
    THETA_TAIL_LIMIT,
    THETA_TRUNC,
    WARNING,
)
from weylsic.config import SearchConfig
from weylsic.fiducial_file import FiducialFile
from weylsic.heisenberg import RepBasis, generators
from weylsic.report import Report, monomial_as_dict
from weylsic.sicmoduli import (
    format_surd,
    moduli_n4_branches,
    moduli_residuals_pp,
    solve_moduli_n4,
)
from weylsic.sicsearch import (
    search_fiducial,
    sic_check,
    zauner_invariant_parametrization,
)
from weylsic.theta import LatticeParams, characteristic_laws, induced_action
from weylsic.util import get_logger, isqrt_exact, log_to_file, log_to_stderr
from weylsic.weyl_exception import (
    BudgetExceeded,
    ClaimViolated,
    ConfigParseError,
    DimensionError,
    FiducialFileError,
    NotConverged,
    NotMonomial,
    PhaseNotRecognized,
    TailBoundExceeded,
    WeylException,
)

log = get_logger(__name__)

# Exceptions that end a command early, by exit code.
EXIT_CODES = (
    ((ClaimViolated, NotMonomial, PhaseNotRecognized), EXIT_FAIL),
    (
        (
            DimensionError,
            ConfigParseError,
            FiducialFileError,
            ValueError,
            OSError,
        ),
        EXIT_USAGE,
    ),
    ((NotConverged, BudgetExceeded, TailBoundExceeded), EXIT_INCOMPLETE),
)


def _say(text):
    sys.stderr.write(text + "\n")


class UsageError(WeylException):
    """
    The command line could not be parsed.
    """

    def __init__(self, prog, message):
        WeylException.__init__(self, prog, message)
        self.prog = prog
        self.message = message

    @property
    def command(self):
        return " ".join(self.prog.split()[1:]) or self.prog

    def __str__(self):
        return self.message


class ArgumentParser(argparse.ArgumentParser):
    """
    An `argparse.ArgumentParser` whose errors raise `UsageError`, after
    printing the usual usage text to stderr.
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        _say("{}: error: {}".format(self.prog, message))
        raise UsageError(self.prog, message)


def _dense(M):
    return [[[float(x.real), float(x.imag)] for x in row] for row in M]


def parse_tau(text):
    """
    Parse ``"0+1i"`` style complex numbers (``i`` or ``j``).
    """
    try:
        tau = complex(text.strip().replace("i", "j"))
    except ValueError:
        msg = "not a complex number: {}".format(text)
        raise argparse.ArgumentTypeError(msg)
    if not tau.imag > 0:
        raise argparse.ArgumentTypeError("tau must have Im(tau) > 0")
    return tau


def rep_show(args):
    basis = RepBasis(args.basis, args.N)
    X, Z = generators(basis)
    _say("X: {!r}".format(X))
    _say("Z: {!r}".format(Z))
    results = {
        "X": monomial_as_dict(X),
        "Z": monomial_as_dict(Z),
        "dense": {"X": _dense(X.to_dense()), "Z": _dense(Z.to_dense())},
    }
    params = {"N": args.N, "basis": args.basis}
    return Report("rep show", params, results, True)


def clifford_verify(args):
    params = {
        "N": args.N,
        "full_group": args.full_group,
        "budget": args.budget,
    }
    isqrt_exact(args.N)
    basis = RepBasis(PHASE_PERMUTATION, args.N)
    results = {"generators": {}}
    snap = 0.0
    named = (
        ("U_S", SymplecticMatrix.fourier(args.N)),
        ("U_T", SymplecticMatrix.shear(args.N)),
    )
    for name, F in named:
        U = metaplectic_unitary(F, basis).U
        try:
            M = verify_monomiality(U)
        except (NotMonomial, PhaseNotRecognized) as e:
            results["offending"] = {
                "element": name,
                "error": str(e),
                "matrix": _dense(U),
            }
            _say("{} is not monomial: {}".format(name, e))
            return Report("clifford verify", params, results, False)
        error = snap_error(U, M)
        snap = max(snap, error)
        results["generators"][name] = {
            "monomial": monomial_as_dict(M),
            "snap_error": error,
        }
    results["max_snap_error"] = snap
    passed = True
    if args.full_group:
        expected = sl2_order(args.N) * args.N**2
        elements = clifford_group_closure(args.N, basis, args.budget)
        results["elements"] = len(elements)
        results["expected"] = expected
        passed = len(elements) == expected
        _say(
            "closure: {} elements (expected {})".format(
                len(elements), expected
            )
        )
    _say("generators monomial, max snap error {:.2e}".format(snap))
    return Report("clifford verify", params, results, passed)


def zauner(args):
    n = isqrt_exact(args.N)
    basis = RepBasis.phase_permutation(n)
    U = zauner_unitary(basis)
    spectrum = zauner_spectrum(U)
    P, blocks = zauner_block_diagonalize(verify_monomiality(U))
    subspace = zauner_invariant_parametrization(args.N, basis)
    dim = subspace.basis.shape[1]
    results = {
        "spectrum": dict(spectrum._asdict()),
        "blocks": blocks.blocks,
        "diagonals": len(blocks.diagonal),
        "diagonal_phases": [str(p.turn) for p in blocks.diagonal],
        "invariant_dim": dim,
        "expected_dim": args.N // 3 + 1,
    }
    passed = (
        block_spectrum(blocks) == spectrum
        and spectrum.one == dim == args.N // 3 + 1
    )
    _say(
        "zauner N={}: {} blocks, {} diagonals, invariant dim {}".format(
            args.N, blocks.blocks, len(blocks.diagonal), dim
        )
    )
    return Report("zauner", {"N": args.N}, results, passed)


def _moduli_entry(value):
    return {"exact": format_surd(value), "decimal": float(value)}


def sic_solve_n4(args):
    labels = ("p00", "p01", "p10", "p11")
    branches = []
    for branch in moduli_n4_branches():
        branches.append(
            {
                "sign": branch.sign,
                "accepted": branch.accepted,
                "moduli": dict(zip(labels, map(_moduli_entry, branch.moduli))),
            }
        )
    moduli = solve_moduli_n4()
    residuals = moduli_residuals_pp(moduli, 2)
    exact_zero = all(r == 0 for r in residuals)
    results = {
        "moduli": dict(zip(labels, map(_moduli_entry, moduli.p))),
        "branches": branches,
        "residuals_exact_zero": exact_zero,
    }
    for label, value in zip(labels, moduli.p):
        _say("{} = {}".format(label, format_surd(value)))
    return Report("sic solve-n4", {}, results, exact_zero)


def _search_config(args):
    overrides = {
        "dim": args.N,
        "restarts": args.restarts,
        "max_iters": args.max_iters,
        "tol": args.tol,
        "seed": args.seed,
        "basis": args.basis,
        "workers": args.workers,
        "method": args.method,
    }
    if args.config:
        cfg = SearchConfig.from_path(args.config, **overrides)
    else:
        if args.N is None:
            raise DimensionError("--N is required without --config")
        cfg = SearchConfig(
            **{k: v for k, v in overrides.items() if v is not None}
        )
    if args.zauner and cfg.subspace is None:
        subspace = zauner_invariant_parametrization(cfg.dim, cfg.rep_basis)
        cfg = cfg.replace(subspace=subspace.basis)
    return cfg


def _search_results(result):
    return {
        "fiducial": FiducialFile.from_fiducial(result.fiducial).as_dict(),
        "attained": result.attained,
        "excess": result.excess,
        "restarts_used": result.restarts_used,
        "converged": result.converged,
    }


def sic_search(args):
    cfg = _search_config(args)
    try:
        result = search_fiducial(cfg)
    except NotConverged as e:
        report = Report("sic search", cfg.as_dict(), _search_results(e.result))
        e.report = report
        raise
    if args.out:
        FiducialFile.from_fiducial(result.fiducial).save(args.out)
    _say(
        "converged after {} restarts, excess {:.2e}".format(
            result.restarts_used, result.excess
        )
    )
    return Report("sic search", cfg.as_dict(), _search_results(result), True)


def sic_checkfile(args):
    fiducial = FiducialFile.load(args.file).fiducial()
    check = sic_check(fiducial)
    results = {
        "N": fiducial.dim,
        "basis": fiducial.basis.tag,
        "max_deviation": check.orbit_deviation,
        "profile_deviation": check.profile_deviation,
        "frame_excess": check.frame_excess,
        "moduli_residual": check.moduli_residual,
        "phase_residual": check.phase_residual,
        "identities": {"s1": check.identities.s1, "s2": check.identities.s2},
        "identity_deviation": check.identity_deviation,
    }
    passed = max(
        check.orbit_deviation,
        check.moduli_residual,
        check.phase_residual,
        check.identity_deviation,
    ) < args.tol
    _say("max deviation from 1/(N+1): {:.2e}".format(check.orbit_deviation))
    params = {"file": args.file, "tol": args.tol}
    return Report("sic check", params, results, passed)


def theta(args):
    lp = LatticeParams(args.tau, args.trunc)
    laws = characteristic_laws(args.n, lp)
    action = induced_action(args.n, lp)
    results = {
        "max_residual": laws.residual,
        "max_tail": laws.tail,
        "induced_matches_pp": action.matches,
        "commutator_residual": action.commutator_residual,
    }
    passed = (
        laws.residual < THETA_TAIL_LIMIT
        and action.matches
        and action.commutator_residual < 1e-9
    )
    _say(
        "theta n={}: residual {:.2e}, tail {:.2e}".format(
            args.n, laws.residual, laws.tail
        )
    )
    params = {
        "tau": [args.tau.real, args.tau.imag],
        "trunc": args.trunc,
        "n": args.n,
    }
    return Report("theta", params, results, passed)


def build_parser():
    parser = ArgumentParser(
        prog="weylsic",
        description="Weyl-Heisenberg, Clifford and SIC fiducial workbench.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--log", metavar="FILE", help="append debug logs to FILE"
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="progress on stderr"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    rep = commands.add_parser("rep").add_subparsers(
        dest="action", required=True
    )
    show = rep.add_parser("show", help="print the generators X and Z")
    show.add_argument("--N", type=int, required=True)
    show.add_argument(
        "--basis", choices=(STANDARD, PHASE_PERMUTATION), default=STANDARD
    )
    show.set_defaults(func=rep_show)

    cliff = commands.add_parser("clifford").add_subparsers(
        dest="action", required=True
    )
    verify = cliff.add_parser("verify", help="check Clifford monomiality")
    verify.add_argument("--N", type=int, required=True)
    verify.add_argument("--full-group", action="store_true")
    verify.add_argument("--budget", type=int, default=CLOSURE_BUDGET)
    verify.set_defaults(func=clifford_verify)

    zau = commands.add_parser("zauner", help="Zauner unitary structure")
    zau.add_argument("--N", type=int, required=True)
    zau.set_defaults(func=zauner)

    sic = commands.add_parser("sic").add_subparsers(
        dest="action", required=True
    )
    solve = sic.add_parser("solve-n4", help="exact N=4 moduli")
    solve.set_defaults(func=sic_solve_n4)
    search = sic.add_parser("search", help="numerical fiducial search")
    search.add_argument("--N", type=int)
    search.add_argument("--seed", type=int)
    search.add_argument("--restarts", type=int)
    search.add_argument("--max-iters", type=int)
    search.add_argument("--tol", type=float)
    search.add_argument("--basis", choices=(STANDARD, PHASE_PERMUTATION))
    search.add_argument("--method", choices=SEARCH_METHODS)
    search.add_argument("--workers", type=int)
    search.add_argument("--zauner", action="store_true")
    search.add_argument("--config", metavar="FILE")
    search.add_argument("--out", metavar="FILE")
    search.set_defaults(func=sic_search)
    check = sic.add_parser("check", help="verify a stored fiducial")
    check.add_argument("--file", required=True)
    check.add_argument("--tol", type=float, default=DEFAULT_CHECK_TOL)
    check.set_defaults(func=sic_checkfile)

    th = commands.add_parser("theta", help="theta function laws")
    th.add_argument("--tau", type=parse_tau, default=1j)
    th.add_argument("--trunc", type=int, default=THETA_TRUNC)
    th.add_argument("--n", type=int, default=2)
    th.set_defaults(func=theta)
    return parser


def _exit_code(error):
    for kinds, code in EXIT_CODES:
        if isinstance(error, kinds):
            return code
    return EXIT_FAIL


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        error = {"kind": type(e).__name__, "message": str(e)}
        report = Report(e.command, results={"error": error})
        sys.stdout.write(report.to_json() + "\n")
        return EXIT_USAGE
    except SystemExit as e:
        return e.code
    if args.log:
        log_to_file(args.log)
    if args.verbose:
        log_to_stderr(DEBUG if args.verbose > 1 else INFO)
    else:
        log_to_stderr(WARNING)
    words = (args.command, getattr(args, "action", None))
    name = " ".join(filter(None, words))
    try:
        report = args.func(args)
        code = EXIT_PASS if report.passed else EXIT_FAIL
    except (WeylException, ValueError, OSError) as e:
        code = _exit_code(e)
        report = getattr(e, "report", None) or Report(name)
        report.results["error"] = {"kind": type(e).__name__, "message": str(e)}
        _say("error: {}".format(e))
        if isinstance(e, TailBoundExceeded):
            _say("raise --trunc above {}".format(e.trunc))
    sys.stdout.write(report.to_json() + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
