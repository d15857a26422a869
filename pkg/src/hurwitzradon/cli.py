"""
The ``hr`` command line tool.

Every command prints one JSON object on standard output: the command payload merged with the
envelope fields ``command``, ``inputs_digest``, ``certificate`` and ``seed``. Keys are sorted and
separators compact, so a fixed command, input and seed always print the same bytes.

Exit codes: 0 on success, 1 on usage or input errors, 2 when the mathematics refutes the request
(a failed witness check, a refuted pencil, a dependent point, a witness above its table value, or a
missing Clifford structure).
"""

import argparse
import json
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ValidationError

from .clifford import build_epsilon_family, verify_epsilon_family
from .exactmat import RationalMatrix
from .gmanifold import (
    ComplexLinearAction,
    LinearAction,
    assemble_clifford_structure,
    catalogue_action,
    estimate_rho_g,
    estimate_rho_minus,
    estimate_rho_plus,
    realify,
    sample_pointwise_independence,
)
from .hurwitz import decompose, table_value
from .liepairs import build_rho1_witness, build_rho2_witness, check_witness, make_pair
from .pencil import check_span
from .types import (
    CliffordStructureWitness,
    CommandResult,
    HurwitzDecomposition,
    EpsilonFamily,
    FieldSampleReport,
    PencilVerdict,
    RhoEstimate,
    TableValue,
    WitnessCheck,
    WitnessFamily,
)
from .utils import (
    Certificate,
    CliffordStructureNotFound,
    PencilStatus,
    TableBoundExceeded,
    canonical_json,
    digest,
    resolve_budget,
    resolve_seed,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_REFUTED = 2

# (payload, certificate, seed, refuted)
Outcome = Tuple[Dict[str, Any], str, Optional[int], bool]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise RuntimeError(f"Could not read {path}: {e.strerror}.") from e
    except json.JSONDecodeError as e:
        raise ValueError(f"{path} is not valid JSON: {e.msg} at line {e.lineno}.") from e


def _write_json(path: str, data: Any) -> None:
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(canonical_json(data) + "\n")
    except OSError as e:
        raise RuntimeError(f"Could not write {path}: {e.strerror}.") from e


def _read_matrices(path: str) -> List[RationalMatrix]:
    data = _read_json(path)
    if isinstance(data, dict) and "matrices" in data:
        data = data["matrices"]
    if not isinstance(data, list):
        raise ValueError(f"{path} must hold a list of matrices or an object with a 'matrices' list.")
    return [RationalMatrix.from_json(m) for m in data]


def _dump(model: BaseModel) -> Dict[str, Any]:
    return model.model_dump(mode="json")


def _is_complex(data: Any) -> bool:
    generators = data.get("generators") if isinstance(data, dict) else None
    return bool(generators) and isinstance(generators[0], dict) and "real" in generators[0]


def _action_from_args(
    args: argparse.Namespace, keep_complex: bool = False
) -> Union[LinearAction, ComplexLinearAction]:
    if args.action:
        data = _read_json(args.action)
        if _is_complex(data):
            action = ComplexLinearAction.model_validate(data)
            return action if keep_complex else realify(action)
        if not isinstance(data, dict):
            raise ValueError(f"{args.action} must hold an object with 'dim' and 'generators'.")
        return LinearAction.model_validate(data)
    if args.pair:
        return catalogue_action(make_pair(args.pair))
    raise UsageError("Give either --action FILE or --pair LABEL.")


def _rho(args: argparse.Namespace) -> Outcome:
    return _dump(decompose(args.n)), Certificate.CLOSED_FORM.value, None, False


def _table(args: argparse.Namespace) -> Outcome:
    return _dump(table_value(args.pair, args.sizes)), Certificate.CLOSED_FORM.value, None, False


def _clifford_family(args: argparse.Namespace) -> Outcome:
    family = build_epsilon_family(args.n, args.epsilon)
    payload = _dump(family)
    if args.verify:
        payload["verification"] = _dump(verify_epsilon_family(family))
    return payload, Certificate.EXACT_VERIFICATION.value, None, False


def _witness(args: argparse.Namespace) -> Outcome:
    pair = make_pair(args.pair, args.size or ())
    build = build_rho1_witness if args.claim == "rho1" else build_rho2_witness
    try:
        family = build(pair, args.n)
    except TableBoundExceeded as e:
        rho1, rho2 = pair.targets()
        payload = {"error": str(e), "pair": pair.label, "n": args.n, "rho1": rho1, "rho2": rho2}
        return payload, Certificate.TABLE_BOUND.value, None, True
    return _dump(family), Certificate.EXACT_VERIFICATION.value, None, False


def _check_witness(args: argparse.Namespace) -> Outcome:
    family = WitnessFamily.model_validate(_read_json(args.file))
    seed = resolve_seed(args.seed)
    report = check_witness(family, sampling_budget=args.budget, seed=seed)
    if report.verdict is not None:
        certificate = report.verdict.method.value
    else:
        certificate = Certificate.EXACT_VERIFICATION.value
    return _dump(report), certificate, seed, not report.ok


def _pencil(args: argparse.Namespace) -> Outcome:
    seed = resolve_seed(args.seed)
    verdict = check_span(_read_matrices(args.file), sampling_budget=args.budget, seed=seed, verbose=args.verbose)
    return _dump(verdict), verdict.method.value, seed, verdict.status == PencilStatus.REFUTED


def _fields(args: argparse.Namespace) -> Outcome:
    seed = resolve_seed(args.seed)
    report = sample_pointwise_independence(_action_from_args(args), points=args.points, seed=seed, budget=args.budget)
    return _dump(report), Certificate.EXACT_VERIFICATION.value, seed, not report.independent_everywhere_sampled


def _rho_estimate(args: argparse.Namespace) -> Outcome:
    action = _action_from_args(args, keep_complex=True)
    seed = resolve_seed(args.seed)
    if args.mode == "plus" and isinstance(action, ComplexLinearAction):
        action = realify(action)
    if args.mode == "minus":
        estimate = estimate_rho_minus(action, subset_limit=args.subset_limit)
    elif args.mode == "plus":
        estimate = estimate_rho_plus(action, subset_limit=args.subset_limit)
    else:
        estimate = estimate_rho_g(action, sampling_budget=args.budget, seed=seed, subset_limit=args.subset_limit)
    return _dump(estimate), estimate.certificate, seed, False


def _clifford_structure(args: argparse.Namespace) -> Outcome:
    action = _action_from_args(args)
    metric = (
        RationalMatrix.from_json(_read_json(args.metric)) if args.metric else RationalMatrix.identity(action.dim)
    )
    rank = args.rank
    if rank is None:
        rank = max(estimate_rho_plus(action, metric=metric, subset_limit=args.subset_limit).value, 1)
    try:
        witness = assemble_clifford_structure(action, metric, rank, subset_limit=args.subset_limit)
    except CliffordStructureNotFound as e:
        payload = {"error": str(e), "rank": rank, "partial": [m.to_json() for m in e.partial]}
        return payload, Certificate.SUBSET_SEARCH.value, None, True
    return _dump(witness), Certificate.CLIFFORD_CERTIFICATE.value, None, False


def _realify(args: argparse.Namespace) -> Outcome:
    action = ComplexLinearAction.model_validate(_read_json(args.action))
    return _dump(realify(action)), Certificate.EXACT_VERIFICATION.value, None, False


_SCHEMA_MODELS = {
    "envelope": CommandResult,
    "rho": HurwitzDecomposition,
    "table": TableValue,
    "clifford-family": EpsilonFamily,
    "witness": WitnessFamily,
    "check-witness": WitnessCheck,
    "pencil": PencilVerdict,
    "fields": FieldSampleReport,
    "rho-estimate": RhoEstimate,
    "clifford-structure": CliffordStructureWitness,
    "realify": LinearAction,
}


def _schema(args: argparse.Namespace) -> Outcome:
    schemas = {name: model.model_json_schema(mode="serialization") for name, model in _SCHEMA_MODELS.items()}
    return {"schemas": schemas}, Certificate.NONE.value, None, False


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--seed", type=int, default=None, help="Seed of randomized steps (default: $HURWITZRADON_SEED or 0)"
    )
    parser.add_argument(
        "--budget", type=int, default=None, help="Sampling budget (default: $HURWITZRADON_BUDGET or 2000)"
    )
    parser.add_argument(
        "--subset-limit",
        type=int,
        default=None,
        help="Search nodes for estimators (default: $HURWITZRADON_SUBSET_LIMIT or 5000)",
    )
    parser.add_argument("--emit", default=None, help="Also write the payload to this path")
    parser.add_argument("--format", choices=["json"], default="json", help="Output format (default: json)")
    parser.add_argument("--verbose", action="store_true", help="Show progress bars on standard error")


def _parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    _add_common(common)

    parser = _Parser(prog="hr", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    commands = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    commands.required = True

    p = commands.add_parser("rho", parents=[common], help="Hurwitz-Radon number and decomposition of N")
    p.add_argument("n", type=int)
    p.set_defaults(handler=_rho)

    p = commands.add_parser("table", parents=[common], help="Closed-form values of a classical pair")
    p.add_argument("pair", help="Row tag, e.g. so(N,N) or sl(2N+1,R)")
    p.add_argument("sizes", type=int, nargs="*")
    p.set_defaults(handler=_table)

    p = commands.add_parser("clifford-family", parents=[common], help="Signed permutation epsilon-Clifford family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--epsilon", type=int, choices=[1, -1], required=True)
    p.add_argument("--verify", action="store_true", help="Attach an exact verification report")
    p.set_defaults(handler=_clifford_family)

    p = commands.add_parser("witness", parents=[common], help="Witness family of a catalogued pair")
    p.add_argument("--pair", required=True, help="Label such as so(8,8), or a kind with --size")
    p.add_argument("--size", type=int, nargs="*", default=None, help="Size parameters when --pair is a kind")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--claim", choices=["rho1", "rho2"], default="rho1")
    p.set_defaults(handler=_witness)

    p = commands.add_parser("check-witness", parents=[common], help="Re-verify a witness family file")
    p.add_argument("file")
    p.set_defaults(handler=_check_witness)

    p = commands.add_parser("pencil", parents=[common], help="Decide or probe nonsingularity of a matrix span")
    p.add_argument("file")
    p.set_defaults(handler=_pencil)

    for name, handler, help_text in (
        ("fields", _fields, "Exact ranks of the fundamental fields at sampled points"),
        ("rho-estimate", _rho_estimate, "Certified generalized Hurwitz-Radon estimate"),
        ("clifford-structure", _clifford_structure, "Clifford structure on the trivial bundle"),
    ):
        p = commands.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--action", default=None, help="Action JSON file")
        p.add_argument("--pair", default=None, help="Catalogued pair label, e.g. so(8,8) or o(4)")
        p.set_defaults(handler=handler)
        if name == "fields":
            p.add_argument("--points", type=int, default=200)
        elif name == "rho-estimate":
            p.add_argument("--mode", choices=["g", "minus", "plus"], default="g")
        else:
            p.add_argument("--rank", type=int, default=None)
            p.add_argument("--metric", default=None, help="Metric matrix JSON file (default: identity)")

    p = commands.add_parser("realify", parents=[common], help="Real form of a complex action")
    p.add_argument("--action", required=True, help="Complex action JSON file")
    p.set_defaults(handler=_realify)

    p = commands.add_parser("schema", parents=[common], help="JSON schemas of the envelope and payloads")
    p.set_defaults(handler=_schema)
    return parser


def _inputs(args: argparse.Namespace) -> Dict[str, Any]:
    skip = {"handler", "emit", "format", "verbose"}
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    files = {}
    for key in ("file", "action", "metric"):
        path = inputs.get(key)
        if path:
            files[key] = _read_json(path)
    inputs["files"] = files
    if "budget" in inputs:
        inputs["budget"] = resolve_budget(inputs["budget"])
    return inputs


def run(argv: Optional[Sequence[str]] = None, out: Callable[[str], None] = print) -> int:
    """
    Runs ``hr`` with the given arguments, prints the JSON result and returns the exit code.
    """
    try:
        args = _parser().parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"hr: error: {e}\n")
        return EXIT_USAGE

    try:
        inputs = _inputs(args)
        payload, certificate, seed, refuted = args.handler(args)
        # Envelope fields win over payload keys of the same name.
        envelope = {"command": args.command, "inputs_digest": digest(inputs), "certificate": certificate, "seed": seed}
        result = CommandResult(**{**payload, **envelope})
    except (UsageError, ValueError, TypeError, RuntimeError, ValidationError) as e:
        out(canonical_json({"command": args.command, "error": str(e)}))
        return EXIT_USAGE

    if args.emit:
        try:
            _write_json(args.emit, payload)
        except RuntimeError as e:
            out(canonical_json({"command": args.command, "error": str(e)}))
            return EXIT_USAGE
    out(canonical_json(result.model_dump(mode="json")))
    return EXIT_REFUTED if refuted else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
