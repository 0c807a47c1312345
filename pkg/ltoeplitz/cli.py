"""
Batch command line: classify, region and validate over JSON problem files
"""

import argparse
import logging
import os
import sys
import tempfile
from pathlib import Path

import msgspec
import numpy as np

from ltoeplitz import __version__, matrixlab, render, spectra, symbolkit, wco
from ltoeplitz.constants import ExitCode, Limits, Sampling
from ltoeplitz.errors import LToeplitzError, TrichotomyViolation
from ltoeplitz.structs.problem import (
    ClassificationRecord,
    Diagnostics,
    DiagnosticsDoc,
    GridDoc,
    ProblemSpec,
    Provenance,
    ReductionDoc,
    ResultDoc,
    Scalars,
    SigmaMinRow,
    Tolerances,
    ValidationBlock,
    to_pair,
)

logger = logging.getLogger(__name__)


class Failure(Exception):
    def __init__(self, error: str, message: str, exit_code: int) -> None:
        super().__init__(message)
        self.diagnostics = Diagnostics(error, message, exit_code)


def validation_failure(message: str) -> Failure:
    return Failure("validation", message, ExitCode.VALIDATION)


def load_problem(path: str | os.PathLike) -> ProblemSpec:
    try:
        data = Path(path).read_bytes()
    except OSError as error:
        raise Failure("file", f"cannot read {path}: {error}", ExitCode.VALIDATION) from error
    try:
        return msgspec.json.decode(data, type=ProblemSpec)
    except msgspec.ValidationError as error:
        raise validation_failure(str(error)) from error
    except msgspec.DecodeError as error:
        raise Failure("parse", str(error), ExitCode.VALIDATION) from error


def encode(doc: msgspec.Struct) -> bytes:
    return msgspec.json.format(msgspec.json.encode(doc), indent=2) + b"\n"


def write_atomic(path: str | os.PathLike, data: bytes) -> None:
    target = Path(path)
    handle, temporary = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.")
    try:
        with os.fdopen(handle, "wb") as f:
            f.write(data)
        os.replace(temporary, target)
    except BaseException:
        Path(temporary).unlink(missing_ok=True)
        raise


class Problem:
    """A decoded problem reduced to its product symbol and rotation."""

    def __init__(self, spec: ProblemSpec, tolerances: Tolerances) -> None:
        self.spec = spec
        self.tolerances = tolerances
        self.symbol = spec.symbol.to_symbol()
        self.sample_counts: dict[str, int] = {}
        self.bracket_widths: dict[str, float] = {}

        self.__reduction = None
        if spec.kind == "lambda_toeplitz":
            self.rotation = spec.rotation.to_rotation()
            self.twisted = symbolkit.twist(self.symbol, self.rotation)
            self.product = symbolkit.product_symbol(self.twisted, self.rotation, self.rotation.q)
        else:
            self.__reduction = wco.reduce(
                self.symbol, spec.automorphism.to_automorphism(), tolerances.max_order
            )
            self.rotation = self.__reduction.rotation
            self.twisted = self.__reduction.twisted
            self.product = self.__reduction.product
        self.sample_counts["product_degree"] = self.product.degree

    def classify(self, mu: complex) -> ClassificationRecord:
        result = spectra.classify(
            self.product, self.rotation, mu, self.tolerances.curve, self.tolerances.on_curve
        )
        return ClassificationRecord(to_pair(mu), result.kind, result.distance, result.index)

    def scalars(self) -> Scalars:
        bracket = symbolkit.sup_norm_bracket(self.twisted, self.tolerances.sup_norm)
        product_bracket = symbolkit.sup_norm_bracket(self.product, self.tolerances.sup_norm)
        self.sample_counts["sup_norm_twisted"] = bracket.samples
        self.sample_counts["sup_norm_product"] = product_bracket.samples
        self.bracket_widths["sup_norm_twisted"] = bracket.width
        self.bracket_widths["sup_norm_product"] = product_bracket.width

        ess_radius = product_bracket.value ** (1 / self.rotation.q)
        spectral_radius = ess_radius if symbolkit.is_analytic(self.product) else None
        return Scalars(ess_radius, bracket.value, spectral_radius)

    def reduction_doc(self) -> ReductionDoc | None:
        if self.__reduction is None:
            return None
        reduction = self.__reduction
        return ReductionDoc(
            to_pair(reduction.fixed_point),
            to_pair(reduction.multiplier),
            reduction.rotation.p,
            reduction.rotation.q,
            reduction.pulled.degree,
        )

    def result(self, scalars: Scalars, validation: ValidationBlock | None = None) -> ResultDoc:
        records = [self.classify(mu) for mu in self.spec.mus]
        self.sample_counts["winding_start"] = Sampling.WINDING_START
        return ResultDoc(
            self.spec.kind,
            records,
            scalars,
            Provenance(
                __version__,
                self.tolerances,
                dict(sorted(self.sample_counts.items())),
                dict(sorted(self.bracket_widths.items())),
            ),
            self.reduction_doc(),
            validation,
        )


def effective_tolerances(spec: ProblemSpec, tol: float | None) -> Tolerances:
    if tol is None:
        return spec.tolerances
    current = spec.tolerances
    try:
        return Tolerances(tol, current.on_curve, current.sup_norm, current.max_order)
    except ValueError as error:
        raise validation_failure(str(error)) from error


def build_problem(spec: ProblemSpec, tolerances: Tolerances) -> Problem:
    try:
        return Problem(spec, tolerances)
    except (LToeplitzError, TrichotomyViolation, ArithmeticError) as error:
        raise Failure("computation", f"{type(error).__name__}: {error}", ExitCode.COMPUTATION) from error


def compute(step, *args):
    try:
        return step(*args)
    except (LToeplitzError, TrichotomyViolation, ArithmeticError, np.linalg.LinAlgError) as error:
        raise Failure("computation", f"{type(error).__name__}: {error}", ExitCode.COMPUTATION) from error


def cmd_classify(input: str | os.PathLike, output: str | os.PathLike, tol: float | None = None) -> int:
    spec = load_problem(input)
    problem = build_problem(spec, effective_tolerances(spec, tol))
    doc = compute(lambda: problem.result(problem.scalars()))
    write_atomic(output, encode(doc))
    logger.info("classified %d queries into %s", len(doc.records), output)
    return ExitCode.OK


def cmd_region(
    input: str | os.PathLike,
    output: str | os.PathLike,
    format: str = "ppm",
    tol: float | None = None,
    resolution: int | None = None,
) -> int:
    spec = load_problem(input)
    if spec.grid is None:
        raise validation_failure("region needs a grid")
    grid = spec.grid
    if resolution is not None:
        try:
            grid = GridDoc(grid.box, resolution)
        except ValueError as error:
            raise validation_failure(str(error)) from error
    if format not in ("ppm", "svg"):
        raise validation_failure(f"unknown format {format}")

    problem = build_problem(spec, effective_tolerances(spec, tol))
    raster = compute(
        spectra.region_grid,
        problem.product,
        problem.rotation,
        grid.box,
        grid.resolution,
        problem.tolerances.curve,
        problem.tolerances.on_curve,
    )
    logger.info("region counts %s", raster.counts())
    write_atomic(output, render.to_ppm(raster) if format == "ppm" else render.to_svg(raster))
    return ExitCode.OK


def validation_block(problem: Problem, schedule: list[int]) -> ValidationBlock:
    symbol, rotation = problem.symbol, problem.rotation
    analytic = symbolkit.is_analytic(symbol)
    factorization, shift_relation, power_identity, norms = [], [], [], []
    sigma_min = {mu: [] for mu in problem.spec.mus}

    for n in schedule:
        logger.info("validating at n = %d", n)
        factorization.append(matrixlab.factorization_error(symbol, rotation, n))
        shift_relation.append(matrixlab.shift_relation_error(symbol, rotation, n))
        if analytic:
            power_identity.append(matrixlab.power_identity_error(symbol, rotation, n))
        T = matrixlab.build_lambda_toeplitz(symbol, rotation, n)
        norms.append(matrixlab.op_norm(T))
        for mu, values in sigma_min.items():
            values.append(matrixlab.smallest_singular(T, mu))

    return ValidationBlock(
        schedule,
        factorization,
        shift_relation,
        norms,
        [SigmaMinRow(to_pair(mu), values) for mu, values in sigma_min.items()],
        power_identity if analytic else None,
    )


def cmd_validate(
    input: str | os.PathLike,
    output: str | os.PathLike,
    schedule: list[int],
    tol: float | None = None,
) -> int:
    spec = load_problem(input)
    if spec.kind != "lambda_toeplitz":
        raise validation_failure("validate runs on lambda_toeplitz problems only")
    if not schedule:
        raise validation_failure("empty dimension schedule")
    for n in schedule:
        if not 1 <= n <= Limits.MAX_DIMENSION:
            raise validation_failure(f"dimension {n} outside [1, {Limits.MAX_DIMENSION}]")

    problem = build_problem(spec, effective_tolerances(spec, tol))

    def run() -> ResultDoc:
        block = validation_block(problem, schedule)
        scalars = msgspec.structs.replace(problem.scalars(), operator_norm_estimate=block.op_norm[-1])
        return problem.result(scalars, block)

    doc = compute(run)
    write_atomic(output, encode(doc))
    return ExitCode.OK


def parse_schedule(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"invalid schedule {text!r}") from error


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ltoeplitz",
        description="Spectra of lambda-Toeplitz and weighted composition operators. "
        "Exit status: 0 success, 2 file/parse/validation error, 3 computation error.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    def common(command: argparse.ArgumentParser) -> None:
        command.add_argument("--input", required=True, help="problem JSON file")
        command.add_argument("--output", required=True, help="result file, written atomically")
        command.add_argument(
            "--tol", type=float, default=None, help="curve proximity tolerance (default: problem file, else 1e-8)"
        )

    classify = commands.add_parser("classify", help="classify the query points and write a result JSON")
    common(classify)

    region = commands.add_parser("region", help="render the classification grid as an image")
    common(region)
    region.add_argument("--format", choices=("ppm", "svg"), default="ppm", help="image format (default: ppm)")
    region.add_argument("--resolution", type=int, default=None, help="grid nodes per axis (default: problem grid)")

    validate = commands.add_parser("validate", help="run the finite-section oracle")
    common(validate)
    validate.add_argument(
        "--schedule", type=parse_schedule, default=[64, 128, 256], help="comma separated dimensions (default: 64,128,256)"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        if args.command == "classify":
            return cmd_classify(args.input, args.output, args.tol)
        if args.command == "region":
            return cmd_region(args.input, args.output, args.format, args.tol, args.resolution)
        return cmd_validate(args.input, args.output, args.schedule, args.tol)
    except Failure as failure:
        sys.stderr.write(encode(DiagnosticsDoc(failure.diagnostics)).decode("utf-8"))
        return failure.diagnostics.exit_code


if __name__ == "__main__":
    sys.exit(main())
