import os
import typing as ty
from fractions import Fraction

from .covering import DEFAULT_EXACT_THRESHOLD
from .error import error
from .util import format_number

THRESHOLD_ENV = "LIPFREE_EXACT_THRESHOLD"
FLOAT_TOLERANCE = 1e-9


def default_threshold() -> int:
    v = os.environ.get(THRESHOLD_ENV)
    if v is None or not v.strip():
        return DEFAULT_EXACT_THRESHOLD
    try:
        n = int(v)
    except ValueError:
        n = -1
    if n < 0:
        error(THRESHOLD_ENV, "environment", "expected a count, got %r" % v, "Warning")
        return DEFAULT_EXACT_THRESHOLD
    return n


class RunConfig(ty.NamedTuple):
    command: str
    inputs: tuple[str, ...] = ()
    output: str | None = None
    numeric: str = "exact"
    seed: str = "0"
    threshold: int = DEFAULT_EXACT_THRESHOLD

    @classmethod
    def from_args(cls, command: str, args: ty.Any, *inputs: str) -> "RunConfig":
        threshold = getattr(args, "exact_threshold", None)
        return cls(
            command,
            tuple(inputs),
            getattr(args, "output", None),
            getattr(args, "numeric", "exact"),
            str(getattr(args, "seed", "0")),
            default_threshold() if threshold is None else threshold,
        )

    @property
    def tolerance(self) -> float:
        return FLOAT_TOLERANCE if self.numeric == "float" else 0.0

    def number(self, v: Fraction) -> int | str | float:
        return format_number(v, self.numeric)

    def agree(self, a: Fraction, b: Fraction) -> bool:
        if self.numeric == "float":
            return abs(float(a) - float(b)) <= self.tolerance
        return a == b


def add_numeric_argument(cmd: ty.Any) -> None:
    cmd.add_argument(
        "--numeric",
        choices=["exact", "float"],
        default="exact",
        help="Render rationals exactly (default) or as floats",
    )


def write_report(config: RunConfig, text: str) -> None:
    if config.output is None or config.output == "-":
        print(text, end="")
    else:
        with open(config.output, "w") as f:
            f.write(text)
