"""Objects to represent qswitch input documents and run configuration."""

# ruff: noqa: UP007, UP045

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Union

from qswitch import constants as const
from qswitch.errors import QSwitchValueError


@dataclass
class ChannelConfig:
    """Channel entry of a switch specification."""

    #: Named channel, ``cdpc`` or ``identity``.
    kind: Optional[str] = None

    #: Kraus operators as complex matrices.
    kraus: Optional[list[Any]] = None

    #: Dimension the Kraus operators act on, must match the switch dimension.
    d: Optional[int] = None


@dataclass
class SwitchSpecConfig:
    """Switch specification document."""

    #: System dimension.
    d: int

    #: The N channels.
    channels: list[ChannelConfig]

    #: The M orderings.
    perms: list[list[int]]

    #: ``fourier`` or an M×M matrix.
    control: Any = const.FOURIER


@dataclass
class EnsembleStateConfig:
    """One state of an ensemble document."""

    #: Probability of the state.
    p: Union[int, float]

    #: Named state or density matrix.
    rho: Any


@dataclass
class EnsembleConfig:
    """Ensemble document."""

    #: States with their probabilities.
    states: list[EnsembleStateConfig]


#: Commands of the command line.
COMMANDS = ("evaluate", "classify", "search", "verify", "holevo")

#: Report formats.
FORMATS = ("json", "csv")

#: Evaluators used by the evaluate command.
MODES = ("bruteforce", "fast", "both")


@dataclass
class RunConfig:
    """Options of one command line run."""

    #: Command to run.
    command: str

    #: System dimension.
    d: Optional[int] = None

    #: Number of channels.
    n: Optional[int] = None

    #: Number of orderings in a searched subset.
    m: Optional[int] = None

    #: Orderings spec: ``cyclic``, ``all-pairs`` or a JSON list of orderings.
    perms: str = const.PERMS_CYCLIC

    #: Switch specification document.
    spec: Optional[Path] = None

    #: Input state, a name or a document holding a matrix.
    rho: str = "zero"

    #: Control state, ``fourier`` or a document holding a matrix.
    control: str = const.FOURIER

    #: Ensemble, ``basis`` or a document.
    ensemble: str = const.ENSEMBLE_BASIS

    #: Evaluator used by the evaluate command.
    mode: str = "bruteforce"

    #: Report format.
    output_format: str = "json"

    #: Report file, stdout when unset.
    output: Optional[Path] = None

    #: Use the sampled search.
    sample: bool = False

    #: Number of subsets drawn by the sampled search.
    samples: int = const.DEFAULT_SAMPLES

    #: Seed of the sampled search or of the verification suite.
    seed: Optional[int] = None

    #: Require every search maximiser to be pairwise rotated.
    check_cyclic: bool = False

    #: Run the verification suite on N <= 3 only.
    quick: bool = False

    #: Numerical tolerance.
    tolerance: float = const.TOLERANCE

    #: Number of worker processes.
    workers: int = 1

    def __post_init__(self) -> None:
        """Check the option invariants.

        :raises QSwitchValueError: If an option is out of range or options conflict
        """
        if self.command not in COMMANDS:
            raise QSwitchValueError(f"Unknown command '{self.command}'")

        if self.output_format not in FORMATS:
            raise QSwitchValueError(f"Unknown report format '{self.output_format}'")

        if self.mode not in MODES:
            raise QSwitchValueError(f"Unknown evaluator '{self.mode}'")

        if not self.tolerance > 0:
            raise QSwitchValueError(f"Tolerance must be positive, got {self.tolerance}")

        if self.workers < 1:
            raise QSwitchValueError(f"Workers must be positive, got {self.workers}")

        if self.seed is not None and self.seed < 0:
            raise QSwitchValueError(f"Seed must be unsigned, got {self.seed}")

        if self.command == "search" and self.sample != (self.seed is not None):
            raise QSwitchValueError(
                "A seed is required for the sampled search and only for it"
            )

        for name in ("d", "n", "m"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise QSwitchValueError(f"{name} must be positive, got {value}")

        if not self.perms.strip():
            raise QSwitchValueError("Orderings spec is empty")
