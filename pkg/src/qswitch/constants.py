"""Constants for qswitch numerics, search limits and command line behaviour.

Tolerances are absolute, in double precision. Size ceilings bound the exhaustive
enumerations whose cost grows factorially with the number of channels.
"""

#: Default tolerance for every invariant check and every oracle comparison.
TOLERANCE: float = 1e-10

#: Tolerance for closed-form results that involve no fitting or eigensolves.
EXACT_TOLERANCE: float = 1e-12

#: Maximum least-squares residual accepted when fitting a term against {rho, I}.
FIT_RESIDUAL: float = 1e-9

#: Measurement outcomes less likely than this are reported as unreachable.
UNREACHABLE_PROBABILITY: float = 1e-12

#: Largest number of channels for an exhaustive subset search.
MAX_EXHAUSTIVE_N: int = 4

#: Largest number of channels for a sampled subset search.
MAX_SAMPLED_N: int = 6

#: Largest number of channels the classify command enumerates.
MAX_CLASSIFY_N: int = 6

#: Default number of subsets drawn by a sampled search.
DEFAULT_SAMPLES: int = 2000

#: Default seed for random states and channels used by the verification suite.
DEFAULT_SEED: int = 20210401

#: Default number of random density matrices per oracle comparison.
DEFAULT_RANDOM_STATES: int = 5

#: Default number of random channel pairs for the dilation consistency check.
DEFAULT_RANDOM_CHANNEL_PAIRS: int = 20

#: Default maximum number of processes used by parallel search and verification.
MAX_PROCESSES: int = 5

#: Kind of an interference term proportional to the identity channel.
KIND_IDENTITY: str = "IdentityProportional"

#: Kind of an interference term proportional to the completely depolarising channel.
KIND_DEPOLARISING: str = "DepolarisingProportional"

#: Name given to completely depolarising channels built by qswitch.
CDPC: str = "cdpc"

#: Name given to identity channels built by qswitch.
IDENTITY: str = "identity"

#: Control state keyword for the uniform superposition of all orders.
FOURIER: str = "fourier"

#: Perms spec keyword for the N rotations of (1, ..., N).
PERMS_CYCLIC: str = "cyclic"

#: Perms spec keyword for every ordering of N channels.
PERMS_ALL: str = "all-pairs"

#: Ensemble keyword for the equiprobable computational basis.
ENSEMBLE_BASIS: str = "basis"

#: Exit code on success.
EXIT_OK: int = 0

#: Exit code when a verification fails.
EXIT_FAILED: int = 1

#: Exit code for usage or input errors.
EXIT_USAGE: int = 2

#: Check passed status.
STATUS_OK: str = "OK"

#: Check failed status.
STATUS_FAILED: str = "FAILED"

#: Map status code to console color.
STATUS_COLOR_MAP: dict[str, str] = {
    STATUS_OK: "green",
    STATUS_FAILED: "red",
}
