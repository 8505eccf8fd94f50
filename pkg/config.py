"""
Configuration settings for the rlab application.
"""
import os
from dotenv import load_dotenv

load_dotenv()


def _flag(name: str, default: str = "") -> bool:
    return os.getenv(name, default).strip().lower() in {"1", "true", "yes", "y", "on"}


# Logging Configuration
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Parallelism and reproducibility
RLAB_THREADS = max(1, int(os.getenv("RLAB_THREADS", "1")))
RLAB_SEED = int(os.getenv("RLAB_SEED", "0"))
RLAB_DETERMINISTIC = _flag("RLAB_DETERMINISTIC", "true")

# Numerical tolerances
VERDICT_TOL = float(os.getenv("VERDICT_TOL", "1e-6"))
COMMUTATOR_TOL = float(os.getenv("COMMUTATOR_TOL", "1e-8"))
NATURALITY_TOL = float(os.getenv("NATURALITY_TOL", "1e-10"))
CLUSTER_GAP = float(os.getenv("CLUSTER_GAP", "1e-6"))

# Group and building limits
GROUP_ORDER_CAP = int(os.getenv("GROUP_ORDER_CAP", str(10**6)))
BUILDING_VERTEX_BUDGET = int(os.getenv("BUILDING_VERTEX_BUDGET", "200000"))

# Torus membership optimizer
TORUS_STARTS = int(os.getenv("TORUS_STARTS", "64"))
TORUS_ITERATIONS = int(os.getenv("TORUS_ITERATIONS", "500"))
TORUS_ACCEPT = float(os.getenv("TORUS_ACCEPT", "1e-6"))
TORUS_GRID = int(os.getenv("TORUS_GRID", "160"))

# Randomized generators
REGULAR_MAX_ATTEMPTS = int(os.getenv("REGULAR_MAX_ATTEMPTS", "10000"))
LIFT_MAX_ATTEMPTS = int(os.getenv("LIFT_MAX_ATTEMPTS", "1000"))

# Pipeline Configuration
PIPELINE_ENTRY_POINT = "load_complex"

# Constants
LOAD_COMPLEX = "load_complex"
BUILD_OPERATORS = "build_operators"
JOINT_SPECTRUM = "joint_spectrum"
PER_OPERATOR_SPECTRA = "per_operator_spectra"
TRIVIAL_SPECTRUM = "trivial_spectrum"
VERDICT = "verdict"
