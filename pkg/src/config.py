# src/config.py
import os
from pathlib import Path
from typing import Optional

# Base paths
BASE_DIR = Path(__file__).resolve().parents[1]

DATA_DIR = BASE_DIR / "data"
FIXTURES_DIR = DATA_DIR / "fixtures"
COLLAB_FIXTURE_PATH = FIXTURES_DIR / "collab_cliques.txt"
HUB_FIXTURE_PATH = FIXTURES_DIR / "hub_tree.txt"
RAW_DATA_DIR = DATA_DIR / "raw"

OUTPUT_DIR = BASE_DIR / "outputs"

# Motif sizes
MAX_MOTIF_VERTICES = 8  # canonical labeling by permutation search
MAX_OPTIMIZE_VERTICES = 9  # merged graphs of 5-vertex motifs
MAX_COUNT_VERTICES = 5

# Hidden-variable model defaults
DEFAULT_SEED = 42
DEFAULT_H_MIN = 1
EXACT_PAIR_LIMIT = 20000  # above this, bucketed pair generation

# Counting
DEFAULT_ORBIT_SAMPLE_CAP = 200_000

# Data study
DEFAULT_X_MIN = 5
MIN_TAIL_SIZE = 10

# Experiments
MIN_GRID_POINTS = 4
MIN_MEAN_SAMPLES = 30
MIN_DISTRIBUTION_SAMPLES = 1000
HISTOGRAM_BINS = 50
BOOTSTRAP_RESAMPLES = 1000

THREADS_ENV_VAR = "MOTIFVAR_THREADS"


def resolve_threads(threads: Optional[int] = None) -> int:
    """
    Worker count: explicit value, else MOTIFVAR_THREADS, else 1.
    """
    if threads is None:
        raw = os.environ.get(THREADS_ENV_VAR, "").strip()
        threads = int(raw) if raw.isdigit() else 1
    return max(int(threads), 1)
