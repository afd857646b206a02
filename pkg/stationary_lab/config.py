import os
from dotenv import load_dotenv
load_dotenv()

# base dir for composing paths (…/stationary_lab/.. -> project root)
BASE_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))


class Config:
    # --- Logging / workers ---
    LOG_LEVEL = os.getenv("LAB_LOG_LEVEL", "INFO")
    THREADS = int(os.getenv("LAB_THREADS", "1"))
    SEED = int(os.getenv("LAB_SEED", "0"))

    # --- Exports ---
    # Files will be saved to: public/exports/<scenario>/<name>.<kind>
    OUTPUT_DIR = os.getenv(
        "LAB_OUTPUT_DIR",
        os.path.join(BASE_DIR, "public", "exports")
    )

    # --- Numerics ---
    QUAD_TOL = float(os.getenv("LAB_QUAD_TOL", "1e-12"))
    FD_STEP = float(os.getenv("LAB_FD_STEP", "1e-3"))
    # half-width used for improper curve-length integrals
    TAIL_T = float(os.getenv("LAB_TAIL_T", "50.0"))
    # relative tolerance of the total-curvature cubature
    TOTAL_CURVATURE_TOL = float(os.getenv("LAB_TOTAL_CURVATURE_TOL", "1e-4"))
    # finest Simpson grid (panels per axis) before giving up
    CUBATURE_MAX_N = int(os.getenv("LAB_CUBATURE_MAX_N", "8192"))
    CAUSAL_TOL = float(os.getenv("LAB_CAUSAL_TOL", "1e-12"))
    CASE_TOL = 1e-12
