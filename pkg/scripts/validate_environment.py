#!/usr/bin/env python3
"""
Environment validation for tiesurvey.

Run before the first experiment: checks the interpreter, the numerical
stack, runtime settings and the bundled experiment documents, then runs
the estimator once on the example survey.
"""

import importlib
import sys
from pathlib import Path
from typing import Callable, List, Tuple

GREEN = "\033[92m"
RED = "\033[91m"
YELLOW = "\033[93m"
RESET = "\033[0m"

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

REQUIRED_MODULES = (
    "numpy",
    "scipy",
    "networkx",
    "pandas",
    "pydantic",
    "pydantic_settings",
    "dotenv",
    "prometheus_client",
)
REQUIRED_DIRS = ("src", "tests", "config/experiments", "config/surveys")

CheckResult = Tuple[bool, str]


def check_interpreter() -> CheckResult:
    """tomllib needs 3.11."""
    major, minor, micro = sys.version_info[:3]
    label = f"Python {major}.{minor}.{micro}"
    if (major, minor) >= (3, 11):
        return True, label
    return False, f"{label}, need 3.11 or newer"


def check_packages() -> CheckResult:
    missing = []
    for module in REQUIRED_MODULES:
        try:
            importlib.import_module(module)
        except ImportError:
            missing.append(module)
    if missing:
        return False, f"not importable: {', '.join(missing)} (pip install -e .)"
    return True, f"{len(REQUIRED_MODULES)} packages importable"


def check_layout() -> CheckResult:
    absent = [d for d in REQUIRED_DIRS if not (ROOT / d).is_dir()]
    if absent:
        return False, f"missing: {', '.join(absent)}"
    return True, "source, tests and config directories present"


def check_settings() -> CheckResult:
    """TIESURVEY_* variables, from the environment or .env."""
    from src.utils.settings import get_settings

    settings = get_settings()
    source = ".env" if (ROOT / ".env").exists() else f"{YELLOW}defaults{RESET}"
    return True, f"{source}: workers={settings.workers}, log_level={settings.log_level}"


def check_experiment_documents() -> CheckResult:
    from src.models.config import ExperimentConfig

    documents = sorted((ROOT / "config" / "experiments").glob("*.toml"))
    if not documents:
        return False, "config/experiments has no .toml documents"

    invalid = []
    for path in documents:
        try:
            ExperimentConfig.from_file(path)
        except Exception as e:
            invalid.append(f"{path.name} ({type(e).__name__})")
    if invalid:
        return False, f"invalid: {', '.join(invalid)}"
    return True, f"{len(documents)} documents validate"


def check_example_estimate() -> CheckResult:
    from src.services.estimators import full_pipeline
    from src.services.graph_io import read_survey

    observed = read_survey(ROOT / "config" / "surveys" / "example_survey.json")
    report = full_pipeline(observed)
    return True, f"{len(observed.seeds)} respondents, N_hat={report.N_hat:.2f}"


CHECKS: List[Tuple[str, Callable[[], CheckResult]]] = [
    ("Interpreter", check_interpreter),
    ("Packages", check_packages),
    ("Layout", check_layout),
    ("Settings", check_settings),
    ("Experiment documents", check_experiment_documents),
    ("Example estimate", check_example_estimate),
]


def main() -> int:
    print("tiesurvey environment check")
    print("-" * 60)

    failures = 0
    for name, check in CHECKS:
        try:
            passed, detail = check()
        except Exception as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        failures += not passed
        mark = f"{GREEN}✓{RESET}" if passed else f"{RED}✗{RESET}"
        print(f"{mark} {name:<22} {detail}")

    print("-" * 60)
    if failures:
        print(f"{RED}{failures} of {len(CHECKS)} checks failed{RESET}")
        return 1
    print(f"{GREEN}Ready: all {len(CHECKS)} checks passed{RESET}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
