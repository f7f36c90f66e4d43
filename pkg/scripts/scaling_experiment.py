"""Script to measure minimal m against epsilon and fit the scaling exponent."""

import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.core.errors import SearchRangeError
from src.harness.search import minimal_m, scaling_exponent
from src.models.schemas import TrialConfig
from src.utils.io_utils import write_report
from config.settings import get_settings

settings = get_settings()


def run_scaling(args) -> int:
    """
    Search minimal m for every epsilon and print a CSV table plus the log-log slope.

    Args:
        args: Parsed command-line arguments

    Returns:
        Exit code
    """
    epsilons = [float(e) for e in args.epsilons.split(",")]
    template = TrialConfig(
        N=args.n, m=1, p=args.p, epsilon=epsilons[0], eta=args.eta, construction=args.construction
    )

    print("=" * 60)
    print("EPSILON SCALING")
    print("=" * 60)
    print(f"\nConstruction: {args.construction}, N={args.n}, p={args.p}, eta={args.eta}")
    print(f"Trials per probe: {args.trials}, jobs: {args.jobs}\n")

    thresholds = []
    for epsilon in epsilons:
        cfg = template.model_copy(update={"epsilon": epsilon})
        try:
            result = minimal_m(cfg, 1.0 - args.eta, (1, args.m_max), args.trials, args.root_seed, args.jobs)
        except SearchRangeError as e:
            print(f"[ERROR] epsilon={epsilon}: {e}")
            return 1
        thresholds.append(result.m)
        print(f"✓ epsilon={epsilon:g}: m*={result.m} ({len(result.history)} probes)")

    print("\nepsilon,m_star")
    for epsilon, m in zip(epsilons, thresholds):
        print(f"{epsilon:g},{m}")

    if len(set(epsilons)) >= 3:
        fit = scaling_exponent(epsilons, thresholds)
        print(f"\nSlope of ln(m*) vs ln(epsilon): {fit.slope:.4f} ± {fit.stderr:.4f}")
    else:
        fit = None
        print("\n[INFO] Need at least 3 distinct epsilons for the slope")

    if args.output:
        write_report(args.output, {
            "epsilons": epsilons,
            "minimal_m": thresholds,
            "fit": fit.model_dump() if fit else None,
        })
        print(f"\nSaved to {args.output}")
    return 0


def main():
    """Main function."""
    import argparse

    parser = argparse.ArgumentParser(
        description="Minimal embedding dimension as a function of epsilon"
    )
    parser.add_argument("--epsilons", type=str, default="0.2,0.3,0.45,0.67,0.99",
                        help="Comma-separated distortion levels")
    parser.add_argument("--n", type=int, default=1024, help="Ambient dimension")
    parser.add_argument("--p", type=int, default=100, help="Number of points")
    parser.add_argument("--eta", type=float, default=0.1, help="Allowed failure probability")
    parser.add_argument("--construction", type=str, default="gaussian")
    parser.add_argument("--trials", type=int, default=200)
    parser.add_argument("--m-max", type=int, default=8192)
    parser.add_argument("--root-seed", type=int, default=settings.DEFAULT_ROOT_SEED)
    parser.add_argument("--jobs", type=int, default=settings.JOBS)
    parser.add_argument("--output", type=str, default=None, help="JSON file for the results")

    args = parser.parse_args()
    sys.exit(run_scaling(args))


if __name__ == "__main__":
    main()
