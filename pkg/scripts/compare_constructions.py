"""Script to compare failure rates of every construction over a range of m."""

import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.constructions.builders import CONSTRUCTIONS, random_bits
from src.harness.trials import failure_rate
from src.models.schemas import TrialConfig
from config.settings import get_settings

settings = get_settings()

FAST_CONSTRUCTIONS = ("gaussian", "rademacher", "hadamard", "fourier", "circulant")


def compare(args) -> None:
    """
    Print a CSV of failure rate per (construction, m) for external plotting.

    Args:
        args: Parsed command-line arguments
    """
    m_values = [int(v) for v in args.m_values.split(",")]
    constructions = args.constructions.split(",") if args.constructions else FAST_CONSTRUCTIONS

    print("=" * 60)
    print("CONSTRUCTION COMPARISON")
    print("=" * 60)
    print(f"\nN={args.n}, p={args.p}, epsilon={args.epsilon}, trials={args.trials}\n")

    print("construction,m,random_draws,failures,trials,rate,ci_low,ci_high")
    for construction in constructions:
        for m in m_values:
            if construction == "fourier" and m % 2:
                m += 1
            if construction == "circulant" and m > args.n:
                print(f"[SKIP] circulant needs m <= N, got m={m}", file=sys.stderr)
                continue
            cfg = TrialConfig(N=args.n, m=m, p=args.p, epsilon=args.epsilon, construction=construction)
            point = failure_rate(cfg, args.trials, args.root_seed, args.jobs)
            draws = random_bits(CONSTRUCTIONS[construction], m, args.n)
            low, high = point.interval
            print(f"{construction},{m},{draws},{point.failures},{point.trials},{point.rate:.6g},{low:.6g},{high:.6g}")


def main():
    """Main function."""
    import argparse

    parser = argparse.ArgumentParser(
        description="Failure rate of each construction against m"
    )
    parser.add_argument("--n", type=int, default=256, help="Power-of-2 ambient dimension")
    parser.add_argument("--p", type=int, default=50)
    parser.add_argument("--epsilon", type=float, default=0.5)
    parser.add_argument("--m-values", type=str, default="16,32,64,128,256")
    parser.add_argument("--constructions", type=str, default=None,
                        help=f"Comma-separated subset of {','.join(FAST_CONSTRUCTIONS)}")
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--root-seed", type=int, default=settings.DEFAULT_ROOT_SEED)
    parser.add_argument("--jobs", type=int, default=settings.JOBS)

    args = parser.parse_args()
    compare(args)


if __name__ == "__main__":
    main()
