"""Generate the bundled monthly sunshine fixture.

The file ``data/sunshine.csv`` is a synthetic stand-in for a monthly
bright-sunshine record: 25 complete years (1966..1990) with a strong
annual cycle in both level and spread and mild month-to-month
persistence.  It is drawn from a periodic AR(1) whose mean, variance,
and autoregression curves are smooth over the year, then rounded to the
0.1 hours resolution such records are usually published at.

Regenerating with the default seed reproduces the bundled file byte for
byte; the seed is part of the fixture's identity, so change it only
together with the tests that read the file.
"""

import argparse
import csv
from pathlib import Path

import numpy as np

from parma.core import ParmaModel
from parma.simulate import SimConfig, simulate

FIRST_YEAR = 1966
N_YEARS = 25


def fixture_model() -> ParmaModel:
    """The generating model: smooth annual curves, peak in late February.

    The phase is chosen so the curves take equal values in January and
    April; the periodic extension used by the wavelet transform then
    wraps without a level jump.
    """
    angle = 2 * np.pi * np.arange(12) / 12 - np.pi / 4
    mu = 105 + 65 * np.cos(angle)
    sigma2 = 700 + 620 * np.cos(angle)
    phi = 0.15 + 0.04 * np.cos(angle)
    return ParmaModel.par1(mu, phi, sigma2)


def make_fixture(path: Path, seed: int) -> int:
    cfg = SimConfig(
        model=fixture_model(), n_cycles=N_YEARS, burn_in_cycles=10, seed=seed
    )
    values = np.round(simulate(cfg).values, 1)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["year", "month", "sun"])
        for t, v in enumerate(values):
            writer.writerow([FIRST_YEAR + t // 12, 1 + t % 12, f"{v:.1f}"])
    return values.size


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--out",
        type=Path,
        default=Path(__file__).resolve().parents[1] / "data" / "sunshine.csv",
    )
    parser.add_argument("--seed", type=int, default=14)
    args = parser.parse_args()
    n = make_fixture(args.out, args.seed)
    print(f"wrote {n} rows to {args.out}")


if __name__ == "__main__":
    main()
