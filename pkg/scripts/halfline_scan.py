"""Bounded states of the half-line well against its width and the Im E threshold.

    python3 scripts/halfline_scan.py
"""

from dataclasses import dataclass

import numpy as np

from iho import stationary as st


@dataclass
class Config:
    lo: float = 3.0
    hi: float = 6.0
    step: float = 0.25
    thresholds: tuple = (1e-6, 1.1e-7)


def main(cfg: Config = Config()):
    for d in np.arange(cfg.lo, cfg.hi + cfg.step / 2, cfg.step):
        sp = st.halfline_spectrum(st.HalfLineProblem(d))
        first = sp.eigenvalues[np.argmin(sp.eigenvalues.real)] if len(sp.eigenvalues) else complex("nan")
        print(f"d' = {d:5.2f}  bounded = {len(sp.bounded_eigenvalues)}  lowest root = {first.real:+.5f}{first.imag:+.2e}i")
    for tol in cfg.thresholds:
        d_c = st.halfline_critical_length(lo=3.0, hi=4.0, tol=2e-3, bound_tol=tol)
        print(f"|Im E| < {tol:.1e}: onset d'_c = {d_c:.4f}")


if __name__ == "__main__":
    main()
