"""Peak intensity and width of truncated self-focusing beams under free propagation.

    python3 scripts/beam_focusing.py
"""

from dataclasses import dataclass

import numpy as np

from iho import freewave as fw
from iho import scaledyn as sd


@dataclass
class Config:
    epsilon: float = 1.0
    samples: int = 97
    span: float = 2.4


def main(cfg: Config = Config()):
    for branch in ("F1", "F2"):
        for parity in ("even", "odd"):
            tc = sd.focal_time(branch)
            t, peak, fwhm = fw.focusing_trace(fw.BeamSpec(cfg.epsilon, parity, branch), np.linspace(0, cfg.span * tc, cfg.samples))
            i = int(np.argmax(peak))
            print(f"{branch} {parity:<4}  t_c = {tc:.3f}  t_peak = {t[i]:.3f}  gain = {peak[i] / peak[0]:6.2f}  "
                  f"fwhm {fwhm[0]:.3f} -> {fwhm[i]:.3f}")


if __name__ == "__main__":
    main()
