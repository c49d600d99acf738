"""Closed-form Airy packet against Crank-Nicolson propagation.

    python3 scripts/airy_vs_oracle.py
"""

from dataclasses import dataclass

import numpy as np

from iho import freewave as fw
from iho import oracle as orc
from iho.fields import GridSpec, WaveField, l2_norm
from iho.scaledyn import NATURAL


@dataclass
class Config:
    alpha: float = 0.5
    t_max: float = 0.7
    snapshots: int = 7
    dt: float = 5e-4
    grid: GridSpec = GridSpec(-60.0, 40.0, 12001)


def main(cfg: Config = Config()):
    g = cfg.grid
    A = fw.AiryParams(cfg.alpha)
    times = np.linspace(0.0, cfg.t_max, cfg.snapshots + 1)
    f0 = WaveField(g, fw.airy_packet(g.x, 0.0, A))
    snaps = orc.propagate(f0, orc.PotentialSpec("inverted", NATURAL), orc.PropagatorConfig(dt=cfg.dt), cfg.t_max, times)
    print("t       rel L2 error  peak |psi|   peak closed form")
    for s in snaps:
        ref = fw.airy_packet_abs(g.x, s.t, A)
        err = l2_norm(np.abs(s.values) - ref, g) / l2_norm(ref, g)
        print(f"{s.t:<7.3f} {err:<13.2e} {np.abs(s.values).max():<12.6f} {ref.max():.6f}")


if __name__ == "__main__":
    main()
