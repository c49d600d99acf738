"""Box-well eigenvalues and the critical box length.

    python3 scripts/box_table.py
"""

from dataclasses import dataclass

from iho import stationary as st


@dataclass
class Config:
    widths: tuple = (0.5, 1.0, 2.0, 3.0)
    count: int = 4


def main(cfg: Config = Config()):
    print("d'     " + "  ".join(f"E{n:<9d}" for n in range(1, cfg.count + 1)))
    for d in cfg.widths:
        ev = st.box_spectrum(st.BoxProblem(d), cfg.count).eigenvalues.real
        print(f"{d:<6.2f} " + "  ".join(f"{e:<10.4f}" for e in ev))
    print(f"critical length d'_c = {st.box_critical_length():.4f}")


if __name__ == "__main__":
    main()
