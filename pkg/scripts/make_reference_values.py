"""Regenerate tests/data/reference_values.json with mpmath at 40 digits.

The package itself never imports mpmath; these frozen values are the
independent oracle that the tests compare against.

    python3 scripts/make_reference_values.py
"""

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40
OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "reference_values.json"


def c(z):
    z = mp.mpc(z)
    return [float(z.real), float(z.imag)]


def kummer_series(a, b, z, terms=200):
    """Brute-force Maclaurin sum at elevated precision."""
    s = mp.mpc(0)
    t = mp.mpc(1)
    for k in range(terms):
        s += t
        t *= (a + k) * z / ((b + k) * (k + 1))
    return s


def pcf_two_kummer(nu, z):
    """D_nu from the two-Kummer representation with mpmath's Gamma."""
    w = z * z / 2
    t1 = mp.sqrt(mp.pi) / mp.gamma((1 - nu) / 2) * mp.hyp1f1(-nu / 2, mp.mpf(1) / 2, w)
    t2 = mp.sqrt(2 * mp.pi) / mp.gamma(-nu / 2) * z * mp.hyp1f1((1 - nu) / 2, mp.mpf(3) / 2, w)
    return 2 ** (nu / 2) * mp.exp(-z * z / 4) * (t1 - t2)


def main():
    ref = {}
    a, b, z = mp.mpc(0.25, 0.5), mp.mpf(0.5), mp.mpc(0, 2)
    ref["kummer_example"] = {"a": c(a), "b": c(b), "z": c(z), "value": c(kummer_series(a, b, z))}
    nu, zz = mp.mpc(-0.5, 0.8), mp.mpc(1.3, -0.4)
    ref["pcf_example"] = {"nu": c(nu), "z": c(zz), "value": c(pcf_two_kummer(nu, zz)), "mp_pcfd": c(mp.pcfd(nu, zz))}
    ref["airy0"] = {"ai": float(3 ** (-mp.mpf(2) / 3) / mp.gamma(mp.mpf(2) / 3)),
                    "aip": float(-(3 ** (-mp.mpf(1) / 3)) / mp.gamma(mp.mpf(1) / 3))}
    ref["reference_scale_t1"] = {"L": float(mp.sqrt(mp.cosh(2))), "omega_tau": float(mp.atan(mp.tanh(1)))}
    ref["free_scale_tau_t1"] = float(mp.quad(lambda s: mp.exp(2 * s), [0, 1]))

    # scattered checks on the argument ranges the physics uses
    kum = []
    for eps in (-4.5, -1.151, 0.0, 1.3, 4.793, 19.579, 44.25):
        for x in (0.5, 1.0, 2.0, 3.0, 4.0):
            for av, bv in ((mp.mpc(0.75, eps / 2), mp.mpf(1.5)), (mp.mpc(0.25, eps / 2), mp.mpf(0.5))):
                zv = mp.mpc(0, x * x)
                kum.append({"a": c(av), "b": c(bv), "z": c(zv), "value": c(mp.hyp1f1(av, bv, zv))})
    ref["kummer_physics"] = kum

    pcf = []
    for eps in (-12.0, -5.3, -2.32, -1.16, 0.0, 1.0, 5.0):
        for im in (0.0, 0.3):
            e = mp.mpc(eps, im)
            for x in (-8.0, -3.51, -1.0, 0.0, 0.7, 2.5, 6.0, 15.0):
                z2 = mp.mpc(1, 1) * x
                z1 = mp.mpc(-1, 1) * x
                pcf.append({"nu": c(-1j * e - 0.5), "z": c(z2), "value": c(mp.pcfd(-1j * e - 0.5, z2))})
                pcf.append({"nu": c(1j * e - 0.5), "z": c(z1), "value": c(mp.pcfd(1j * e - 0.5, z1))})
    ref["pcf_physics"] = pcf

    ai = []
    for re in (-15.0, -7.0, -2.0, 0.0, 1.5, 4.0, 12.0):
        for im in (-3.0, 0.0, 0.5, 2.0):
            zv = mp.mpc(re, im)
            ai.append({"z": c(zv), "value": c(mp.airyai(zv))})
    ref["airy_grid"] = ai

    # box levels: real zeros of psi_odd(d) found with mpmath's solver
    def box_f(eps, d):
        return mp.re(d * mp.exp(-1j * d * d / 2) * mp.hyp1f1(0.75 + 0.5j * eps, 1.5, 1j * d * d))

    box = {}
    for d, guesses in ((1.0, (4.79, 19.58, 44.25, 78.79)), (2.0, (0.63, 4.30, 10.45, 19.08)), (3.0, (-1.15, 0.88, 3.53, 7.33))):
        box[str(d)] = [float(mp.findroot(lambda e: box_f(e, d), g)) for g in guesses]
    ref["box_levels"] = box

    # half-line roots of D_{-i eps - 1/2}(-(1+i) d') = 0
    def hl(eps, d):
        return mp.pcfd(-1j * eps - 0.5, -mp.mpc(1, 1) * d)

    ref["halfline_roots"] = {
        "3.51": c(mp.findroot(lambda e: hl(e, 3.51), mp.mpc(-2.32, 0))),
        "3.0": c(mp.findroot(lambda e: hl(e, 3.0), mp.mpc(-1.16, 0))),
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(ref, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
