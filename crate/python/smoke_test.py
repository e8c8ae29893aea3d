#!/usr/bin/env python3
"""Smoke test for the nanotrap Python extension.

Builds nothing itself: run `cargo build --release -p nanotrap-py` first, then
`python3 python/smoke_test.py`. The script copies the cdylib into a temp
directory under the importable name and exercises the main entry points.
"""
import math
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def locate_cdylib():
    candidates = [
        ROOT / "target" / "release" / "libnanotrap.so",
        ROOT / "target" / "debug" / "libnanotrap.so",
        ROOT / "target" / "release" / "libnanotrap.dylib",
        ROOT / "target" / "debug" / "libnanotrap.dylib",
    ]
    for c in candidates:
        if c.exists():
            return c
    sys.exit("cdylib not found; run `cargo build --release -p nanotrap-py` first")


def approx(a, b, rel=1e-9, abs_tol=0.0):
    assert math.isclose(a, b, rel_tol=rel, abs_tol=abs_tol), f"{a} !~ {b}"


def main():
    lib = locate_cdylib()
    tmp = tempfile.mkdtemp(prefix="nanotrap_py_")
    suffix = ".so" if lib.suffix == ".so" else ".so"
    shutil.copy(lib, pathlib.Path(tmp) / f"nanotrap{suffix}")
    sys.path.insert(0, tmp)
    import nanotrap

    # angular algebra
    approx(nanotrap.wigner6j(1, 1, 1, 4, 4, 5), 0.121716123890036915, rel=1e-12)
    assert nanotrap.wigner6j(1, 1, 2, 0.5, 0.5, 5) == 0.0
    fx, fy, fz = nanotrap.spin_matrices(0.5)
    approx(fx[0][1].real, 0.5, rel=1e-12)
    approx(fz[1][1].real, 0.5, rel=1e-12)

    # atomic data and polarizabilities
    atom = nanotrap.Atom.mckeever_corrected()
    assert atom.transition_count() == 25
    approx(atom.nuclear_spin(), 3.5)
    omega_1064 = 2 * math.pi * 299792458.0 / 1064e-9
    a0, a1, a2 = nanotrap.alpha_triple(atom, "6S1/2:F=4", omega_1064)
    approx(a0, 1.8980169459765326e-38, rel=1e-9)
    assert abs(a2) < 1e-10 * a0  # tensor part vanishes for J = 1/2

    # propagator sign structure
    assert nanotrap.propagator(1, 2.0e15, 0.0) == 0.0

    # fiber optics
    approx(nanotrap.silica_index(1064e-9), 1.449630989859, rel=1e-9)
    mode = nanotrap.Mode.solve(250e-9, 1064e-9)
    approx(mode.beta_over_k0, 1.067995198121, rel=1e-8)
    assert mode.v_number < 2.405
    ex, ey, ez = mode.field(480e-9, 0.0, 0.0, 1, 0.0, 1e-3)
    assert abs(ex) > 0 and abs(ez) > 0 and abs(ey) < 1e-6 * abs(ex)

    # light-shift Hamiltonian round trip through the bindings
    w_sq = 2.9e9 / (2 * 8.8541878128e-12 * 299792458.0)
    h = nanotrap.hamiltonian(atom, "6S1/2:F=4", [(omega_1064, (math.sqrt(w_sq), 0, 0))])
    vals, vecs = nanotrap.adiabatic_levels(h)
    assert len(vals) == 9 and len(vecs) == 9
    shift = nanotrap.averaged_shift(atom, "6S1/2:F=4", omega_1064, 2.9e9)
    approx(sum(vals) / 9, shift, rel=1e-9)
    assert shift < 0  # attractive red detuning

    # magic wavelengths
    red = nanotrap.find_magic(atom, "6S1/2:F=4", "6P3/2:F=4", 930, 940)
    assert abs(red - 935.23) < 0.1, red
    blue = nanotrap.find_magic(atom, "6S1/2:F=4", "6P3/2:F=4", 680, 690)
    assert abs(blue - 685.03) < 0.1, blue

    # trap scenario
    trap = nanotrap.Trap.preset("vetsch")
    approx(trap.fiber_radius, 250e-9)
    assert trap.manifolds() == ["6S1/2:F=3", "6S1/2:F=4", "6P3/2:F=4"]
    u = trap.potential(atom, "6S1/2:F=4", 250e-9 + 230e-9, 0.0, 0.0)
    assert len(u) == 9 and all(v < 0 for v in u)
    d_star, depth_mk = trap.radial_minimum(atom, "6S1/2:F=4")
    assert abs(d_star - 230e-9) < 20e-9, d_star
    assert -0.6 < depth_mk < -0.2, depth_mk

    # surface interaction: U/h = -1.16 MHz at 100 nm
    approx(nanotrap.vdw_potential(100e-9, 1.16) / 6.62607015e-34, -1.16e6, rel=1e-9)

    print("smoke test OK")


if __name__ == "__main__":
    main()
