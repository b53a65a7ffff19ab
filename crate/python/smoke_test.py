"""Smoke test for the `lonely_runner` extension module.

Run after `cargo build --release -p lonely-runner-py --features extension-module`
(or `maturin develop` in crates/py). If the module is not installed, the
freshly built shared library under target/ is loaded instead.
"""

import importlib.util
import shutil
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        import lonely_runner

        return lonely_runner
    except ImportError:
        pass
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "liblonely_runner.so"
        if lib.exists():
            tmp = Path(tempfile.mkdtemp()) / "lonely_runner.so"
            shutil.copy(lib, tmp)
            spec = importlib.util.spec_from_file_location("lonely_runner", tmp)
            module = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(module)
            return module
    sys.exit("lonely_runner not built; see the module docstring")


def main():
    lr = load()

    for n in range(1, 8):
        assert lr.exact_gap(list(range(1, n + 1))).delta == Fraction(1, n + 1)
    cert = lr.exact_gap(lr.SpeedSet([3, 2]))
    assert (cert.delta, cert.witness_time, cert.witness) == (Fraction(2, 5), Fraction(1, 5), (0, 1, 1))
    cert.check()
    assert lr.exact_gap([7]).witness is None

    lo = lr.gap_grid_oracle([2, 3], 600)
    assert lo <= Fraction(2, 5) <= lo + Fraction(3, 1200)
    assert lr.gap_at([1, 2], Fraction(1, 3)) == Fraction(1, 3)

    report = lr.verify_lrc(2, 20)
    assert report["counterexamples"] == [] and [1, 2] in report["tight"]
    assert lr.lonely_time([0, 1, 2, 3])["loneliest_time"] == Fraction(1, 4)

    assert lr.min_scale_for_direction([1, 2]) == Fraction(1, 3)
    assert lr.kprime_scan(2, 10)["observed_sup"] == Fraction(1, 3)
    assert lr.square_min_obstacle(Fraction(1, 2)) == Fraction(1, 3)

    slope = lr.QuadExt.parse("sqrt3*1/5")
    assert slope == lr.QuadExt(0, Fraction(1, 5)) and slope.sign() == 1
    hit = lr.triangle_obstruction_check(slope, Fraction(1, 4), 50)
    assert hit["contact"] == "grazing"
    assert lr.triangle_obstruction_check(slope, Fraction(1, 5), 200) is None
    lower, upper = lr.triangle_min_obstacle("sqrt3*1/5", 200)
    assert lower < Fraction(1, 4) <= upper

    sub = lr.invisible_subset([1, 3, 4, 7, 9], 2)
    assert sub["kept_delta"] >= Fraction(3, 10)
    assert lr.conj34_witness([1, 2, 3])["modulus"] == 4

    svg = lr.render_svg("triangle_tiling", alpha=Fraction(1, 4), slopes=["sqrt3*1/5"])
    assert svg.startswith("<?xml") and "scene=triangle_tiling" in svg

    for bad in (lambda: lr.exact_gap([]), lambda: lr.square_min_obstacle(0.5)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
