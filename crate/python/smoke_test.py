"""Smoke test for the `torelli` extension.

Build first with `cargo build -p torelli-py --release`; set TORELLI_LIB to
point at a different shared library.
"""

import importlib.util
import os
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def find_library():
    env = os.environ.get("TORELLI_LIB")
    if env:
        return Path(env)
    for profile in ("release", "debug"):
        p = ROOT / "target" / profile / "libtorelli.so"
        if p.exists():
            return p
    sys.exit("libtorelli.so not found; run `cargo build -p torelli-py` first")


def load():
    tmp = Path(tempfile.mkdtemp())
    target = tmp / "torelli.so"
    shutil.copy(find_library(), target)
    spec = importlib.util.spec_from_file_location("torelli", target)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def main():
    t = load()
    assert t.grdim(3, 2) == 14
    assert t.grdim(3, 3) == 64

    seed = "genus 3\nb1 -> b1 [a2, a3]\nb2 -> b2 [a3, a1]\nb3 -> b3 [a1, a2]\n"
    v = t.tau(seed, relaxed=3)
    assert v == [1] + [0] * 19, v
    assert t.tau("genus 3\n") == [0] * 20
    try:
        t.tau(seed)
    except t.TorelliError as e:
        assert "Torelli" in str(e)
    else:
        raise AssertionError("strict seed should be rejected")

    r = t.check("ci", 4)
    assert r["passed"] and r["data"]["factor"] == 3
    assert t.check("jacobi", 2)["passed"]

    for module in ("H", "L", "LmodH"):
        assert t.invariants(3, module, 2) == 0

    group = "order 2\n0 1\n1 0\n"
    module = "modulus 8\nrank 1\nelement 1\n-1\n"
    assert t.h1(group, module) == [2]

    assert t.snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    big = 2**80
    assert t.snf([[big, 0], [0, 1]]) == [1, big]

    rep = t.corpus_verify(str(ROOT / "crates" / "core" / "data" / "corpus_g3.txt"))
    assert rep["passed"] and rep["data"]["tau_span_rank"] == 20
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
