#!/usr/bin/env python3
"""Smoke test for the pistar_py extension module.

Builds the extension (unless PISTAR_SKIP_BUILD is set), copies the cdylib
next to this script under the importable name, and exercises the main
types and operations.

Usage: python3 python/smoke.py
"""

import os
import shutil
import subprocess
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def build_and_stage() -> Path:
    """Build the cdylib and stage it as an importable module file."""
    if not os.environ.get("PISTAR_SKIP_BUILD"):
        subprocess.run(
            ["cargo", "build", "-p", "pistar-py", "--features", "extension-module"],
            cwd=REPO,
            check=True,
        )
    if sys.platform == "darwin":
        built, staged = "libpistar_py.dylib", "pistar_py.so"
    elif os.name == "nt":
        built, staged = "pistar_py.dll", "pistar_py.pyd"
    else:
        built, staged = "libpistar_py.so", "pistar_py.so"
    src = REPO / "target" / "debug" / built
    if not src.exists():
        sys.exit(f"missing {src}; build with: cargo build -p pistar-py --features extension-module")
    stage_dir = REPO / "target" / "pymodule"
    stage_dir.mkdir(parents=True, exist_ok=True)
    dst = stage_dir / staged
    shutil.copy2(src, dst)
    return stage_dir


def main() -> None:
    sys.path.insert(0, str(build_and_stage()))
    import pistar_py as ps

    # Catalog and axioms.
    keys = ps.catalog_keys()
    assert len(keys) == 20 and "W_eta2_gr" in keys, keys
    a = ps.Algebra.catalog("W_eta2_gr")
    assert a.dim == 4 and a.unital and a.validate() == []
    assert a.component_dims == [2, 0, 1, 1], a.component_dims

    # Codimension sequences and proper codimensions.
    assert a.codims(4) == [1, 3, 7, 13, 21], a.codims(4)
    assert a.proper_codims(4) == [1, 2, 2, 0, 0]
    assert a.codim(5) == 31
    sigs = dict()
    for sig, c in a.per_signature(2):
        sigs[tuple(sig)] = c
    assert sigs[(0, 0, 1, 1)] == 1 and sigs[(2, 0, 0, 0)] == 1, sigs
    assert sum(c for _, c in a.per_signature(2)) != a.codim(2)  # weights matter
    assert a.codim(2) == 7

    # Direct sums via key arithmetic and via the method agree.
    s1 = ps.Algebra.catalog("C3_i2+G2_tau")
    s2 = ps.Algebra.catalog("C3_i2").direct_sum(ps.Algebra.catalog("G2_tau"))
    assert s1.codims(3) == s2.codims(3) == [1, 2, 5, 10], s1.codims(3)

    # Cocharacter multiplicities.
    table = dict(a.cocharacters())
    assert table == {
        "((1)_{1+})": 1,
        "((1)_{1-})": 1,
        "((1)_{1+},(1)_{1-})": 1,
    }, table
    assert "χ((1)_{1+})⊗χ((1)_{1-})" in a.character_sum()

    # Polynomials: parsing, arithmetic, the formal involution, identities.
    p = ps.Poly.parse("[x1:0+, x2:1-]")
    x1 = ps.Poly.var(1, "0+")
    x2 = ps.Poly.var(2, "1-")
    assert p == x1 * x2 - x2 * x1 == x1.commutator(x2)
    assert p.star().star() == p
    assert (x1.jordan(x2)).is_multilinear()
    assert a.is_identity(p)  # even-symmetric elements are central here
    assert not a.is_identity(ps.Poly.var(1, "1+"))
    assert sorted(p.variables()) == ["x1:0+", "x2:1-"]

    # Generating-set verification.
    src = ps.generator_source("W_eta2_gr")
    out = a.verify_generators(src, 3)
    assert out.verified, out
    assert [d[0] for d in out.degrees] == [1, 2, 3]
    assert all(d[3] for d in out.degrees)
    bad = a.verify_generators("[x1:0+, x2?]\n", 2)
    assert not bad.verified

    # Reconstruction round-trip resolves the ambiguity marker.
    r = ps.roundtrip("W_eta2_gr", 3)
    assert r.ok and r.resolved == ["W_eta2_gr"], (r.ok, r.resolved, r.detail)
    assert r.blocks == ["G2_gamma_gr|W_eta2_gr"], r.blocks

    # A slice of the claim suite.
    suite = ps.run_suite(only="AX-", max_n=None)
    assert suite.total == 20 and suite.failed == 0
    assert suite.markdown.startswith("# Verification report")
    assert all(ok for (_, ok, _) in suite.claims)

    # JSON round-trip through the interchange format.
    b = ps.Algebra.from_json(a.to_json())
    assert b.name == a.name and b.codims(2) == a.codims(2)

    print("smoke: all checks passed")


if __name__ == "__main__":
    main()
