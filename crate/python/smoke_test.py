#!/usr/bin/env python3
"""Smoke test for the hallmap_py extension module.

Builds the cdylib if it is missing, stages it under an importable name,
and spot-checks permutation arithmetic, factorizations, skew-morphisms,
map censuses, and the closed-form number theory against known values.
Exits nonzero if any check fails.
"""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]

failures = []
checks = 0


def check(name, cond):
    global checks
    checks += 1
    print(("ok   " if cond else "FAIL ") + name)
    if not cond:
        failures.append(name)


def raises(fn):
    try:
        fn()
    except ValueError:
        return True
    return False


def load_module():
    lib = ROOT / "target" / "debug" / "libhallmap_py.so"
    if not lib.exists():
        subprocess.run(["cargo", "build", "-p", "hallmap-py"], cwd=ROOT, check=True)
    stage = Path(tempfile.mkdtemp(prefix="hallmap-py-"))
    shutil.copy2(lib, stage / "hallmap_py.so")
    sys.path.insert(0, str(stage))
    import hallmap_py

    return hallmap_py


def main():
    hm = load_module()

    # Permutation arithmetic, left-to-right composition.
    rho = hm.Permutation(7, "(1,2,3,4,5,6,7)")
    z = hm.Permutation(7, "(1,2)(3,4)")
    check("compose applies left factor first", str(z.compose(rho)) == "(1,3,5,6,7)")
    rz = rho.compose(z)
    check("rho*z has order 5", rz.order() == 5)
    check("rho*z fixes points 0 and 2", rz.fixed_points() == [0, 2])
    check("conjugate is by^-1 * self * by", z.conjugate(rho) == hm.Permutation(7, "(2,3)(4,5)"))

    # Groups from descriptors.
    a5 = hm.PermGroup.from_descriptor("alt:5")
    check("alt:5 has order 60", a5.order() == 60)
    check("alt:5 contains a 3-cycle", a5.contains(hm.Permutation(5, "(1,2,3)")))
    check("alt:5 omits a transposition", not a5.contains(hm.Permutation(5, "(1,2)")))
    check("m11 involution count", hm.PermGroup.from_descriptor("m11").count_involutions() == 165)

    # Standard factorization of PSL(3,2) and its certificate.
    g, h, k = hm.standard_factorization("psl:3,2")
    f = hm.certify_factorization(g, h, k)
    check("psl:3,2 point stabilizer has order 24", f.h_order() == 24)
    check("psl:3,2 long cycle has order 7", f.k_order() == 7)
    check("psl:3,2 factorization is Hall", f.is_hall())
    check("psl:3,2 factorization is core-free", f.is_core_free())
    x = g.generators()[0].compose(g.generators()[-1])
    part, j = f.decompose(x)
    check("decompose splits g = h * k^j", part.compose(k.pow(j)) == x)

    # The order-3 skew-morphism of D8 inside S4.
    s4 = hm.PermGroup.from_descriptor("sym:4")
    d8 = hm.PermGroup.from_descriptor("d8")
    s = hm.skew_from_factorization(hm.certify_factorization(s4, d8, hm.Permutation(4, "(1,2,3)")))
    check("D8 skew-morphism has order 3", s.order() == 3)
    check("D8 skew-morphism is not trivial", not s.is_trivial())
    check("D8 skew-morphism is Hall", s.is_hall())
    check("D8 skew-morphism satisfies its identity", s.verify())
    check("brute enumeration finds it", any(m.order() == 3 for m in hm.brute_enumerate(d8)))

    # Map censuses.
    m = hm.build_map("alt:5")
    check("alt:5 rotary map is the icosahedron", (m.vertices, m.edges, m.faces) == (12, 30, 20))
    check("alt:5 rotary map is spherical", m.euler == 2 and m.genus == 0)
    b = hm.build_map("alt:5", kind="biro")
    check("alt:5 bi-rotary map census", (b.faces, b.euler) == (6, -12))
    n, edges = hm.coset_graph("sym:3")
    check("sym:3 coset graph is a single edge", n == 2 and edges == [(0, 1)])

    # Closed-form number theory.
    check("m11 order", hm.descriptor_order("m11") == 7920)
    check("gcd identity holds for (3,2)", hm.gcd_identity(3, 2))
    check("gcd identity refuses (3,4)", raises(lambda: hm.gcd_identity(3, 4)))
    check("prime family for (2,3)", hm.prime_family(2, 3) == [5, 7])
    check("solvable f filter", hm.solvable_f_ok(4) and not hm.solvable_f_ok(3))
    check("psl2 pair (2,3) infeasible", hm.psl2_pair_infeasible(2, 3))
    check("catalog pair passes the gcd screen", hm.hyp1_compatible(["alt:7", "psl:2,16"]))

    # A verification suite, end to end.
    items = hm.run_suite("lemma21")
    check("lemma21 suite passes", len(items) == 2 and all(p for _, p, _ in items))

    if failures:
        print(f"\n{len(failures)} check(s) failed")
        return 1
    print(f"\nall {checks} checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
