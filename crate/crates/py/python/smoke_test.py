"""Smoke test for the kdiverse extension module.

Build and install first, e.g. `maturin develop -m crates/py/Cargo.toml`.
"""

import json

import kdiverse


def main():
    # s=0, a=1, b=2, t=3
    diamond = kdiverse.MinCut(4, [(0, 1), (0, 2), (1, 3), (2, 3)], 0, 3)
    assert diamond.q() == 2
    assert len(diamond.min_cuts()) == 4
    for backend in ("mcf", "cut"):
        sol = diamond.diverse(2, "sum", backend)
        assert sol.diversity == 4, sol
        assert sol.backend == backend
        assert all(len(c) == 2 for c in sol.solutions)
    table = diamond.diverse(2, [0, 1, 4])
    assert table.backend == "mcf" and table.diversity == 4

    sm = kdiverse.StableMatching([[0, 1], [1, 0]], [[1, 0], [0, 1]])
    assert sm.gale_shapley("u") == [0, 1]
    assert sm.gale_shapley("v") == [1, 0]
    assert sm.rotations() == [[(0, 0), (1, 1)]]
    cov = sm.diverse(3, "cov")
    assert cov.diversity == 4
    assert all(sm.is_stable(m) for m in cov.solutions)

    lat = kdiverse.Lattice([[0, 1], [0, 1]], [[0, 0], [0, 1], [1, 0], [1, 1]])
    assert len(lat.join_irreducibles()) == 2
    assert lat.diverse(2).diversity == 4

    p, h = kdiverse.min_k_potential(3, [(1, 2, 0), (2, 0, 0), (2, 0, 1), (1, 2, 1)], 2, "square")
    assert h == 2 and p[0] == 2 and p[1] == 0

    report = json.loads(kdiverse.run("sm", "2\n1 2\n2 1\n2 1\n1 2\n", 2, "cov"))
    assert report["diversity"] == 4

    try:
        diamond.diverse(2, [0, 2, 1])
    except ValueError:
        pass
    else:
        raise AssertionError("non-convex table accepted")

    print("kdiverse smoke test passed")


if __name__ == "__main__":
    main()
