"""Smoke test for the wflag extension module.

Build first, e.g. `maturin develop -m crates/py/Cargo.toml`, or
`cargo build -p wflag-py --release` and copy target/release/libwflag.so to
wflag.so somewhere on PYTHONPATH.
"""

import json

import wflag


def main():
    a2 = wflag.WeylGroup("A2")
    assert a2.rank == 2
    assert a2.num_positive_roots == 3
    assert a2.demazure([1, 2, 2, 1]) == [1, 2, 1]
    assert a2.length([1, 2, 1, 2]) == 2
    assert a2.bruhat_leq([1], [1, 2, 1])
    assert a2.kl([], [1, 2, 1]).coeffs == [1]

    a3 = wflag.WeylGroup("A3")
    assert a3.kl([], [2, 1, 3, 2]) == wflag.PolyZ([1, 1])
    assert a3.kl_via_r([], [2, 1, 3, 2]) == wflag.PolyZ([1, 1])

    fibers = dict((tuple(v), f.coeffs) for v, f in a2.fibers([1, 2, 1]))
    assert fibers[()] == [1, 1] and fibers[(1,)] == [1, 1] and len(fibers) == 6

    report = a2.decompose([1, 2, 1])
    assert all(report.checks.values())
    assert report.multiplicity([1]).coeffs == [0, 1]
    assert report.multiplicity([1, 2, 1]).coeffs == [1]
    assert sorted(report.supports) == ["1", "1,2,1"]
    doc = json.loads(report.to_json())
    assert doc["target"] == "1,2,1"

    affine = wflag.WeylGroup("A2~")
    assert affine.is_affine and affine.generators == [0, 1, 2]
    assert affine.decompose([0, 1, 0, 1]).checks["global_sum"]

    try:
        wflag.WeylGroup("H9")
    except ValueError:
        pass
    else:
        raise AssertionError("bad descriptor accepted")

    try:
        wflag.WeylGroup("A3", cap=2).kl([], [2, 1, 3, 2])
    except RuntimeError:
        pass
    else:
        raise AssertionError("cap not enforced")

    print("smoke test ok")


if __name__ == "__main__":
    main()
