"""Quick check of the Python extension. Build it first:

    pip install maturin
    maturin develop -m crates/python/Cargo.toml --release
    python python/smoke_test.py
"""

import sconn_py as sconn


def main():
    a5 = sconn.PermGroup.builtin("A5")
    assert a5.order() == 60 and a5.degree == 5
    assert not a5.is_soluble()
    assert a5.radical().order() == 1

    s4xa5 = sconn.PermGroup.builtin("S4xA5")
    assert s4xa5.radical(method="gkps").order() == 24

    g = sconn.graph(a5, kind="soluble", label="A5")
    assert g.vertices == [2, 3, 5]
    assert g.edges == [(2, 3), (2, 5)]
    assert not sconn.graph(a5, kind="prime").has_edge(2, 3)
    assert "2 -- 3;" in g.to_dot()
    assert sconn.are_independent(a5, 3, 5)

    f = sconn.FactorizedGroup(a5, sconn.PermGroup.builtin("A4_in_A5"), sconn.PermGroup.builtin("C5_in_A5"))
    holds, witness = f.check("full")
    assert not holds and str(witness[0]) == "(2,3,4)"
    report = f.main_theorem()
    assert report["condition3"] is False and report["radical_order"] == 1

    s3 = sconn.PermGroup(["(1,2)", "(1,2,3)"], 3)
    assert s3.order() == 6 and sconn.Permutation("(1,3)", 3) in s3

    assert sconn.zsigmondy(2, 10) == 11
    assert sconn.zsigmondy(2, 6) is None
    assert sconn.lie_order("linear", 2, 7)[0] == 168

    try:
        sconn.PermGroup.load("builtin:S12", sconn.Budget(max_enumeration_order=1000)).radical(method="bruteforce")
    except sconn.BudgetExceeded:
        pass
    else:
        raise AssertionError("expected a budget error")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
