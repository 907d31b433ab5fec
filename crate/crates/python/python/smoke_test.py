import json

import cosupp


def main():
    a = cosupp.Ring("Q[[x,y]]")
    assert a.dim() == (2, 2), a.dim()
    eng = cosupp.Engine()
    d = eng.describe(a)
    assert d["set"]["kind"] == "finite", d
    assert d["set"]["primes"] == ["(x, y)"], d

    cusp = cosupp.Ring("Q[x,y] / (y^2 - x^3)")
    m = cusp.prime(["x", "y"])
    r = eng.member(m)
    assert r["verdict"] == "yes", r
    assert eng.replay(m)

    u = cosupp.Ring("field(uncountable)[x,y,z]")
    o = u.prime(["0"])
    assert eng.member(o)["verdict"] == "unknown"
    assert eng.member(o)["frontier"]

    try:
        cusp.prime(["x"], witness=("y", "y"))
    except ValueError:
        pass
    else:
        raise AssertionError("(x) is not prime in the cusp")

    assert cosupp.groebner(["x", "y"], ["x^2 - y", "x*y - 1"], order="lex")
    assert cosupp.ideal_member(["x", "y"], "x^2*y - y^2", ["x^2 - y"])
    assert not cosupp.ideal_member(["x", "y"], "x", ["x^2 - y"], characteristic=7)

    with open(__file__.replace("crates/python/python/smoke_test.py", "programs/tour.cos")) as f:
        report = json.loads(cosupp.run(f.read(), trace=True))
    assert report["schema"] == "cosupp/1"
    assert report["errors"] == 0, report["diagnostics"]
    assert report["results"]

    print("smoke test ok:", len(report["results"]), "queries")


if __name__ == "__main__":
    main()
