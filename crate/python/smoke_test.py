"""Smoke test for the `peterson` extension module.

Build and install it first:

    pip install --no-build-isolation ./crates/python
"""

import json

import peterson


def main() -> None:
    b = peterson.constant("1,2", "2-4", "1-4", 5)
    assert (b.coeff, b.power) == (12, 1), b
    assert str(peterson.constant("1,2,4,5", "2-4", "1-6", 7)) == "280*t^1"
    assert peterson.nonvanishing("1,2", "2-4", "1-4", 5)

    rows = peterson.expand("1", "1", 3)
    assert [(c.to_list(), str(v)) for c, v in rows] == [([1], "1*t^1"), ([1, 2], "1")]
    assert rows == peterson.localize_product("1", "1", 3)
    ordinary = dict((tuple(c.to_list()), v.coeff) for c, v in peterson.expand("1,2", "2-4", 6, ordinary=True))
    assert ordinary[(1, 2, 3, 4, 5)] == 4, ordinary

    assert peterson.restrict("2,3", "1-6", 7) == peterson.Monomial(60, 2)
    assert peterson.subword_restriction("2-4", "2-4", 5) == peterson.Monomial(6, 3)

    s = peterson.Subset(7, "1,2,4-5")
    assert len(s) == 4 and 4 in s and s.blocks() == [(1, 2), (4, 5)]
    assert len(peterson.Subset.all(5)) == 16

    cert = peterson.identity(2, 1, 3, 2, 3, 2, bijection=True)
    assert cert.passed() and cert.bijection_valid and cert.lhs == cert.rhs == 1200
    traced = peterson.identity(1, 1, 1, 1, 1, 1, trace=True)
    assert len(traced.trace) == traced.lhs
    assert json.loads(cert.to_json())["lhs"] == "1200"

    checked, mismatches, _ = peterson.verify("formula", max_n=4)
    assert (checked, mismatches) == (84, 0)

    engine = peterson.Engine()
    assert str(engine.constant("1,2", "2-4", "1-4", 5)) == "12*t^1"
    assert len(engine) == 1

    for bad in (lambda: peterson.Subset(3, "9"), lambda: peterson.identity(0, 0, 1, 1, 1, 0)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
