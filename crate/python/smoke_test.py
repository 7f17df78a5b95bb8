"""Smoke test of the tropicaust Python bindings.

Build and install the extension first:

    pip install --no-build-isolation -e crates/python

then run ``python python/smoke_test.py``.
"""

from fractions import Fraction

import tropicaust


def main() -> None:
    a = tropicaust.angle((1, 0), (3, 7))
    assert a["determinant"] == 7 and a["cotangent"] == "4/7"
    assert [(r["direction"], r["weight"]) for r in a["caustic"]] == [([1, 1], 1), ([1, 2], 3)]

    assert tropicaust.regular_continued_fraction("4/7") == [1, 1, 3]
    assert tropicaust.hj_continued_fraction(Fraction(3, 7)) == [3, 2, 2]

    square = tropicaust.Domain.bounded([(0, 0), (2, 0), (2, 2), (0, 2)])
    assert square.kind == "bounded" and square.is_canonical()
    assert square.propagate(Fraction(1, 2))["vertices"][0] == ["1/2", "1/2"]
    assert square.twelve_sum() == 12
    assert square.age() == "inf"
    assert tropicaust.Domain.from_json(square.to_json()) == square

    pentagon = tropicaust.Domain.from_json(
        '{"kind":"bounded","vertices":[[0,0],[4,0],[4,1],[2,3],[0,1]]}'
    )
    trace = pentagon.simulate()
    assert trace.final_time == "3/2"
    assert trace.final_locus == {"kind": "point", "point": ["2", "3/2"]}
    assert trace.noether()["residual"] == "0"
    assert sorted(r["weight"] for r in trace.final_star()["rays"]) == [1, 1, 2]
    assert pentagon.eval_series(("2", "1")) == "1"

    quad = tropicaust.Domain.bounded([(0, 0), (1, -2), (1, 3), (0, 1)])
    assert quad.age() == "1/2"

    svg = square.render_svg(["1/2"])
    assert svg.startswith("<svg") and svg.count('class="caustic"') == 4

    try:
        square.propagate(0.5)
    except TypeError:
        pass
    else:
        raise AssertionError("floats must be rejected")
    try:
        tropicaust.regular_continued_fraction("7/4")
    except tropicaust.TropicaustError:
        pass
    else:
        raise AssertionError("out-of-range value must be rejected")

    report = tropicaust.verify_suite(count=20, seed=7)
    assert report["passed"] == report["count"] == 20

    print("smoke test passed")


if __name__ == "__main__":
    main()
