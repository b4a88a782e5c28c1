"""Smoke test for the multieuler extension module.

Build and install first, e.g.

    pip install maturin
    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install dist/multieuler-*.whl
    python python/smoke_test.py
"""

import json
import pathlib

import multieuler as me

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main():
    a2 = me.eulerian_descent_poly(2)
    assert str(a2) == "1 + x2 + 3*x3 + x2*x3", str(a2)
    assert a2.window == (2, 3)
    assert a2.coeff([3]) == 3
    assert a2.reciprocal() == a2.mirror()
    assert a2.is_mirrorpalindromic() and a2.is_complete()
    assert me.eulerian_excedance_poly(4) == me.eulerian_descent_poly(4)
    assert me.eulerian_descent_poly(3).collapse_to_univariate() == [1, 11, 11, 1]
    assert me.univariate_eulerian(3) == [1, 11, 11, 1]

    text = (ROOT / "data" / "counterexample.json").read_text()
    cx = me.Poly.from_json(text)
    assert cx.is_monomialmaximal() and cx.is_complete()
    assert not cx.is_mirrorpalindromic()
    assert cx.palindromic_permutation() is None
    assert me.Poly.from_json(cx.to_json()) == cx
    built = me.Poly(1, 3, [([], 1), ({1}, 2), ((2,), 1), ([3], 1), ([1, 2], 1),
                           ([1, 3], 1), ([2, 3], 3), ([1, 2, 3], 1)])
    assert built == cx

    assert me.alpha([2, 5, 6]) == [1, 3, 1]
    assert me.hat_factorial([1, 1]) == 6
    assert me.count_descents_within(3, {3}) == 4
    assert me.count_exact_descents({3}) == 3
    assert me.tau_set(4, [1, 3, 4]) == [3, 4, 6]
    assert [str(p) for p in me.enumerate_r(3, [2, 4])] == ["2 1 4 3", "3 4 2 1", "4 2 1 3"]

    sigma = me.Perm([2, 1, 3])
    assert sigma.descent_tops() == [2] and sigma.ascent_tops() == [3]
    trace = me.psi_forward(me.Perm.parse("1 2 3"))
    assert trace.rearranged.oneline() == [2, 3, 4, 1]
    assert trace.output.oneline() == [3, 2, 1]
    assert me.psi_inverse(trace.output) == trace.input

    report = me.verify_theorem(4)
    assert report.passed and report.value == 120, report
    assert json.loads(report.to_json())["identity"] == "theorem"
    reports = me.sweep(1, 4, "all")
    assert all(r.passed for r in reports)
    seq = me.check_sequential_sums(2, [3])
    assert seq.passed and seq.chains()[1][1][0][1] == 3

    try:
        me.Perm([1, 1, 2])
    except ValueError as e:
        assert "repeated" in str(e)
    else:
        raise AssertionError("duplicate entries accepted")

    print(f"multieuler smoke test passed ({len(reports)} sweep reports)")


if __name__ == "__main__":
    main()
