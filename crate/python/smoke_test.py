"""Smoke test for the Python bindings.

Build and install first:

    pip install --no-build-isolation ./crates/py
    python python/smoke_test.py
"""

import cmath
import json
import math

import dissjacobi as dj


def close(x, y, tol=1e-8):
    return abs(x - y) < tol


def main():
    # worked example: spectrum {i (x2), 2i}
    j = dj.reconstruct([(1j, 2), (2j, 1)])
    assert j.n == 3 and j.kind == "dissipative"
    assert close(j.b1, 4j)
    assert close(j.a[0], 3 / math.sqrt(2)) and close(j.a[1], 1 / math.sqrt(2))
    assert all(close(b, 0.0) for b in j.b)

    spec = sorted(j.spectrum(), key=lambda e: e[0].imag)
    assert [m for _, m in spec] == [2, 1]
    assert close(spec[0][0], 1j, 1e-6) and close(spec[1][0], 2j, 1e-6)

    # both reconstructions agree, U is unitary
    k, u = dj.livsic([(1j, 2), (2j, 1)])
    assert max(abs(x - y) for x, y in zip(k.a, j.a)) < 1e-6
    for r in range(3):
        for c in range(3):
            s = sum(u[i][r].conjugate() * u[i][c] for i in range(3))
            assert close(s, 1.0 if r == c else 0.0)

    # Weyl function against the dense resolvent entry at one point
    z = 0.3 - 1.1j
    d = j.dense()
    # (J - z)^{-1}_{11} = det(J_[2,3] - z) / det(J - z)
    minor = (d[1][1] - z) * (d[2][2] - z) - d[1][2] * d[2][1]
    full = (d[0][0] - z) * minor - d[0][1] * d[1][0] * (d[2][2] - z)
    assert close(j.weyl(z), minor / full, 1e-12)

    # JSON round trip and equality
    again = dj.JacobiMatrix.from_json(j.to_json())
    assert again == j
    assert json.loads(j.to_json())["b1"] == [j.b1.real, j.b1.imag]

    # mixed data: known 2x2 prefix plus the eigenvalue 2i
    prefix = dj.JacobiMatrix(4j, [0.0], [3 / math.sqrt(2)])
    m = dj.mixed_recover(prefix, [(2j, 1)], 3)
    assert close(m.a[1], 1 / math.sqrt(2), 1e-6)

    # Volterra: moments against the tan series, top real-part eigenvalue
    v = dj.volterra(1.0, 50)
    g = dj.moments(v, 4)
    t = dj.tan_moments(1.0, 4)
    assert close(g[2], 1 / 3, 1e-12) and close(g[4], 2 / 15, 1e-12)
    assert all(close(a, b, 1e-12) for a, b in zip(g, t))
    assert close(dj.volterra_real_eig(1.0, 0), 2 / math.pi, 1e-15)

    # Chebyshev closed forms
    assert close(dj.chebyshev_eig("standard", 1.0), 0.75j, 1e-15)
    assert dj.chebyshev_eig("standard", 0.5) is None
    assert close(dj.chebyshev_eig("modified", 2.0), 1j * math.sqrt(3), 1e-15)

    # Green identity and an invariant suite
    assert dj.green_residual(j, 1j, 2) < 1e-6
    rows = dj.run_suite("roundtrip", n=6, trials=10, seed=1)
    assert rows and all(ok for *_, ok in rows)

    # errors map onto exception classes
    try:
        dj.reconstruct([(-1j, 1)])
    except dj.DomainError:
        pass
    else:
        raise AssertionError("lower half-plane eigenvalue accepted")
    try:
        dj.JacobiMatrix.from_json("{")
    except dj.ParseError:
        pass
    else:
        raise AssertionError("malformed JSON accepted")
    assert issubclass(dj.NumericalError, ValueError)
    assert cmath.isclose(j.charpoly()[-1], 1.0)

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
