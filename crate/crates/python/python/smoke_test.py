"""Smoke test for the compiled `unruh` extension module.

Build and run:
    maturin develop -m crates/python/Cargo.toml
    python crates/python/python/smoke_test.py
"""

import math

import unruh


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    occ = unruh.occupation(0.0)
    assert close(occ["matrix"], 0.5, 1e-15), occ
    assert occ["convention"] == "flipped"
    occ = unruh.occupation(0.5)
    assert close(occ["matrix"], 1.0 / (1.0 + math.exp(math.pi)), 1e-12)

    vac = unruh.fermion_vacuum(1.0)
    assert vac["annihilation_residual"] <= 1e-12
    assert close(sum(abs(z) ** 2 for z in vac["amplitudes"]), 1.0, 1e-12)
    assert close(unruh.fermion_excited_schmidt(1.0)[0], 1.0, 1e-12)
    coeffs, deficit = unruh.scalar_schmidt(1.0, n_max=64, level=1)
    assert coeffs[1] >= 0.1 and deficit < 1e-10

    p = unruh.Momentum(1.0, 1.0)
    assert close(p.k_ratio, math.tanh(0.5), 1e-15), p
    d = unruh.wigner_matrix(p, 0.0)
    assert d == [[1, 0], [0, 1]], d
    a, b = unruh.wigner_coefficients(p, 0.3)
    d = unruh.wigner_matrix(p, 0.3)
    det = d[0][0] * d[1][1] - d[0][1] * d[1][0]
    assert close(det.real, a * a - b * b, 1e-12)
    w = unruh.little_group_oracle(p, 0.3)
    assert all(close(w[i][j], float(i == j), 1e-14) for i in range(2) for j in range(2))
    w = unruh.little_group_oracle(unruh.Momentum(1.0, 0.0), 0.4, comoving=True)
    assert close(w[0][0].real, math.cosh(0.2), 1e-15) and close(w[0][1].real, -math.sinh(0.2), 1e-15)

    pair = unruh.spin_pair(p, 0.0)
    assert close(pair["negativity"], 1.0, 1e-12)
    assert close(pair["mutual_information"], 2.0, 1e-10)
    assert pair["mutual_information_closed"] == 1.0 and pair["mutual_information_flag"]
    assert unruh.closed_form_negativity(p, 20.0) <= 1e-3
    assert unruh.closed_form_mutual_information(p, 20.0)["value"] <= 1e-3

    scalar = unruh.scalar_pair(0.0, n_max=16)
    assert close(scalar["mutual_information"], 2.0, 1e-10)

    bell = [[0.5, 0, 0, 0.5], [0, 0, 0, 0], [0, 0, 0, 0], [0.5, 0, 0, 0.5]]
    assert close(unruh.negativity(bell, [2, 2]), 1.0, 1e-12)
    s_a, s_r, s_ar, info = unruh.mutual_information(bell, [2, 2])
    assert close(info, 2.0, 1e-12) and close(s_ar, 0.0, 1e-12)

    form = unruh.connection_one_form(0.0, 1.0, [0.01, 0.0, 0.0, 0.0])
    assert close(abs(form[0][1]), 0.01, 1e-12)
    t, x = unruh.rindler_to_minkowski(1.0, 0.0, 1.0)
    assert close(x * x - t * t, 1.0, 1e-12)

    code, out = unruh.run_cli(["occupation", "--omega", "0:1:0.5"])
    assert code == 0 and out.splitlines()[0].startswith("omega,closed,matrix,gap")

    for bad in (lambda: unruh.Momentum(0.0, 1.0), lambda: unruh.spin_pair(unruh.Momentum(1.0, 0.0), 0.1)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("unruh smoke test: ok")


if __name__ == "__main__":
    main()
