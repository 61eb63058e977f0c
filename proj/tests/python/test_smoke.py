import cmath
import json
import os
import subprocess

import pytest

import pentageom as pg


def test_membership():
    r = pg.penta_contains((0, 0, 0))
    assert r["verdict"] == "inside"
    assert r["schema"] == "penta-geom/1"
    assert pg.penta_contains((0.3, 2, 1))["verdict"] == "outside"
    assert pg.penta_contains((0.5, 0, 0.5), "c3")["verdict"] == "inside"
    assert pg.boundary_classify((1, 0, 0)) == "part1"
    assert pg.boundary_classify((0.25, 1, 0)) == "part2"
    assert pg.boundary_classify((0, 2, 1)) == "part3"


def test_hartogs_and_sup():
    s, p = 0.3 + 0.1j, -0.2j
    sup, _ = pg.sup_psi((1, s, p))
    assert abs(sup - cmath.exp(pg.phi(s, p) / 2).real) < 1e-8
    assert abs(pg.criterion2_bound(s, p) - 1 / sup) < 1e-8


def test_lift_round_trip():
    for x in pg.sample_penta("contraction-pushforward", 20, seed=3, radius_cap=0.99):
        z = pg.lift_to_ball(x)
        assert pg.operator_norm(z) < 1
        y = pg.pi_map(z)
        assert max(abs(u - v) for u, v in zip(x, y)) < 1e-12


def test_automorphisms():
    f = (1, 1, 0.5)
    assert pg.auto_apply(f, (0, 1, 0)) == pytest.approx((0, 0.5, -0.5))
    g = (cmath.exp(0.3j), cmath.exp(-1j), 0.2 + 0.1j)
    x = (0.1, 0.2 + 0.1j, 0.05j)
    fg = pg.auto_compose(f, g)
    assert pg.auto_apply(fg, x) == pytest.approx(pg.auto_apply(f, pg.auto_apply(g, x)), abs=1e-12)
    back = pg.auto_apply(pg.auto_inverse(g), pg.auto_apply(g, x))
    assert back == pytest.approx(x, abs=1e-12)
    assert pg.orbit_of_origin((1, 1, 0.3)) == pytest.approx((0, -0.6, 0.09))
    assert pg.symmetrize_blaschke(1, [(1, 0), (1, 0)], 0.9, 0.14) == pytest.approx((0.53, 0.0196))


def test_witness_and_errors():
    w = pg.linconvex_witness((2, 0, 0))
    assert w["kind"] == "psi-level-set"
    assert w["omega"] == pytest.approx([2, 0])
    assert pg.witness_verify(w, 2000, 1)["min_residual"] >= 1 - 1e-12
    with pytest.raises(pg.InvalidArgument):
        pg.linconvex_witness((0.1, 0, 0))
    with pytest.raises(pg.WitnessViolation):
        pg.witness_verify({"kind": "psi-level-set", "z": [0.3, 0], "omega": [0.5, 0]}, 500, 2)
    with pytest.raises(pg.Error):
        pg.run_suite("no-such-suite")


def test_convexity_and_boundary():
    r = pg.cconvexity_check("phiz", (0.1, 0.2j), (1, 0.5), z=0.3)
    assert r["margin_standard"] > -1e-6
    r = pg.cconvexity_check("phi", (0.1, 0.2j), (1, 0.5))
    assert r["lhs"] > 0
    x = pg.sample_penta("boundary-part1", 1, seed=4)[0]
    u, v = pg.complex_tangent_basis(x)
    assert max(abs(pg.levi_form(x, u)["value"]), abs(pg.levi_form(x, v)["value"])) > 1e-4
    assert pg.foliation_disc(x)["tag"] == "part1-foliation"


def test_suite_report_is_deterministic():
    a = pg.run_suite("orbit-of-zero", n=200, seed=7, timing=False)
    b = pg.run_suite("orbit-of-zero", n=200, seed=7, timing=False)
    assert a == b
    assert a["pass"] and a["worst"]["max_abs_a"] == 0
    assert "timing" not in a
    assert len(pg.suite_names()) == 15


CLI = os.environ.get("PENTA_GEOM_CLI")


def run_cli(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


@pytest.mark.skipif(not CLI, reason="command line tool not built")
def test_cli(tmp_path):
    r = run_cli("check", "--point", "0,0,0,0,0,0", "--criterion", "all")
    assert r.returncode == 0
    assert json.loads(r.stdout)["verdict"] == "inside"

    r = run_cli("witness", "--point", "2,0,0,0,0,0")
    w = json.loads(r.stdout)["witness"]
    assert r.returncode == 0 and w["kind"] == "psi-level-set" and w["omega"] == [2.0, 0.0]

    out = tmp_path / "auto.json"
    r = run_cli("suite", "--name", "automorphism-group", "--n", "10000", "--seed", "42", "--json", str(out))
    assert r.returncode == 0
    assert json.loads(out.read_text())["pass"] is True

    r = run_cli("sample", "--n", "5", "--strategy", "boundary-part1", "--seed", "1")
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "aRe,aIm,sRe,sIm,pRe,pIm,class"
    assert all(line.endswith(",part1") for line in lines[1:])

    r = run_cli("auto", "orbit", "--f", "1,0,1,0,0.3,0")
    assert json.loads(r.stdout)["orbit_point"]["s"] == pytest.approx([-0.6, 0.0])

    r = run_cli("boundary", "--point", "0.25,0,1,0,0,0", "--disc")
    assert json.loads(r.stdout)["class"] == "part2"

    r = run_cli("convexity", "--field", "phiz", "--z", "0.3,0", "--base", "0.1,0,0,0.2", "--dir", "1,0,0.5,0")
    assert r.returncode == 0

    assert run_cli("check", "--point", "1,2").returncode == 2
    assert run_cli("suite", "--name", "bogus").returncode == 2
    assert run_cli("witness", "--point", "0.1,0,0,0,0,0").returncode == 1


@pytest.mark.skipif(not CLI, reason="command line tool not built")
def test_cli_reports_are_byte_identical():
    args = ("suite", "--name", "part1-foliation", "--n", "20", "--seed", "3", "--no-timing")
    a, b = run_cli(*args), run_cli(*args)
    assert a.returncode == 0
    assert a.stdout == b.stdout
