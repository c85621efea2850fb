import math
import os
from pathlib import Path

import numpy as np
import pytest

import centrosec as cs

SPECS = Path(os.environ.get("CENTROSEC_SPECS", Path(__file__).resolve().parents[2] / "specs"))


def test_body_queries():
    cube = cs.ConvexBody.cube(2, 1.0)
    assert cube.kind == "hpolytope"
    assert cube.volume() == pytest.approx(4.0)
    th = math.radians(30)
    assert cube.support(np.array([math.cos(th), math.sin(th)])) == pytest.approx(1.3660254037844386)
    ell = cs.ConvexBody.ellipsoid_from_axes(np.array([2.0, 1.0]))
    assert ell.gauge(np.array([2.0, 0.0])) == pytest.approx(1.0)
    assert ell.touch_point(np.array([0.0, 1.0])) == pytest.approx([0.0, 1.0])
    assert cs.ConvexBody.v_polytope([np.array([1.0, 1.0]), np.array([1.0, -1.0])]).vertices.shape == (4, 2)


def test_sections_and_caps():
    ball = cs.ConvexBody.ball(3, 1.0)
    assert cs.cap_volume(ball, np.array([0.0, 0.0, 1.0]), 0.0) == pytest.approx(2 * math.pi / 3)
    s = cs.section(ball, np.array([1.0, 0.0, 0.0]), 0.6)
    assert s["measure"] == pytest.approx(math.pi * 0.64)
    assert s["centroid"] == pytest.approx([0.6, 0.0, 0.0])
    assert s["method"] == "analytic"
    x = np.array([1.0, 1.0]) / math.sqrt(2)
    rect = cs.ConvexBody.cube(2, 1.0)
    exact = cs.section(rect, x, 0.3)
    mc = cs.mc_section(rect, x, 0.3, samples=200000, thickness=1e-3, seed=3)
    assert abs(mc["measure"] - exact["measure"]) <= 4 * mc["measure_stderr"]


def test_gradient_matches_finite_differences():
    K = cs.ConvexBody.cube(3, 1.0)
    L = cs.ConvexBody.ellipsoid_from_axes(np.array([0.6, 0.5, 0.4]))
    z = np.array([0.3, -0.5, 0.8])
    z /= np.linalg.norm(z)
    e = cs.evaluate(K, L, z)
    fd = cs.fd_gradient(K, L, z, 1e-5)
    assert np.linalg.norm(e["gradient"] - fd) <= 1e-6 * max(1.0, np.linalg.norm(e["gradient"]))
    assert abs(e["gradient"] @ e["direction"]) < 1e-12


def test_solve_report_validates():
    K = cs.ConvexBody.ball(3, 1.0)
    L = cs.ConvexBody.ellipsoid_from_axes(np.array([0.6, 0.5, 0.4]))
    cfg = cs.SolverConfig()
    cfg.seed = 7
    rep = cs.solve(K, L, cfg)
    assert rep.certified and len(rep.pairs) == 3
    assert sorted(p.kind for p in rep.pairs) == ["max", "min", "saddle"]
    data = cs.report_dict(rep)
    assert data["schema"] == cs.REPORT_SCHEMA
    assert data["pair_count"] == 3
    assert rep.to_json() == cs.solve(K, L, cfg).to_json()


def test_spec_parsing_and_svg():
    spec = cs.parse_instance((SPECS / "square_disk.txt").read_text())
    rep = cs.solve(spec["K"], spec["L"], spec["config"])
    assert rep.certified
    assert rep.to_svg().count('class="centroid"') == len(rep.pairs)
    cs.report_dict(rep)
    with pytest.raises(cs.ParseError, match="line 5"):
        cs.parse_instance((SPECS / "bad_field.txt").read_text())


def test_grid_census_and_families():
    K, L = cs.generate_instance("polytope_in_ellipsoid_hull", 2, 5)
    roots = cs.grid_census(K, L, 2000)
    rep = cs.solve(K, L)
    assert len(roots) == len(rep.pairs)


def test_errors():
    with pytest.raises(cs.RejectedInstance, match="containment margin violated"):
        cs.evaluate(cs.ConvexBody.ball(2, 1.0), cs.ConvexBody.ball(2, 1.2), np.array([1.0, 0.0]))
    with pytest.raises(cs.UnsupportedRepresentation):
        cs.evaluate(cs.ConvexBody.ball(2, 2.0), cs.ConvexBody.cube(2, 1.0), np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        cs.ConvexBody.ball(2, -1.0)
