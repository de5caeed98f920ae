"""Smoke tests for the navstack python bindings."""

import json
import math

import pytest

import navstack as ns


def test_version():
    assert ns.__version__


def test_geometry():
    assert ns.normalize_angle(3 * math.pi) == pytest.approx(math.pi)
    assert ns.bearing_to(ns.Point2(0, 0), ns.Point2(0, 1)) == pytest.approx(math.pi / 2)
    with pytest.raises(ValueError):
        ns.bearing_to(ns.Point2(1, 1), ns.Point2(1, 1))


def test_odometry_roundtrip():
    geom = ns.RobotGeometry()
    inc = ns.wheel_increment(ns.WheelSpeeds(1.0, 1.0), 1.0, geom)
    assert inc.ds == pytest.approx(geom.wheel_radius)
    pose = ns.pose_update(ns.Pose(0, 0, 0), inc)
    assert pose.x == pytest.approx(geom.wheel_radius)
    assert pose.theta == pytest.approx(0.0)


def test_ekf_predict_grows_uncertainty():
    geom = ns.RobotGeometry()
    belief = ns.GaussianBelief()
    out = ns.predict(belief, ns.WheelSpeeds(2.0, 2.0), 0.1, geom, ns.ProcessNoiseParams(0.01))
    assert out.cov.trace() > 0.0


def test_lyapunov_control():
    nav = ns.navigation_variables(ns.Pose(0, 0, 0), ns.Pose(1, 0, 0))
    assert nav.rho == pytest.approx(1.0)
    cmd = ns.lyapunov_control(nav, ns.LyapunovGains())
    assert cmd.v > 0.0
    assert cmd.omega == pytest.approx(0.0)


def test_scan_pipeline():
    mount = ns.TiltMount()
    mount.tilt_alpha = math.atan(0.1)
    assert ns.ground_intersection_distance(mount) == pytest.approx(4.0)

    world = ns.World()
    box = ns.Box()
    box.min = ns.Point3(2.0, -2.0, 0.0)
    box.max = ns.Point3(2.2, 2.0, 3.0)
    world.boxes = [box]
    frames = ns.simulate_tilt_scan(world, ns.TiltMount(), ns.ScanConfig(), ns.Pose(0, 0, 0))
    assert len(frames) == 81
    # Downward tilts from the 0.4 m mount paint the wall below sensor height.
    nav_map = ns.slice_reduce(frames, 0.1, 0.4)
    assert len(nav_map.points) > 0
    assert all(abs(p.x - 2.0) < 1e-9 for p in nav_map.points)


def test_scenario_run_deterministic():
    doc = {
        "start": {"x": 0.0, "y": 0.0, "theta_deg": 0.0},
        "goal": {"x": 2.0, "y": 2.0, "theta_deg": 30.0},
        "noise": {"wheel_delta": 0.01, "compass_sigma": 0.02},
        "seed": 5,
    }
    scenario = ns.scenario_from_json_str(json.dumps(doc))
    log_a = ns.run_scenario(scenario)
    log_b = ns.run_scenario(scenario)
    assert log_a.goal_reached
    assert len(log_a.records) == len(log_b.records)
    for ra, rb in zip(log_a.records, log_b.records):
        assert ra.truth.x == rb.truth.x
        assert ra.est.theta == rb.est.theta


def test_monte_carlo_summary():
    doc = {
        "start": {"x": 0.0, "y": 0.0, "theta_deg": 0.0},
        "goal": {"x": 3.0, "y": 0.0, "theta_deg": 0.0},
        "controller": "potential_field",
        "noise": {"wheel_delta": 0.01, "compass_sigma": 0.02},
    }
    scenario = ns.scenario_from_json_str(json.dumps(doc))
    summary = ns.monte_carlo(scenario, 3)
    assert summary.n_runs == 3
    assert summary.ekf.trajectory_rmse >= 0.0
    assert summary.odometry.trajectory_rmse >= 0.0
