#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "navstack/app.hpp"
#include "navstack/ekf.hpp"
#include "navstack/geometry.hpp"
#include "navstack/odometry.hpp"
#include "navstack/planner.hpp"
#include "navstack/scan_mapper.hpp"
#include "navstack/scenario.hpp"
#include "navstack/scenes.hpp"
#include "navstack/simulator.hpp"

#include <nlohmann/json.hpp>

namespace py = pybind11;
using namespace navstack;

PYBIND11_MODULE(_navstack, m) {
    m.doc() = "Differential-drive navigation stack: EKF localization, tilt-scan "
              "mapping, potential-field avoidance, Lyapunov control, simulator";
    m.attr("__version__") = kToolVersion;

    // geometry
    py::class_<Point2>(m, "Point2")
        .def(py::init<double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0)
        .def_readwrite("x", &Point2::x)
        .def_readwrite("y", &Point2::y);
    py::class_<Point3>(m, "Point3")
        .def(py::init<double, double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0,
             py::arg("z") = 0.0)
        .def_readwrite("x", &Point3::x)
        .def_readwrite("y", &Point3::y)
        .def_readwrite("z", &Point3::z);
    py::class_<Pose>(m, "Pose")
        .def(py::init<double, double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0,
             py::arg("theta") = 0.0)
        .def_readwrite("x", &Pose::x)
        .def_readwrite("y", &Pose::y)
        .def_readwrite("theta", &Pose::theta)
        .def("__repr__", [](const Pose& p) {
            std::ostringstream os;
            os << "Pose(" << p.x << ", " << p.y << ", " << p.theta << ")";
            return os.str();
        });
    m.def("normalize_angle", &normalize_angle, py::arg("a"));
    m.def("bearing_to", &bearing_to, py::arg("from_"), py::arg("to"));

    // odometry
    py::class_<RobotGeometry>(m, "RobotGeometry")
        .def(py::init<>())
        .def_readwrite("wheel_radius", &RobotGeometry::wheel_radius)
        .def_readwrite("wheelbase", &RobotGeometry::wheelbase)
        .def_readwrite("body_radius", &RobotGeometry::body_radius)
        .def_readwrite("body_height", &RobotGeometry::body_height);
    py::class_<WheelSpeeds>(m, "WheelSpeeds")
        .def(py::init<double, double>(), py::arg("omega_left") = 0.0,
             py::arg("omega_right") = 0.0)
        .def_readwrite("omega_left", &WheelSpeeds::omega_left)
        .def_readwrite("omega_right", &WheelSpeeds::omega_right);
    py::class_<OdometryIncrement>(m, "OdometryIncrement")
        .def(py::init<>())
        .def_readwrite("ds_left", &OdometryIncrement::ds_left)
        .def_readwrite("ds_right", &OdometryIncrement::ds_right)
        .def_readwrite("ds", &OdometryIncrement::ds)
        .def_readwrite("dtheta", &OdometryIncrement::dtheta);
    m.def("wheel_increment", &wheel_increment, py::arg("u"), py::arg("dt"), py::arg("geom"));
    m.def("pose_update", &pose_update, py::arg("pose"), py::arg("increment"));
    m.def("process_jacobians", &process_jacobians, py::arg("pose"), py::arg("increment"),
          py::arg("geom"));

    // ekf
    py::enum_<Channel>(m, "Channel")
        .value("CompassHeading", Channel::CompassHeading)
        .value("LrfRange", Channel::LrfRange)
        .value("LrfBearing", Channel::LrfBearing)
        .value("CameraBearing", Channel::CameraBearing);
    py::class_<GaussianBelief>(m, "GaussianBelief")
        .def(py::init<>())
        .def_readwrite("mean", &GaussianBelief::mean)
        .def_readwrite("cov", &GaussianBelief::cov);
    py::class_<ProcessNoiseParams>(m, "ProcessNoiseParams")
        .def(py::init<double>(), py::arg("delta") = 0.01)
        .def_readwrite("delta", &ProcessNoiseParams::delta);
    py::class_<Measurement>(m, "Measurement")
        .def(py::init<>())
        .def_readwrite("channel", &Measurement::channel)
        .def_readwrite("value", &Measurement::value)
        .def_readwrite("variance", &Measurement::variance)
        .def_readwrite("landmark_id", &Measurement::landmark_id);
    py::class_<Landmark>(m, "Landmark")
        .def(py::init<>())
        .def_readwrite("id", &Landmark::id)
        .def_readwrite("position", &Landmark::position);
    m.def("process_noise_Q", &process_noise_Q, py::arg("u"), py::arg("params"));
    m.def("predict", &predict, py::arg("belief"), py::arg("u"), py::arg("dt"),
          py::arg("geom"), py::arg("params"));
    m.def(
        "measurement_predict",
        [](const Pose& mean, Channel ch, const std::optional<Landmark>& lm) {
            const auto mm = measurement_predict(mean, ch, lm);
            return py::make_tuple(mm.h, Eigen::RowVector3d(mm.H));
        },
        py::arg("mean"), py::arg("channel"), py::arg("landmark") = std::nullopt);
    py::enum_<CovarianceForm>(m, "CovarianceForm")
        .value("Simple", CovarianceForm::Simple)
        .value("Joseph", CovarianceForm::Joseph);
    m.def("build_R", &build_R, py::arg("measurements"));
    m.def("correct", &correct, py::arg("belief"), py::arg("measurements"), py::arg("map"),
          py::arg("form") = CovarianceForm::Simple);

    // scan mapper
    py::class_<TiltMount>(m, "TiltMount")
        .def(py::init<>())
        .def_readwrite("height", &TiltMount::height)
        .def_readwrite("tilt_alpha", &TiltMount::tilt_alpha)
        .def_readwrite("tilt_min", &TiltMount::tilt_min)
        .def_readwrite("tilt_max", &TiltMount::tilt_max);
    py::class_<ScanConfig>(m, "ScanConfig")
        .def(py::init<>())
        .def_readwrite("max_range", &ScanConfig::max_range)
        .def_readwrite("fov", &ScanConfig::fov)
        .def_readwrite("angular_resolution", &ScanConfig::angular_resolution)
        .def_readwrite("n_frames", &ScanConfig::n_frames)
        .def("beam_count", &ScanConfig::beam_count);
    py::class_<ScanFrame>(m, "ScanFrame")
        .def(py::init<>())
        .def_readwrite("tilt", &ScanFrame::tilt)
        .def_readwrite("points", &ScanFrame::points);
    py::class_<ObstacleMap>(m, "ObstacleMap")
        .def(py::init<>())
        .def_readwrite("points", &ObstacleMap::points);
    py::class_<Box>(m, "Box")
        .def(py::init<>())
        .def_readwrite("min", &Box::min)
        .def_readwrite("max", &Box::max);
    py::class_<Cylinder>(m, "Cylinder")
        .def(py::init<>())
        .def_readwrite("center", &Cylinder::center)
        .def_readwrite("radius", &Cylinder::radius)
        .def_readwrite("z_min", &Cylinder::z_min)
        .def_readwrite("z_max", &Cylinder::z_max);
    py::class_<World>(m, "World")
        .def(py::init<>())
        .def_readwrite("boxes", &World::boxes)
        .def_readwrite("cylinders", &World::cylinders);
    m.def("ground_intersection_distance", &ground_intersection_distance, py::arg("mount"));
    m.def("simulate_tilt_scan", &simulate_tilt_scan, py::arg("world"), py::arg("mount"),
          py::arg("config"), py::arg("sensor_pose"));
    m.def("slice_reduce", &slice_reduce, py::arg("frames"), py::arg("z_min"), py::arg("z_max"));

    // planner
    py::class_<NavVariables>(m, "NavVariables")
        .def(py::init<double, double, double>(), py::arg("rho") = 0.0,
             py::arg("alpha") = 0.0, py::arg("phi") = 0.0)
        .def_readwrite("rho", &NavVariables::rho)
        .def_readwrite("alpha", &NavVariables::alpha)
        .def_readwrite("phi", &NavVariables::phi);
    py::class_<LyapunovGains>(m, "LyapunovGains")
        .def(py::init<>())
        .def_readwrite("k_v", &LyapunovGains::k_v)
        .def_readwrite("k_alpha", &LyapunovGains::k_alpha)
        .def_readwrite("h_weight", &LyapunovGains::h_weight);
    py::class_<PotentialFieldParams>(m, "PotentialFieldParams")
        .def(py::init<>())
        .def_readwrite("k_att", &PotentialFieldParams::k_att)
        .def_readwrite("k_rep", &PotentialFieldParams::k_rep)
        .def_readwrite("d0", &PotentialFieldParams::d0)
        .def_readwrite("sector_half_angle", &PotentialFieldParams::sector_half_angle)
        .def_readwrite("d_min", &PotentialFieldParams::d_min);
    py::class_<VelocityCommand>(m, "VelocityCommand")
        .def(py::init<double, double>(), py::arg("v") = 0.0, py::arg("omega") = 0.0)
        .def_readwrite("v", &VelocityCommand::v)
        .def_readwrite("omega", &VelocityCommand::omega);
    py::class_<VelocityLimits>(m, "VelocityLimits")
        .def(py::init<>())
        .def_readwrite("v_max", &VelocityLimits::v_max)
        .def_readwrite("omega_max", &VelocityLimits::omega_max);
    py::class_<ObstacleReading>(m, "ObstacleReading")
        .def(py::init<double, double>(), py::arg("distance") = 0.0, py::arg("bearing") = 0.0)
        .def_readwrite("distance", &ObstacleReading::distance)
        .def_readwrite("bearing", &ObstacleReading::bearing);
    m.def("navigation_variables", &navigation_variables, py::arg("current"), py::arg("goal"));
    m.def("lyapunov_value", &lyapunov_value, py::arg("nav"), py::arg("gains"));
    m.def("lyapunov_control", &lyapunov_control, py::arg("nav"), py::arg("gains"),
          py::arg("limits") = VelocityLimits{});
    m.def("attractive_command", &attractive_command, py::arg("robot"), py::arg("goal"),
          py::arg("params"), py::arg("limits") = VelocityLimits{});
    m.def("repulsive_magnitude", &repulsive_magnitude, py::arg("d_obs"), py::arg("params"));
    m.def("avoidance_command", &avoidance_command, py::arg("robot"), py::arg("goal"),
          py::arg("readings"), py::arg("params"), py::arg("limits") = VelocityLimits{});

    // simulator
    py::enum_<GuidanceMode>(m, "GuidanceMode")
        .value("GoalSeek", GuidanceMode::GoalSeek)
        .value("Avoid", GuidanceMode::Avoid);
    py::class_<LogRecord>(m, "LogRecord")
        .def_readonly("t", &LogRecord::t)
        .def_readonly("truth", &LogRecord::truth)
        .def_readonly("est", &LogRecord::est)
        .def_readonly("cov", &LogRecord::cov)
        .def_readonly("v", &LogRecord::v)
        .def_readonly("omega", &LogRecord::omega)
        .def_readonly("rho", &LogRecord::rho)
        .def_readonly("alpha", &LogRecord::alpha)
        .def_readonly("phi", &LogRecord::phi)
        .def_readonly("lyapunov", &LogRecord::lyapunov)
        .def_readonly("mode", &LogRecord::mode);
    py::class_<TrajectoryLog>(m, "TrajectoryLog")
        .def_readonly("records", &TrajectoryLog::records)
        .def_readonly("goal_reached", &TrajectoryLog::goal_reached)
        .def_readonly("min_clearance", &TrajectoryLog::min_clearance)
        .def_readonly("nav_map", &TrajectoryLog::nav_map);
    py::class_<EstimatorStats>(m, "EstimatorStats")
        .def_readonly("final_rmse", &EstimatorStats::final_rmse)
        .def_readonly("trajectory_rmse", &EstimatorStats::trajectory_rmse)
        .def_readonly("avg_nees", &EstimatorStats::avg_nees);
    py::class_<MonteCarloSummary>(m, "MonteCarloSummary")
        .def_readonly("n_runs", &MonteCarloSummary::n_runs)
        .def_readonly("odometry", &MonteCarloSummary::odometry)
        .def_readonly("ekf", &MonteCarloSummary::ekf);
    m.def("integrate_truth", &integrate_truth, py::arg("pose"), py::arg("cmd"), py::arg("dt"));
    m.def(
        "load_scenario", [](const std::string& path) { return load_scenario(path); },
        py::arg("path"));
    m.def(
        "scenario_from_json_str",
        [](const std::string& text) {
            return scenario_from_json(nlohmann::json::parse(text));
        },
        py::arg("text"));
    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("name", &Scenario::name)
        .def_readwrite("start", &Scenario::start)
        .def_readwrite("goal", &Scenario::goal)
        .def_readwrite("seed", &Scenario::seed)
        .def_readwrite("dt", &Scenario::dt)
        .def_readwrite("t_max", &Scenario::t_max);
    m.def("run_scenario", &run_scenario, py::arg("scenario"));
    m.def("monte_carlo", &monte_carlo, py::arg("scenario"), py::arg("n_runs"));
}
