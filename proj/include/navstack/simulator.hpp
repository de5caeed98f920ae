#ifndef NAVSTACK_SIMULATOR_HPP_
#define NAVSTACK_SIMULATOR_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "navstack/ekf.hpp"
#include "navstack/geometry.hpp"
#include "navstack/odometry.hpp"
#include "navstack/planner.hpp"
#include "navstack/rng.hpp"
#include "navstack/scan_mapper.hpp"

namespace navstack {

enum class EstimatorType {
    OdometryOnly,
    Ekf,
};

enum class ControllerType {
    Lyapunov,        // polar goal-pose stabilization
    PotentialField,  // position-only attraction
};

struct SensorSetup {
    bool compass = true;
    bool lrf_range = false;
    bool lrf_bearing = false;
    bool camera_bearing = false;
    double lrf_max_range = 8.0;
    double lrf_fov = kPi;          // full field of view, centered on heading
    double camera_fov = 0.5 * kPi;
};

struct NoiseSpec {
    double wheel_delta = 0.0;         // delta of the wheel-speed noise model
    double compass_sigma = 0.0;       // rad
    double lrf_range_sigma = 0.0;     // m
    double lrf_bearing_sigma = 0.0;   // rad
    double camera_bearing_sigma = 0.0;  // rad

    void validate() const;
};

/// Fixed-bearing range beams standing in for the ultrasonic ring.
struct UltrasonicRing {
    std::vector<double> bearings;  // rad, robot frame
    double max_range = 2.0;
    double height = 0.3;  // beam height above the floor

    static UltrasonicRing default_ring();
};

struct MappingSetup {
    TiltMount mount;
    ScanConfig scan;
    double band_lo = 0.8;
    double band_hi = 1.2;
};

struct Scenario {
    std::string name = "scenario";
    Pose start;
    Pose goal;
    RobotGeometry geom;
    LyapunovGains gains;
    PotentialFieldParams pf;
    VelocityLimits limits;
    NoiseSpec noise;
    SensorSetup sensors;
    UltrasonicRing ultrasonic = UltrasonicRing::default_ring();
    MappingSetup mapping;
    World mapped_world;      // known when the tilt scan is taken
    World unexpected_world;  // present at run time but absent from the map
    std::vector<Landmark> landmarks;
    bool avoidance_enabled = false;
    double dt = 0.02;
    double t_max = 60.0;
    uint64_t seed = 1;
    EstimatorType estimator = EstimatorType::Ekf;
    ControllerType controller = ControllerType::Lyapunov;
    double goal_tolerance = 0.05;  // m, on the estimated distance to goal

    void validate() const;
};

struct LogRecord {
    double t = 0.0;
    Pose truth;
    Pose est;
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    double v = 0.0;
    double omega = 0.0;
    double rho = 0.0;
    double alpha = 0.0;
    double phi = 0.0;
    double lyapunov = 0.0;
    GuidanceMode mode = GuidanceMode::GoalSeek;
};

struct TrajectoryLog {
    std::vector<LogRecord> records;
    bool goal_reached = false;
    double min_clearance = 0.0;  // true center distance to the nearest obstacle surface
    ObstacleMap nav_map;         // slice-reduced map used for avoidance (may be empty)
};

/// Fourth-order (RK4) integration of the unicycle model over one step of
/// constant (v, omega).
Pose integrate_truth(const Pose& p, const VelocityCommand& cmd, double dt);

/// True measurement values plus Gaussian channel noise. Landmark channels are
/// emitted only for landmarks inside the sensor's range and field of view.
std::vector<Measurement> synthesize_measurements(const Pose& true_pose,
                                                 const std::vector<Landmark>& landmarks,
                                                 const NoiseSpec& noise,
                                                 const SensorSetup& sensors, Rng& rng);

TrajectoryLog run_scenario(const Scenario& s);

struct EstimatorStats {
    double final_rmse = 0.0;
    double trajectory_rmse = 0.0;
    double avg_nees = 0.0;  // meaningful for the EKF config only
};

struct MonteCarloSummary {
    int n_runs = 0;
    EstimatorStats odometry;
    EstimatorStats ekf;
};

/// Runs the scenario n_runs times under both estimator configurations with
/// per-run seeds derived from the scenario seed.
MonteCarloSummary monte_carlo(const Scenario& s, int n_runs);

void write_csv(std::ostream& os, const TrajectoryLog& log);

}  // namespace navstack

#endif  // NAVSTACK_SIMULATOR_HPP_
