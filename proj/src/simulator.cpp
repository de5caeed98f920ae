#include "navstack/simulator.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace navstack {

namespace {

double clamp(double v, double lo, double hi) {
    return std::min(std::max(v, lo), hi);
}

// 2D distance from a point to the footprint of an obstacle, restricted to
// obstacles overlapping the robot's height span.
double footprint_distance(const Point2& p, const World& world, double body_height) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : world.boxes) {
        if (b.min.z >= body_height || b.max.z <= 0.0) {
            continue;
        }
        const double dx = std::max({b.min.x - p.x, 0.0, p.x - b.max.x});
        const double dy = std::max({b.min.y - p.y, 0.0, p.y - b.max.y});
        best = std::min(best, std::hypot(dx, dy));
    }
    for (const auto& c : world.cylinders) {
        if (c.z_min >= body_height || c.z_max <= 0.0) {
            continue;
        }
        best = std::min(best, std::max(0.0, distance(p, c.center) - c.radius));
    }
    return best;
}

std::vector<ObstacleReading> ultrasonic_readings(const Pose& truth, const World& world,
                                                 const UltrasonicRing& ring) {
    std::vector<ObstacleReading> out;
    const Point3 origin{truth.x, truth.y, ring.height};
    for (double b : ring.bearings) {
        const double az = truth.theta + b;
        const Point3 dir{std::cos(az), std::sin(az), 0.0};
        double t = 0.0;
        if (raycast(world, origin, dir, ring.max_range, t)) {
            out.push_back({t, b});
        }
    }
    return out;
}

void map_readings(const Pose& est, const ObstacleMap& map, double lookahead,
                  std::vector<ObstacleReading>& out) {
    for (const auto& p : map.points) {
        const double d = distance({est.x, est.y}, p);
        if (d < 1e-9 || d > lookahead) {
            continue;
        }
        const double bearing = normalize_angle(bearing_to({est.x, est.y}, p) - est.theta);
        out.push_back({d, bearing});
    }
}

World merged(const World& a, const World& b) {
    World w = a;
    w.boxes.insert(w.boxes.end(), b.boxes.begin(), b.boxes.end());
    w.cylinders.insert(w.cylinders.end(), b.cylinders.begin(), b.cylinders.end());
    return w;
}

double channel_variance(double sigma) {
    return sigma > 0.0 ? sigma * sigma : 1e-12;
}

}  // namespace

void NoiseSpec::validate() const {
    if (wheel_delta < 0.0 || compass_sigma < 0.0 || lrf_range_sigma < 0.0 ||
        lrf_bearing_sigma < 0.0 || camera_bearing_sigma < 0.0) {
        throw std::invalid_argument("NoiseSpec: all entries must be >= 0");
    }
}

UltrasonicRing UltrasonicRing::default_ring() {
    UltrasonicRing ring;
    const double deg = kPi / 180.0;
    // Front and side coverage; the reference layout has no rear sensors.
    ring.bearings = {-90.0 * deg, -60.0 * deg, -30.0 * deg, -10.0 * deg,
                     10.0 * deg,  30.0 * deg,  60.0 * deg,  90.0 * deg};
    return ring;
}

void Scenario::validate() const {
    geom.validate();
    gains.validate();
    pf.validate();
    noise.validate();
    if (!(dt > 0.0) || dt > 0.1) {
        throw std::invalid_argument("Scenario: dt must lie in (0, 0.1]");
    }
    if (!(t_max > 0.0)) {
        throw std::invalid_argument("Scenario: t_max must be positive");
    }
    if (!(goal_tolerance > 0.0)) {
        throw std::invalid_argument("Scenario: goal_tolerance must be positive");
    }
}

Pose integrate_truth(const Pose& p, const VelocityCommand& cmd, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("integrate_truth: dt must be positive");
    }
    const auto deriv = [&cmd](const Pose& q) {
        return Pose{cmd.v * std::cos(q.theta), cmd.v * std::sin(q.theta), cmd.omega};
    };
    const auto advance = [](const Pose& q, const Pose& d, double h) {
        return Pose{q.x + h * d.x, q.y + h * d.y, q.theta + h * d.theta};
    };
    const Pose k1 = deriv(p);
    const Pose k2 = deriv(advance(p, k1, 0.5 * dt));
    const Pose k3 = deriv(advance(p, k2, 0.5 * dt));
    const Pose k4 = deriv(advance(p, k3, dt));
    Pose out;
    out.x = p.x + dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    out.y = p.y + dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
    out.theta = normalize_angle(p.theta + dt / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta));
    return out;
}

std::vector<Measurement> synthesize_measurements(const Pose& true_pose,
                                                 const std::vector<Landmark>& landmarks,
                                                 const NoiseSpec& noise,
                                                 const SensorSetup& sensors, Rng& rng) {
    std::vector<Measurement> out;
    if (sensors.compass) {
        Measurement m;
        m.channel = Channel::CompassHeading;
        m.value = normalize_angle(true_pose.theta + rng.gaussian(noise.compass_sigma));
        m.variance = channel_variance(noise.compass_sigma);
        out.push_back(m);
    }
    for (const auto& lm : landmarks) {
        const double d = distance({true_pose.x, true_pose.y}, lm.position);
        if (d < 1e-9 || d > sensors.lrf_max_range) {
            continue;
        }
        const double bearing =
            normalize_angle(bearing_to({true_pose.x, true_pose.y}, lm.position) - true_pose.theta);
        if (sensors.lrf_range && std::abs(bearing) <= 0.5 * sensors.lrf_fov) {
            Measurement m;
            m.channel = Channel::LrfRange;
            m.value = d + rng.gaussian(noise.lrf_range_sigma);
            m.variance = channel_variance(noise.lrf_range_sigma);
            m.landmark_id = lm.id;
            out.push_back(m);
        }
        if (sensors.lrf_bearing && std::abs(bearing) <= 0.5 * sensors.lrf_fov) {
            Measurement m;
            m.channel = Channel::LrfBearing;
            m.value = normalize_angle(bearing + rng.gaussian(noise.lrf_bearing_sigma));
            m.variance = channel_variance(noise.lrf_bearing_sigma);
            m.landmark_id = lm.id;
            out.push_back(m);
        }
        if (sensors.camera_bearing && std::abs(bearing) <= 0.5 * sensors.camera_fov) {
            Measurement m;
            m.channel = Channel::CameraBearing;
            m.value = normalize_angle(bearing + rng.gaussian(noise.camera_bearing_sigma));
            m.variance = channel_variance(noise.camera_bearing_sigma);
            m.landmark_id = lm.id;
            out.push_back(m);
        }
    }
    return out;
}

TrajectoryLog run_scenario(const Scenario& s) {
    s.validate();

    Rng rng_process(Rng::derive_seed(s.seed, 1));
    Rng rng_measure(Rng::derive_seed(s.seed, 2));

    TrajectoryLog log;
    const World full_world = merged(s.mapped_world, s.unexpected_world);
    if (s.avoidance_enabled) {
        // Mapping scan taken at rest from the start position, facing the goal.
        Pose scan_pose = s.start;
        if (distance({s.start.x, s.start.y}, {s.goal.x, s.goal.y}) > kEpsGoal) {
            scan_pose.theta = bearing_to({s.start.x, s.start.y}, {s.goal.x, s.goal.y});
        }
        const auto frames =
            simulate_tilt_scan(s.mapped_world, s.mapping.mount, s.mapping.scan, scan_pose);
        log.nav_map = slice_reduce(frames, s.mapping.band_lo, s.mapping.band_hi);
    }

    Pose truth = s.start;
    GaussianBelief belief;
    belief.mean = s.start;
    belief.cov = 1e-6 * Eigen::Matrix3d::Identity();
    const ProcessNoiseParams q_params{s.noise.wheel_delta};

    GuidanceSelector selector;
    log.min_clearance = footprint_distance({truth.x, truth.y}, full_world, s.geom.body_height);

    const int max_steps = static_cast<int>(std::ceil(s.t_max / s.dt));
    const double map_lookahead = 1.5;

    for (int step = 0; step <= max_steps; ++step) {
        const double t = step * s.dt;
        const NavVariables nav = navigation_variables(belief.mean, s.goal);

        LogRecord rec;
        rec.t = t;
        rec.truth = truth;
        rec.est = belief.mean;
        rec.cov = belief.cov;
        rec.rho = nav.rho;
        rec.alpha = nav.alpha;
        rec.phi = nav.phi;
        rec.lyapunov = lyapunov_value(nav, s.gains);

        if (nav.rho < s.goal_tolerance) {
            rec.mode = selector.mode();
            log.records.push_back(rec);
            log.goal_reached = true;
            break;
        }
        if (step == max_steps) {
            rec.mode = selector.mode();
            log.records.push_back(rec);
            break;
        }

        std::vector<ObstacleReading> readings;
        GuidanceMode mode = GuidanceMode::GoalSeek;
        if (s.avoidance_enabled) {
            readings = ultrasonic_readings(truth, full_world, s.ultrasonic);
            map_readings(belief.mean, log.nav_map, map_lookahead, readings);
            mode = selector.update(readings, s.pf);
        }

        VelocityCommand cmd;
        if (mode == GuidanceMode::Avoid) {
            cmd = avoidance_command(belief.mean, {s.goal.x, s.goal.y}, readings, s.pf, s.limits);
        } else if (s.controller == ControllerType::PotentialField) {
            cmd = attractive_command(belief.mean, {s.goal.x, s.goal.y}, s.pf, s.limits);
        } else {
            cmd = lyapunov_control(nav, s.gains, s.limits);
        }

        rec.v = cmd.v;
        rec.omega = cmd.omega;
        rec.mode = mode;
        log.records.push_back(rec);

        // Actuate: wheel-speed noise with variance delta*omega^2 per wheel.
        const WheelSpeeds u_cmd = wheel_speeds_from_command(cmd.v, cmd.omega, s.geom);
        WheelSpeeds u_act = u_cmd;
        if (s.noise.wheel_delta > 0.0) {
            u_act.omega_right +=
                rng_process.gaussian(std::sqrt(s.noise.wheel_delta) * std::abs(u_cmd.omega_right));
            u_act.omega_left +=
                rng_process.gaussian(std::sqrt(s.noise.wheel_delta) * std::abs(u_cmd.omega_left));
        }
        const double v_act = 0.5 * s.geom.wheel_radius * (u_act.omega_left + u_act.omega_right);
        const double w_act =
            s.geom.wheel_radius * (u_act.omega_right - u_act.omega_left) / s.geom.wheelbase;
        truth = integrate_truth(truth, {v_act, w_act}, s.dt);
        log.min_clearance = std::min(
            log.min_clearance, footprint_distance({truth.x, truth.y}, full_world, s.geom.body_height));

        // Estimate: predict on the commanded speeds, correct on synthesized
        // absolute measurements (odometry-only skips correction).
        belief = predict(belief, u_cmd, s.dt, s.geom, q_params);
        if (s.estimator == EstimatorType::Ekf) {
            const auto measurements =
                synthesize_measurements(truth, s.landmarks, s.noise, s.sensors, rng_measure);
            if (!measurements.empty()) {
                belief = correct(belief, measurements, s.landmarks);
            }
        }
    }
    return log;
}

MonteCarloSummary monte_carlo(const Scenario& s, int n_runs) {
    if (n_runs < 1) {
        throw std::invalid_argument("monte_carlo: n_runs must be >= 1");
    }
    MonteCarloSummary summary;
    summary.n_runs = n_runs;

    for (int config = 0; config < 2; ++config) {
        Scenario sc = s;
        sc.estimator = config == 0 ? EstimatorType::OdometryOnly : EstimatorType::Ekf;
        double final_sq = 0.0;
        double traj_sq = 0.0;
        double nees_sum = 0.0;
        long traj_n = 0;
        long nees_n = 0;
        for (int i = 0; i < n_runs; ++i) {
            sc.seed = Rng::derive_seed(s.seed, static_cast<uint64_t>(i) + 10);
            const TrajectoryLog log = run_scenario(sc);
            const LogRecord& last = log.records.back();
            final_sq += std::pow(last.est.x - last.truth.x, 2) +
                        std::pow(last.est.y - last.truth.y, 2);
            for (const auto& r : log.records) {
                traj_sq += std::pow(r.est.x - r.truth.x, 2) + std::pow(r.est.y - r.truth.y, 2);
                ++traj_n;
                if (sc.estimator == EstimatorType::Ekf && r.t > 0.0) {
                    Eigen::Vector3d e(r.est.x - r.truth.x, r.est.y - r.truth.y,
                                      normalize_angle(r.est.theta - r.truth.theta));
                    nees_sum += e.dot(r.cov.ldlt().solve(e));
                    ++nees_n;
                }
            }
        }
        EstimatorStats stats;
        stats.final_rmse = std::sqrt(final_sq / n_runs);
        stats.trajectory_rmse = std::sqrt(traj_sq / std::max(traj_n, 1L));
        stats.avg_nees = nees_n > 0 ? nees_sum / nees_n : 0.0;
        if (sc.estimator == EstimatorType::OdometryOnly) {
            summary.odometry = stats;
        } else {
            summary.ekf = stats;
        }
    }
    return summary;
}

void write_csv(std::ostream& os, const TrajectoryLog& log) {
    os << "t,x_true,y_true,theta_true,x_est,y_est,theta_est,cov_trace,v,omega,"
          "rho,alpha,phi,V,mode\n";
    os.precision(17);
    for (const auto& r : log.records) {
        os << r.t << "," << r.truth.x << "," << r.truth.y << "," << r.truth.theta << ","
           << r.est.x << "," << r.est.y << "," << r.est.theta << "," << r.cov.trace() << ","
           << r.v << "," << r.omega << "," << r.rho << "," << r.alpha << "," << r.phi << ","
           << r.lyapunov << "," << (r.mode == GuidanceMode::Avoid ? "AVOID" : "GOAL_SEEK")
           << "\n";
    }
}

}  // namespace navstack
