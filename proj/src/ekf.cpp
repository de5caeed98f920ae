#include "navstack/ekf.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace navstack {

namespace {

constexpr double kSymmetryTol = 1e-9;
constexpr double kPsdTol = -1e-12;
constexpr double kMaxCondition = 1e12;

Eigen::Matrix3d symmetrize(const Eigen::Matrix3d& P) {
    return 0.5 * (P + P.transpose());
}

void check_psd(const Eigen::Matrix3d& P, const char* where) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(P);
    if (es.eigenvalues().minCoeff() < kPsdTol) {
        throw EkfDivergence(std::string(where) + ": covariance lost positive semidefiniteness");
    }
}

const Landmark& resolve_landmark(const Measurement& m, const std::vector<Landmark>& map) {
    if (!m.landmark_id) {
        throw std::invalid_argument("correct: landmark channel without landmark_id");
    }
    for (const auto& lm : map) {
        if (lm.id == *m.landmark_id) {
            return lm;
        }
    }
    throw std::invalid_argument("correct: unknown landmark_id " + std::to_string(*m.landmark_id));
}

}  // namespace

void GaussianBelief::validate() const {
    if (!std::isfinite(mean.x) || !std::isfinite(mean.y) || !std::isfinite(mean.theta)) {
        throw std::invalid_argument("GaussianBelief: non-finite mean");
    }
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
        throw std::invalid_argument("GaussianBelief: covariance not symmetric");
    }
    check_psd(symmetrize(cov), "GaussianBelief");
}

Eigen::Matrix2d process_noise_Q(const WheelSpeeds& u, const ProcessNoiseParams& params) {
    params.validate();
    Eigen::Matrix2d Q = Eigen::Matrix2d::Zero();
    Q(0, 0) = params.delta * u.omega_right * u.omega_right;
    Q(1, 1) = params.delta * u.omega_left * u.omega_left;
    return Q;
}

GaussianBelief predict(const GaussianBelief& belief, const WheelSpeeds& u, double dt,
                       const RobotGeometry& geom, const ProcessNoiseParams& params) {
    const OdometryIncrement inc = wheel_increment(u, dt, geom);
    const auto [A, W] = process_jacobians(belief.mean, inc, geom);
    const Eigen::Matrix2d Q = process_noise_Q(u, params);

    // Speed noise -> displacement noise through ds = dt*R*omega.
    const Eigen::Matrix<double, 3, 2> M = dt * geom.wheel_radius * W;

    GaussianBelief out;
    out.mean = pose_update(belief.mean, inc);
    out.cov = symmetrize(A * belief.cov * A.transpose() + M * Q * M.transpose());
    check_psd(out.cov, "predict");
    return out;
}

MeasurementModel measurement_predict(const Pose& mean, Channel channel,
                                     const std::optional<Landmark>& landmark) {
    MeasurementModel mm;
    if (channel == Channel::CompassHeading) {
        mm.h = mean.theta;
        mm.H << 0.0, 0.0, 1.0;
        return mm;
    }
    if (!landmark) {
        throw std::invalid_argument("measurement_predict: landmark channel requires a landmark");
    }
    const double dx = landmark->position.x - mean.x;
    const double dy = landmark->position.y - mean.y;
    const double d2 = dx * dx + dy * dy;
    const double d = std::sqrt(d2);
    if (d < 1e-12) {
        throw std::invalid_argument("measurement_predict: robot coincident with landmark");
    }
    if (channel == Channel::LrfRange) {
        mm.h = d;
        mm.H << -dx / d, -dy / d, 0.0;
    } else {  // LrfBearing or CameraBearing: same bearing model
        mm.h = normalize_angle(std::atan2(dy, dx) - mean.theta);
        mm.H << dy / d2, -dx / d2, -1.0;
    }
    return mm;
}

Eigen::MatrixXd build_R(const std::vector<Measurement>& measurements) {
    const auto n = static_cast<Eigen::Index>(measurements.size());
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double var = measurements[static_cast<size_t>(i)].variance;
        if (!(var > 0.0)) {
            throw std::invalid_argument("build_R: variances must be positive");
        }
        R(i, i) = var;
    }
    return R;
}

GaussianBelief correct(const GaussianBelief& belief,
                       const std::vector<Measurement>& measurements,
                       const std::vector<Landmark>& map, CovarianceForm form) {
    const auto n = static_cast<Eigen::Index>(measurements.size());
    if (n == 0) {
        return belief;
    }

    Eigen::MatrixXd H(n, 3);
    Eigen::VectorXd innovation(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Measurement& m = measurements[static_cast<size_t>(i)];
        std::optional<Landmark> lm;
        if (m.channel != Channel::CompassHeading) {
            lm = resolve_landmark(m, map);
        }
        const MeasurementModel mm = measurement_predict(belief.mean, m.channel, lm);
        H.row(i) = mm.H;
        double resid = m.value - mm.h;
        if (is_angular(m.channel)) {
            resid = normalize_angle(resid);
        }
        innovation(i) = resid;
    }
    const Eigen::MatrixXd R = build_R(measurements);

    const Eigen::Matrix3d P = symmetrize(belief.cov);
    const Eigen::MatrixXd S = H * P * H.transpose() + R;  // V = I: additive noise

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(S, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (!(smin > 0.0) || smax / smin > kMaxCondition) {
        throw EkfDivergence("correct: innovation covariance is ill-conditioned");
    }

    const Eigen::Matrix<double, 3, Eigen::Dynamic> K =
        P * H.transpose() * S.inverse();
    const Eigen::Vector3d dx = K * innovation;

    GaussianBelief out;
    out.mean.x = belief.mean.x + dx(0);
    out.mean.y = belief.mean.y + dx(1);
    out.mean.theta = normalize_angle(belief.mean.theta + dx(2));

    const Eigen::Matrix3d IKH = Eigen::Matrix3d::Identity() - K * H;
    if (form == CovarianceForm::Joseph) {
        out.cov = symmetrize(IKH * P * IKH.transpose() + K * R * K.transpose());
    } else {
        out.cov = symmetrize(IKH * P);
    }
    check_psd(out.cov, "correct");
    return out;
}

}  // namespace navstack
