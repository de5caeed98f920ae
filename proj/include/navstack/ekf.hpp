#ifndef NAVSTACK_EKF_HPP_
#define NAVSTACK_EKF_HPP_

#include <Eigen/Core>
#include <optional>
#include <stdexcept>
#include <vector>

#include "navstack/geometry.hpp"
#include "navstack/odometry.hpp"

namespace navstack {

struct EkfDivergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Channel {
    CompassHeading,
    LrfRange,
    LrfBearing,
    CameraBearing,
};

/// Pose estimate with 3x3 covariance (m^2, m^2, rad^2 on the diagonal).
struct GaussianBelief {
    Pose mean;
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();

    void validate() const;
};

struct ProcessNoiseParams {
    double delta = 0.01;  // dimensionless scale on squared wheel speeds

    void validate() const {
        if (delta < 0.0) {
            throw std::invalid_argument("ProcessNoiseParams: delta must be >= 0");
        }
    }
};

struct Measurement {
    Channel channel = Channel::CompassHeading;
    double value = 0.0;     // rad or m, per channel
    double variance = 0.0;  // matching squared unit
    std::optional<int> landmark_id;
};

struct Landmark {
    int id = 0;
    Point2 position;
};

enum class CovarianceForm {
    Simple,  // (I - K H) P
    Joseph,  // (I - K H) P (I - K H)^T + K R K^T
};

/// Wheel-speed process noise covariance: diag(delta*wR^2, delta*wL^2).
Eigen::Matrix2d process_noise_Q(const WheelSpeeds& u, const ProcessNoiseParams& params);

/// Prediction step: propagates the mean through the midpoint motion model and
/// the covariance through its linearization. Wheel-speed noise with
/// covariance Q maps into the state through d f / d(omega_R, omega_L) =
/// dt * R * W, with W the displacement Jacobian.
GaussianBelief predict(const GaussianBelief& belief, const WheelSpeeds& u, double dt,
                       const RobotGeometry& geom, const ProcessNoiseParams& params);

struct MeasurementModel {
    double h = 0.0;
    Eigen::RowVector3d H = Eigen::RowVector3d::Zero();
};

/// Predicted measurement value and its 1x3 Jacobian row for one channel.
MeasurementModel measurement_predict(const Pose& mean, Channel channel,
                                     const std::optional<Landmark>& landmark = std::nullopt);

/// Diagonal measurement covariance, rows in the order of `measurements`.
Eigen::MatrixXd build_R(const std::vector<Measurement>& measurements);

/// Correction step over a stacked measurement vector. Angle residuals are
/// wrapped to (-pi, pi] before the gain is applied.
GaussianBelief correct(const GaussianBelief& belief,
                       const std::vector<Measurement>& measurements,
                       const std::vector<Landmark>& map,
                       CovarianceForm form = CovarianceForm::Simple);

inline bool is_angular(Channel c) {
    return c != Channel::LrfRange;
}

}  // namespace navstack

#endif  // NAVSTACK_EKF_HPP_
