#include <doctest.h>

#include <Eigen/Dense>

#include "navstack/ekf.hpp"
#include "test_util.hpp"

using namespace navstack;

namespace {

const RobotGeometry kGeom{0.1, 0.5, 0.25, 1.0};

GaussianBelief belief_at(const Pose& p, const Eigen::Matrix3d& P) {
    GaussianBelief b;
    b.mean = p;
    b.cov = P;
    return b;
}

}  // namespace

TEST_CASE("process_noise_Q matches the wheel-speed model") {
    const Eigen::Matrix2d Q = process_noise_Q({1.0, 2.0}, {0.01});
    CHECK(Q(0, 0) == doctest::Approx(0.04));  // right wheel first
    CHECK(Q(1, 1) == doctest::Approx(0.01));
    CHECK(Q(0, 1) == 0.0);
    CHECK(process_noise_Q({0, 0}, {0.01}).norm() == 0.0);
    CHECK(process_noise_Q({5, -3}, {0.0}).norm() == 0.0);
}

TEST_CASE("predict") {
    SUBCASE("zero speeds leave the belief unchanged") {
        const auto b = belief_at({1, 2, 0.5}, 0.3 * Eigen::Matrix3d::Identity());
        const auto out = predict(b, {0, 0}, 0.1, kGeom, {0.05});
        CHECK(out.mean.x == doctest::Approx(1.0));
        CHECK(out.mean.y == doctest::Approx(2.0));
        CHECK(out.mean.theta == doctest::Approx(0.5));
        CHECK((out.cov - b.cov).norm() == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("straight motion from zero covariance gives rank <= 2 noise") {
        const auto b = belief_at({0, 0, 0}, Eigen::Matrix3d::Zero());
        const auto out = predict(b, {2, 2}, 0.1, kGeom, {0.01});
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(out.cov);
        int rank = 0;
        for (int i = 0; i < 3; ++i) {
            if (es.eigenvalues()(i) > 1e-15) {
                ++rank;
            }
        }
        CHECK(rank <= 2);
        CHECK(out.cov.trace() > 0.0);
    }
    SUBCASE("trace never shrinks below the propagated prior") {
        Rng rng(9);
        for (int i = 0; i < 200; ++i) {
            Eigen::Matrix3d M;
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) {
                    M(r, c) = testutil::uniform(rng, -0.3, 0.3);
                }
            }
            const Eigen::Matrix3d P = M * M.transpose();
            const auto b = belief_at({0, 0, testutil::uniform(rng, -3, 3)}, P);
            const WheelSpeeds u{testutil::uniform(rng, -5, 5), testutil::uniform(rng, -5, 5)};
            const auto out = predict(b, u, 0.02, kGeom, {0.01});
            const auto inc = wheel_increment(u, 0.02, kGeom);
            const auto [A, W] = process_jacobians(b.mean, inc, kGeom);
            CHECK(out.cov.trace() >= (A * P * A.transpose()).trace() - 1e-12);
            // invariants after every predict
            CHECK((out.cov - out.cov.transpose()).cwiseAbs().maxCoeff() < 1e-9);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(out.cov);
            CHECK(es.eigenvalues().minCoeff() >= -1e-12);
        }
    }
}

TEST_CASE("measurement_predict values and Jacobians") {
    SUBCASE("compass") {
        const auto mm = measurement_predict({0, 0, 0}, Channel::CompassHeading);
        CHECK(mm.h == 0.0);
        CHECK(mm.H(2) == 1.0);
        CHECK(mm.H(0) == 0.0);
    }
    SUBCASE("range to (3,4)") {
        const auto mm =
            measurement_predict({0, 0, 0}, Channel::LrfRange, Landmark{1, {3, 4}});
        CHECK(mm.h == doctest::Approx(5.0));
        CHECK(mm.H(0) == doctest::Approx(-0.6));
        CHECK(mm.H(1) == doctest::Approx(-0.8));
        CHECK(mm.H(2) == doctest::Approx(0.0));
    }
    SUBCASE("bearing dead ahead") {
        const auto mm =
            measurement_predict({0, 0, 0}, Channel::LrfBearing, Landmark{1, {1, 0}});
        CHECK(mm.h == doctest::Approx(0.0));
    }
    SUBCASE("coincident landmark rejected") {
        CHECK_THROWS_AS(
            measurement_predict({3, 4, 0}, Channel::LrfRange, Landmark{1, {3, 4}}),
            std::invalid_argument);
    }
    SUBCASE("H rows match finite differences on random states") {
        Rng rng(21);
        const Landmark lm{1, {2.0, -1.0}};
        for (Channel ch : {Channel::LrfRange, Channel::LrfBearing, Channel::CameraBearing,
                           Channel::CompassHeading}) {
            for (int i = 0; i < 300; ++i) {
                const Pose p{testutil::uniform(rng, -5, 5), testutil::uniform(rng, -5, 5),
                             testutil::uniform(rng, -2, 2)};
                if (ch != Channel::CompassHeading &&
                    distance({p.x, p.y}, lm.position) < 0.2) {
                    continue;
                }
                std::optional<Landmark> arg;
                if (ch != Channel::CompassHeading) {
                    arg = lm;
                }
                const auto mm = measurement_predict(p, ch, arg);
                const auto f = [&](const Eigen::VectorXd& x) {
                    const auto m2 = measurement_predict({x(0), x(1), x(2)}, ch, arg);
                    Eigen::VectorXd out(1);
                    // unwrap relative to the reference to keep FD smooth
                    out(0) = ch == Channel::LrfRange
                                 ? m2.h
                                 : mm.h + normalize_angle(m2.h - mm.h);
                    return out;
                };
                Eigen::VectorXd x0(3);
                x0 << p.x, p.y, p.theta;
                const Eigen::MatrixXd H_fd = testutil::fd_jacobian(f, x0);
                CHECK((mm.H.transpose() - H_fd.transpose()).cwiseAbs().maxCoeff() <
                      1e-6 * std::max(1.0, H_fd.cwiseAbs().maxCoeff()));
            }
        }
    }
}

TEST_CASE("build_R") {
    const std::vector<Measurement> ms{
        {Channel::CompassHeading, 0.0, 0.01, std::nullopt},
        {Channel::LrfRange, 1.0, 0.02, 1},
        {Channel::LrfBearing, 0.0, 0.03, 1},
    };
    const Eigen::MatrixXd R = build_R(ms);
    CHECK(R.rows() == 3);
    CHECK(R(0, 0) == 0.01);
    CHECK(R(1, 1) == 0.02);
    CHECK(R(2, 2) == 0.03);
    CHECK(R(0, 1) == 0.0);

    std::vector<Measurement> bad = ms;
    bad[1].variance = 0.0;
    CHECK_THROWS_AS(build_R(bad), std::invalid_argument);
}

TEST_CASE("correct") {
    const std::vector<Landmark> map{{1, {3, 4}}};
    SUBCASE("scalar compass update by hand") {
        // P restricted to theta = 1, compass R = 1 -> gain 0.5, posterior 0.5.
        Eigen::Matrix3d P = Eigen::Matrix3d::Zero();
        P(2, 2) = 1.0;
        const auto b = belief_at({0, 0, 0}, P);
        const auto out = correct(b, {{Channel::CompassHeading, 0.4, 1.0, std::nullopt}}, map);
        CHECK(out.mean.theta == doctest::Approx(0.2));
        CHECK(out.cov(2, 2) == doctest::Approx(0.5));
    }
    SUBCASE("uninformative measurement leaves belief unchanged") {
        const auto b = belief_at({1, 1, 0.3}, 0.01 * Eigen::Matrix3d::Identity());
        const auto out =
            correct(b, {{Channel::CompassHeading, 2.0, 1e10, std::nullopt}}, map);
        CHECK(out.mean.theta == doctest::Approx(0.3).epsilon(1e-3));
        CHECK(out.cov(2, 2) == doctest::Approx(0.01).epsilon(1e-3));
    }
    SUBCASE("near-perfect measurement pins the state") {
        const auto b = belief_at({0, 0, 0.5}, Eigen::Matrix3d::Identity());
        const auto out =
            correct(b, {{Channel::CompassHeading, 1.0, 1e-10, std::nullopt}}, map);
        CHECK(out.mean.theta == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("correction never increases the covariance trace") {
        Rng rng(33);
        for (int i = 0; i < 200; ++i) {
            Eigen::Matrix3d M;
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) {
                    M(r, c) = testutil::uniform(rng, -0.3, 0.3);
                }
            }
            const Eigen::Matrix3d P =
                M * M.transpose() + 1e-6 * Eigen::Matrix3d::Identity();
            const auto b = belief_at({0, 0, 0.1}, P);
            const std::vector<Measurement> ms{
                {Channel::CompassHeading, testutil::uniform(rng, -0.5, 0.5), 0.05,
                 std::nullopt},
                {Channel::LrfRange, 5.0 + testutil::uniform(rng, -0.2, 0.2), 0.05, 1},
            };
            const auto out = correct(b, ms, map);
            CHECK(out.cov.trace() <= P.trace() + 1e-12);
            CHECK((out.cov - out.cov.transpose()).cwiseAbs().maxCoeff() < 1e-9);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(out.cov);
            CHECK(es.eigenvalues().minCoeff() >= -1e-12);
        }
    }
    SUBCASE("joint vs sequential scalar corrections agree to first order") {
        const auto b = belief_at({0, 0, 0}, 0.01 * Eigen::Matrix3d::Identity());
        const Measurement compass{Channel::CompassHeading, 0.005, 0.1, std::nullopt};
        const Measurement range{Channel::LrfRange, 5.002, 0.1, 1};
        const auto joint = correct(b, {compass, range}, map);
        const auto seq = correct(correct(b, {compass}, map), {range}, map);
        CHECK(joint.mean.x == doctest::Approx(seq.mean.x).epsilon(1e-6));
        CHECK(joint.mean.y == doctest::Approx(seq.mean.y).epsilon(1e-6));
        CHECK(joint.mean.theta == doctest::Approx(seq.mean.theta).epsilon(1e-6));
    }
    SUBCASE("simple and Joseph forms agree on well-conditioned cases") {
        const auto b = belief_at({0, 0, 0}, 0.1 * Eigen::Matrix3d::Identity());
        const std::vector<Measurement> ms{
            {Channel::CompassHeading, 0.1, 0.05, std::nullopt},
            {Channel::LrfBearing, 0.9, 0.05, 1},
        };
        const auto simple = correct(b, ms, map, CovarianceForm::Simple);
        const auto joseph = correct(b, ms, map, CovarianceForm::Joseph);
        CHECK((simple.cov - joseph.cov).cwiseAbs().maxCoeff() < 1e-9);
    }
    SUBCASE("angle residuals are wrapped") {
        // Measured heading just past +pi vs mean just below -pi: the residual
        // is tiny, not ~2*pi.
        const auto b = belief_at({0, 0, normalize_angle(kPi - 0.01)},
                                 0.1 * Eigen::Matrix3d::Identity());
        const auto out = correct(
            b, {{Channel::CompassHeading, normalize_angle(-kPi + 0.01), 0.01, std::nullopt}},
            map);
        CHECK(std::abs(normalize_angle(out.mean.theta - kPi)) < 0.02);
    }
    SUBCASE("unknown landmark id rejected") {
        const auto b = belief_at({0, 0, 0}, Eigen::Matrix3d::Identity());
        CHECK_THROWS_AS(correct(b, {{Channel::LrfRange, 5.0, 0.1, 99}}, map),
                        std::invalid_argument);
    }
    SUBCASE("ill-conditioned innovation covariance raises divergence") {
        const auto b = belief_at({0, 0, 0}, Eigen::Matrix3d::Zero());
        const std::vector<Measurement> ms{
            {Channel::CompassHeading, 0.0, 1e-30, std::nullopt},
            {Channel::LrfRange, 5.0, 1.0, 1},
        };
        CHECK_THROWS_AS(correct(b, ms, map), EkfDivergence);
    }
}
