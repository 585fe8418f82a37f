#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "omav/control/care.hpp"
#include "omav/control/feedback_linearization.hpp"
#include "omav/control/gains_json.hpp"
#include "omav/control/lqri.hpp"
#include "omav/control/pid.hpp"
#include "omav/core/dynamics.hpp"
#include "omav/core/so3.hpp"

using namespace omav;
using namespace omav::control;

namespace {

Vec3 randomVec(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return Vec3(u(rng), u(rng), u(rng));
}

RigidBodyParams bodyParams() {
  RigidBodyParams p;
  p.mass = 4.27;
  p.inertia = Vec3(0.086, 0.088, 0.16).asDiagonal();
  p.r_com = Vec3(0.01, -0.02, 0.005);
  return p;
}

}  // namespace

TEST_SUITE("control") {

TEST_CASE("CARE scalar closed form") {
  const double a = 1.5, b = 2.0, q = 3.0, r = 0.5;
  const double p = (a * r + std::sqrt(a * a * r * r + b * b * q * r)) / (b * b);
  const MatX P = solveCare(MatX::Constant(1, 1, a), MatX::Constant(1, 1, b),
                           MatX::Constant(1, 1, q), MatX::Constant(1, 1, r));
  CHECK(std::abs(P(0, 0) - p) < 1e-9 * p);
}

TEST_CASE("CARE double integrator closed form") {
  MatX A(2, 2), B(2, 1);
  A << 0, 1, 0, 0;
  B << 0, 1;
  const MatX P = solveCare(A, B, MatX::Identity(2, 2), MatX::Identity(1, 1));
  MatX expected(2, 2);
  expected << std::sqrt(3.0), 1.0, 1.0, std::sqrt(3.0);
  CHECK((P - expected).norm() < 1e-9);
}

TEST_CASE("CARE on the error dynamics with default weights") {
  const LinearSystem sys = linearizedSystem();
  CHECK(controllabilityRank(sys.A, sys.B) == 24);
  const LqriWeights w = lqriWeights(LqriGains{});
  const MatX P = solveCare(sys.A, sys.B, w.Q, w.R);
  CHECK(careResidual(sys.A, sys.B, w.Q, w.R, P) < 1e-8);
  CHECK((P - P.transpose()).norm() < 1e-9 * P.norm());
  const MatX K = lqriGain(P, sys.B, w.R);
  const MatX Acl = sys.A - sys.B * K;
  const Eigen::VectorXcd eig = Eigen::EigenSolver<MatX>(Acl).eigenvalues();
  for (int i = 0; i < eig.size(); ++i) CHECK(eig[i].real() < 0.0);

  const MatX Pk = solveCareKleinman(sys.A, sys.B, w.Q, w.R);
  CHECK((P - Pk).norm() / P.norm() < 1e-6);
}

TEST_CASE("CARE rejects an unstabilizable pair") {
  MatX A = MatX::Identity(2, 2);
  MatX B(2, 1);
  B << 1, 0;
  CHECK_THROWS_AS(solveCare(A, B, MatX::Identity(2, 2), MatX::Identity(1, 1)), StabilizabilityError);
}

TEST_CASE("Lyapunov solver") {
  MatX A(2, 2);
  A << -1, 2, 0, -3;
  const MatX M = MatX::Identity(2, 2);
  const MatX X = solveLyapunov(A, M);
  CHECK((A.transpose() * X + X * A + M).norm() < 1e-12);
}

TEST_CASE("error state stacking") {
  ErrorState e;
  e.position = Vec3(1, 2, 3);
  e.angular_acceleration = Vec3(-1, -2, -3);
  const Vec24 s = e.stacked();
  CHECK(s.head<3>() == e.position);
  CHECK(s.tail<3>() == e.angular_acceleration);
  const ErrorState back = ErrorState::fromStacked(s);
  CHECK(back.stacked() == s);
}

TEST_CASE("integrators clamp") {
  ErrorIntegrators I({0.5, 0.25});
  for (int k = 0; k < 100; ++k) I.update(Vec3(1, -1, 0), Vec3(1, 1, 1), 0.1);
  CHECK(I.position().x() == doctest::Approx(0.5));
  CHECK(I.position().y() == doctest::Approx(-0.5));
  CHECK(I.attitude().maxCoeff() == doctest::Approx(0.25));
  I.reset();
  CHECK(I.position().norm() == 0.0);
}

TEST_CASE("feedback linearization identity") {
  std::mt19937_64 rng(3);
  const RigidBodyParams p = bodyParams();
  for (int i = 0; i < 1000; ++i) {
    RigidBodyState s;
    s.attitude = expSO3(randomVec(rng, 2.0));
    s.acceleration = randomVec(rng, 5.0);
    s.angular_velocity = randomVec(rng, 3.0);
    s.angular_acceleration = randomVec(rng, 5.0);
    TrajectorySample ref;
    ref.jerk = randomVec(rng, 5.0);
    ref.angular_acceleration = randomVec(rng, 5.0);
    ref.angular_jerk = randomVec(rng, 5.0);
    Vec6 u;
    u << randomVec(rng, 10.0), randomVec(rng, 10.0);

    const PlantJerk j = plantJerk(feedbackLinearize(u, s, ref, p), s, p);
    const Mat3 R_BW = s.attitude.transpose();
    const Vec3 ea_dot = j.linear_world - ref.jerk;
    const Vec3 epsi_dot = j.angular_body + s.angular_velocity.cross(R_BW * ref.angular_acceleration) -
                          R_BW * ref.angular_jerk;
    CHECK((ea_dot - u.head<3>()).norm() < 1e-8);
    CHECK((epsi_dot - u.tail<3>()).norm() < 1e-8);
  }
}

TEST_CASE("plant jerk against finite differences of the Newton-Euler model") {
  std::mt19937_64 rng(5);
  const RigidBodyParams p = bodyParams();
  for (int i = 0; i < 50; ++i) {
    RigidBodyState s;
    s.attitude = expSO3(randomVec(rng, 2.0));
    s.angular_velocity = randomVec(rng, 2.0);
    const Wrench w{randomVec(rng, 40.0), randomVec(rng, 2.0)};
    const BodyAccelerations a0 = worldAccelerations(s, w, p);
    s.acceleration = a0.linear;
    s.angular_acceleration = a0.angular;
    WrenchRate rate;
    rate.force = randomVec(rng, 50.0);
    rate.torque = randomVec(rng, 5.0);

    auto at = [&](double h) {
      RigidBodyState x = s;
      x.attitude = s.attitude * expSO3(s.angular_velocity * h + 0.5 * s.angular_acceleration * h * h);
      x.angular_velocity = s.angular_velocity + s.angular_acceleration * h;
      const Wrench wh{w.force + h * rate.force, w.torque + h * rate.torque};
      return worldAccelerations(x, wh, p);
    };
    const double h = 1e-5;
    const BodyAccelerations ap = at(h), am = at(-h);
    const Vec3 j_fd = (ap.linear - am.linear) / (2 * h);
    const Vec3 z_fd = (ap.angular - am.angular) / (2 * h);
    const PlantJerk j = plantJerk(rate, s, p);
    CHECK((j.linear_world - j_fd).norm() < 1e-5 * (1.0 + j_fd.norm()));
    CHECK((j.angular_body - z_fd).norm() < 1e-5 * (1.0 + z_fd.norm()));
  }
}

TEST_CASE("LQRI controller at zero error") {
  LqriController c;
  RigidBodyState s;
  TrajectorySample ref;
  CHECK(c.virtualInput(s, ref, 0.01).norm() == 0.0);
  CHECK(c.lastStability().satisfied);
  s.position = Vec3(0.1, 0, 0);
  const Vec6 u = c.virtualInput(s, ref, 0.01);
  CHECK(u.x() < 0.0);  // pushes back
  CHECK(std::abs(u.y()) < 1e-12);
}

TEST_CASE("stability condition") {
  const LinearSystem sys = linearizedSystem();
  const LqriWeights w = lqriWeights(LqriGains{});
  const Mat24 P = solveCare(sys.A, sys.B, w.Q, w.R);
  const double rhs = stabilityMargin(w.Q, w.R, P, sys.B);
  CHECK(rhs > 0.0);
  Vec24 e = Vec24::Zero();
  e[0] = 1.0;
  CHECK(stabilityCondition(w.Q, w.R, P, sys.B, e, Vec3::Zero()).satisfied);
  CHECK(stabilityCondition(w.Q, w.R, P, sys.B, Vec24::Zero(), Vec3::Zero()).satisfied);
  Vec24 e2 = Vec24::Zero();
  e2.segment<3>(18) = Vec3(1, 0, 0);  // pure angular-velocity error
  const StabilityCheck sc = stabilityCondition(w.Q, w.R, P, sys.B, e2, Vec3(1, 0, 0));
  CHECK(sc.lhs == doctest::Approx((3.0 + std::sqrt(2.0)) / std::sqrt(2.0)));
}

TEST_CASE("PID commands") {
  ErrorState e;
  e.position = Vec3(1, 0, 0);
  e.velocity = Vec3(0, 1, 0);
  TrajectorySample ref;
  ref.acceleration = Vec3(0, 0, 1);
  PidGains g;
  const Vec3 a = PidController::accelerationCommand(e, ref, g);
  CHECK((a - Vec3(-g.k_p, -g.k_v, 1.0)).norm() < 1e-15);

  PidController pid;
  RigidBodyState s;
  s.position = Vec3(0.1, 0, 0);
  CHECK(pid.control(s, ref, 0.01).stacked().norm() == 0.0);  // no history
  const JerkCommand u = pid.control(s, ref, 0.01);
  CHECK(u.linear.x() < 0.0);  // integral action grows
  CHECK_THROWS(pid.control(s, ref, 0.0));
}

TEST_CASE("gain JSON round trip") {
  LqriGains g;
  g.k_p = 1e4;
  g.r_tau_dot = Vec3(1, 2, 3);
  const LqriGains back = lqriGainsFromJson(toJson(g));
  CHECK(back.k_p == 1e4);
  CHECK(back.r_tau_dot == g.r_tau_dot);
  PidGains pg;
  pg.k_R_i = 0.7;
  CHECK(pidGainsFromJson(toJson(pg)).k_R_i == 0.7);
  AllocationGains ag;
  ag.k_alpha = 10.0;
  CHECK(allocationGainsFromJson(toJson(ag)).k_alpha == 10.0);
  LqriGains bad;
  bad.r_f_dot = Vec3(1, 0, 1);
  CHECK_THROWS(bad.validate());
}

}  // TEST_SUITE
