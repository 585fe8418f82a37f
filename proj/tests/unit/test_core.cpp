#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "omav/core/allocation.hpp"
#include "omav/core/dynamics.hpp"
#include "omav/core/morphology_json.hpp"
#include "omav/core/so3.hpp"

using namespace omav;

namespace {

Morphology flatHexNoDrag() {
  Morphology m = Morphology::hexarotor();
  m.rotor.c_d = 0.0;
  return m;
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("skew and vee") {
  CHECK((skew(Vec3(1, 0, 0)) * Vec3(0, 1, 0) - Vec3(0, 0, 1)).norm() == 0.0);
  CHECK(vee(skew(Vec3(2, -3, 5))) == Vec3(2, -3, 5));
  CHECK(skew(Vec3::Zero()).isZero(0.0));
  Mat3 M = skew(Vec3(1, 2, 3));
  M(0, 1) += 1e-3;
  CHECK_THROWS_AS(vee(M), PreconditionError);
}

TEST_CASE("SO(3) exp/log round trip and attitude error") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    Vec3 v(u(rng), u(rng), u(rng));
    v *= 3.0 / std::max(1.0, v.norm());
    const Mat3 R = expSO3(v);
    CHECK(isRotation(R));
    CHECK((logSO3(R) - v).norm() < 1e-9);
  }
  CHECK(attitudeError(rotZ(0.3), rotZ(0.3)).norm() < 1e-15);
  CHECK(attitudeError(rotZ(0.3), Mat3::Identity()).z() == doctest::Approx(std::sin(0.3)));
}

TEST_CASE("rotor wrench") {
  RotorParams p;
  p.c_f = 7.1e-6;
  CHECK(rotorWrench(1250.0, p).thrust == doctest::Approx(11.09375));
  CHECK(rotorWrench(0.0, p).thrust == 0.0);
  CHECK(rotorWrench(0.0, p).torque == 0.0);
  CHECK(rotorWrench(500.0, p).thrust == doctest::Approx(1.775));
  CHECK(rotorWrench(500.0, p).torque == doctest::Approx(1.775 * p.c_d));
  CHECK_THROWS_AS(rotorWrench(-1.0, p), std::domain_error);
}

TEST_CASE("static allocation entries") {
  const Morphology m = flatHexNoDrag();
  const MatX A = staticAllocation(m);
  CHECK(A.rows() == 6);
  CHECK(A.cols() == 2 * m.numRotors());
  // arm 1 of the hexarotor sits at gamma = pi/2
  CHECK(m.arms[1].azimuth == doctest::Approx(std::numbers::pi / 2));
  const int vertical = 2 * 1 + 1;
  CHECK((A.block<3, 1>(0, vertical) - Vec3(0, 0, m.rotor.c_f)).norm() < 1e-15);
  for (int c = 1; c < A.cols(); c += 2) {
    CHECK(A.block<3, 1>(0, c).norm() == doctest::Approx(m.rotor.c_f));
    CHECK(std::abs(A(5, c)) < 1e-18);  // no drag: vertical thrust has no yaw torque
  }
  Morphology tilted = Morphology::hexarotor({0.3, -0.2, 0.1, 0.4, -0.5, 0.2}, {0.1, 0, -0.1, 0.2, 0, 0});
  const MatX At = staticAllocation(tilted);
  for (int c = 1; c < At.cols(); c += 2) CHECK(At.block<3, 1>(0, c).norm() == doctest::Approx(tilted.rotor.c_f));
}

TEST_CASE("omega tilde") {
  VecX Omega = VecX::Ones(2), alpha = VecX::Zero(2);
  VecX t = omegaTilde(Omega, alpha);
  CHECK(t.size() == 4);
  CHECK(t[0] == 0.0);
  CHECK(t[1] == 1.0);
  Omega = VecX::Constant(1, 4.0);
  alpha = VecX::Constant(1, std::numbers::pi / 2);
  t = omegaTilde(Omega, alpha);
  CHECK(t[0] == doctest::Approx(4.0));
  CHECK(std::abs(t[1]) < 1e-15);
  Omega = VecX::Constant(1, 2.0);
  alpha = VecX::Constant(1, std::numbers::pi / 4);
  t = omegaTilde(Omega, alpha);
  CHECK(t[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(t[1] == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(omegaTilde(VecX::Ones(3), VecX::Ones(2)), DimensionError);
}

TEST_CASE("instantaneous allocation consistency") {
  const Morphology m = Morphology::hexarotor();
  const MatX A = staticAllocation(m);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ua(-10.0, 10.0), uo(0.0, 1250.0 * 1250.0);
  for (int i = 0; i < 200; ++i) {
    VecX alpha(6), Omega(12);
    for (auto& a : alpha) a = ua(rng);
    for (auto& o : Omega) o = uo(rng);
    const VecX lhs = instantaneousAllocation(A, alpha) * Omega;
    const VecX rhs = A * omegaTilde(Omega, alpha);
    CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
  }
  const Morphology flat = flatHexNoDrag();
  const MatX Af = instantaneousAllocation(staticAllocation(flat), VecX::Zero(6));
  CHECK(Af.row(0).norm() < 1e-15);
  CHECK(Af.row(1).norm() < 1e-15);
  const MatX Al = instantaneousAllocation(staticAllocation(flat), VecX::Constant(6, std::numbers::pi / 2));
  CHECK(Al.row(2).norm() < 1e-15);
}

TEST_CASE("condition number") {
  CHECK(conditionNumber(Mat3::Identity()) == doctest::Approx(1.0));
  Mat3 D = Vec3(1.0, 2.0, 4.0).asDiagonal();
  CHECK(conditionNumber(D) == doctest::Approx(4.0));
  D(0, 0) = 0.0;
  CHECK(std::isinf(conditionNumber(D)));
}

TEST_CASE("Newton-Euler examples") {
  RigidBodyParams p;
  p.mass = 2.0;
  p.inertia = Vec3(1.0, 2.0, 3.0).asDiagonal();
  RigidBodyState s;
  Wrench hover{Vec3(0, 0, p.mass * kGravity), Vec3::Zero()};
  BodyAccelerations a = eomForward(s, hover, p);
  CHECK(a.linear.norm() < 1e-14);
  CHECK(a.angular.norm() < 1e-14);

  a = eomForward(s, Wrench{}, p);
  CHECK((a.linear - Vec3(0, 0, -9.81)).norm() < 1e-14);

  s.angular_velocity = Vec3(1, 1, 1);
  a = eomForward(s, Wrench{}, p);
  CHECK((a.angular - Vec3(-1.0, 1.0, -1.0 / 3.0)).norm() < 1e-14);

  RigidBodyParams bad = p;
  bad.inertia = Mat3::Zero();
  CHECK_THROWS(eomForward(s, Wrench{}, bad));
}

TEST_CASE("tilt servo") {
  const double tau = 0.05;
  CHECK(tiltStep(0.0, 1.0, tau, tau) == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(tiltStep(0.3, 0.3, tau, 0.01) == doctest::Approx(0.3));
  // exact solution composes: two half steps equal one full step
  const double half = tiltStep(tiltStep(0.0, 1.0, tau, 0.005), 1.0, tau, 0.005);
  CHECK(half == doctest::Approx(tiltStep(0.0, 1.0, tau, 0.01)).epsilon(1e-14));
}

TEST_CASE("morphology validation and JSON round trip") {
  Morphology m = Morphology::hexarotor({0.1, -0.1, 0.1, -0.1, 0.1, -0.1});
  m.validate();
  const Morphology back = morphologyFromJson(morphologyToJson(m));
  CHECK((staticAllocation(back) - staticAllocation(m)).norm() == 0.0);
  CHECK(back.body.mass == m.body.mass);

  Morphology bad = m;
  bad.arms[0].inclination = 2.0;
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
  bad = m;
  bad.arms.resize(2);
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
  bad = m;
  bad.rotor.omega_min = 2000.0;
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
  bad = m;
  bad.body.inertia(0, 1) = bad.body.inertia(1, 0) = 0.01;
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
}

}  // TEST_SUITE
