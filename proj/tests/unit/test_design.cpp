#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "omav/core/allocation.hpp"
#include "omav/design/design_json.hpp"
#include "omav/design/efficiency.hpp"
#include "omav/design/envelope.hpp"
#include "omav/design/linear_program.hpp"
#include "omav/design/mass_model.hpp"
#include "omav/design/nelder_mead.hpp"
#include "omav/design/optimizer.hpp"
#include "omav/design/sphere.hpp"

using namespace omav;
using namespace omav::design;

TEST_SUITE("design") {

TEST_CASE("icosphere counts and volume") {
  for (int level = 0; level <= 4; ++level) {
    const SphereGrid g = icosphere(level);
    const int faces = 20 * (1 << (2 * level));
    CHECK(static_cast<int>(g.faces.size()) == faces);
    CHECK(static_cast<int>(g.vertices.size()) == 10 * (1 << (2 * level)) + 2);
  }
  CHECK(levelForFaces(1280) == 3);
  CHECK(levelForFaces(1281) == 4);
  const SphereGrid g = icosphere(5);
  const double v = radialVolume(g, std::vector<double>(g.vertices.size(), 2.0));
  CHECK(v == doctest::Approx(4.0 / 3.0 * std::numbers::pi * 8.0).epsilon(2e-3));
  CHECK(v < 4.0 / 3.0 * std::numbers::pi * 8.0);  // inscribed polyhedron
}

TEST_CASE("linear program") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6 -> (1.6, 1.2), 2.8
  VecX c(2);
  c << 1, 1;
  MatX A_ub(2, 2);
  A_ub << 1, 2, 3, 1;
  VecX b_ub(2);
  b_ub << 4, 6;
  LpResult r = solveLinearProgram(c, MatX(0, 2), VecX(0), A_ub, b_ub);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(2.8));
  CHECK(r.x[0] == doctest::Approx(1.6));

  // equality: x + y = 1, maximize x - y -> (1, 0)
  MatX A_eq(1, 2);
  A_eq << 1, 1;
  VecX b_eq(1);
  b_eq << 1;
  c << 1, -1;
  r = solveLinearProgram(c, A_eq, b_eq, MatX(0, 2), VecX(0));
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(1.0));

  // infeasible: x + y = -1 with x, y >= 0
  b_eq << -1;
  CHECK(solveLinearProgram(c, A_eq, b_eq, MatX(0, 2), VecX(0)).status == LpStatus::kInfeasible);
  // unbounded
  c << 1, 0;
  CHECK(solveLinearProgram(c, MatX(0, 2), VecX(0), MatX(0, 2), VecX(0)).status == LpStatus::kUnbounded);
}

TEST_CASE("Nelder-Mead on Rosenbrock") {
  auto f = [](const VecX& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  NelderMeadOptions o;
  o.max_evaluations = 20000;
  o.f_tolerance = 1e-20;
  o.x_tolerance = 1e-12;
  const NelderMeadResult r = nelderMead(f, VecX::Constant(2, -1.2), o);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("mass model reproduces the reference hexarotor") {
  const auto arms = Morphology::evenlySpaced(6, 0.3, 1).arms;
  const MassProperties p = computeMassInertia(arms, MassModel{});
  const MassProperties ref = referenceFlatHexMassProperties();
  CHECK(p.mass == doctest::Approx(ref.mass).epsilon(1e-8));
  CHECK(p.inertia(0, 0) == doctest::Approx(ref.inertia(0, 0)).epsilon(1e-8));
  CHECK(p.inertia(1, 1) == doctest::Approx(ref.inertia(1, 1)).epsilon(1e-8));
  CHECK(p.inertia(2, 2) == doctest::Approx(ref.inertia(2, 2)).epsilon(1e-8));
  CHECK((p.inertia - p.inertia.transpose()).norm() == 0.0);

  MassModel start;
  start.core_mass_const = 2.0;
  start.rotor_group_mass = 0.2;
  start.rotor_radius = 0.04;
  const MassModel fit = calibrateMassModel(ref, start);
  CHECK(fit.core_mass_const == doctest::Approx(MassModel{}.core_mass_const).epsilon(1e-5));
  CHECK(fit.rotor_group_mass == doctest::Approx(MassModel{}.rotor_group_mass).epsilon(1e-5));
}

TEST_CASE("efficiency index") {
  const std::vector<double> equal{1.0, 1.0, 1.0};
  CHECK(forceEfficiency(Vec3(0, 0, 3), std::span<const double>(equal)) == doctest::Approx(1.0));
  const std::vector<Vec3> opposed{Vec3(0, 0, 2), Vec3(1, 0, 0), Vec3(-1, 0, 0)};
  CHECK(forceEfficiency(Vec3(0, 0, 2), std::span<const Vec3>(opposed)) == doctest::Approx(0.5));
  const std::vector<double> none{0.0, 0.0};
  CHECK_THROWS_AS(forceEfficiency(Vec3(0, 0, 1), std::span<const double>(none)), ZeroThrustError);
  CHECK(torqueEfficiency(Vec3(0, 0, 0.3), std::span<const double>(equal), 0.1) == doctest::Approx(1.0));
}

TEST_CASE("flat hexarotor force envelope") {
  const Morphology m = Morphology::hexarotor();
  const double fz = maxWrenchInDirection(m, Vec3::UnitZ(), WrenchMode::kForce);
  CHECK(fz == doctest::Approx(12.0 * m.rotor.maxThrust()).epsilon(1e-9));
  CHECK(fz == doctest::Approx(133.125).epsilon(1e-6));
  EnvelopeOptions o;
  const EnvelopeMetrics e = computeEnvelope(m, o);
  CHECK(e.max / e.min == doctest::Approx(2.0).epsilon(1e-3));
  const auto hover = hoverEfficiencyRange(hoverSphere(m));
  CHECK(hover.max == doctest::Approx(1.0));
  CHECK(hover.min == doctest::Approx(0.75).epsilon(1e-3));
}

TEST_CASE("parallel envelope equals the serial reference") {
  const Morphology m = Morphology::hexarotor({0.6, -0.6, 0.6, -0.6, 0.6, -0.6});
  for (auto mode : {WrenchMode::kForce, WrenchMode::kTorque}) {
    EnvelopeOptions o;
    o.mode = mode;
    const EnvelopeMetrics a = computeEnvelope(m, o);
    const EnvelopeMetrics b = computeEnvelopeSerial(m, o);
    REQUIRE(a.samples.size() == b.samples.size());
    CHECK(a.min == b.min);
    CHECK(a.max == b.max);
    CHECK(a.volume == b.volume);
    for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i].value == b.samples[i].value);
  }
}

TEST_CASE("reachable envelope against a dual certificate") {
  // For any y with y^T [d; 0] = 1: lambda* <= sum_i R |B_i^T y|, B_i the arm block.
  const Morphology m = Morphology::hexarotor({0.4, -0.4, 0.4, -0.4, 0.4, -0.4});
  const MatX A = staticAllocation(m);
  const int n = m.numArms();
  std::vector<MatX> blocks(n, MatX::Zero(6, 2));
  for (int k = 0; k < m.numRotors(); ++k) blocks[m.armOfRotor(k)] += A.middleCols(2 * k, 2);
  const double R = std::pow(m.rotor.omega_max, 2);
  for (const Vec3 d : {Vec3(0, 0, 1), Vec3(1, 0, 0), Vec3(1, 1, -0.5).normalized()}) {
    const double primal = maxWrenchInDirection(m, d, WrenchMode::kForce, std::nullopt,
                                               EnvelopeMethod::kReachable);
    Vec6 e;
    e << d, Vec3::Zero();
    const Eigen::JacobiSVD<MatX> svd(MatX(e.transpose()), Eigen::ComputeFullV);
    const MatX N = svd.matrixV().rightCols(5);
    auto bound = [&](const VecX& z) {
      const Vec6 y = e + N * z;
      double s = 0.0;
      for (const auto& B : blocks) s += R * (B.transpose() * y).norm();
      return s;
    };
    NelderMeadOptions o;
    o.initial_step = 0.5;
    o.max_evaluations = 40000;
    o.f_tolerance = 1e-14;
    NelderMeadResult best = nelderMead(bound, VecX::Zero(5), o);
    for (int r = 0; r < 4; ++r) {
      o.initial_step = 0.05;
      best = nelderMead(bound, best.x, o);
    }
    CHECK(primal > 0.0);
    CHECK(best.value >= primal * (1.0 - 1e-9));
    CHECK((best.value - primal) / primal < 0.01);
  }
}

TEST_CASE("design problem JSON and validation") {
  DesignProblem p;
  p.cost = 2;
  p.restarts = 3;
  const DesignProblem back = designProblemFromJson(designProblemToJson(p));
  CHECK(back.cost == 2);
  CHECK(back.restarts == 3);
  CHECK(designProblemToJson(back) == designProblemToJson(p));
  p.cost = 3;
  CHECK_THROWS(p.validate());
}

TEST_CASE("cost function penalty and comparison rows") {
  DesignProblem p;
  const std::vector<double> zero(6, 0.0);
  const double flat = designCost(p, zero, zero);
  CHECK(flat < 0.0);  // feasible: f_min > m g
  DesignProblem heavy = p;
  heavy.mass_model.core_mass_const = 20.0;
  CHECK(designCost(heavy, zero, zero) > 0.0);  // penalized

  std::vector<ComparisonRow> rows{{"a", 2, 4, 8, 1, 2, 3, 4}, {"b", 3, 4, 4, 2, 1, 3, 2}};
  const auto rel = compare(rows);
  CHECK(rel[0].f_min == 1.0);
  CHECK(rel[1].f_min == doctest::Approx(1.5));
  CHECK(rel[1].mass == doctest::Approx(0.5));
  rows[0].f_min = 0.0;
  CHECK_THROWS_AS(compare(rows), std::domain_error);
}

}  // TEST_SUITE
