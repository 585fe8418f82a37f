#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/SVD>

#include "omav/allocation/allocator.hpp"
#include "omav/allocation/condition_scan.hpp"
#include "omav/allocation/diff_allocation.hpp"
#include "omav/allocation/optimal_targets.hpp"
#include "omav/core/allocation.hpp"

using namespace omav;
using namespace omav::allocation;

namespace {

struct Case {
  VecX omega;
  VecX alpha;
  VecX u_star;
  Vec6 w_dot;
};

Case randomCase(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uw(300.0, 1200.0), ua(-3.0, 3.0), uu(-50.0, 50.0);
  Case c;
  c.omega.resize(12);
  c.alpha.resize(6);
  c.u_star.resize(18);
  for (auto& x : c.omega) x = uw(rng);
  for (auto& x : c.alpha) x = ua(rng);
  for (auto& x : c.u_star) x = uu(rng);
  for (auto& x : c.w_dot) x = uu(rng);
  return c;
}

MatX nullSpace(const MatX& M) {
  Eigen::JacobiSVD<MatX> svd(M, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(M.cols() - M.rows());
}

Vec6 hoverWrench(const Morphology& m) {
  Vec6 w = Vec6::Zero();
  w[2] = m.body.mass * kGravity;
  return w;
}

}  // namespace

TEST_SUITE("allocation") {

TEST_CASE("differential allocation is exact and weighted-optimal") {
  const Morphology m = Morphology::hexarotor();
  const MatX A = staticAllocation(m);
  std::mt19937_64 rng(21);
  for (int i = 0; i < 1000; ++i) {
    const Case c = randomCase(rng);
    const DiffAllocation d = buildDiffAllocation(A, c.omega, c.alpha, 1000.0);
    const SolveResult r = solveDiffAllocation(d, c.u_star, c.w_dot);
    CHECK(r.residual < 1e-9 * std::max(1.0, c.w_dot.norm()));
    CHECK_FALSE(r.regularized);
    // stationarity: W^2 (u - u*) is orthogonal to the null space of A~
    const MatX N = nullSpace(d.A_tilde);
    const VecX g = d.W * d.W * (r.u - c.u_star);
    CHECK((N.transpose() * g).norm() < 1e-8 * std::max(1.0, g.norm()));
  }
}

TEST_CASE("differential allocation Jacobian against finite differences") {
  const Morphology m = Morphology::hexarotor();
  const MatX A = staticAllocation(m);
  std::mt19937_64 rng(22);
  const double eps = 1e-6;
  for (int i = 0; i < 50; ++i) {
    const Case c = randomCase(rng);
    const MatX At = buildDiffAllocation(A, c.omega, c.alpha).A_tilde;
    MatX fd(6, 18);
    for (int j = 0; j < 18; ++j) {
      VecX wp = c.omega, wm = c.omega, ap = c.alpha, am = c.alpha;
      if (j < 12) {
        wp[j] += eps;
        wm[j] -= eps;
      } else {
        ap[j - 12] += eps;
        am[j - 12] -= eps;
      }
      fd.col(j) = (A * omegaTilde(squared(wp), ap) - A * omegaTilde(squared(wm), am)) / (2 * eps);
    }
    CHECK((At - fd).norm() < 1e-4 * At.norm());
  }
}

TEST_CASE("larger k_alpha gives smaller tilt rates") {
  const Morphology m = Morphology::hexarotor();
  const MatX A = staticAllocation(m);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 20; ++i) {
    const Case c = randomCase(rng);
    const VecX zero = VecX::Zero(18);
    double last = INFINITY;
    for (double k : {1.0, 10.0, 100.0, 1000.0}) {
      const SolveResult r = solveDiffAllocation(buildDiffAllocation(A, c.omega, c.alpha, k), zero, c.w_dot);
      const double tilt = r.u.tail(6).norm();
      CHECK(tilt <= last * (1.0 + 1e-12));
      last = tilt;
    }
  }
}

TEST_CASE("explicit metric matches its closed form") {
  const Morphology m = Morphology::hexarotor();
  const MatX A = staticAllocation(m);
  std::mt19937_64 rng(24);
  const Case c = randomCase(rng);
  const DiffAllocation d = buildDiffAllocation(A, c.omega, c.alpha, 1000.0);
  const MatX& At = d.A_tilde;
  const VecX expected = c.u_star + d.W * At.transpose() *
                                       (At * d.W * At.transpose()).inverse() * (c.w_dot - At * c.u_star);
  const SolveResult r = solveWithMetric(At, d.W, c.u_star, c.w_dot);
  CHECK((r.u - expected).norm() < 1e-8 * expected.norm());
  CHECK(r.residual < 1e-9 * c.w_dot.norm());
}

TEST_CASE("rank-deficient allocation is regularized") {
  const Morphology m = Morphology::hexarotor();
  const MatX A = staticAllocation(m);
  const DiffAllocation d = buildDiffAllocation(A, VecX::Zero(12), VecX::Zero(6));
  const SolveResult r = solveDiffAllocation(d, VecX::Zero(18), Vec6::Ones());
  CHECK(r.regularized);
  CHECK(r.u.allFinite());
}

TEST_CASE("saturation and integration") {
  ActuatorLimits lim;
  lim.max_omega_dot = 100.0;
  lim.max_alpha_dot = 1.0;
  lim.omega_max = 1000.0;
  VecX u(3);
  u << 500.0, -50.0, 3.0;  // two rotors, one arm
  VecX alpha(1), omega(2);
  alpha << 0.0;
  omega << 995.0, 10.0;
  const ActuatorCommand c = saturateIntegrate(u, lim, 0.1, alpha, omega);
  CHECK(c.saturated);
  CHECK(c.u_saturated[0] == 100.0);
  CHECK(c.omega_ref[0] == 1000.0);  // clamped
  CHECK(c.omega_ref[1] == doctest::Approx(5.0));
  CHECK(c.alpha_ref[0] == doctest::Approx(0.1));
}

TEST_CASE("sign law with and without the step guard") {
  const Morphology m = Morphology::hexarotor();
  const allocation::StaticCommands s = staticCommands(m, hoverWrench(m));
  VecX alpha = s.alpha;
  alpha[0] += 0.005;
  TargetConfig cfg;
  cfg.step = 0.0;
  OptimalTargets t = optimalTargets(m, alpha, s.omega, cfg);
  CHECK(t.u_star[12] == doctest::Approx(-cfg.v_alpha_dot));
  cfg.step = 0.01;
  t = optimalTargets(m, alpha, s.omega, cfg);
  const double delta = t.alpha_star[0] - alpha[0];
  REQUIRE(std::abs(delta) < cfg.v_alpha_dot * cfg.step);
  CHECK(t.u_star[12] == doctest::Approx(delta / cfg.step));
  CHECK(t.unloaded.empty());
}

TEST_CASE("unwinding target branch") {
  const Morphology m = Morphology::hexarotor();
  const allocation::StaticCommands s = staticCommands(m, hoverWrench(m));
  VecX alpha = s.alpha;
  alpha[2] = 2.0 * std::numbers::pi;
  const MatX A = staticAllocation(m);
  const MatX pinv = A.completeOrthogonalDecomposition().pseudoInverse();
  TargetConfig cfg;
  OptimalTargets t = optimalTargets(m, pinv, alpha, s.omega, hoverWrench(m), cfg);
  CHECK(std::abs(t.alpha_star[2]) < 1e-9);
  CHECK(t.u_star[12 + 2] < 0.0);
  cfg.unwind = false;
  cfg.unload = false;
  t = optimalTargets(m, pinv, alpha, s.omega, hoverWrench(m), cfg);
  CHECK(t.alpha_star[2] == doctest::Approx(2.0 * std::numbers::pi));
}

TEST_CASE("wound arms are unloaded and the wrench re-allocated") {
  const Morphology m = Morphology::hexarotor();
  const allocation::StaticCommands s = staticCommands(m, hoverWrench(m));
  const MatX A = staticAllocation(m);
  const MatX pinv = A.completeOrthogonalDecomposition().pseudoInverse();
  VecX alpha = s.alpha;
  alpha[0] = 2.0 * std::numbers::pi;
  TargetConfig cfg;
  OptimalTargets t = optimalTargets(m, pinv, alpha, s.omega, hoverWrench(m), cfg);
  REQUIRE(t.unloaded.size() == 1);
  CHECK(t.unloaded[0] == 0);
  CHECK(t.omega_star[0] == m.rotor.omega_min);
  CHECK(t.omega_star[6] == m.rotor.omega_min);
  // the remaining targets still produce the hover wrench (up to the shared
  // per-arm tilt of the two rotor layers)
  const Vec6 w = A * omegaTilde(squared(t.omega_star), t.alpha_star - t.bias);
  CHECK((w - hoverWrench(m)).norm() < 1e-3 * hoverWrench(m).norm());

  // not wound past the threshold: no unloading unless latched
  alpha[0] = 3.5;
  t = optimalTargets(m, pinv, alpha, s.omega, hoverWrench(m), cfg);
  CHECK(t.unloaded.empty());
  t = optimalTargets(m, pinv, alpha, s.omega, hoverWrench(m), cfg, {0});
  CHECK(t.unloaded.size() == 1);
  // latched but close to the target: released
  alpha[0] = 0.5;
  t = optimalTargets(m, pinv, alpha, s.omega, hoverWrench(m), cfg, {0});
  CHECK(t.unloaded.empty());

  // an infeasible reduction is refused
  Morphology heavy = m;
  heavy.body.mass = 9.0;
  const allocation::StaticCommands sh = staticCommands(heavy, hoverWrench(heavy));
  VecX ah = sh.alpha;
  for (int a = 0; a < 6; ++a) ah[a] = 2.0 * std::numbers::pi;
  t = optimalTargets(heavy, pinv, ah, sh.omega, hoverWrench(heavy), cfg);
  CHECK(t.unloaded.size() < 6);
}

TEST_CASE("allocator tracks a wrench rate") {
  const Morphology m = Morphology::hexarotor();
  const allocation::StaticCommands s = staticCommands(m, hoverWrench(m));
  AllocatorConfig cfg;
  cfg.limits = ActuatorLimits::fromMorphology(m);
  DifferentialAllocator alloc(m, cfg, s.alpha, s.omega);
  CHECK((alloc.commandedWrench() - hoverWrench(m)).norm() < 1e-9);
  Vec6 rate = Vec6::Zero();
  rate[0] = 2.0;  // N/s along x
  for (int k = 0; k < 100; ++k) alloc.step(rate, 0.01);
  Vec6 expected = hoverWrench(m);
  expected[0] = 2.0;
  CHECK((alloc.commandedWrench() - expected).norm() < 5e-2);
}

TEST_CASE("bias hook") {
  const Morphology m = Morphology::hexarotor();
  BiasConfig cfg;
  CHECK(alphaBias(m, Vec3(0, 0, 40), cfg).norm() == 0.0);  // disabled
  cfg.enabled = true;
  const VecX b = alphaBias(m, Vec3(0, 0, 40), cfg);
  for (int a = 0; a < 6; ++a) CHECK(b[a] == doctest::Approx(a % 2 == 0 ? 0.15 : -0.15));
  const VecX none = alphaBias(m, Vec3(30, 0, 20), cfg);  // not colinear
  CHECK(none.norm() == 0.0);
}

TEST_CASE("condition scan at z hover") {
  const Morphology m = Morphology::hexarotor();
  ConditionScanOptions o;
  o.bias = false;
  const ConditionScan off = conditionScan(m, o);
  CHECK(off.max_log_kappa >= 30.0);
  o.bias = true;
  const ConditionScan on = conditionScan(m, o);
  CHECK(on.max_log_kappa <= 10.0);
  const ConditionScan serial = conditionScanSerial(m, o);
  REQUIRE(serial.samples.size() == on.samples.size());
  for (std::size_t i = 0; i < on.samples.size(); ++i) {
    CHECK(serial.samples[i].log_kappa == on.samples[i].log_kappa);
  }
}

}  // TEST_SUITE
