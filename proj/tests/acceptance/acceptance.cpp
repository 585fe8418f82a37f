// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <fmt/format.h>

#include "omav/allocation/condition_scan.hpp"
#include "omav/allocation/diff_allocation.hpp"
#include "omav/control/care.hpp"
#include "omav/control/feedback_linearization.hpp"
#include "omav/control/lqri.hpp"
#include "omav/core/allocation.hpp"
#include "omav/core/so3.hpp"
#include "omav/design/envelope.hpp"
#include "omav/design/optimizer.hpp"
#include "omav/sim/named_trajectories.hpp"
#include "omav/sim/simulator.hpp"
#include "omav/sim/stats.hpp"

using namespace omav;
namespace fs = std::filesystem;

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [x]");
  }
  void info(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

int failures = 0;

void run(int id, const char* name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0.0) o.require(dt < limit_s, fmt::format("runtime {:.1f} s < {:.0f} s", dt, limit_s));
  if (!o.pass) ++failures;
  std::printf("criterion %2d: %s  %s (%s)\n", id, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  std::fflush(stdout);
}

Vec3 randomVec(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return Vec3(u(rng), u(rng), u(rng));
}

double maxPositionError(const sim::SimLog& log) {
  double m = 0.0;
  for (const auto& r : log.rows) m = std::max(m, r.error.position.norm());
  return m;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Shared between criteria 3 and 4.
design::DesignResult cost1, cost2;
bool designs_done = false;

void criterion1(Outcome& o) {
  const Morphology m = Morphology::hexarotor({0.3, -0.2, 0.5, 0.0, -0.6, 0.1});
  const MatX A = staticAllocation(m);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ua(-10.0, 10.0), uw(0.0, 1250.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    VecX alpha(6), omega(12);
    for (auto& a : alpha) a = ua(rng);
    for (auto& w : omega) w = uw(rng);
    const VecX Omega = squared(omega);
    const VecX lhs = A * omegaTilde(Omega, alpha);
    const VecX rhs = instantaneousAllocation(A, alpha) * Omega;
    worst = std::max(worst, (lhs - rhs).norm() / rhs.norm());
  }
  o.require(worst < 1e-10, fmt::format("max relative mismatch {:.2e} over 1e4 cases", worst));
}

void criterion2(Outcome& o) {
  const Morphology m = Morphology::hexarotor();
  const double fz = design::maxWrenchInDirection(m, Vec3::UnitZ(), design::WrenchMode::kForce);
  o.require(std::abs(fz - 133.1) <= 0.1, fmt::format("f_max(z) = {:.3f} N", fz));
  o.info(fmt::format("12 c_f w_max^2 = {:.3f} N", 12.0 * m.rotor.maxThrust()));
}

void criterion3(Outcome& o) {
  design::DesignProblem p;
  cost1 = design::optimize(p);
  p.cost = 2;
  cost2 = design::optimize(p);
  designs_done = true;

  double dev1 = 0.0;
  for (std::size_t i = 0; i < cost1.beta.size(); ++i) {
    dev1 = std::max({dev1, std::abs(cost1.beta[i]), std::abs(cost1.theta[i])});
  }
  o.require(dev1 * kDeg <= 1.0, fmt::format("cost 1 max |theta|,|beta| = {:.3f} deg", dev1 * kDeg));

  const double target = std::atan(1.0 / std::sqrt(2.0)) * kDeg;  // 35.26 deg
  double dev2 = 0.0;
  bool alternating = true;
  for (std::size_t i = 0; i < cost2.beta.size(); ++i) {
    dev2 = std::max(dev2, std::abs(std::abs(cost2.beta[i]) * kDeg - target));
    const double next = cost2.beta[(i + 1) % cost2.beta.size()];
    alternating = alternating && cost2.beta[i] * next < 0.0;
  }
  std::string betas;
  for (double b : cost2.beta) betas += fmt::format("{}{:.2f}", betas.empty() ? "" : " ", b * kDeg);
  o.require(dev2 <= 0.5 && alternating, fmt::format("cost 2 beta [{}] deg", betas));

  // f_min over alternating +-beta
  design::EnvelopeOptions eo;
  double best_beta = 0.0, best = -1.0;
  for (double b = 0.30; b <= 0.90 + 1e-12; b += 0.005) {
    const Morphology m = Morphology::hexarotor({b, -b, b, -b, b, -b});
    const double f = design::computeEnvelope(m, eo).min;
    if (f > best) {
      best = f;
      best_beta = b;
    }
  }
  o.require(std::abs(best_beta - 0.6154) <= 0.02,
            fmt::format("beta sweep argmax f_min at {:.3f} rad ({:.2f} N)", best_beta, best));
}

void criterion4(Outcome& o) {
  if (!designs_done) throw std::runtime_error("designs from criterion 3 missing");
  const double ratio = cost1.force.max / cost1.force.min;
  o.require(std::abs(ratio - 2.0) <= 0.2, fmt::format("cost 1 f_max/f_min = {:.3f}", ratio));
  const double gain = cost2.force.min / cost1.force.min;
  o.require(std::abs(gain - 1.33) <= 0.1, fmt::format("f_min cost 2 / cost 1 = {:.3f}", gain));
  o.info(fmt::format("m = {:.3f} kg, f_min {:.2f} / {:.2f} N, f_max {:.2f} / {:.2f} N",
                     cost1.mass.mass, cost1.force.min, cost2.force.min, cost1.force.max,
                     cost2.force.max));
}

void criterion5(Outcome& o) {
  using namespace control;
  {
    const double a = 1.5, b = 2.0, q = 3.0, r = 0.5;
    const double p = (a * r + std::sqrt(a * a * r * r + b * b * q * r)) / (b * b);
    const MatX P = solveCare(MatX::Constant(1, 1, a), MatX::Constant(1, 1, b),
                             MatX::Constant(1, 1, q), MatX::Constant(1, 1, r));
    o.require(std::abs(P(0, 0) - p) < 1e-9 * p, "scalar closed form");
  }
  {
    MatX A(2, 2), B(2, 1), expected(2, 2);
    A << 0, 1, 0, 0;
    B << 0, 1;
    expected << std::sqrt(3.0), 1.0, 1.0, std::sqrt(3.0);
    const MatX P = solveCare(A, B, MatX::Identity(2, 2), MatX::Identity(1, 1));
    o.require((P - expected).norm() < 1e-9, "double integrator closed form");
  }
  const LinearSystem sys = linearizedSystem();
  const LqriWeights w = lqriWeights(LqriGains{});
  const MatX P = solveCare(sys.A, sys.B, w.Q, w.R);
  const MatX K = lqriGain(P, sys.B, w.R);
  const Eigen::VectorXcd eig = Eigen::EigenSolver<MatX>(sys.A - sys.B * K).eigenvalues();
  double max_real = -INFINITY;
  for (int i = 0; i < eig.size(); ++i) max_real = std::max(max_real, eig[i].real());
  o.require(max_real < 0.0, fmt::format("Hurwitz, max Re = {:.3g}", max_real));
  const double res = careResidual(sys.A, sys.B, w.Q, w.R, P);
  o.require(res < 1e-8, fmt::format("residual {:.2e}", res));
  const MatX Pk = solveCareKleinman(sys.A, sys.B, w.Q, w.R);
  const double rel = (P - Pk).norm() / P.norm();
  o.require(rel < 1e-6, fmt::format("Kleinman-Newton rel. diff {:.2e}", rel));
}

void criterion6(Outcome& o) {
  using namespace control;
  std::mt19937_64 rng(6);
  RigidBodyParams p;
  p.r_com = Vec3(0.01, -0.02, 0.005);
  double worst_a = 0.0, worst_psi = 0.0;
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
    worst_a = std::max(worst_a, (ea_dot - u.head<3>()).norm());
    worst_psi = std::max(worst_psi, (epsi_dot - u.tail<3>()).norm());
  }
  o.require(worst_a < 1e-8, fmt::format("max |e_a' - u_1:3| = {:.1e}", worst_a));
  o.require(worst_psi < 1e-8, fmt::format("max |e_psi' - u_4:6| = {:.1e}", worst_psi));
}

void criterion7(Outcome& o) {
  using namespace allocation;
  const Morphology m = Morphology::hexarotor();
  const MatX A = staticAllocation(m);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uw(300.0, 1200.0), ua(-3.0, 3.0), uu(-50.0, 50.0);
  double worst_res = 0.0, worst_opt = 0.0, worst_fd = 0.0;
  for (int i = 0; i < 1000; ++i) {
    VecX omega(12), alpha(6), u_star(18);
    Vec6 w_dot;
    for (auto& x : omega) x = uw(rng);
    for (auto& x : alpha) x = ua(rng);
    for (auto& x : u_star) x = uu(rng);
    for (auto& x : w_dot) x = uu(rng);
    const DiffAllocation d = buildDiffAllocation(A, omega, alpha);
    const SolveResult r = solveDiffAllocation(d, u_star, w_dot);
    worst_res = std::max(worst_res, r.residual / w_dot.norm());
    Eigen::JacobiSVD<MatX> svd(d.A_tilde, Eigen::ComputeFullV);
    const MatX N = svd.matrixV().rightCols(12);
    const VecX g = d.W * d.W * (r.u - u_star);
    worst_opt = std::max(worst_opt, (N.transpose() * g).norm() / std::max(1.0, g.norm()));

    const double eps = 1e-6;
    MatX fd(6, 18);
    for (int j = 0; j < 18; ++j) {
      VecX wp = omega, wm = omega, ap = alpha, am = alpha;
      if (j < 12) {
        wp[j] += eps;
        wm[j] -= eps;
      } else {
        ap[j - 12] += eps;
        am[j - 12] -= eps;
      }
      fd.col(j) = (A * omegaTilde(squared(wp), ap) - A * omegaTilde(squared(wm), am)) / (2 * eps);
    }
    worst_fd = std::max(worst_fd, (d.A_tilde - fd).norm() / d.A_tilde.norm());
  }
  o.require(worst_res < 1e-9, fmt::format("residual {:.1e}", worst_res));
  o.require(worst_opt < 1e-8, fmt::format("null-space optimality {:.1e}", worst_opt));
  o.require(worst_fd < 1e-4, fmt::format("Jacobian FD rel. error {:.1e}", worst_fd));
}

void criterion8(Outcome& o) {
  const Morphology m = Morphology::hexarotor();
  allocation::ConditionScanOptions opt;
  opt.bias = false;
  const double off = allocation::conditionScan(m, opt).max_log_kappa;
  opt.bias = true;
  const double on = allocation::conditionScan(m, opt).max_log_kappa;
  o.require(off >= 30.0, fmt::format("bias off max log kappa {}", off));
  o.require(on <= 10.0, fmt::format("bias on {:.2f}", on));
  const sim::Trajectory d = sim::namedTrajectory('d');
  for (bool bias : {false, true}) {
    sim::SimConfig cfg;
    cfg.bias.enabled = bias;
    const sim::SimLog log = sim::runSimulation(cfg, m, d);
    o.require(!log.diverged, fmt::format("(d) bias {} completes, median |e_p| {:.3g} m",
                                         bias ? "on" : "off",
                                         sim::trackingStats(log).position_norm.median));
  }
}

void criterion9(Outcome& o) {
  const Morphology m = Morphology::hexarotor();
  const sim::Trajectory hover = sim::Trajectory::hover(Vec3::Zero(), Mat3::Identity(), 5.0);
  auto recover = [&](sim::SimConfig cfg) {
    cfg.initial_offset = Vec3(0.1, 0.0, 0.0);
    return sim::runSimulation(cfg, m, hover).rows.back().error.position.norm();
  };
  // Regulation gain sets; the default (tracking) gains are reported for reference.
  sim::SimConfig pid;
  pid.controller = sim::ControllerKind::kPid;
  pid.pid.k_p = 25.0;
  pid.pid.k_v = 10.0;
  pid.pid.k_p_i = 0.3;
  sim::SimConfig lqri;
  lqri.controller = sim::ControllerKind::kLqri;
  lqri.lqri.k_p = 1e4;
  lqri.lqri.k_v = 100.0;
  lqri.lqri.k_p_i = 1e5;
  const double e_pid = recover(pid), e_lqri = recover(lqri);
  o.require(e_pid < 1e-3, fmt::format("PID step |e_p|(5 s) = {:.2e} m", e_pid));
  o.require(e_lqri < 1e-3, fmt::format("LQRI step |e_p|(5 s) = {:.2e} m", e_lqri));
  sim::SimConfig def_pid, def_lqri;
  def_lqri.controller = sim::ControllerKind::kLqri;
  o.info(fmt::format("default gains: PID {:.2e} m, LQRI {:.2e} m", recover(def_pid),
                     recover(def_lqri)));

  std::vector<sim::SimJob> jobs;
  for (char k = 'a'; k <= 'g'; ++k) jobs.push_back({sim::SimConfig{}, m, sim::namedTrajectory(k)});
  const auto logs = sim::runSimulations(jobs);
  std::string completed;
  bool all = true;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    all = all && !logs[i].diverged;
    completed += fmt::format("{}{}:{:.2g}", completed.empty() ? "" : " ", static_cast<char>('a' + i),
                             maxPositionError(logs[i]));
  }
  o.require(all, "(a)-(g) complete under PID, max |e_p| " + completed);

  const sim::SimLog h = sim::runSimulation(sim::SimConfig{}, m, hover);
  double eta_dev = 0.0;
  for (const auto& r : h.rows) eta_dev = std::max(eta_dev, std::abs(r.eta_f - 1.0));
  o.require(eta_dev <= 1e-6, fmt::format("z-hover max |eta_f - 1| = {:.1e}", eta_dev));
}

void criterion10(Outcome& o) {
  const Morphology m = Morphology::hexarotor();
  const sim::Trajectory a = sim::namedTrajectory('a');
  for (auto kind : {sim::ControllerKind::kPid, sim::ControllerKind::kLqri}) {
    sim::SimConfig base;
    base.controller = kind;
    sim::SimConfig wound = base;
    wound.wound_arms = 4;
    const auto logs = sim::runSimulations({{base, m, a}, {wound, m, a}});
    const std::string name = sim::toString(kind);
    if (logs[1].diverged) {
      o.require(false, name + " wound run diverged: " + logs[1].message);
      continue;
    }
    const double end = logs[1].rows.back().alpha.cwiseAbs().maxCoeff();
    const double med0 = sim::trackingStats(logs[0]).position_norm.median;
    const double med1 = sim::trackingStats(logs[1]).position_norm.median;
    o.require(end < std::numbers::pi, fmt::format("{} end max |alpha| {:.3f} rad", name, end));
    o.require(med1 <= 3.0 * med0,
              fmt::format("{} median |e_p| {:.3g} vs {:.3g} m ({:.2f}x)", name, med1, med0, med1 / med0));
    o.info(fmt::format("{} max |e_p| {:.3g} vs {:.3g} m", name, maxPositionError(logs[1]),
                       maxPositionError(logs[0])));
  }
}

void criterion11(Outcome& o) {
  const fs::path dir = fs::temp_directory_path() / "omav_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "config.json");
    cfg << R"({"seed": 17, "trajectory": "c",
               "simulation": {"sigma_accel": 0.05, "sigma_gyro": 0.005, "use_estimator": true}})";
  }
  std::vector<std::string> logs, manifests;
  for (int i = 0; i < 2; ++i) {
    const fs::path out = dir / fmt::format("run{}", i);
    const std::string cmd = fmt::format("\"{}\" simulate --config \"{}\" --out \"{}\" > \"{}\" 2>&1",
                                        OMAV_CLI_PATH, (dir / "config.json").string(), out.string(),
                                        (dir / fmt::format("run{}.txt", i)).string());
    const int rc = std::system(cmd.c_str());
    o.require(rc == 0, fmt::format("run {} exit status {}", i, rc));
    logs.push_back(slurp(out / "sim_log.csv"));
    manifests.push_back(slurp(out / "manifest_simulate.json"));
  }
  o.require(!logs[0].empty() && logs[0] == logs[1],
            fmt::format("SimLog identical ({} bytes)", logs[0].size()));
  o.require(!manifests[0].empty() && manifests[0] == manifests[1], "manifest identical");
  fs::remove_all(dir);
}

}  // namespace

int main() {
  run(1, "allocation consistency", 1.0, criterion1);
  run(2, "thrust budget", 1.0, criterion2);
  run(3, "design optimization", 300.0, criterion3);
  run(4, "envelope ratios", 0.0, criterion4);
  run(5, "CARE correctness", 10.0, criterion5);
  run(6, "feedback-linearization identity", 10.0, criterion6);
  run(7, "differential allocation", 30.0, criterion7);
  run(8, "singularity handling", 120.0, criterion8);
  run(9, "closed-loop regulation", 300.0, criterion9);
  run(10, "unwinding", 60.0, criterion10);
  run(11, "determinism", 0.0, criterion11);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
