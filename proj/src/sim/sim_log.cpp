#include "omav/sim/sim_log.hpp"

#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace omav::sim {

void SimLog::append(SimLogRow row) {
  if (row.alpha.size() != num_arms || row.alpha_ref.size() != num_arms ||
      row.omega.size() != num_rotors || row.omega_ref.size() != num_rotors) {
    throw std::invalid_argument("SimLog::append: row does not match the log schema");
  }
  rows.push_back(std::move(row));
}

std::vector<std::string> simLogColumns(int num_arms, int num_rotors) {
  std::vector<std::string> c{"t"};
  auto vec = [&](const std::string& name) {
    for (const char* a : {"x", "y", "z"}) c.push_back(name + "_" + a);
  };
  auto quat = [&](const std::string& name) {
    for (const char* a : {"w", "x", "y", "z"}) c.push_back(name + "_" + a);
  };
  vec("p");
  vec("v");
  vec("a");
  quat("q");
  vec("w");
  vec("psi");
  vec("pd");
  vec("vd");
  quat("qd");
  vec("wd");
  for (const char* e : {"e_p", "e_pi", "e_v", "e_a", "e_R", "e_Ri", "e_w", "e_psi"}) vec(e);
  for (int i = 0; i < num_arms; ++i) c.push_back(fmt::format("alpha_ref_{}", i));
  for (int k = 0; k < num_rotors; ++k) c.push_back(fmt::format("omega_ref_{}", k));
  for (int i = 0; i < num_arms; ++i) c.push_back(fmt::format("alpha_{}", i));
  for (int k = 0; k < num_rotors; ++k) c.push_back(fmt::format("omega_{}", k));
  for (const char* s : {"eta_f", "log_kappa", "stab_lhs", "stab_rhs", "regularized", "saturated",
                        "residual"}) {
    c.push_back(s);
  }
  return c;
}

namespace {

void put(std::string& line, double v) { fmt::format_to(std::back_inserter(line), ",{:.10g}", v); }
void put(std::string& line, const Vec3& v) {
  for (int i = 0; i < 3; ++i) put(line, v[i]);
}
void put(std::string& line, const VecX& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) put(line, v[i]);
}
void putQuat(std::string& line, const Mat3& R) {
  Eigen::Quaterniond q(R);
  if (q.w() < 0.0) q.coeffs() *= -1.0;
  put(line, q.w());
  put(line, Vec3(q.vec()));
}

}  // namespace

void writeSimLogCsv(std::ostream& os, const SimLog& log) {
  const auto cols = simLogColumns(log.num_arms, log.num_rotors);
  std::string header;
  for (std::size_t i = 0; i < cols.size(); ++i) header += (i ? "," : "") + cols[i];
  os << header << '\n';
  std::string line;
  for (const auto& r : log.rows) {
    line = fmt::format("{:.10g}", r.time);
    put(line, r.state.position);
    put(line, r.state.velocity);
    put(line, r.state.acceleration);
    putQuat(line, r.state.attitude);
    put(line, r.state.angular_velocity);
    put(line, r.state.angular_acceleration);
    put(line, r.reference.position);
    put(line, r.reference.velocity);
    putQuat(line, r.reference.attitude);
    put(line, r.reference.angular_velocity);
    const auto& e = r.error;
    for (const Vec3* v : {&e.position, &e.position_integral, &e.velocity, &e.acceleration,
                          &e.attitude, &e.attitude_integral, &e.angular_velocity,
                          &e.angular_acceleration}) {
      put(line, *v);
    }
    put(line, r.alpha_ref);
    put(line, r.omega_ref);
    put(line, r.alpha);
    put(line, r.omega);
    put(line, r.eta_f);
    put(line, r.log_kappa);
    put(line, r.stability_lhs);
    put(line, r.stability_rhs);
    line += r.regularized ? ",1" : ",0";
    line += r.saturated ? ",1" : ",0";
    put(line, r.residual);
    os << line << '\n';
  }
}

}  // namespace omav::sim
