#include "omav/core/morphology_json.hpp"

#include "omav/core/so3.hpp"

namespace omav {

using nlohmann::json;

namespace {

Vec3 vec3From(const json& j) {
  if (!j.is_array() || j.size() != 3) throw PreconditionError("expected a 3-element array");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Mat3 inertiaFrom(const json& j) {
  if (j.is_array() && j.size() == 3 && j[0].is_number()) {
    return vec3From(j).asDiagonal();
  }
  if (j.is_array() && j.size() == 3) {
    Mat3 J;
    for (int r = 0; r < 3; ++r) J.row(r) = vec3From(j[r]).transpose();
    return J;
  }
  throw PreconditionError("body.J must be a diagonal triple or a 3x3 matrix");
}

}  // namespace

Morphology morphologyFromJson(const json& j) {
  Morphology m;
  if (j.contains("rotor")) {
    const json& r = j["rotor"];
    m.rotor.c_f = r.value("c_f", m.rotor.c_f);
    m.rotor.c_d = r.value("c_d", m.rotor.c_d);
    m.rotor.omega_min = r.value("omega_min", m.rotor.omega_min);
    m.rotor.omega_max = r.value("omega_max", m.rotor.omega_max);
    m.rotor.rotors_per_arm = r.value("rotors_per_arm", m.rotor.rotors_per_arm);
  }
  if (j.contains("arms")) {
    for (const json& a : j["arms"]) {
      ArmGeometry arm;
      arm.azimuth = a.at("azimuth").get<double>();
      arm.yaw_offset = a.value("yaw_offset", 0.0);
      arm.inclination = a.value("inclination", 0.0);
      arm.length = a.value("length", arm.length);
      if (a.contains("spins")) {
        arm.spins = a["spins"].get<std::vector<int>>();
      } else {
        arm.spins.assign(m.rotor.rotors_per_arm, 1);
        for (int r = 1; r < m.rotor.rotors_per_arm; r += 2) arm.spins[r] = -1;
      }
      m.arms.push_back(arm);
    }
  } else {
    const int rpa = m.rotor.rotors_per_arm;
    const RotorParams rotor = m.rotor;
    m = Morphology::evenlySpaced(6, 0.3, rpa);
    m.rotor = rotor;
  }
  if (j.contains("tilt")) {
    const json& t = j["tilt"];
    m.tilt.tau = t.value("tau", m.tilt.tau);
    if (t.contains("rate_limits")) {
      m.tilt.max_tilt_rate = t["rate_limits"].value("alpha_dot", m.tilt.max_tilt_rate);
      m.tilt.max_rotor_accel = t["rate_limits"].value("omega_dot", m.tilt.max_rotor_accel);
    }
  }
  if (j.contains("body")) {
    const json& b = j["body"];
    m.body.mass = b.value("m", m.body.mass);
    if (b.contains("J")) m.body.inertia = inertiaFrom(b["J"]);
    if (b.contains("r_com")) m.body.r_com = vec3From(b["r_com"]);
  }
  m.validate();
  return m;
}

json morphologyToJson(const Morphology& m) {
  json arms = json::array();
  for (const auto& a : m.arms) {
    arms.push_back({{"azimuth", a.azimuth},
                    {"yaw_offset", a.yaw_offset},
                    {"inclination", a.inclination},
                    {"length", a.length},
                    {"spins", a.spins}});
  }
  const Mat3& J = m.body.inertia;
  return {
      {"arms", arms},
      {"rotor",
       {{"c_f", m.rotor.c_f},
        {"c_d", m.rotor.c_d},
        {"omega_min", m.rotor.omega_min},
        {"omega_max", m.rotor.omega_max},
        {"rotors_per_arm", m.rotor.rotors_per_arm}}},
      {"tilt",
       {{"tau", m.tilt.tau},
        {"rate_limits",
         {{"alpha_dot", m.tilt.max_tilt_rate}, {"omega_dot", m.tilt.max_rotor_accel}}}}},
      {"body",
       {{"m", m.body.mass},
        {"J", {J(0, 0), J(1, 1), J(2, 2)}},
        {"r_com", {m.body.r_com.x(), m.body.r_com.y(), m.body.r_com.z()}}}},
  };
}

}  // namespace omav
