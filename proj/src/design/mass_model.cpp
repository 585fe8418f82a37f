#include "omav/design/mass_model.hpp"

#include <cmath>

#include "omav/core/so3.hpp"
#include "omav/design/nelder_mead.hpp"

namespace omav::design {

namespace {

Mat3 shifted(const Mat3& J, double mass, const Vec3& p) {
  return J + mass * (p.squaredNorm() * Mat3::Identity() - p * p.transpose());
}

}  // namespace

void MassModel::validate() const {
  const double values[] = {core_mass_const, actuation_mass_per_arm, rotor_group_mass,
                           tube_mass_per_length, core_radius, core_height,
                           tube_inner_radius, tube_outer_radius, rotor_radius, rotor_height};
  for (double v : values) {
    if (!(v > 0.0)) throw PreconditionError("mass model constants must be positive");
  }
}

MassProperties computeMassInertia(const std::vector<ArmGeometry>& arms, const MassModel& mm) {
  const double n = static_cast<double>(arms.size());
  const double core_mass = mm.core_mass_const + n * mm.actuation_mass_per_arm;
  const double rc2 = mm.core_radius * mm.core_radius;
  const double hc2 = mm.core_height * mm.core_height;
  MassProperties out;
  out.mass = core_mass;
  out.inertia = Vec3(core_mass * (3.0 * rc2 + hc2) / 12.0, core_mass * (3.0 * rc2 + hc2) / 12.0,
                     0.5 * core_mass * rc2)
                    .asDiagonal();

  const double tube_r2 = mm.tube_inner_radius * mm.tube_inner_radius +
                         mm.tube_outer_radius * mm.tube_outer_radius;
  const double mr = mm.rotor_group_mass;
  const double rotor_axial = mr * (3.0 * mm.rotor_radius * mm.rotor_radius +
                                   mm.rotor_height * mm.rotor_height) / 12.0;
  const double rotor_avg = 0.5 * (rotor_axial + 0.5 * mr * mm.rotor_radius * mm.rotor_radius);
  const Mat3 J_rotor = Vec3(rotor_axial, rotor_avg, rotor_avg).asDiagonal();

  for (const auto& arm : arms) {
    const double L = arm.length;
    const double mt = mm.tube_mass_per_length * L;
    const double transverse = mt * (3.0 * tube_r2 + L * L) / 12.0;
    const Mat3 J_tube = Vec3(0.5 * mt * tube_r2, transverse, transverse).asDiagonal();
    const Mat3 local = shifted(J_tube, mt, Vec3(L / 2.0, 0.0, 0.0)) +
                       shifted(J_rotor, mr, Vec3(L, 0.0, 0.0));
    const Mat3 R = rotZ(arm.effectiveAzimuth()) * rotY(-arm.inclination);
    out.inertia += R * local * R.transpose();
    out.mass += mr + mt;
  }
  // Symmetrize away rounding so downstream SPD checks stay exact.
  out.inertia = 0.5 * (out.inertia + out.inertia.transpose()).eval();
  return out;
}

MassModel calibrateMassModel(const MassProperties& target, const MassModel& initial) {
  const auto arms = Morphology::evenlySpaced(6, 0.3, 1).arms;
  auto apply = [&](const VecX& x) {
    MassModel mm = initial;
    mm.core_mass_const = x[0];
    mm.rotor_group_mass = x[1];
    mm.rotor_radius = x[2];
    return mm;
  };
  auto residual = [&](const VecX& x) {
    if (x.minCoeff() <= 0.0) return 1e6;
    const MassProperties p = computeMassInertia(arms, apply(x));
    const double em = (p.mass - target.mass) / target.mass;
    const double ex = (p.inertia(0, 0) - target.inertia(0, 0)) / target.inertia(0, 0);
    const double ez = (p.inertia(2, 2) - target.inertia(2, 2)) / target.inertia(2, 2);
    return em * em + ex * ex + ez * ez;
  };
  VecX x0(3);
  x0 << initial.core_mass_const, initial.rotor_group_mass, initial.rotor_radius;
  NelderMeadOptions opts;
  opts.initial_step = 0.05;
  opts.max_evaluations = 20000;
  opts.f_tolerance = 1e-24;
  opts.x_tolerance = 1e-12;
  NelderMeadResult best = nelderMead(residual, x0, opts);
  for (int restart = 0; restart < 3; ++restart) {
    opts.initial_step = 0.01;
    NelderMeadResult r = nelderMead(residual, best.x, opts);
    if (r.value < best.value) best = r;
  }
  return apply(best.x);
}

MassProperties referenceFlatHexMassProperties() {
  return {4.0, Vec3(0.0725, 0.0725, 0.1439).asDiagonal()};
}

}  // namespace omav::design
