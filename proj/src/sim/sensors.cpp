#include "sim/sensors.hpp"

namespace squall::sim {

SensorModel::Sample SensorModel::measure(const dynamics::RigidBodyState& truth,
                                         std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  auto draw3 = [&](double std) -> geom::Vec3 {
    return {std * n01(rng), std * n01(rng), std * n01(rng)};
  };

  Sample s;
  const geom::Vec3 dp = draw3(noise_.pos_std);
  const geom::Vec3 dv = draw3(noise_.vel_std);
  const geom::Vec3 datt = draw3(noise_.att_std);  // rotation vector
  const geom::Vec3 dom = draw3(noise_.rate_std);

  s.quat.p = truth.p + dp;
  s.quat.v = truth.v + dv;
  s.quat.q = (truth.q * geom::quat_from_rotvec(datt)).normalized();
  s.quat.omega = truth.omega_b + dom;

  s.euler.p = s.quat.p;
  s.euler.v = s.quat.v;
  s.euler.omega = s.quat.omega;
  if (const auto e = geom::euler_from_quat(s.quat.q)) {
    s.euler.att = *e;
  } else {
    s.euler_ok = false;
  }
  return s;
}

}  // namespace squall::sim
