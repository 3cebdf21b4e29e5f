// SPDX-License-Identifier: Apache-2.0
#include "friction_walk/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "friction_walk/errors.hpp"

namespace friction_walk {

namespace {
constexpr double kPi = std::numbers::pi;

void require_finite(const Vec3& v, const char* what) {
  if (!v.finite()) throw DomainError(std::string(what) + ": non-finite component");
}
}  // namespace

PhysParams::PhysParams(double tracer_mass, double atom_mass, double coupling)
    : m_(tracer_mass), M_(atom_mass), w_(coupling) {
  if (!(m_ > 0.0) || !std::isfinite(m_)) throw DomainError("tracer mass m must be positive");
  if (!(M_ > 0.0) || !std::isfinite(M_)) throw DomainError("atom mass M must be positive");
  if (w_ != 1.0) throw DomainError("coupling weight is fixed to w = 1");
  const double total = m_ + M_;
  a_ = m_ / total;
  rate_coeff_ = 4.0 * kPi * M_ * M_ * m_ / (total * total);
  eta_ = 4.0 * kPi * M_ * M_ * M_ * m_ / (total * total * total);
  position_prefactor_ = total * total / (4.0 * kPi * m_ * m_ * M_ * M_);
}

double epsilon(const PhysParams& p, const Vec3& k) {
  require_finite(k, "epsilon");
  return k.norm2() / (2.0 * p.m());
}

double omega(const PhysParams& p, const Vec3& q) {
  require_finite(q, "omega");
  return q.norm2() / (2.0 * p.M());
}

double energy_residual(const PhysParams& p, const Vec3& k, const Vec3& k2) {
  return epsilon(p, k) - epsilon(p, k2) - omega(p, k - k2);
}

double scattering_rate(const PhysParams& p, const Vec3& k) {
  require_finite(k, "scattering_rate");
  return p.rate_coeff() * k.norm();
}

Vec3 jump_with_direction(const PhysParams& p, const Vec3& k, const Vec3& unit) {
  const double a = p.mass_ratio();
  return a * k + (1.0 - a) * k.norm() * unit;
}

Vec3 sample_jump(const PhysParams& p, const Vec3& k, RandomStream& rng) {
  require_finite(k, "sample_jump");
  if (k.norm2() == 0.0) {
    throw ZeroMomentumError("sample_jump: k = 0 is absorbing (Sigma(0) = 0)");
  }
  return jump_with_direction(p, k, rng.unit_sphere());
}

}  // namespace friction_walk
