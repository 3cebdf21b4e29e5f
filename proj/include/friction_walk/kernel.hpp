// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "friction_walk/random.hpp"
#include "friction_walk/vec3.hpp"

namespace friction_walk {

/// Physical parameters of the tracer/gas system and the constants derived
/// from the two masses. The coupling weight is fixed to 1.
class PhysParams {
 public:
  /// Throws DomainError unless m > 0, M > 0 and w == 1.
  PhysParams(double tracer_mass, double atom_mass, double coupling = 1.0);

  double m() const { return m_; }
  double M() const { return M_; }
  double w() const { return w_; }
  /// Mass ratio a = m/(m+M), in (0,1).
  double mass_ratio() const { return a_; }
  /// Sigma(k) = rate_coeff * |k|, rate_coeff = 4*pi*M^2*m/(m+M)^2.
  double rate_coeff() const { return rate_coeff_; }
  /// Friction coefficient eta = 4*pi*M^3*m/(m+M)^3, the unique value with
  /// Sigma(k)*(a-1)*k = -eta*|k|*k.
  double eta() const { return eta_; }
  /// Prefactor (m+M)^2/(4*pi*m^2*M^2) of the per-jump position increment.
  double position_prefactor() const { return position_prefactor_; }

 private:
  double m_, M_, w_, a_, rate_coeff_, eta_, position_prefactor_;
};

/// Tracer kinetic energy |k|^2/(2m).
double epsilon(const PhysParams& p, const Vec3& k);

/// Atom kinetic energy |q|^2/(2M).
double omega(const PhysParams& p, const Vec3& q);

/// eps(k) - eps(k2) - omega(k - k2); zero iff k2 lies on the energy shell.
double energy_residual(const PhysParams& p, const Vec3& k, const Vec3& k2);

/// Total scattering rate Sigma(k); zero at k = 0.
double scattering_rate(const PhysParams& p, const Vec3& k);

/// One momentum jump: k' = a*k + (1-a)*|k|*U with U uniform on S^2.
/// Throws ZeroMomentumError at |k| = 0 (absorbing state).
Vec3 sample_jump(const PhysParams& p, const Vec3& k, RandomStream& rng);

/// Deterministic variant used by tests: the landing point for a given U.
Vec3 jump_with_direction(const PhysParams& p, const Vec3& k, const Vec3& unit);

}  // namespace friction_walk
