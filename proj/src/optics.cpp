#include "lislopt/optics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lislopt/error.hpp"

namespace lislopt {

void OpticalParams::validate() const {
  const double fields[] = {tx_power_P0,   aperture_A,        responsivity_Psi, noise_current_sigmaN,
                           bandwidth_B,   wavelength,        waist_W0,         rayleigh_range_zR,
                           jitter_sigmaJ, max_range_zhat};
  for (double f : fields) {
    if (!(f > 0.0) || !std::isfinite(f)) throw DomainError("optical parameters must be positive");
  }
  if (!(outage_eps > 0.0 && outage_eps < 1.0)) throw DomainError("outage_eps must lie in (0,1)");
}

double beam_radius(double z, const OpticalParams& p) {
  const double q = z / p.rayleigh_range_zR;
  return p.waist_W0 * std::sqrt(1.0 + q * q);
}

double beam_intensity(double y, double z, const OpticalParams& p) {
  const double w = beam_radius(z, p);
  const double phi0 = 2.0 * p.tx_power_P0 / (std::numbers::pi * p.waist_W0 * p.waist_W0);
  const double ratio = p.waist_W0 / w;
  return phi0 * ratio * ratio * std::exp(-2.0 * y * y / (w * w));
}

double instantaneous_capacity(double y, double z, const OpticalParams& p) {
  const double current = p.aperture_A * beam_intensity(y, z, p) * p.responsivity_Psi;
  const double snr = current * current /
                     (2.0 * std::numbers::pi * std::numbers::e * p.noise_current_sigmaN *
                      p.noise_current_sigmaN);
  return 0.5 * p.bandwidth_B * std::log2(1.0 + snr);
}

double jitter_threshold(const OpticalParams& p) {
  return p.jitter_sigmaJ * std::sqrt(-2.0 * std::log(p.outage_eps));
}

double lisl_rate(double z, const OpticalParams& p) {
  if (!(z > 0.0) || z > p.max_range_zhat) {
    throw DomainError("range " + std::to_string(z) + " m outside (0, zhat]");
  }
  const double c = instantaneous_capacity(z * jitter_threshold(p), z, p);
  return (1.0 - p.outage_eps) * c * 1e-9;
}

double waist_from_divergence(double half_angle, double wavelength) {
  if (!(half_angle > 0.0)) throw DomainError("divergence must be positive");
  return wavelength / (std::numbers::pi * half_angle);
}

OpticalParams with_divergence(const OpticalParams& p, double full_angle) {
  OpticalParams q = p;
  q.waist_W0 = waist_from_divergence(0.5 * full_angle, p.wavelength);
  q.rayleigh_range_zR = std::numbers::pi * q.waist_W0 * q.waist_W0 / p.wavelength;
  return q;
}

}  // namespace lislopt
