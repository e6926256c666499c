#pragma once

// Gaussian-beam LISL capacity with Rayleigh pointing jitter.

namespace lislopt {

struct OpticalParams {
  double tx_power_P0 = 20.0;             // W
  double aperture_A = 0.01;              // m^2
  double responsivity_Psi = 0.5;         // A/W
  double noise_current_sigmaN = 3e-7;    // A
  double bandwidth_B = 1e9;              // Hz
  double wavelength = 1.55e-6;           // m
  double waist_W0 = 9.87e-3;             // m
  // pi W0^2 / wavelength for the waist above
  double rayleigh_range_zR = 3.14159265358979323846 * 9.87e-3 * 9.87e-3 / 1.55e-6;  // m
  double jitter_sigmaJ = 10e-6;          // rad
  double outage_eps = 1e-3;
  double max_range_zhat = 3.0e6;         // m

  // Throws DomainError unless every field is positive and eps is in (0,1).
  void validate() const;
};

double beam_radius(double z, const OpticalParams& p);

// W/m^2 at radial offset y from the beam axis, distance z from the waist.
double beam_intensity(double y, double z, const OpticalParams& p);

// bit/s
double instantaneous_capacity(double y, double z, const OpticalParams& p);

// Jitter angle exceeded with probability eps.
double jitter_threshold(const OpticalParams& p);

// Outage-weighted link rate in Gbit/s. Throws DomainError outside (0, zhat].
double lisl_rate(double z, const OpticalParams& p);

// Waist radius for a far-field half-angle divergence.
double waist_from_divergence(double half_angle, double wavelength);

// Copy of `p` with W0 and zR re-derived from a full-angle divergence.
OpticalParams with_divergence(const OpticalParams& p, double full_angle);

}  // namespace lislopt
