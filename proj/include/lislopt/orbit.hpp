#pragma once

// Orbital state: TLE ingestion, two-body propagation, pairwise geometry and
// laser-terminal mount directions.

#include <string>
#include <string_view>
#include <vector>

#include "lislopt/vec3.hpp"

namespace lislopt {

inline constexpr double kEarthRadius = 6.3781e6;          // m
inline constexpr double kEarthRotationRate = 7.2921e-5;   // rad/s
inline constexpr double kEarthMu = 3.986004418e14;        // m^3/s^2
inline constexpr double kPi = 3.14159265358979323846;

struct OrbitalElements {
  int sat_id = 0;
  double semi_major_axis = 0.0;       // m
  double eccentricity = 0.0;
  double inclination = 0.0;           // rad
  double raan = 0.0;                  // rad
  double arg_perigee = 0.0;           // rad
  double mean_anomaly_at_epoch = 0.0; // rad
  double mean_motion = 0.0;           // rad/s
  double epoch = 0.0;                 // s, offset from the scenario T0

  // Throws DomainError when the invariants (e in [0,1), a above the Earth
  // surface, n > 0) do not hold.
  void validate() const;
};

struct SatelliteState {
  int sat_id = 0;
  Vec3 position;  // m, ECI
  Vec3 velocity;  // m/s, ECI
  bool has_gateway = false;
};

struct LctTerminal {
  int lct_id = 0;
  int sat_id = 0;
  Vec3 mount_direction;  // unit
};

// --- time -----------------------------------------------------------------

// Seconds since the Unix epoch for an ISO-8601 UTC timestamp such as
// "2025-07-16T16:00:00Z" (fractional seconds and a trailing 'Z' optional).
double parse_iso8601_utc(std::string_view text);

// Unix seconds of a TLE epoch field (YYDDD.DDDDDDDD).
double tle_epoch_to_unix(int two_digit_year, double day_of_year);

// Greenwich rotation angle (rad) at Unix time `unix_seconds`, using the Earth
// rotation angle model with UT1 ~ UTC.
double greenwich_angle(double unix_seconds);

// --- TLE --------------------------------------------------------------------

struct TleRecord {
  std::string name;  // empty for 2-line records
  OrbitalElements elements;
  double epoch_unix = 0.0;
};

// Parses 2-line or 3-line element sets. Epochs are converted to offsets from
// `t0_unix`. Throws ParseError naming the 1-based input line on a malformed
// record or a checksum mismatch.
std::vector<TleRecord> parse_tle_records(std::string_view text, double t0_unix = 0.0);

std::vector<OrbitalElements> parse_tle(std::string_view text, double t0_unix = 0.0);

std::vector<TleRecord> load_tle_file(const std::string& path, double t0_unix = 0.0);

int tle_checksum(std::string_view line);

// --- propagation ------------------------------------------------------------

// Anything that maps an element set to an ECI state at scenario time t.
// Kepler is the default; an SGP4-grade model can be substituted.
class Propagator {
 public:
  virtual ~Propagator() = default;
  virtual SatelliteState state_at(const OrbitalElements& el, double t) const = 0;
};

class KeplerPropagator final : public Propagator {
 public:
  SatelliteState state_at(const OrbitalElements& el, double t) const override;
};

// Solves M = E - e sin E by Newton iteration to a residual of 1e-12 rad.
// Throws NumericError after 64 steps without convergence.
double solve_kepler(double mean_anomaly, double eccentricity);

// Two-body propagation to scenario time t (t >= 0).
SatelliteState propagate(const OrbitalElements& el, double t);

// --- geometry ---------------------------------------------------------------

struct RangeDirection {
  double range = 0.0;  // m
  Vec3 direction;      // unit, from a toward b
};

RangeDirection range_and_direction(const SatelliteState& a, const SatelliteState& b);

// Mount directions for `per_sat` terminals. Two terminals point along and
// against the velocity. Other counts are evenly spaced in the plane spanned
// by the velocity and the orbit normal (the local horizontal plane for a
// circular orbit), starting at +v and rotating toward +h where h = r x v.
// Terminal ids are `first_lct_id + k`.
std::vector<LctTerminal> mount_directions(const SatelliteState& s, int per_sat,
                                          int first_lct_id = 0);

}  // namespace lislopt
