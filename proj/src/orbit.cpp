#include "lislopt/orbit.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lislopt/error.hpp"

namespace lislopt {

namespace {

constexpr double kDeg = kPi / 180.0;
constexpr double kSecondsPerDay = 86400.0;

// Days since 1970-01-01 for a proleptic Gregorian date.
long days_from_civil(long y, unsigned m, unsigned d) {
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

// 1-based inclusive column range.
std::string_view columns(std::string_view line, int first, int last) {
  return line.substr(static_cast<size_t>(first - 1), static_cast<size_t>(last - first + 1));
}

double field_double(std::string_view line, int first, int last, const char* what, int line_no) {
  std::string_view f = trim(columns(line, first, last));
  if (!f.empty() && f.front() == '+') f.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
    throw ParseError(std::string("non-numeric ") + what + " field '" + std::string(f) + "'", line_no);
  }
  return v;
}

int field_int(std::string_view line, int first, int last, const char* what, int line_no) {
  std::string_view f = trim(columns(line, first, last));
  int v = 0;
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
    throw ParseError(std::string("non-numeric ") + what + " field '" + std::string(f) + "'", line_no);
  }
  return v;
}

void check_element_line(std::string_view line, char expected, int line_no) {
  if (line.size() != 69) {
    throw ParseError("element line has length " + std::to_string(line.size()) + ", expected 69",
                     line_no);
  }
  if (line[0] != expected || line[1] != ' ') {
    throw ParseError(std::string("expected element line ") + expected, line_no);
  }
  const char cs = line[68];
  if (cs < '0' || cs > '9') throw ParseError("missing checksum digit", line_no);
  if (tle_checksum(line) != cs - '0') {
    throw ParseError("checksum failure (expected " + std::to_string(tle_checksum(line)) +
                         ", found " + std::string(1, cs) + ")",
                     line_no);
  }
}

bool looks_like_line(std::string_view s, char c) {
  return s.size() >= 2 && s[0] == c && s[1] == ' ';
}

}  // namespace

void OrbitalElements::validate() const {
  if (!(eccentricity >= 0.0 && eccentricity < 1.0)) {
    throw DomainError("eccentricity outside [0,1) for satellite " + std::to_string(sat_id));
  }
  if (!(semi_major_axis > kEarthRadius)) {
    throw DomainError("semi-major axis below Earth radius for satellite " + std::to_string(sat_id));
  }
  if (!(mean_motion > 0.0)) {
    throw DomainError("non-positive mean motion for satellite " + std::to_string(sat_id));
  }
}

double parse_iso8601_utc(std::string_view text) {
  std::string s(trim(text));
  int y = 0, mo = 0, d = 0, h = 0, mi = 0;
  double sec = 0.0;
  char sep = 0;
  int consumed = 0;
  const int n = std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%lf%n", &y, &mo, &d, &sep, &h, &mi, &sec,
                            &consumed);
  if (n < 7 || (sep != 'T' && sep != ' ') || mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 ||
      h > 23 || mi < 0 || mi > 59 || sec < 0.0 || sec >= 61.0) {
    throw ParseError("invalid ISO-8601 UTC timestamp '" + s + "'");
  }
  std::string_view rest(s.c_str() + consumed);
  if (!(rest.empty() || rest == "Z" || rest == "z" || rest == "+00:00")) {
    throw ParseError("only UTC timestamps are accepted: '" + s + "'");
  }
  const long days = days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d));
  return static_cast<double>(days) * kSecondsPerDay + h * 3600.0 + mi * 60.0 + sec;
}

double tle_epoch_to_unix(int two_digit_year, double day_of_year) {
  const int year = two_digit_year < 57 ? 2000 + two_digit_year : 1900 + two_digit_year;
  const long days = days_from_civil(year, 1, 1);
  return static_cast<double>(days) * kSecondsPerDay + (day_of_year - 1.0) * kSecondsPerDay;
}

double greenwich_angle(double unix_seconds) {
  const double du = unix_seconds / kSecondsPerDay - 10957.5;  // days since J2000.0
  double turns = 0.7790572732640 + 0.00273781191135448 * du + std::fmod(du, 1.0);
  turns = std::fmod(turns, 1.0);
  if (turns < 0.0) turns += 1.0;
  return 2.0 * kPi * turns;
}

int tle_checksum(std::string_view line) {
  int sum = 0;
  const size_t n = line.size() < 68 ? line.size() : 68;
  for (size_t k = 0; k < n; ++k) {
    const char c = line[k];
    if (c >= '0' && c <= '9') sum += c - '0';
    else if (c == '-') sum += 1;
  }
  return sum % 10;
}

std::vector<TleRecord> parse_tle_records(std::string_view text, double t0_unix) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view l = text.substr(start, end - start);
    while (!l.empty() && (l.back() == '\r' || l.back() == ' ')) l.remove_suffix(1);
    lines.push_back(l);
    if (end == text.size()) break;
    start = end + 1;
  }

  std::vector<TleRecord> out;
  size_t i = 0;
  while (i < lines.size()) {
    if (trim(lines[i]).empty()) {
      ++i;
      continue;
    }
    TleRecord rec;
    if (!(looks_like_line(lines[i], '1') && i + 1 < lines.size() &&
          looks_like_line(lines[i + 1], '2'))) {
      // a name row, unless it is a damaged element line
      if (looks_like_line(lines[i], '1') || looks_like_line(lines[i], '2')) {
        check_element_line(lines[i], lines[i][0], static_cast<int>(i + 1));
        throw ParseError("element line without its partner", static_cast<int>(i + 1));
      }
      rec.name = std::string(trim(lines[i]));
      ++i;
    }
    if (i + 1 >= lines.size()) throw ParseError("truncated element set", static_cast<int>(i + 1));
    const std::string_view l1 = lines[i];
    const std::string_view l2 = lines[i + 1];
    const int n1 = static_cast<int>(i + 1);
    const int n2 = static_cast<int>(i + 2);
    check_element_line(l1, '1', n1);
    check_element_line(l2, '2', n2);

    const int satnum1 = field_int(l1, 3, 7, "satellite number", n1);
    const int satnum2 = field_int(l2, 3, 7, "satellite number", n2);
    if (satnum1 != satnum2) throw ParseError("satellite numbers of lines 1 and 2 differ", n2);

    const int yy = field_int(l1, 19, 20, "epoch year", n1);
    const double day = field_double(l1, 21, 32, "epoch day", n1);
    const double incl = field_double(l2, 9, 16, "inclination", n2);
    const double raan = field_double(l2, 18, 25, "RAAN", n2);
    const std::string_view ecc_digits = trim(columns(l2, 27, 33));
    for (char c : ecc_digits) {
      if (c < '0' || c > '9') throw ParseError("non-numeric eccentricity field", n2);
    }
    if (ecc_digits.empty()) throw ParseError("empty eccentricity field", n2);
    const double ecc = field_double(l2, 27, 33, "eccentricity", n2) * 1e-7;
    const double argp = field_double(l2, 35, 42, "argument of perigee", n2);
    const double ma = field_double(l2, 44, 51, "mean anomaly", n2);
    const double mm = field_double(l2, 53, 63, "mean motion", n2);

    OrbitalElements& el = rec.elements;
    el.sat_id = satnum1;
    el.eccentricity = ecc;
    el.inclination = incl * kDeg;
    el.raan = raan * kDeg;
    el.arg_perigee = argp * kDeg;
    el.mean_anomaly_at_epoch = ma * kDeg;
    el.mean_motion = mm * 2.0 * kPi / kSecondsPerDay;
    if (!(el.mean_motion > 0.0)) throw ParseError("non-positive mean motion", n2);
    el.semi_major_axis = std::cbrt(kEarthMu / (el.mean_motion * el.mean_motion));
    rec.epoch_unix = tle_epoch_to_unix(yy, day);
    el.epoch = rec.epoch_unix - t0_unix;
    try {
      el.validate();
    } catch (const DomainError& e) {
      throw ParseError(e.what(), n2);
    }
    out.push_back(std::move(rec));
    i += 2;
  }
  return out;
}

std::vector<OrbitalElements> parse_tle(std::string_view text, double t0_unix) {
  std::vector<OrbitalElements> out;
  for (auto& r : parse_tle_records(text, t0_unix)) out.push_back(r.elements);
  return out;
}

std::vector<TleRecord> load_tle_file(const std::string& path, double t0_unix) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open TLE file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_tle_records(ss.str(), t0_unix);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

double solve_kepler(double mean_anomaly, double eccentricity) {
  double m = std::fmod(mean_anomaly, 2.0 * kPi);
  if (m > kPi) m -= 2.0 * kPi;
  if (m < -kPi) m += 2.0 * kPi;
  double e_anom = eccentricity < 0.8 ? m : (m >= 0.0 ? kPi : -kPi);
  for (int it = 0; it < 64; ++it) {
    const double f = e_anom - eccentricity * std::sin(e_anom) - m;
    if (std::abs(f) <= 1e-12) return e_anom;
    e_anom -= f / (1.0 - eccentricity * std::cos(e_anom));
  }
  const double f = e_anom - eccentricity * std::sin(e_anom) - m;
  if (std::abs(f) <= 1e-12) return e_anom;
  throw NumericError("Kepler iteration did not converge");
}

SatelliteState KeplerPropagator::state_at(const OrbitalElements& el, double t) const {
  if (!(t >= 0.0)) throw DomainError("propagation time must be non-negative");
  const double e = el.eccentricity;
  const double a = el.semi_major_axis;
  const double m = el.mean_anomaly_at_epoch + el.mean_motion * (t - el.epoch);
  const double e_anom = solve_kepler(m, e);
  const double ce = std::cos(e_anom);
  const double se = std::sin(e_anom);
  const double root = std::sqrt(1.0 - e * e);

  const double p = a * (ce - e);
  const double q = a * root * se;
  const double e_dot = el.mean_motion / (1.0 - e * ce);
  const double vp = -a * se * e_dot;
  const double vq = a * root * ce * e_dot;

  const double co = std::cos(el.raan), so = std::sin(el.raan);
  const double cw = std::cos(el.arg_perigee), sw = std::sin(el.arg_perigee);
  const double ci = std::cos(el.inclination), si = std::sin(el.inclination);

  const Vec3 p_axis{co * cw - so * sw * ci, so * cw + co * sw * ci, sw * si};
  const Vec3 q_axis{-co * sw - so * cw * ci, -so * sw + co * cw * ci, cw * si};

  SatelliteState s;
  s.sat_id = el.sat_id;
  s.position = p_axis * p + q_axis * q;
  s.velocity = p_axis * vp + q_axis * vq;
  return s;
}

SatelliteState propagate(const OrbitalElements& el, double t) {
  static const KeplerPropagator kepler;
  return kepler.state_at(el, t);
}

RangeDirection range_and_direction(const SatelliteState& a, const SatelliteState& b) {
  const Vec3 diff = b.position - a.position;
  const double z = diff.norm();
  if (!(z > 0.0)) {
    throw GeometryError("coincident satellite positions (" + std::to_string(a.sat_id) + ", " +
                        std::to_string(b.sat_id) + ")");
  }
  return {z, diff / z};
}

std::vector<LctTerminal> mount_directions(const SatelliteState& s, int per_sat, int first_lct_id) {
  if (per_sat < 1) throw DomainError("at least one terminal per satellite is required");
  const double vn = s.velocity.norm();
  if (!(vn > 0.0)) throw GeometryError("zero velocity: mount directions undefined");
  const Vec3 v_hat = s.velocity / vn;

  std::vector<LctTerminal> out;
  out.reserve(static_cast<size_t>(per_sat));
  if (per_sat <= 2) {
    out.push_back({first_lct_id, s.sat_id, v_hat});
    if (per_sat == 2) out.push_back({first_lct_id + 1, s.sat_id, -v_hat});
    return out;
  }
  const Vec3 h = cross(s.position, s.velocity);
  const double hn = h.norm();
  if (!(hn > 0.0)) throw GeometryError("position parallel to velocity: orbit normal undefined");
  const Vec3 h_hat = h / hn;
  for (int k = 0; k < per_sat; ++k) {
    const double phi = 2.0 * kPi * k / per_sat;
    Vec3 u = v_hat * std::cos(phi) + h_hat * std::sin(phi);
    u = u / u.norm();
    out.push_back({first_lct_id + k, s.sat_id, u});
  }
  return out;
}

}  // namespace lislopt
