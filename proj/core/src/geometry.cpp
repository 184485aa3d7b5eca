#include "islsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace islsim {

using constants::kEarthMu;
using constants::kEarthRadius;
using constants::kPi;
using constants::kTwoPi;

namespace {

double wrap_phase(double phase) {
  double wrapped = std::fmod(phase, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  // fmod can return exactly 2pi after the correction above for tiny negatives.
  if (wrapped >= kTwoPi) wrapped = 0.0;
  return wrapped;
}

void check_plane(const ConstellationConfig& cfg, int plane) {
  if (plane < 1 || plane > cfg.planes) {
    throw std::out_of_range("plane index " + std::to_string(plane) + " outside [1, " +
                            std::to_string(cfg.planes) + "]");
  }
}

}  // namespace

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::minus:
      return "-";
    case Direction::plus:
      return "+";
    case Direction::zero:
      break;
  }
  return "0";
}

double ConstellationConfig::altitude(int plane) const {
  check_plane(*this, plane);
  return base_altitude + delta_altitude * static_cast<double>(plane - 1);
}

double ConstellationConfig::radius(int plane) const { return kEarthRadius + altitude(plane); }

double ConstellationConfig::longitude(int plane) const {
  check_plane(*this, plane);
  if (!longitudes.empty()) return longitudes[static_cast<std::size_t>(plane - 1)];
  return kPi * static_cast<double>(plane - 1) / static_cast<double>(planes);
}

double ConstellationConfig::phase_offset(int plane) const {
  check_plane(*this, plane);
  if (phase_offsets.empty()) return 0.0;
  return phase_offsets[static_cast<std::size_t>(plane - 1)];
}

void ConstellationConfig::validate() const {
  if (planes < 2) throw std::invalid_argument("constellation needs at least 2 planes");
  if (sats_per_plane < 1) throw std::invalid_argument("constellation needs at least 1 satellite per plane");
  for (int p = 1; p <= planes; ++p) {
    if (!(altitude(p) > 0.0)) {
      throw std::invalid_argument("altitude of plane " + std::to_string(p) + " must be positive");
    }
  }
  if (!longitudes.empty()) {
    if (static_cast<int>(longitudes.size()) != planes) {
      throw std::invalid_argument("longitudes must list one value per plane");
    }
    for (double eps : longitudes) {
      if (!(eps >= 0.0 && eps < kPi)) throw std::invalid_argument("plane longitudes must lie in [0, pi)");
    }
  }
  if (!phase_offsets.empty() && static_cast<int>(phase_offsets.size()) != planes) {
    throw std::invalid_argument("phase_offsets must list one value per plane");
  }
}

double orbital_period(double altitude) {
  const double r = kEarthRadius + altitude;
  return kTwoPi * std::sqrt(r * r * r / kEarthMu);
}

double orbital_speed(double altitude) { return std::sqrt(kEarthMu / (kEarthRadius + altitude)); }

Constellation::Constellation(ConstellationConfig config) : config_(std::move(config)) {
  config_.validate();
  const int n_p = config_.sats_per_plane;
  satellites_.reserve(static_cast<std::size_t>(config_.total()));
  for (int p = 1; p <= config_.planes; ++p) {
    const double offset = config_.phase_offset(p);
    for (int j = 0; j < n_p; ++j) {
      const double phase = wrap_phase(offset + kTwoPi * static_cast<double>(j) / static_cast<double>(n_p));
      satellites_.push_back({static_cast<int>(satellites_.size()), p, phase});
    }
  }
  cache_plane_data();
}

Constellation::Constellation(ConstellationConfig config, std::vector<Satellite> satellites, double epoch)
    : config_(std::move(config)), satellites_(std::move(satellites)), epoch_(epoch) {
  config_.validate();
  for (std::size_t i = 0; i < satellites_.size(); ++i) {
    const Satellite& s = satellites_[i];
    if (s.id != static_cast<int>(i)) throw std::invalid_argument("satellite ids must equal their list position");
    check_plane(config_, s.plane);
    if (!(s.phase >= 0.0 && s.phase < kTwoPi)) throw std::invalid_argument("satellite phase must lie in [0, 2pi)");
  }
  cache_plane_data();
}

void Constellation::cache_plane_data() {
  const auto planes = static_cast<std::size_t>(config_.planes);
  radius_.resize(planes);
  longitude_.resize(planes);
  rate_.resize(planes);
  for (int p = 1; p <= config_.planes; ++p) {
    const auto i = static_cast<std::size_t>(p - 1);
    radius_[i] = config_.radius(p);
    longitude_[i] = config_.longitude(p);
    rate_[i] = kTwoPi / orbital_period(config_.altitude(p));
  }
}

Constellation Constellation::propagate(double dt) const {
  if (!(dt >= 0.0)) throw std::invalid_argument("propagation step must be non-negative");
  Constellation next = *this;
  next.epoch_ = epoch_ + dt;
  if (dt == 0.0) return next;
  for (Satellite& s : next.satellites_) s.phase = wrap_phase(s.phase + plane_rate(s.plane) * dt);
  return next;
}

Vec3 Constellation::position(const Satellite& s) const {
  const double r = plane_radius(s.plane);
  const double eps = plane_longitude(s.plane);
  return {r * std::sin(s.phase) * std::cos(eps), r * std::sin(s.phase) * std::sin(eps), r * std::cos(s.phase)};
}

Vec3 Constellation::velocity(const Satellite& s) const {
  const double speed = orbital_speed(config_.altitude(s.plane));
  const double eps = plane_longitude(s.plane);
  return {speed * std::cos(s.phase) * std::cos(eps), speed * std::cos(s.phase) * std::sin(eps),
          -speed * std::sin(s.phase)};
}

double distance(const Constellation& c, const Satellite& u, const Satellite& v) {
  if (u.id == v.id) return 0.0;
  const double ru = c.plane_radius(u.plane);
  const double rv = c.plane_radius(v.plane);
  // 1 - cos(gamma) written without cancellation for nearby satellites.
  const double half_phase = std::sin(0.5 * (u.phase - v.phase));
  const double half_lon = std::sin(0.5 * (c.plane_longitude(u.plane) - c.plane_longitude(v.plane)));
  const double one_minus_cos =
      2.0 * half_phase * half_phase + 2.0 * half_lon * half_lon * std::sin(u.phase) * std::sin(v.phase);
  const double dr = ru - rv;
  const double sq = dr * dr + 2.0 * ru * rv * one_minus_cos;
  return std::sqrt(std::max(sq, 0.0));
}

double direction_function(const Constellation& c, const Satellite& u, const Satellite& v) {
  return std::sin(u.phase) * std::sin(c.plane_longitude(u.plane) - c.plane_longitude(v.plane));
}

Direction relative_direction(const Constellation& c, const Satellite& u, const Satellite& v) {
  if (u.plane == v.plane) return Direction::zero;
  const double f = direction_function(c, v, u);
  if (f > 0.0) return Direction::minus;
  if (f < 0.0) return Direction::plus;
  return Direction::zero;
}

double max_slant_range(const ConstellationConfig& cfg, int p, int q) {
  const double hp = cfg.altitude(p);
  const double hq = cfg.altitude(q);
  return std::sqrt(hp * (hp + 2.0 * kEarthRadius)) + std::sqrt(hq * (hq + 2.0 * kEarthRadius));
}

bool has_los(const Constellation& c, const Satellite& u, const Satellite& v) {
  if (u.id == v.id) return true;
  return distance(c, u, v) <= max_slant_range(c.config(), u.plane, v.plane);
}

double max_doppler(const ConstellationConfig& cfg, int p, int q, double frequency, int grid) {
  if (p == q) throw std::invalid_argument("max_doppler needs two distinct planes");
  if (grid < 1) throw std::invalid_argument("max_doppler grid must be positive");
  if (frequency == 0.0) return 0.0;

  // One satellite per plane, placed anywhere on its orbit.
  ConstellationConfig probe = cfg;
  probe.sats_per_plane = 1;
  probe.phase_offsets.clear();
  const Constellation base(probe);
  const double limit = max_slant_range(cfg, p, q);

  std::vector<Vec3> pos_p(static_cast<std::size_t>(grid)), vel_p(pos_p.size());
  std::vector<Vec3> pos_q(pos_p.size()), vel_q(pos_p.size());
  for (int i = 0; i < grid; ++i) {
    const double phase = kTwoPi * static_cast<double>(i) / static_cast<double>(grid);
    const Satellite sp{0, p, phase};
    const Satellite sq{1, q, phase};
    const auto k = static_cast<std::size_t>(i);
    pos_p[k] = base.position(sp);
    vel_p[k] = base.velocity(sp);
    pos_q[k] = base.position(sq);
    vel_q[k] = base.velocity(sq);
  }

  double best = 0.0;
  for (std::size_t i = 0; i < pos_p.size(); ++i) {
    for (std::size_t j = 0; j < pos_q.size(); ++j) {
      const Vec3 d{pos_q[j][0] - pos_p[i][0], pos_q[j][1] - pos_p[i][1], pos_q[j][2] - pos_p[i][2]};
      const double dist = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
      if (dist > limit || dist == 0.0) continue;
      const Vec3 dv{vel_q[j][0] - vel_p[i][0], vel_q[j][1] - vel_p[i][1], vel_q[j][2] - vel_p[i][2]};
      const double radial = std::abs(dv[0] * d[0] + dv[1] * d[1] + dv[2] * d[2]) / dist;
      best = std::max(best, radial);
    }
  }
  return best * std::abs(frequency) / constants::kSpeedOfLight;
}

}  // namespace islsim
