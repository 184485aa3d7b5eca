#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "islsim/constants.hpp"

namespace islsim {

/// Relative direction of a satellite along another satellite's pitch axis.
enum class Direction : std::int8_t { minus = -1, zero = 0, plus = 1 };

std::string_view to_string(Direction d);

/// Slot index used by per-satellite directional degree counters (minus -> 0, plus -> 1).
/// Must not be called with Direction::zero.
inline int direction_slot(Direction d) { return d == Direction::plus ? 1 : 0; }

using Vec3 = std::array<double, 3>;

/// Walker-star geometry. Planes are 1-based; altitudes follow
/// h_p = base_altitude + delta_altitude * (p - 1).
struct ConstellationConfig {
  int planes = 7;
  int sats_per_plane = 40;
  double base_altitude = 600.0e3;  // [m]
  double delta_altitude = 10.0e3;  // [m]
  /// Per-plane longitude override [rad]. Empty selects the default pi*(p-1)/P.
  std::vector<double> longitudes;
  /// Per-plane initial phase [rad]. Empty means all zero.
  std::vector<double> phase_offsets;

  int total() const { return planes * sats_per_plane; }
  double altitude(int plane) const;
  double radius(int plane) const;
  double longitude(int plane) const;
  double phase_offset(int plane) const;

  /// Throws std::invalid_argument when an invariant does not hold.
  void validate() const;

  friend bool operator==(const ConstellationConfig&, const ConstellationConfig&) = default;
};

struct Satellite {
  int id = 0;
  int plane = 1;       // 1-based
  double phase = 0.0;  // orbit phase in [0, 2pi)
};

/// Keplerian period of a circular orbit at the given altitude [s].
double orbital_period(double altitude);

/// Circular orbital speed at the given altitude [m/s].
double orbital_speed(double altitude);

/// Immutable constellation snapshot at a given epoch.
class Constellation {
 public:
  /// Evenly spaced satellites, plane-major ids: id = (p - 1) * N_p + j.
  explicit Constellation(ConstellationConfig config);

  /// Arbitrary satellite placement (ids must equal positions in the list).
  Constellation(ConstellationConfig config, std::vector<Satellite> satellites, double epoch = 0.0);

  const ConstellationConfig& config() const { return config_; }
  std::span<const Satellite> satellites() const { return satellites_; }
  const Satellite& operator[](int id) const { return satellites_[static_cast<std::size_t>(id)]; }
  int size() const { return static_cast<int>(satellites_.size()); }
  double epoch() const { return epoch_; }

  /// Advances every satellite by its plane's mean motion over dt >= 0 seconds.
  Constellation propagate(double dt) const;

  Vec3 position(const Satellite& s) const;
  Vec3 velocity(const Satellite& s) const;

  double plane_radius(int plane) const { return radius_[static_cast<std::size_t>(plane - 1)]; }
  double plane_longitude(int plane) const { return longitude_[static_cast<std::size_t>(plane - 1)]; }
  double plane_rate(int plane) const { return rate_[static_cast<std::size_t>(plane - 1)]; }

 private:
  void cache_plane_data();

  ConstellationConfig config_;
  std::vector<Satellite> satellites_;
  double epoch_ = 0.0;
  std::vector<double> radius_;
  std::vector<double> longitude_;
  std::vector<double> rate_;
};

/// Euclidean distance from spherical coordinates [m].
double distance(const Constellation& c, const Satellite& u, const Satellite& v);

/// f_d(u, v) = sin(theta_u) * sin(eps_p(u) - eps_p(v)).
double direction_function(const Constellation& c, const Satellite& u, const Satellite& v);

/// Direction of v with respect to u: minus if f_d(v,u) > 0, plus if < 0, zero otherwise.
Direction relative_direction(const Constellation& c, const Satellite& u, const Satellite& v);

/// Line-of-sight limit between two planes for a spherical Earth [m].
double max_slant_range(const ConstellationConfig& cfg, int p, int q);

bool has_los(const Constellation& c, const Satellite& u, const Satellite& v);

/// Largest Doppler shift [Hz] between line-of-sight satellites of planes p and q,
/// searched over a grid of `grid` phases per plane.
double max_doppler(const ConstellationConfig& cfg, int p, int q, double frequency, int grid = 720);

}  // namespace islsim
