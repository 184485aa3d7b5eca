#pragma once

#include <limits>
#include <string_view>

#include "islsim/constants.hpp"

namespace islsim {

enum class AntennaScenario { narrow_beam, isotropic };
enum class AccessScheme { ofdma, cdma };

std::string_view to_string(AntennaScenario a);
std::string_view to_string(AccessScheme s);

/// Radio parameters shared by every ISL. Transmit power and antenna gains are
/// collapsed into a single EIRPG figure (P_t * G_max^2).
struct RadioConfig {
  double frequency = 2.4e9;            // [Hz]
  double bandwidth = 20.0e6;           // [Hz]
  double noise_temperature = 354.81;   // [K]
  double eirpg = 3.74;                 // [W]
  double min_rate = 10.0e3;            // [bit/s]
  AntennaScenario antenna = AntennaScenario::narrow_beam;
  double speed_of_light = constants::kSpeedOfLight;
  double boltzmann = constants::kBoltzmann;

  /// k_B * tau * B [W].
  double noise_power() const { return boltzmann * noise_temperature * bandwidth; }
  /// SNR needed to reach min_rate over the full bandwidth.
  double min_snr() const;

  void validate() const;

  friend bool operator==(const RadioConfig&, const RadioConfig&) = default;
};

struct ResourceSet {
  int count = 1;
  AccessScheme scheme = AccessScheme::ofdma;

  void validate() const;

  friend bool operator==(const ResourceSet&, const ResourceSet&) = default;
};

/// Free-space path loss factor. A blocked (NLoS) link carries no finite value and
/// yields zero SNR and zero rate wherever it is used.
class PathLoss {
 public:
  static PathLoss blocked() { return PathLoss(); }
  static PathLoss finite(double factor);
  /// Self-interference convention L(v, v) = 1.
  static PathLoss unit() { return finite(1.0); }

  bool is_blocked() const { return blocked_; }
  /// Linear factor; infinity when blocked.
  double value() const { return blocked_ ? std::numeric_limits<double>::infinity() : factor_; }
  double db() const;

 private:
  PathLoss() = default;
  double factor_ = 0.0;
  bool blocked_ = true;
};

/// (4 pi d f / c)^2 with line of sight, blocked otherwise. Throws std::domain_error
/// for a zero distance with line of sight.
PathLoss fspl(const RadioConfig& cfg, double dist, bool los);

/// EIRPG / (k_B tau B L).
double snr(const RadioConfig& cfg, PathLoss loss);

/// B log2(1 + snr).
double rate_snr(const RadioConfig& cfg, double snr_value);

/// Worst-case rate B log2(1 + EIRPG / (L (k_B tau B + I))).
double rate_sinr(const RadioConfig& cfg, PathLoss loss, double interference);

/// rate_sinr evaluated over an arbitrary bandwidth (noise and log prefactor both scaled).
double rate_sinr_band(const RadioConfig& cfg, double bandwidth, PathLoss loss, double interference);

/// Rate after sharing the band among rs.count orthogonal resources: OFDMA uses the
/// sub-carrier bandwidth B/K, CDMA divides the full-band rate by 1 + log2(K).
double effective_rate(const RadioConfig& cfg, const ResourceSet& rs, PathLoss loss, double interference);

/// Largest path loss at which min_rate is still reachable with the configured EIRPG.
double max_path_loss(const RadioConfig& cfg);

/// Smallest EIRPG reaching min_rate over a link with path loss `mpl` [W].
double min_eirpg(const RadioConfig& cfg, double mpl);

/// Interference received from one co-channel pair (i, j) at `rx` when at most one of
/// i, j transmits: the larger of the two contributions. Zero with narrow beams.
double pair_interference(const RadioConfig& cfg, PathLoss from_i, PathLoss from_j);

}  // namespace islsim
