#include "islsim/linkbudget.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace islsim {

std::string_view to_string(AntennaScenario a) {
  return a == AntennaScenario::isotropic ? "isotropic" : "narrow";
}

std::string_view to_string(AccessScheme s) { return s == AccessScheme::cdma ? "cdma" : "ofdma"; }

double RadioConfig::min_snr() const { return std::exp2(min_rate / bandwidth) - 1.0; }

void RadioConfig::validate() const {
  if (!(frequency > 0.0)) throw std::invalid_argument("carrier frequency must be positive");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be positive");
  if (!(noise_temperature > 0.0)) throw std::invalid_argument("noise temperature must be positive");
  if (!(eirpg > 0.0)) throw std::invalid_argument("EIRPG must be positive");
  if (!(min_rate > 0.0)) throw std::invalid_argument("minimum rate must be positive");
  if (!(speed_of_light > 0.0) || !(boltzmann > 0.0)) throw std::invalid_argument("physical constants must be positive");
}

void ResourceSet::validate() const {
  if (count < 1) throw std::invalid_argument("resource count K must be at least 1");
}

PathLoss PathLoss::finite(double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw std::domain_error("path loss must be finite and positive");
  PathLoss l;
  l.factor_ = factor;
  l.blocked_ = false;
  return l;
}

double PathLoss::db() const { return blocked_ ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(factor_); }

PathLoss fspl(const RadioConfig& cfg, double dist, bool los) {
  if (dist < 0.0) throw std::domain_error("distance must be non-negative");
  if (!los) return PathLoss::blocked();
  if (dist == 0.0) throw std::domain_error("free-space path loss undefined at zero distance");
  const double a = 4.0 * constants::kPi * dist * cfg.frequency / cfg.speed_of_light;
  return PathLoss::finite(a * a);
}

double snr(const RadioConfig& cfg, PathLoss loss) {
  if (loss.is_blocked()) return 0.0;
  return cfg.eirpg / (cfg.noise_power() * loss.value());
}

double rate_snr(const RadioConfig& cfg, double snr_value) {
  if (snr_value < 0.0) throw std::domain_error("SNR must be non-negative");
  return cfg.bandwidth * std::log2(1.0 + snr_value);
}

double rate_sinr_band(const RadioConfig& cfg, double bandwidth, PathLoss loss, double interference) {
  if (interference < 0.0) throw std::domain_error("interference must be non-negative");
  if (loss.is_blocked() || std::isinf(interference)) return 0.0;
  const double noise = cfg.boltzmann * cfg.noise_temperature * bandwidth;
  const double sinr = cfg.eirpg / (loss.value() * (noise + interference));
  return bandwidth * std::log2(1.0 + sinr);
}

double rate_sinr(const RadioConfig& cfg, PathLoss loss, double interference) {
  return rate_sinr_band(cfg, cfg.bandwidth, loss, interference);
}

double effective_rate(const RadioConfig& cfg, const ResourceSet& rs, PathLoss loss, double interference) {
  rs.validate();
  const double k = static_cast<double>(rs.count);
  if (rs.scheme == AccessScheme::ofdma) return rate_sinr_band(cfg, cfg.bandwidth / k, loss, interference);
  return rate_sinr(cfg, loss, interference) / (1.0 + std::log2(k));
}

double max_path_loss(const RadioConfig& cfg) { return cfg.eirpg / (cfg.noise_power() * cfg.min_snr()); }

double min_eirpg(const RadioConfig& cfg, double mpl) {
  if (!(mpl > 0.0)) throw std::domain_error("maximum path loss must be positive");
  return mpl * cfg.noise_power() * cfg.min_snr();
}

double pair_interference(const RadioConfig& cfg, PathLoss from_i, PathLoss from_j) {
  if (cfg.antenna == AntennaScenario::narrow_beam) return 0.0;
  const auto received = [&](PathLoss l) { return l.is_blocked() ? 0.0 : cfg.eirpg / l.value(); };
  return std::max(received(from_i), received(from_j));
}

}  // namespace islsim
