#include "islsim/design.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace islsim {

using constants::kPi;

double adjacent_range(const ConstellationConfig& cfg, int p, int q, double theta, double dtheta) {
  const double rp = cfg.radius(p);
  const double rq = cfg.radius(q);
  const double cos_gamma = std::cos(theta) * std::cos(theta + dtheta) +
                           std::cos(cfg.longitude(p) - cfg.longitude(q)) * std::sin(theta) * std::sin(theta + dtheta);
  return std::sqrt(std::max(rp * rp + rq * rq - 2.0 * rp * rq * cos_gamma, 0.0));
}

double l_adj_star(const ConstellationConfig& cfg) {
  cfg.validate();
  if (cfg.planes < 3) throw std::invalid_argument("no adjacent non-seam plane pair with fewer than 3 planes");
  const double n_p = static_cast<double>(cfg.sats_per_plane);
  const double phase_term = std::sin(kPi * (2.0 + n_p) / (2.0 * n_p));
  double best = 0.0;
  for (int p = 1; p < cfg.planes; ++p) {
    const double rp = cfg.radius(p);
    const double rq = cfg.radius(p + 1);
    const double plane_term = std::cos(cfg.longitude(p) - cfg.longitude(p + 1));
    const double sq = rp * rp + rq * rq - 2.0 * rp * rq * plane_term * phase_term;
    best = std::max(best, std::sqrt(std::max(sq, 0.0)));
  }
  return best;
}

double design_path_loss(const ConstellationConfig& cfg, const RadioConfig& radio) {
  return fspl(radio, l_adj_star(cfg), true).value();
}

double required_eirpg(const ConstellationConfig& cfg, const RadioConfig& radio) {
  return min_eirpg(radio, design_path_loss(cfg, radio));
}

DesignReport design_report(const ConstellationConfig& cfg, const RadioConfig& radio) {
  DesignReport r;
  r.l_adj_star = l_adj_star(cfg);
  r.mpl = fspl(radio, r.l_adj_star, true).value();
  r.mpl_db = 10.0 * std::log10(r.mpl);
  r.eirpg = min_eirpg(radio, r.mpl);
  r.max_delay = r.l_adj_star / radio.speed_of_light;
  return r;
}

}  // namespace islsim
