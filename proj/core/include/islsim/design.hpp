#pragma once

#include "islsim/geometry.hpp"
#include "islsim/linkbudget.hpp"

namespace islsim {

/// Distance between a satellite of plane p at phase theta and a satellite of
/// plane q trailing it by dtheta [m].
double adjacent_range(const ConstellationConfig& cfg, int p, int q, double theta, double dtheta);

/// Closed-form maximum nearest-neighbor range between adjacent planes, evaluated at
/// theta = pi/2 and dtheta = pi/N_p. The largest value over all adjacent plane
/// pairs (p, p+1), p < P, is returned, so any altitude rule is handled [m].
double l_adj_star(const ConstellationConfig& cfg);

/// Free-space path loss at l_adj_star.
double design_path_loss(const ConstellationConfig& cfg, const RadioConfig& radio);

/// EIRPG that lets every satellite reach min_rate toward its nearest inter-plane
/// neighbor at all times. Uses frequency, bandwidth, noise temperature and
/// min_rate from `radio`; its eirpg field is ignored [W].
double required_eirpg(const ConstellationConfig& cfg, const RadioConfig& radio);

struct DesignReport {
  double l_adj_star = 0.0;  // [m]
  double mpl = 0.0;         // linear
  double mpl_db = 0.0;
  double eirpg = 0.0;  // [W]
  double max_delay = 0.0;  // propagation delay at l_adj_star [s]
};

DesignReport design_report(const ConstellationConfig& cfg, const RadioConfig& radio);

}  // namespace islsim
