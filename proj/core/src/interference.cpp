#include "islsim/interference.hpp"

#include <stdexcept>

namespace islsim {

PathLoss interference_loss(const Constellation& c, const RadioConfig& cfg, const Satellite& from,
                           const Satellite& rx) {
  if (from.id == rx.id) return PathLoss::unit();
  return fspl(cfg, distance(c, from, rx), has_los(c, from, rx));
}

double worst_case_interference(const Constellation& c, const RadioConfig& cfg, const Allocation& alloc, int rx,
                               std::size_t pair, int k) {
  if (pair >= alloc.pairs.size() || alloc.resource[pair] != k) {
    throw std::invalid_argument("pair does not hold the requested resource");
  }
  const Edge& own = alloc.pairs[pair];
  if (rx != own.u && rx != own.v) throw std::invalid_argument("receiver is not an endpoint of the pair");
  if (cfg.antenna == AntennaScenario::narrow_beam) return 0.0;

  const Satellite& receiver = c[rx];
  double total = 0.0;
  for (std::size_t b = 0; b < alloc.pairs.size(); ++b) {
    if (b == pair || alloc.resource[b] != k) continue;
    const Edge& other = alloc.pairs[b];
    total += pair_interference(cfg, interference_loss(c, cfg, c[other.u], receiver),
                               interference_loss(c, cfg, c[other.v], receiver));
  }
  return total;
}

}  // namespace islsim
