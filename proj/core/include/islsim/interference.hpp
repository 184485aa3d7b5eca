#pragma once

#include <cstddef>

#include "islsim/geometry.hpp"
#include "islsim/graph.hpp"
#include "islsim/linkbudget.hpp"

namespace islsim {

/// Path loss from an interfering transmitter to a receiver. A satellite
/// interfering with itself uses L(v, v) = 1 (no self-interference cancellation).
PathLoss interference_loss(const Constellation& c, const RadioConfig& cfg, const Satellite& from,
                           const Satellite& rx);

/// Largest interference [W] any permissible pattern can produce at `rx`, an endpoint
/// of alloc.pairs[pair], on resource k. Every other pair holding k contributes the
/// larger of its two endpoints' received powers, since at most one of them
/// transmits at a time. Throws std::invalid_argument if the pair does not hold k
/// or rx is not one of its endpoints.
double worst_case_interference(const Constellation& c, const RadioConfig& cfg, const Allocation& alloc, int rx,
                               std::size_t pair, int k);

}  // namespace islsim
