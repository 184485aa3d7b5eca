#pragma once

#include <cstdint>
#include <string>

namespace islsim::oracle {

struct CheckSummary {
  int instances = 0;
  int nontrivial = 0;  // instances where the compared quantities actually differ in structure
  int violations = 0;
  double max_rel_error = 0.0;
  double worst_ratio = 0.0;
};

/// GIEM with one transceiver against the brute-force optimum on random instances
/// of at most 8 satellites; a violation is w(GIEM) < w(optimum) / 2.
CheckSummary check_greedy_bound(std::uint64_t seed, int instances);

/// Closed-form worst-case interference and rates against exhaustive activation
/// enumeration, on isotropic instances with at most 4 co-channel pairs per receiver.
CheckSummary check_interference(std::uint64_t seed, int instances);

struct AllocationCheck {
  int instances = 0;
  int below_round_robin = 0;
  int below_best_random = 0;
  int above_optimum = 0;
  double worst_ratio = 1.0;  // GRA / optimum
};

/// GRA against round-robin, the best of 100 random draws and the exhaustive optimum,
/// on instances with at most 5 pairs and K <= 3.
AllocationCheck check_allocation_orderings(std::uint64_t seed, int instances);

/// Same instances; any ordering break is a violation.
CheckSummary check_allocation(std::uint64_t seed, int instances);

std::string describe(const CheckSummary& s);
std::string describe(const AllocationCheck& s);

}  // namespace islsim::oracle
