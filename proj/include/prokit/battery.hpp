// Seeded random property batteries. Each battery draws its instances from a
// 64-bit seed, so a rerun with the same seed repeats every instance, and
// reports the number of instances and failures as a CheckOutcome.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prokit/analysis.hpp"
#include "prokit/random.hpp"

namespace prokit {

struct Instance {
  RingPtr ring;
  FgModule module;
  std::vector<Vec> xs;
};

Instance random_instance(Rng& rng, long ring_max = 64, long module_max = 256, std::size_t k_max = 3);

/// Random elements until they generate the unit ideal; primitive idempotents if none is found.
std::vector<Vec> random_covering(Rng& rng, const RingPtr& r);

struct BatteryInfo {
  std::string name;
  std::size_t default_count;
  std::string description;
};

const std::vector<BatteryInfo>& batteries();

/// Throws std::invalid_argument for an unknown battery name. count = 0 uses the default.
CheckOutcome run_battery(const std::string& name, std::uint64_t seed, std::size_t count = 0);

}  // namespace prokit
