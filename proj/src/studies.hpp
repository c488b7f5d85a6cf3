#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace relax {

// Named verification studies behind the `verify` command:
//   commutator   - spectral commutator boundedness + the b = 0 identity
//   hls          - bilinear fractional pairing stability on a large torus
//   extension    - weighted-strip energy against the interaction form
//   lower_bounds - pointwise convexity bound and the Lgamma chain
//   metric_sanity- transport-metric ordering and certificate feasibility
struct StudyOutcome {
  std::string name;
  bool pass = false;
  nlohmann::ordered_json report;  // {lemma, parameters, trials, ..., pass}
};

StudyOutcome run_study(const std::string& name, std::uint64_t seed, int threads);

}  // namespace relax
