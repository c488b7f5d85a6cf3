#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "params.hpp"
#include "state.hpp"

namespace relax {

struct GridSpec {
  int n = 128;
  double length = kTwoPi;
};

struct RunSpec {
  double t_end = 1.0;
  std::string dt_policy = "auto";  // auto | auto:<scale> | fixed:<dt>
  double output_every = 0.0;       // 0 -> t_end / 50
  std::uint64_t seed = 0;

  double output_interval() const { return output_every > 0.0 ? output_every : t_end / 50.0; }
  std::vector<double> output_times() const;
  // fixed dt if the policy is fixed:<dt>, else 0
  double fixed_dt() const;
  // multiplier applied to the adaptive dt (auto:<scale>), else 1
  double dt_scale() const;
};

struct Config {
  Params params;                  // built with the first epsilon
  std::vector<double> epsilons;   // full list ([params] epsilon accepts a comma list)
  GridSpec grid;
  InitialSpec initial;
  RunSpec run;
  std::string text;               // canonical source text (for hashing)
};

// Parses the sectioned key = value document. Sections and keys are fixed:
//   [params]  epsilon c_p c_k gamma alpha d
//   [grid]    n length
//   [initial] profile amplitude mode
//   [run]     t_end dt_policy output_every seed
// Unknown sections or keys raise a validation_error naming the offender.
Config parse_config(const std::string& text);
Config load_config(const std::string& path);

// FNV-1a over the raw text, hex-encoded; recorded in every output
std::string config_hash(const std::string& text);

}  // namespace relax
