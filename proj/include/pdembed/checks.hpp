#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pdembed/diagram.hpp"

namespace pdembed {

// n i.i.d. entries: Delta with probability diag_prob, otherwise uniform
// over {(b, d) : 0 <= b < d <= L}. Deterministic for a fixed generator state.
Diagram sample_diagram(std::mt19937_64& rng, std::size_t n, double L,
                       double diag_prob);

struct CheckConfig {
  std::size_t arity = 3;
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  double frame = 10.0;
  double tolerance = 1e-9;
};

struct CheckReport {
  std::string name;
  std::size_t samples = 0;
  double worst_margin = 0;  // signed; pass iff >= -tolerance
  bool pass = false;
  std::uint64_t seed = 0;
};

// Names of all registered checks.
std::vector<std::string> check_names();

// Runs the named checks; throws on an unknown name.
std::vector<CheckReport> run_checks(const std::vector<std::string>& suite,
                                    const CheckConfig& config);

}  // namespace pdembed
