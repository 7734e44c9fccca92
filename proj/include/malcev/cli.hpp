#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace malcev {

struct RunConfig {
  std::string command;
  std::string sig_file, basis, general, ring, module, gens, schema, output;
  std::vector<std::string> table_models;
  std::string term, term_a, term_b, target;
  bool ring_mode = false;
  bool module_mode = false;
  std::optional<int> ell, n;
  std::optional<int> degree_bound;
  int kmax = 3;
  std::int64_t max_q = 5;
  int max_dim = 3;
  int trials = 24;
  std::uint64_t seed = 0;
  bool json = false;
};

/// Exit status: 0 definitive answer, 2 Unknown / NotAtBound / Inconclusive,
/// 1 input error (message on err).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and dispatches. MALCEV_SEED sets the default seed.
int run_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace malcev
