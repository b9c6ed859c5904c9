#pragma once

// Text format and command-line driver.
//
//   # comment
//   var <name> <v1> <v2> ...
//   con <name> (<var> ... <var>) { (<v> ... <v>) ... }
//
// `var` statements end at the end of the line; `con` blocks may span lines.
// Names match [A-Za-z_][A-Za-z0-9_]*, values are signed decimal integers.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conprop/csp.hpp"
#include "conprop/engine.hpp"

namespace conprop::cli {

Csp parse_csp(std::string_view text);

std::string render_csp(const Csp& p);
// Variables, then one `con` block per pair x < y.
std::string render_normalized(const NormalizedCsp& p);

enum class Algorithm { HyperArc, Ac3, Path, Pc2, Darc, Dac, Dpath, Dpc };

std::optional<Algorithm> algorithm_from_name(std::string_view name);
const char* algorithm_name(Algorithm a);
bool is_directional(Algorithm a);
bool is_path_based(Algorithm a);

std::optional<UpdateVariant> policy_from_name(std::string_view name);

struct RunConfig {
  Algorithm algorithm = Algorithm::Ac3;
  std::optional<std::vector<std::string>> order;
  std::optional<UpdateVariant> policy;
  bool trace = false;
  bool oracle_check = false;
  std::size_t step_limit = 1'000'000;
};

enum ExitCode : int {
  kConsistent = 0,
  kEmptiness = 1,
  kUsage = 2,
  kInternal = 3,
};

// Runs one propagation on `input`; results go to `out`, trace lines and
// diagnostics to `err`.
int run(const RunConfig& config, std::string_view input, std::ostream& out, std::ostream& err);

// Full command line (argv[0] included).
int main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace conprop::cli
