#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kantor/cost_matrix.hpp"
#include "kantor/types.hpp"

namespace kantor {

struct ProblemOptions {
  double tol = 1e-9;
  long max_iter = 1000000;
  std::uint64_t seed = 1;
};

// Parsed problem document.  `kind` selects which fields are meaningful:
//   cost:     n, cost [, potential, mu, nu]
//   entropic: n, cost, mu, nu, epsilon
//   markov:   n, transition_matrix (stochastic) [, potential, mu, nu]
//   sft:      transition_matrix (0/1), depth, potential_table
struct ProblemFile {
  std::string kind;
  int n = 0;
  CostMatrix cost;
  std::optional<Potential> potential;
  std::optional<ProbVector> mu, nu;
  std::optional<double> epsilon;
  std::optional<StochasticMatrix> transition;
  std::vector<std::vector<int>> transition01;
  int depth = 1;
  std::map<std::string, double> potential_table;
  ProblemOptions options;

  static ProblemFile parse(const nlohmann::json& j);
  nlohmann::ordered_json canonical() const;
  std::string digest() const;  // fnv1a-64 of the canonical serialization
};

struct RunResult {
  nlohmann::ordered_json report;
  int exit_code = 0;  // 0 pass, 1 certificate failed, 3 numerical failure
};

// Dispatches one subcommand.  Schema problems throw SchemaError (callers map
// those to exit code 2); numerical failures are embedded in the report under
// "error" together with any witness, and yield exit code 3.
RunResult run_command(const std::string& command, const ProblemFile& p, bool timing);

std::string report_to_csv(const nlohmann::ordered_json& report);

// JSON encoding shared by reports and the canonical problem form: finite
// numbers stay numbers, infinities become the tokens "inf" / "-inf".
nlohmann::ordered_json json_ext(ExtReal x);
nlohmann::ordered_json json_potential(const Potential& g);
nlohmann::ordered_json json_matrix(const CostMatrix& A);
nlohmann::ordered_json json_coupling(const Coupling& pi);

}  // namespace kantor
