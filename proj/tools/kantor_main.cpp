#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kantor/errors.hpp"
#include "kantor/report.hpp"

namespace {

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open output file " << out_path << "\n";
    return 3;
  }
  f << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-state Kantorovich operators: Mather constants, weak KAM solutions, "
               "transfers, entropic smoothing and ergodic optimization"};
  app.require_subcommand(1);

  std::string problem_path, out_path, format = "json";
  double tol = -1.0;
  long max_iter = -1;
  long long seed = -1;
  bool timing = false;

  std::vector<std::string> names = {"mather",      "weakkam", "transfer", "sinkhorn",
                                    "schrodinger", "ergopt",  "axioms"};
  for (const auto& name : names) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("problem", problem_path, "problem JSON file")->required();
    sub->add_option("--tol", tol, "certificate tolerance (overrides the file)");
    sub->add_option("--max-iter", max_iter, "iteration cap (overrides the file)");
    sub->add_option("--seed", seed, "sampling seed (overrides the file)");
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--timing", timing, "include wall-clock timing in the report");
  }

  CLI11_PARSE(app, argc, argv);
  std::string command = app.get_subcommands().front()->get_name();

  nlohmann::json doc;
  {
    std::ifstream f(problem_path);
    if (!f) {
      std::cerr << "error: cannot read problem file " << problem_path << "\n";
      return 2;
    }
    try {
      doc = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
      std::cerr << "error: problem file is not valid JSON: " << e.what() << "\n";
      return 2;
    }
  }

  try {
    kantor::ProblemFile p = kantor::ProblemFile::parse(doc);
    if (tol > 0) p.options.tol = tol;
    if (max_iter > 0) p.options.max_iter = max_iter;
    if (seed >= 0) p.options.seed = static_cast<std::uint64_t>(seed);

    kantor::RunResult r = kantor::run_command(command, p, timing);
    std::string text = format == "csv" ? kantor::report_to_csv(r.report)
                                       : r.report.dump(2) + "\n";
    int werr = write_output(text, out_path);
    return werr != 0 ? werr : r.exit_code;
  } catch (const kantor::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const kantor::DeadState& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const kantor::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
