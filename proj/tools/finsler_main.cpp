// Batch driver: reads a JSON job, writes a JSON report.
//
// Exit status: 0 when every check passes, 1 when some residual check fails,
// 2 on schema or domain errors.

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "finsler/cli/job.hpp"
#include "finsler/cli/report.hpp"
#include "finsler/error.hpp"

namespace {

int write(const std::string& text, const std::optional<std::string>& path) {
  if (!path) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << *path << "\n";
    return 2;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finsler geometry engine: evaluate, verify, classify and dim-scan jobs"};
  std::string job_path;
  std::optional<std::string> out_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> order;
  app.add_option("--job", job_path, "JSON job file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "report path (default: stdout, or the job's output)");
  app.add_option("--seed", seed, "override the sample seed");
  app.add_option("--tol", tol, "override the classification tolerance")->check(CLI::PositiveNumber);
  app.add_option("--order", order, "override the jet order")->check(CLI::Range(2, 12));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::optional<std::string> target;
  try {
    finsler::cli::JobSpec job = finsler::cli::load_job(job_path);
    if (seed) job.samples.seed = *seed;
    if (tol) job.tol.classify = *tol;
    if (order) job.order = *order;
    target = out_path ? out_path : job.output;
    const auto report = finsler::cli::run(job);
    if (const int rc = write(finsler::cli::dump(report), target)) return rc;
    if (report.failures > 0) {
      std::cerr << report.failures << " check(s) failed\n";
      return 1;
    }
    return 0;
  } catch (const finsler::Error& e) {
    nlohmann::ordered_json err;
    err["schema_version"] = finsler::cli::kSchemaVersion;
    err["error"] = {{"code", std::string(finsler::to_string(e.code()))}, {"message", e.what()}};
    std::cerr << "error: " << e.what() << "\n";
    write(err.dump(2) + "\n", target);
    return 2;
  }
}
