#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "finsler/metric.hpp"
#include "finsler/vector_field.hpp"

namespace finsler::cli {

inline constexpr int kSchemaVersion = 1;

enum class Command { eval, verify, classify, dim_scan, report };

std::string to_string(Command c);

struct SampleConfig {
  int count = 25;
  std::uint64_t seed = 1;
  double radius = 0.7;
};

/// Tolerances used by the suites; every value can be overridden from the job.
struct Tolerances {
  double fd = 1e-5;            // AD vs finite differences (relative)
  double euler = 1e-10;        // y^i F_.i = F
  double ladder = 1e-9;        // homogeneity ladder, spray homogeneity, Berwald contractions
  double horizontal = 1e-8;    // F_|k = 0, R^i_k y^k = 0
  double spray = 1e-8;         // closed-form vs generic spray
  double s_curvature = 1e-7;   // closed-form vs generic S
  double volume = 1e-4;        // closed-form vs integrated Busemann-Hausdorff density
  double relations = 1e-7;     // Xi/H/Sigma identities, volume independence
  double funk_s = 1e-8;        // |S/((n+1)F)| = 1/2
  double funk_ricci = 1e-6;    // Ric = -(n-1) F^2 / 4
  double classify = 1e-6;      // classification verdicts and invariance suites
  double identities = 1e-5;    // projective identities on projective fields
  double dim_scan = 1e-6;      // relative singular value threshold
};

struct JobSpec {
  Command command = Command::eval;
  nlohmann::ordered_json metric;  // descriptor as given
  std::vector<nlohmann::ordered_json> fields;
  SampleConfig samples;
  std::vector<SamplePoint> points;  // explicit points (eval)
  std::vector<std::string> quantities;
  Tolerances tol;
  int order = 7;
  std::optional<std::string> output;
  std::optional<int> expect_nullity;
};

/// Validates and converts a job document; throws Error(SchemaError).
JobSpec parse_job(const nlohmann::ordered_json& doc);
JobSpec load_job(const std::string& path);

/// Builds the metric named by a descriptor; throws Error(SchemaError / InvalidSpec).
MetricModel build_metric(const nlohmann::ordered_json& descriptor);
/// Expands field descriptors (explicit coefficient tables or families) for dimension n.
std::vector<PolyVectorField> build_fields(const std::vector<nlohmann::ordered_json>& descriptors, int n);

/// Quantities accepted by eval.
const std::vector<std::string>& known_quantities();

}  // namespace finsler::cli
