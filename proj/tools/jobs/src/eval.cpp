#include <algorithm>
#include <map>
#include <optional>

#include "common.hpp"
#include "finsler/cli/report.hpp"
#include "finsler/geometry.hpp"
#include "finsler/invariants.hpp"
#include "finsler/s_quantities.hpp"

namespace finsler::cli {

using detail::json;

namespace {

// Smallest jet order at which each quantity still has a value left.
int order_needed(const std::string& q) {
  static const std::map<std::string, int> need = {
      {"F", 2},  {"g", 2},  {"G", 2},       {"S", 3},      {"Xi", 5}, {"E", 5}, {"H", 6},       {"Sigma", 5},
      {"Ric", 4}, {"R", 4}, {"D", 6},       {"W", 8},      {"W_tilde", 7},      {"W_star", 6}, {"Z", 6},
      {"alpha_s", 2}};
  return need.at(q);
}

TensorValue scalar(int n, double v) {
  TensorValue t(n, "");
  t[0] = v;
  return t;
}

}  // namespace

RunReport run_eval(const JobSpec& job) {
  const MetricModel m = build_metric(job.metric);
  const int n = m.dim();
  const auto pts = detail::points_for(job, n);
  int order = job.order;
  for (const auto& q : job.quantities) order = std::max(order, order_needed(q));

  RunReport rep;
  rep.body["metadata"] = detail::metadata(job, n);
  rep.body["metadata"]["order"] = order;
  const VolumeForm vol = default_volume(m);
  rep.body["metadata"]["volume"] = vol.name;

  json points = json::array();
  for (std::size_t p = 0; p < pts.size(); ++p) {
    json entry;
    entry["index"] = p;
    entry["x"] = detail::vector_json(pts[p].x);
    entry["y"] = detail::vector_json(pts[p].y);
    json vals;
    try {
      LocalGeometry geo(m, pts[p], order);
      SCurvatureField sq(geo, vol);
      std::optional<ProjectiveTensors> proj;
      auto projective = [&]() -> ProjectiveTensors& {
        if (!proj) proj.emplace(geo);
        return *proj;
      };
      for (const auto& q : job.quantities) {
        TensorValue t;
        if (q == "F") t = scalar(n, geo.F().value());
        else if (q == "g") t = values(geo.fundamental_tensor());
        else if (q == "G") t = values(geo.spray());
        else if (q == "S") t = scalar(n, sq.S().value());
        else if (q == "Xi") t = values(sq.xi());
        else if (q == "E") t = values(sq.e());
        else if (q == "H") t = values(sq.h());
        else if (q == "Sigma") t = values(sq.sigma());
        else if (q == "Ric") t = scalar(n, geo.ricci_scalar().value());
        else if (q == "R") t = values(geo.riemann());
        else if (q == "D") t = values(projective().douglas());
        else if (q == "W") t = values(projective().weyl());
        else if (q == "W_tilde") t = values(projective().weyl_tilde());
        else if (q == "W_star") t = values(projective().weyl_star());
        else if (q == "Z") t = values(z_tensor(sq));
        else if (q == "alpha_s") {
          if (const auto* rs = m.randers_structure()) {
            LocalRanders r(*rs, geo.x(), geo.y());
            t = values(alpha_s(r));
          }
        }
        vals[q] = tensor_json(q, t);
      }
    } catch (const Error& e) {
      throw Error(e.code(), "point " + std::to_string(p) + ": " + e.what());
    }
    entry["quantities"] = std::move(vals);
    points.push_back(std::move(entry));
  }
  rep.body["points"] = std::move(points);
  return rep;
}

}  // namespace finsler::cli
