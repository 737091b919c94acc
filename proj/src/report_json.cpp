#include "rclab/report_json.hpp"

namespace rclab {

nlohmann::json to_json(const Point& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (int i = 0; i < p.size(); ++i) arr.push_back(p[i]);
  return arr;
}

nlohmann::json to_json(const ConvexityReport& r) {
  nlohmann::json j;
  j["verdict"] = holds(r) ? "holds_on_samples" : "refuted";
  if (r.witness) {
    j["witness"] = {{"x", to_json(r.witness->x)},
                    {"y", to_json(r.witness->y)},
                    {"t", r.witness->t},
                    {"point", to_json(r.witness->point)}};
  } else {
    j["witness"] = nullptr;
  }
  j["pairs_checked"] = r.pairs_checked;
  j["t_steps"] = r.t_steps;
  if (r.lambda)
    j["lambda"] = *r.lambda;
  else
    j["lambda"] = nullptr;
  j["seed"] = r.seed;
  j["cut_locus_resamples"] = r.cut_locus_resamples;
  return j;
}

nlohmann::json to_json(const ThresholdReport& r) {
  nlohmann::json j;
  j["zeta_hat"] = r.zeta_hat;
  j["lambda_grid"] = r.lambda_grid;
  nlohmann::json reports = nlohmann::json::array();
  for (const ConvexityReport& cr : r.reports) reports.push_back(to_json(cr));
  j["reports"] = reports;
  return j;
}

}  // namespace rclab
