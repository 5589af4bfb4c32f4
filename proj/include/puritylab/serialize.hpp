#pragma once

#include <string>

#include "puritylab/json_writer.hpp"
#include "puritylab/purity.hpp"
#include "puritylab/semigroup.hpp"
#include "puritylab/verify.hpp"

namespace puritylab {

inline constexpr const char* kSchemaEstimate = "puritylab.estimate/1";
inline constexpr const char* kSchemaReport = "puritylab.report/1";
inline constexpr const char* kSchemaReportList = "puritylab.report_list/1";
inline constexpr const char* kSchemaLsc = "puritylab.lsc/1";
inline constexpr const char* kSchemaMatrix = "puritylab.matrix/1";
inline constexpr const char* kSchemaScanCsv = "puritylab.scan_csv/1";

inline void write_estimate(JsonWriter& w, const PurityEstimate& e,
                           bool include_maximizer = true) {
  w.begin_object();
  w.key("value").value(e.value);
  w.key("method").value(method_name(e.method));
  w.key("restarts_used").value(e.restarts_used);
  w.key("iterations").value(e.iterations);
  w.key("converged").value(e.converged);
  w.key("seed").value(e.seed);
  w.key("spread").value(e.spread);
  if (include_maximizer) w.key("maximizer").raw(matrix_json(e.maximizer));
  w.end_object();
}

inline std::string estimate_json(const PurityEstimate& e,
                                 bool include_maximizer = true) {
  JsonWriter w;
  write_estimate(w, e, include_maximizer);
  return w.str();
}

inline void write_report(JsonWriter& w, const BoundReport& r) {
  w.begin_object();
  w.key("claim_id").value(claim_name(r.claim));
  w.key("lhs").value(r.lhs);
  w.key("rhs").value(r.rhs);
  w.key("slack").value(r.slack);
  w.key("tolerance").value(r.tolerance);
  w.key("verdict").value(verdict_name(r.verdict));
  w.key("seeds").begin_object();
  w.key("master").value(r.master_seed);
  w.key("instance").value(r.instance_seed);
  w.end_object();
  w.key("params").begin_object();
  for (const auto& [k, v] : r.params) w.key(k).value(v);
  w.end_object();
  if (!r.witness.empty()) w.key("witness").raw(r.witness);
  w.end_object();
}

inline std::string report_json(const BoundReport& r) {
  JsonWriter w;
  write_report(w, r);
  return w.str();
}

inline std::string report_list_json(const std::vector<BoundReport>& rs,
                                    const std::string& config_json = {}) {
  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kSchemaReportList);
  if (!config_json.empty()) w.key("config").raw(config_json);
  int violated = 0, inconclusive = 0;
  for (const auto& r : rs) {
    if (r.verdict == Verdict::violated) ++violated;
    if (r.verdict == Verdict::inconclusive) ++inconclusive;
  }
  w.key("count").value(static_cast<long long>(rs.size()));
  w.key("violated").value(violated);
  w.key("inconclusive").value(inconclusive);
  w.key("reports").begin_array();
  for (const auto& r : rs) write_report(w, r);
  w.end_array();
  w.end_object();
  return w.str();
}

inline std::string lsc_report_json(const LscReport& rep,
                                   const std::string& config_json = {}) {
  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kSchemaLsc);
  if (!config_json.empty()) w.key("config").raw(config_json);
  w.key("d").value(static_cast<long long>(rep.d));
  w.key("alpha2_single").value(rep.alpha2_single);
  w.key("alpha2_product_bound").value(rep.alpha2_product_bound);
  w.key("sound").value(rep.sound);
  w.key("multiplicativity_check");
  write_report(w, rep.multiplicativity_check);
  w.key("multiplicativity_checks").begin_array();
  for (const auto& r : rep.multiplicativity_checks) write_report(w, r);
  w.end_array();
  w.end_object();
  return w.str();
}

}  // namespace puritylab
