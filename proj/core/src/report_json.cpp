#include "gecscore/report_json.hpp"

#include <cmath>

#include "json.hpp"

namespace gecscore::report {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Json verdict_json(const detection::Verdict& v) {
  Json j;
  j["id"] = v.sample_id;
  j["score"] = number(v.amplified_score);
  j["epsilon"] = number(v.epsilon);
  j["is_llm"] = v.is_llm;
  j["metric"] = v.metric.name();
  j["n_preliminary"] = v.n_preliminary;
  return j;
}

Json threshold_json(const calibration::Threshold& t) {
  Json j;
  j["epsilon"] = number(t.epsilon);
  j["j"] = number(t.j_at_epsilon);
  j["tpr"] = number(t.tpr);
  j["fpr"] = number(t.fpr);
  j["tp"] = t.tp;
  j["fp"] = t.fp;
  j["n_pos"] = t.n_pos;
  j["n_neg"] = t.n_neg;
  return j;
}

Json stats_json(const harness::ClassStats& s) {
  Json j;
  j["mean_human"] = number(s.mean_human);
  j["var_human"] = number(s.var_human);
  j["mean_llm"] = number(s.mean_llm);
  j["var_llm"] = number(s.var_llm);
  j["ratio"] = s.ratio ? number(*s.ratio) : Json(nullptr);
  return j;
}

Json eval_json(const harness::EvalReport& r) {
  Json j;
  j["metric"] = r.metric.name();
  j["auroc"] = number(r.auroc);
  j["f1"] = number(r.f1);
  j["recall"] = number(r.recall);
  j["precision"] = number(r.precision);
  j["epsilon"] = number(r.threshold.epsilon);
  j["confusion"] = {{"tp", r.confusion.tp}, {"fp", r.confusion.fp}, {"tn", r.confusion.tn}, {"fn", r.confusion.fn}};
  j["n_human"] = r.n_human;
  j["n_llm"] = r.n_llm;
  j["pool_size"] = r.scores.size();
  j["class_stats"] = stats_json(r.class_stats);
  return j;
}

}  // namespace

std::string to_json(const detection::Verdict& verdict) { return verdict_json(verdict).dump(); }

std::string to_json(const detection::BatchEntry& entry) {
  if (entry.verdict) return verdict_json(*entry.verdict).dump();
  Json j;
  j["id"] = entry.sample_id;
  j["error"] = entry.error;
  return j.dump();
}

std::string to_json(const calibration::Threshold& threshold, const similarity::MetricSpec& metric) {
  Json j;
  j["metric"] = metric.name();
  const Json fields = threshold_json(threshold);
  for (const auto& [key, value] : fields.items()) j[key] = value;
  return j.dump(2);
}

std::string to_json(const harness::ClassStats& stats) { return stats_json(stats).dump(2); }

std::string to_json(const harness::EvalReport& report) { return eval_json(report).dump(2); }

std::string to_json(const attacks::RobustnessReport& report) {
  Json j;
  j["before"] = eval_json(report.before);
  j["after"] = eval_json(report.after);
  j["attacked"] = report.attacked;
  j["delta_auroc"] = number(report.delta());
  return j.dump(2);
}

std::string to_json(const std::vector<harness::AblationRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["metric"] = r.metric;
    j["lower"] = r.lower;
    j["upper"] = r.upper;
    j["n_human"] = r.n_human;
    j["n_llm"] = r.n_llm;
    j["auroc"] = r.auroc ? number(*r.auroc) : Json(nullptr);
    if (!r.warning.empty()) j["warning"] = r.warning;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

}  // namespace gecscore::report
