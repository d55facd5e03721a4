#include "gecscore/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "gecscore/errors.hpp"
#include "parallel.hpp"

namespace gecscore::scoring {

std::size_t ScoreSet::index_of(const std::string& id) const noexcept {
  auto it = std::find(sample_ids.begin(), sample_ids.end(), id);
  return static_cast<std::size_t>(it - sample_ids.begin());
}

std::vector<double> softmax(std::span<const double> raw) {
  if (raw.empty()) throw InvalidArgument("softmax of an empty list");
  for (double v : raw) {
    if (!std::isfinite(v)) throw InvalidArgument("softmax input is not finite");
  }
  const double max = *std::max_element(raw.begin(), raw.end());
  std::vector<double> out(raw.size());
  long double sum = 0.0L;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = std::exp(raw[i] - max);
    sum += out[i];
  }
  const double total = static_cast<double>(sum);
  for (double& v : out) v /= total;
  return out;
}

std::vector<double> similarities(const std::vector<std::string>& ids, const std::vector<std::string>& originals,
                                 const std::vector<std::string>& corrected, const similarity::MetricSpec& metric) {
  const std::size_t n = originals.size();
  std::vector<double> out(n);
  if (metric.kind == similarity::MetricKind::external) {
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(originals[i], corrected[i]);
    similarity::ExternalOptions options;
    options.timeout = metric.timeout;
    const auto scores = similarity::external_similarity(pairs, metric.external_name, metric.endpoint, options);
    for (std::size_t i = 0; i < n; ++i) out[i] = similarity::orient(metric, scores[i]).oriented;
    return out;
  }
  detail::parallel_for(n, [&](std::size_t i) {
    try {
      out[i] = similarity::compute(metric, originals[i], corrected[i]).oriented;
    } catch (const ScoringError&) {
      throw;
    } catch (const std::exception& e) {
      throw ScoringError(i < ids.size() ? ids[i] : std::to_string(i), e.what());
    }
  });
  return out;
}

std::vector<std::pair<std::string, double>> raw_scores(const std::vector<TextSample>& samples,
                                                       const gec::Corrector& corrector,
                                                       const similarity::MetricSpec& metric) {
  if (samples.empty()) throw InvalidArgument("raw_scores needs at least one sample");
  metric.validate();
  std::vector<std::string> ids;
  std::vector<std::string> texts;
  ids.reserve(samples.size());
  texts.reserve(samples.size());
  for (const auto& s : samples) {
    ids.push_back(s.id);
    texts.push_back(s.text);
  }

  std::vector<std::string> corrected;
  try {
    corrected = corrector.correct(texts);
  } catch (const TransportError& e) {
    const auto& failed = e.failed_indices();
    if (failed.empty()) throw;
    throw TransportError("sample '" + ids[failed.front()] + "': " + e.what(), failed);
  } catch (const ProtocolError& e) {
    const auto& failed = e.failed_indices();
    if (failed.empty()) throw;
    throw ProtocolError("sample '" + ids[failed.front()] + "': " + e.what(), failed);
  } catch (const GecError& e) {
    // The rules backend fails per text; find which one.
    for (std::size_t i = 0; i < texts.size(); ++i) {
      try {
        corrector.correct(texts[i]);
      } catch (const GecError&) {
        throw ScoringError(ids[i], e.what());
      }
    }
    throw;
  }

  const auto values = similarities(ids, texts, corrected, metric);
  std::vector<std::pair<std::string, double>> out;
  out.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) out.emplace_back(ids[i], values[i]);
  return out;
}

ScoreSet from_raw(std::vector<std::string> ids, std::vector<double> raw, similarity::MetricSpec metric) {
  if (ids.size() != raw.size()) throw InvalidArgument("ids and raw scores differ in length");
  ScoreSet set;
  set.amplified = softmax(raw);
  set.sample_ids = std::move(ids);
  set.raw = std::move(raw);
  set.metric = std::move(metric);
  return set;
}

ScoreSet gecscore_set(const std::vector<TextSample>& samples, const gec::Corrector& corrector,
                      const similarity::MetricSpec& metric) {
  if (samples.size() < 2) throw InvalidArgument("a GECScore set needs at least two samples");
  std::unordered_set<std::string> seen;
  for (const auto& s : samples) {
    if (!seen.insert(s.id).second) throw InvalidArgument("duplicate sample id '" + s.id + "'");
  }
  auto scored = raw_scores(samples, corrector, metric);
  std::vector<std::string> ids;
  std::vector<double> raw;
  for (auto& [id, v] : scored) {
    ids.push_back(std::move(id));
    raw.push_back(v);
  }
  return from_raw(std::move(ids), std::move(raw), metric);
}

Appended append_raw(const ScoreSet& existing, const std::string& id, double raw) {
  if (existing.index_of(id) != existing.size())
    throw InvalidArgument("sample id '" + id + "' is already in the set");
  auto ids = existing.sample_ids;
  auto values = existing.raw;
  ids.push_back(id);
  values.push_back(raw);
  Appended out;
  out.set = from_raw(std::move(ids), std::move(values), existing.metric);
  out.new_amplified = out.set.amplified.back();
  return out;
}

Appended score_new_sample(const ScoreSet& existing, const TextSample& new_sample, const gec::Corrector& corrector) {
  if (existing.index_of(new_sample.id) != existing.size())
    throw InvalidArgument("sample id '" + new_sample.id + "' is already in the set");
  const auto scored = raw_scores({new_sample}, corrector, existing.metric);
  return append_raw(existing, new_sample.id, scored.front().second);
}

ScoreSet remove_sample(const ScoreSet& existing, const std::string& id) {
  const std::size_t at = existing.index_of(id);
  if (at == existing.size()) throw InvalidArgument("sample id '" + id + "' is not in the set");
  auto ids = existing.sample_ids;
  auto values = existing.raw;
  ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(at));
  values.erase(values.begin() + static_cast<std::ptrdiff_t>(at));
  return from_raw(std::move(ids), std::move(values), existing.metric);
}

}  // namespace gecscore::scoring
