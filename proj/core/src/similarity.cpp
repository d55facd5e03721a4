#include "gecscore/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "gecscore/errors.hpp"
#include "gecscore/utf8.hpp"
#include "service.hpp"

namespace gecscore::similarity {

using textproc::TokenSeq;

namespace {

struct NameEntry {
  const char* name;
  MetricKind kind;
};

constexpr NameEntry kNames[] = {
    {"bleu", MetricKind::bleu},       {"gleu", MetricKind::gleu},
    {"chrf", MetricKind::chrf},       {"ter", MetricKind::ter},
    {"edit", MetricKind::edit_distance}, {"rouge1", MetricKind::rouge1},
    {"rouge2", MetricKind::rouge2},   {"rougel", MetricKind::rougeL},
    {"meteor", MetricKind::meteor},
};

constexpr const char* kExternalMetrics[] = {"bleurt"};

double f_beta(double p, double r, double beta) {
  if (p + r <= 0.0) return 0.0;
  const double b2 = beta * beta;
  return (1.0 + b2) * p * r / (b2 * p + r);
}

std::size_t ngram_total(std::size_t len, std::size_t n) { return len >= n ? len - n + 1 : 0; }

// Longest common subsequence length, two rows over the shorter sequence.
std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const auto& shorter = a.size() <= b.size() ? a : b;
  const auto& longer = &shorter == &a ? b : a;
  std::vector<std::size_t> prev(shorter.size() + 1, 0);
  std::vector<std::size_t> cur(shorter.size() + 1, 0);
  for (const auto& w : longer) {
    for (std::size_t i = 1; i <= shorter.size(); ++i) {
      cur[i] = shorter[i - 1] == w ? prev[i - 1] + 1 : std::max(prev[i], cur[i - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[shorter.size()];
}

}  // namespace

Direction MetricSpec::direction() const noexcept {
  return kind == MetricKind::ter || kind == MetricKind::edit_distance ? Direction::lower_is_similar
                                                                      : Direction::higher_is_similar;
}

std::string MetricSpec::name() const {
  if (kind == MetricKind::external) return external_name;
  for (const auto& e : kNames) {
    if (e.kind == kind) return e.name;
  }
  return "unknown";
}

void MetricSpec::validate() const {
  if (max_n == 0) throw InvalidArgument("max_n must be >= 1");
  if (max_char_n == 0) throw InvalidArgument("max_char_n must be >= 1");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("chrF beta must be > 0");
  if (kind == MetricKind::external && external_name.empty())
    throw InvalidArgument("external metric needs a name");
}

MetricSpec MetricSpec::parse(std::string_view name) {
  const std::string lower = utf8::ascii_lower(name);
  MetricSpec spec;
  if (lower == "edit_distance") {
    spec.kind = MetricKind::edit_distance;
    return spec;
  }
  for (const auto& e : kNames) {
    if (lower == e.name) {
      spec.kind = e.kind;
      return spec;
    }
  }
  for (const char* ext : kExternalMetrics) {
    if (lower == ext) {
      spec.kind = MetricKind::external;
      spec.external_name = lower;
      return spec;
    }
  }
  throw InvalidArgument("unknown metric '" + std::string(name) + "'");
}

std::vector<std::string> metric_names() {
  std::vector<std::string> names;
  for (const auto& e : kNames) names.emplace_back(e.name);
  for (const char* ext : kExternalMetrics) names.emplace_back(ext);
  return names;
}

MetricValue bleu(const TokenSeq& candidate, const TokenSeq& reference, std::size_t max_n) {
  if (max_n == 0) throw InvalidArgument("BLEU max_n must be >= 1");
  if (candidate.empty() || reference.empty()) return {0.0, true};

  // Orders longer than the candidate have no n-grams to score.
  const std::size_t order = std::min(max_n, candidate.size());
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= order; ++n) {
    const auto cand = textproc::word_ngrams(candidate, n);
    const auto ref = textproc::word_ngrams(reference, n);
    const auto total = static_cast<double>(ngram_total(candidate.size(), n));
    const auto matched = static_cast<double>(textproc::clipped_overlap(cand, ref));
    const double precision = matched > 0.0 ? matched / total : 1.0 / (2.0 * total);
    log_sum += std::log(precision);
  }
  const double c = static_cast<double>(candidate.size());
  const double r = static_cast<double>(reference.size());
  const double bp = c >= r ? 1.0 : std::exp(1.0 - r / c);
  return {bp * std::exp(log_sum / static_cast<double>(order)), order < max_n};
}

MetricValue gleu(const TokenSeq& candidate, const TokenSeq& reference, std::size_t max_n) {
  if (max_n == 0) throw InvalidArgument("GLEU max_n must be >= 1");
  if (candidate.empty() || reference.empty()) return {0.0, true};
  std::size_t matched = 0;
  std::size_t cand_total = 0;
  std::size_t ref_total = 0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    cand_total += ngram_total(candidate.size(), n);
    ref_total += ngram_total(reference.size(), n);
    if (candidate.size() < n || reference.size() < n) continue;
    matched += textproc::clipped_overlap(textproc::word_ngrams(candidate, n), textproc::word_ngrams(reference, n));
  }
  const double precision = static_cast<double>(matched) / static_cast<double>(cand_total);
  const double recall = static_cast<double>(matched) / static_cast<double>(ref_total);
  return {std::min(precision, recall), false};
}

MetricValue chrf(std::string_view candidate, std::string_view reference, std::size_t max_char_n, double beta) {
  if (max_char_n == 0) throw InvalidArgument("chrF order must be >= 1");
  if (!(beta > 0.0)) throw InvalidArgument("chrF beta must be > 0");
  std::u32string cand = utf8::decode(candidate);
  std::u32string ref = utf8::decode(reference);
  std::erase_if(cand, [](char32_t c) { return utf8::is_space(c); });
  std::erase_if(ref, [](char32_t c) { return utf8::is_space(c); });
  if (cand.empty() || ref.empty()) return {0.0, true};

  double f_sum = 0.0;
  std::size_t orders = 0;
  for (std::size_t n = 1; n <= max_char_n; ++n) {
    std::size_t cand_total = ngram_total(cand.size(), n);
    std::size_t ref_total = ngram_total(ref.size(), n);
    if (cand_total == 0 && ref_total == 0) continue;
    std::size_t matched = 0;
    if (cand_total > 0 && ref_total > 0) {
      if (n <= 6) {
        matched = textproc::sorted_overlap(textproc::packed_char_ngrams(cand, n),
                                           textproc::packed_char_ngrams(ref, n));
      } else {
        matched = textproc::clipped_overlap(textproc::char_ngrams(utf8::encode(cand), n, false),
                                            textproc::char_ngrams(utf8::encode(ref), n, false));
      }
    }
    const double p = cand_total ? static_cast<double>(matched) / static_cast<double>(cand_total) : 0.0;
    const double r = ref_total ? static_cast<double>(matched) / static_cast<double>(ref_total) : 0.0;
    f_sum += f_beta(p, r, beta);
    ++orders;
  }
  return {f_sum / static_cast<double>(orders), false};
}

MetricValue rouge_n(const TokenSeq& candidate, const TokenSeq& reference, std::size_t n) {
  if (n == 0) throw InvalidArgument("ROUGE-N order must be >= 1");
  if (candidate.size() < n || reference.size() < n) return {0.0, true};
  const auto matched = static_cast<double>(
      textproc::clipped_overlap(textproc::word_ngrams(candidate, n), textproc::word_ngrams(reference, n)));
  const double p = matched / static_cast<double>(ngram_total(candidate.size(), n));
  const double r = matched / static_cast<double>(ngram_total(reference.size(), n));
  return {f_beta(p, r, 1.0), false};
}

MetricValue rouge_l(const TokenSeq& candidate, const TokenSeq& reference) {
  if (candidate.empty() || reference.empty()) return {0.0, true};
  const auto lcs = static_cast<double>(lcs_length(candidate.tokens, reference.tokens));
  const double p = lcs / static_cast<double>(candidate.size());
  const double r = lcs / static_cast<double>(reference.size());
  return {f_beta(p, r, 1.0), false};
}

MetricValue meteor(const TokenSeq& candidate, const TokenSeq& reference) {
  if (candidate.empty() || reference.empty()) return {0.0, true};

  std::unordered_map<std::string, std::deque<std::size_t>> free_positions;
  for (std::size_t j = 0; j < reference.size(); ++j) free_positions[reference.tokens[j]].push_back(j);

  std::size_t matches = 0;
  std::size_t chunks = 0;
  bool have_prev = false;
  std::size_t prev_c = 0;
  std::size_t prev_r = 0;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    auto it = free_positions.find(candidate.tokens[i]);
    if (it == free_positions.end() || it->second.empty()) continue;
    const std::size_t j = it->second.front();
    it->second.pop_front();
    ++matches;
    if (!have_prev || i != prev_c + 1 || j != prev_r + 1) ++chunks;
    have_prev = true;
    prev_c = i;
    prev_r = j;
  }
  if (matches == 0) return {0.0, false};

  const double m = static_cast<double>(matches);
  const double p = m / static_cast<double>(candidate.size());
  const double r = m / static_cast<double>(reference.size());
  const double f_mean = 10.0 * p * r / (r + 9.0 * p);
  const double frag = static_cast<double>(chunks) / m;
  const double penalty = 0.5 * frag * frag * frag;
  return {f_mean * (1.0 - penalty), false};
}

double TerDetail::score() const noexcept {
  return static_cast<double>(shifts + edits) / static_cast<double>(reference_length);
}

double ter(const TokenSeq& hypothesis, const TokenSeq& reference) {
  return ter_detail(hypothesis, reference).score();
}

SimilarityValue orient(const MetricSpec& metric, double raw) {
  if (!std::isfinite(raw)) throw InvalidArgument("similarity value is not finite");
  SimilarityValue v{metric, raw, raw};
  if (metric.kind == MetricKind::external) {
    v.raw = std::clamp(raw, 0.0, 1.0);
    v.oriented = v.raw;
  } else if (metric.direction() == Direction::lower_is_similar) {
    if (raw < 0.0) throw InvalidArgument("distance must be non-negative");
    v.oriented = 1.0 / (1.0 + raw);
  }
  return v;
}

SimilarityValue compute(const MetricSpec& metric, std::string_view original, std::string_view corrected) {
  const bool lc = metric.lowercase;
  auto words = [lc](std::string_view s) { return textproc::tokenize_words(s, lc); };
  auto chars = [lc](std::string_view s) { return lc ? utf8::ascii_lower(s) : std::string(s); };

  double raw = 0.0;
  switch (metric.kind) {
    case MetricKind::bleu: raw = bleu(words(corrected), words(original), metric.max_n).value; break;
    case MetricKind::gleu: raw = gleu(words(corrected), words(original), metric.max_n).value; break;
    case MetricKind::chrf:
      raw = chrf(chars(corrected), chars(original), metric.max_char_n, metric.beta).value;
      break;
    case MetricKind::ter: raw = ter(words(corrected), words(original)); break;
    case MetricKind::edit_distance:
      raw = static_cast<double>(edit_distance(chars(original), chars(corrected)));
      break;
    case MetricKind::rouge1: raw = rouge_n(words(corrected), words(original), 1).value; break;
    case MetricKind::rouge2: raw = rouge_n(words(corrected), words(original), 2).value; break;
    case MetricKind::rougeL: raw = rouge_l(words(corrected), words(original)).value; break;
    case MetricKind::meteor: raw = meteor(words(corrected), words(original)).value; break;
    case MetricKind::external:
      throw InvalidArgument("metric '" + metric.name() + "' is served remotely; use external_similarity");
  }
  return orient(metric, raw);
}

std::vector<double> external_similarity(const std::vector<std::pair<std::string, std::string>>& pairs,
                                        const std::string& name, const std::string& endpoint,
                                        const ExternalOptions& options) {
  if (pairs.empty()) return {};
  if (endpoint.empty()) throw InvalidArgument("external metric '" + name + "' needs a service endpoint");
  auto scores = service::run_batched<double>(
      pairs.size(), options.batch_size, options.max_in_flight, [&](std::size_t begin, std::size_t end) {
        std::vector<std::pair<std::string, std::string>> batch(pairs.begin() + static_cast<std::ptrdiff_t>(begin),
                                                               pairs.begin() + static_cast<std::ptrdiff_t>(end));
        return service::post_similarity(endpoint, name, batch, options.timeout);
      });
  for (double& s : scores) {
    if (!std::isfinite(s)) throw ProtocolError("service returned a non-finite score");
    s = std::clamp(s, 0.0, 1.0);
  }
  return scores;
}

}  // namespace gecscore::similarity
