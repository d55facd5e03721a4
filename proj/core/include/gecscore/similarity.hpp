#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gecscore/textproc.hpp"

namespace gecscore::similarity {

enum class MetricKind { bleu, gleu, chrf, ter, edit_distance, rouge1, rouge2, rougeL, meteor, external };
enum class Direction { higher_is_similar, lower_is_similar };

struct MetricSpec {
  MetricKind kind = MetricKind::chrf;
  std::size_t max_n = 4;         // bleu, gleu
  std::size_t max_char_n = 6;    // chrf
  double beta = 2.0;             // chrf
  std::string external_name;     // external, e.g. "bleurt"
  std::string endpoint;          // external: service base URL
  std::chrono::milliseconds timeout{30000};
  bool lowercase = true;

  Direction direction() const noexcept;

  // CLI name: bleu, gleu, chrf, ter, edit, rouge1, rouge2, rougel, meteor or
  // an external metric name (bleurt).
  std::string name() const;

  // Throws InvalidArgument when a parameter is out of range.
  void validate() const;

  static MetricSpec parse(std::string_view name);
};

// Names accepted by MetricSpec::parse.
std::vector<std::string> metric_names();

struct SimilarityValue {
  MetricSpec metric;
  double raw = 0.0;
  double oriented = 0.0;
};

// Metric output plus a flag for degenerate inputs (empty texts, sequences
// shorter than the n-gram order). Degenerate results are defined, not errors.
struct MetricValue {
  double value = 0.0;
  bool degenerate = false;
};

MetricValue bleu(const textproc::TokenSeq& candidate, const textproc::TokenSeq& reference,
                 std::size_t max_n = 4);
MetricValue gleu(const textproc::TokenSeq& candidate, const textproc::TokenSeq& reference,
                 std::size_t max_n = 4);
MetricValue chrf(std::string_view candidate, std::string_view reference, std::size_t max_char_n = 6,
                 double beta = 2.0);
MetricValue rouge_n(const textproc::TokenSeq& candidate, const textproc::TokenSeq& reference,
                    std::size_t n);
MetricValue rouge_l(const textproc::TokenSeq& candidate, const textproc::TokenSeq& reference);
MetricValue meteor(const textproc::TokenSeq& candidate, const textproc::TokenSeq& reference);

// Translation edit rate with greedy best-improvement block shifts. Throws
// InvalidArgument on an empty reference.
double ter(const textproc::TokenSeq& hypothesis, const textproc::TokenSeq& reference);

struct TerDetail {
  std::size_t shifts = 0;
  std::size_t edits = 0;
  std::size_t reference_length = 0;
  double score() const noexcept;
};
TerDetail ter_detail(const textproc::TokenSeq& hypothesis, const textproc::TokenSeq& reference);

// Levenshtein distance over Unicode scalar values.
std::size_t edit_distance(std::string_view a, std::string_view b);
std::size_t edit_distance(std::u32string_view a, std::u32string_view b);

// Word-level Levenshtein distance.
std::size_t word_edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b);

SimilarityValue orient(const MetricSpec& metric, double raw);

// Sim(original, corrected) for a native metric. The original text plays the
// reference role and the corrected text the candidate/hypothesis role.
SimilarityValue compute(const MetricSpec& metric, std::string_view original, std::string_view corrected);

struct ExternalOptions {
  std::chrono::milliseconds timeout{30000};
  std::size_t batch_size = 32;
  std::size_t max_in_flight = 4;
};

// Scores (original, corrected) pairs through the service's /v1/similarity
// endpoint. Values are clamped to [0, 1]. Throws TransportError when the
// service is unreachable and ProtocolError on non-200 or count mismatch.
std::vector<double> external_similarity(const std::vector<std::pair<std::string, std::string>>& pairs,
                                        const std::string& name, const std::string& endpoint,
                                        const ExternalOptions& options = {});

}  // namespace gecscore::similarity
