#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gecscore/corpus.hpp"
#include "gecscore/gec.hpp"
#include "gecscore/harness.hpp"
#include "gecscore/similarity.hpp"

namespace gecscore::attacks {

enum class CharOp { swap_adjacent_chars, substitute_char, delete_char, insert_char };

std::string_view to_string(CharOp op) noexcept;
CharOp parse_char_op(std::string_view name);

struct PerturbationConfig {
  double rate = 0.0;  // fraction of eligible word tokens perturbed
  std::vector<CharOp> ops{CharOp::swap_adjacent_chars, CharOp::substitute_char, CharOp::delete_char,
                          CharOp::insert_char};
  std::uint64_t seed = 0;
  std::size_t min_token_len = 3;

  void validate() const;
};

struct Perturbation {
  std::string text;
  std::size_t eligible = 0;
  std::size_t requested = 0;
  std::size_t perturbed = 0;
};

// DeepWordBug-style character edits. Picks ceil(rate * N) of the N tokens
// with at least min_token_len code points, longest first (seeded order among
// equal lengths), and applies one randomly drawn op to each. Whitespace is
// preserved verbatim.
Perturbation perturb_chars(std::string_view text, const PerturbationConfig& config);

// Order-aligned paraphrases from the service's /v1/paraphrase endpoint.
std::vector<std::string> paraphrase(const std::vector<std::string>& texts, const std::string& endpoint,
                                    std::chrono::milliseconds timeout = std::chrono::milliseconds{60000});

enum class AttackKind { none, chars, paraphrase };

AttackKind parse_attack(std::string_view name);

struct AttackParams {
  AttackKind kind = AttackKind::none;
  PerturbationConfig chars;
  std::string paraphrase_endpoint;
};

struct RobustnessReport {
  harness::EvalReport before;
  harness::EvalReport after;
  std::size_t attacked = 0;

  double delta() const noexcept { return after.auroc - before.auroc; }
};

// Attacks the llm-labeled samples only, then re-runs evaluation with a freshly
// calibrated threshold.
RobustnessReport robustness_eval(const std::vector<TextSample>& corpus, const AttackParams& attack,
                                 const gec::Corrector& corrector, const similarity::MetricSpec& metric);

}  // namespace gecscore::attacks
