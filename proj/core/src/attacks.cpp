#include "gecscore/attacks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <random>

#include "gecscore/errors.hpp"
#include "gecscore/utf8.hpp"
#include "service.hpp"

namespace gecscore::attacks {

namespace {

struct OpName {
  CharOp op;
  const char* name;
};

constexpr OpName kOps[] = {
    {CharOp::swap_adjacent_chars, "swap_adjacent_chars"},
    {CharOp::substitute_char, "substitute_char"},
    {CharOp::delete_char, "delete_char"},
    {CharOp::insert_char, "insert_char"},
};

bool is_ascii_punct(char32_t c) {
  return c < 0x80 && std::ispunct(static_cast<unsigned char>(c)) != 0;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// A maximal non-whitespace run and the code-point range of its core (the run
// without leading and trailing ASCII punctuation).
struct Token {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t core_begin = 0;
  std::size_t core_end = 0;

  std::size_t core_len() const { return core_end - core_begin; }
};

std::vector<Token> tokens_of(const std::u32string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (utf8::is_space(text[i])) {
      ++i;
      continue;
    }
    Token t;
    t.begin = i;
    while (i < text.size() && !utf8::is_space(text[i])) ++i;
    t.end = i;
    t.core_begin = t.begin;
    t.core_end = t.end;
    while (t.core_begin < t.core_end && is_ascii_punct(text[t.core_begin])) ++t.core_begin;
    while (t.core_end > t.core_begin && is_ascii_punct(text[t.core_end - 1])) --t.core_end;
    out.push_back(t);
  }
  return out;
}

char32_t random_letter(std::mt19937_64& rng, bool upper, char32_t avoid) {
  const char32_t base = upper ? U'A' : U'a';
  char32_t c = base + static_cast<char32_t>(rng() % 26);
  if (c == avoid) c = base + (c - base + 1 + static_cast<char32_t>(rng() % 25)) % 26;
  return c;
}

bool is_upper(char32_t c) { return c >= U'A' && c <= U'Z'; }

std::u32string apply_op(std::u32string core, CharOp op, std::mt19937_64& rng) {
  const std::size_t n = core.size();
  switch (op) {
    case CharOp::swap_adjacent_chars: {
      const std::size_t p = rng() % (n - 1);
      std::swap(core[p], core[p + 1]);
      break;
    }
    case CharOp::substitute_char: {
      const std::size_t p = rng() % n;
      core[p] = random_letter(rng, is_upper(core[p]), core[p]);
      break;
    }
    case CharOp::delete_char: {
      const std::size_t p = rng() % n;
      core.erase(p, 1);
      break;
    }
    case CharOp::insert_char: {
      const std::size_t p = rng() % (n + 1);
      const bool upper = p > 0 && is_upper(core[p - 1]) && (p == n || is_upper(core[p]));
      core.insert(core.begin() + static_cast<std::ptrdiff_t>(p), random_letter(rng, upper, 0));
      break;
    }
  }
  return core;
}

}  // namespace

std::string_view to_string(CharOp op) noexcept {
  for (const auto& e : kOps) {
    if (e.op == op) return e.name;
  }
  return "unknown";
}

CharOp parse_char_op(std::string_view name) {
  for (const auto& e : kOps) {
    if (name == e.name) return e.op;
  }
  throw InvalidArgument("unknown character op '" + std::string(name) + "'");
}

void PerturbationConfig::validate() const {
  if (!(rate >= 0.0 && rate <= 1.0)) throw InvalidArgument("perturbation rate must lie in [0, 1]");
  if (rate > 0.0 && ops.empty()) throw InvalidArgument("perturbation needs at least one op");
  if (min_token_len < 2) throw InvalidArgument("min_token_len must be at least 2");
}

Perturbation perturb_chars(std::string_view text, const PerturbationConfig& config) {
  config.validate();
  Perturbation result;
  result.text = std::string(text);
  if (config.rate == 0.0) return result;

  const std::u32string decoded = utf8::decode(text);
  const auto tokens = tokens_of(decoded);
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].core_len() >= config.min_token_len) eligible.push_back(i);
  }
  result.eligible = eligible.size();
  // The small slack keeps products like 0.1 * 30 from rounding up.
  const double want = std::ceil(config.rate * static_cast<double>(eligible.size()) - 1e-9);
  result.requested = std::min(eligible.size(), static_cast<std::size_t>(std::max(want, 0.0)));
  if (result.requested == 0) return result;

  std::mt19937_64 rng(config.seed);
  std::shuffle(eligible.begin(), eligible.end(), rng);
  std::stable_sort(eligible.begin(), eligible.end(),
                   [&](std::size_t a, std::size_t b) { return tokens[a].core_len() > tokens[b].core_len(); });
  eligible.resize(result.requested);
  std::sort(eligible.begin(), eligible.end());

  std::vector<std::u32string> replacement(tokens.size());
  std::vector<bool> touched(tokens.size(), false);
  for (std::size_t idx : eligible) {
    const Token& t = tokens[idx];
    const CharOp op = config.ops[rng() % config.ops.size()];
    replacement[idx] = apply_op(decoded.substr(t.core_begin, t.core_len()), op, rng);
    touched[idx] = true;
    ++result.perturbed;
  }

  std::u32string out;
  out.reserve(decoded.size() + eligible.size());
  std::size_t pos = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!touched[i]) continue;
    const Token& t = tokens[i];
    out.append(decoded, pos, t.core_begin - pos);
    out += replacement[i];
    pos = t.core_end;
  }
  out.append(decoded, pos, std::u32string::npos);
  result.text = utf8::encode(out);
  return result;
}

std::vector<std::string> paraphrase(const std::vector<std::string>& texts, const std::string& endpoint,
                                    std::chrono::milliseconds timeout) {
  if (texts.empty()) return {};
  if (endpoint.empty()) throw TransportError("no paraphrase endpoint configured");
  return service::run_batched<std::string>(texts.size(), 16, 4, [&](std::size_t begin, std::size_t end) {
    const std::vector<std::string> batch(texts.begin() + static_cast<std::ptrdiff_t>(begin),
                                         texts.begin() + static_cast<std::ptrdiff_t>(end));
    return service::post_texts(endpoint, "/v1/paraphrase", batch, "paraphrased", timeout);
  });
}

AttackKind parse_attack(std::string_view name) {
  if (name == "none") return AttackKind::none;
  if (name == "chars") return AttackKind::chars;
  if (name == "paraphrase") return AttackKind::paraphrase;
  throw InvalidArgument("unknown attack '" + std::string(name) + "'");
}

RobustnessReport robustness_eval(const std::vector<TextSample>& corpus, const AttackParams& attack,
                                 const gec::Corrector& corrector, const similarity::MetricSpec& metric) {
  RobustnessReport report;
  report.before = harness::evaluate(corpus, corrector, metric);
  if (attack.kind == AttackKind::none) {
    report.after = report.before;
    return report;
  }

  std::vector<TextSample> attacked = corpus;
  std::vector<std::size_t> targets;
  for (std::size_t i = 0; i < attacked.size(); ++i) {
    if (attacked[i].label == Label::llm) targets.push_back(i);
  }

  if (attack.kind == AttackKind::chars) {
    attack.chars.validate();
    for (std::size_t i : targets) {
      PerturbationConfig config = attack.chars;
      config.seed = splitmix64(attack.chars.seed ^ splitmix64(i));
      auto p = perturb_chars(attacked[i].text, config);
      if (p.text != attacked[i].text) ++report.attacked;
      attacked[i] = TextSample::make(attacked[i].id, std::move(p.text), attacked[i].label);
      attacked[i].source_model = corpus[i].source_model;
      attacked[i].domain = corpus[i].domain;
    }
  } else {
    std::vector<std::string> texts;
    texts.reserve(targets.size());
    for (std::size_t i : targets) texts.push_back(attacked[i].text);
    const auto rewritten = paraphrase(texts, attack.paraphrase_endpoint);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      TextSample& s = attacked[targets[k]];
      if (rewritten[k] != s.text) ++report.attacked;
      s.text = rewritten[k];
      s.word_count = count_words(s.text);
    }
  }

  report.after = harness::evaluate(attacked, corrector, metric);
  return report;
}

}  // namespace gecscore::attacks
