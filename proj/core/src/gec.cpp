#include "gecscore/gec.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "gecscore/corpus.hpp"
#include "gecscore/errors.hpp"
#include "gecscore/utf8.hpp"
#include "service.hpp"

namespace gecscore::gec {

namespace {

constexpr int kMaxPasses = 10;

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_alnum(char c) { return is_upper(c) || is_lower(c) || (c >= '0' && c <= '9'); }
bool is_opener(char c) { return c == '"' || c == '\'' || c == '(' || c == '[' || c == '{'; }
bool is_closer(char c) {
  return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?' || c == '"' || c == '\'' ||
         c == ')' || c == ']' || c == '}';
}

// A whitespace-delimited word and the whitespace that follows it.
struct Piece {
  std::string word;
  std::string ws;
  bool touched = false;
};

struct Doc {
  std::string lead;
  std::vector<Piece> pieces;

  static Doc split(std::string_view text) {
    Doc doc;
    std::size_t i = 0;
    while (i < text.size() && is_ws(text[i])) doc.lead.push_back(text[i++]);
    while (i < text.size()) {
      Piece p;
      while (i < text.size() && !is_ws(text[i])) p.word.push_back(text[i++]);
      while (i < text.size() && is_ws(text[i])) p.ws.push_back(text[i++]);
      doc.pieces.push_back(std::move(p));
    }
    return doc;
  }

  std::string join() const {
    std::string out = lead;
    for (const auto& p : pieces) {
      out += p.word;
      out += p.ws;
    }
    return out;
  }
};

// Word = prefix (opening punctuation) + core + suffix (closing punctuation).
struct Parts {
  std::size_t core_begin = 0;
  std::size_t core_end = 0;
};

Parts parts(const std::string& w) {
  Parts p{0, w.size()};
  while (p.core_begin < p.core_end && is_opener(w[p.core_begin])) ++p.core_begin;
  while (p.core_end > p.core_begin && is_closer(w[p.core_end - 1])) --p.core_end;
  return p;
}

std::string core_of(const std::string& w) {
  const auto p = parts(w);
  return w.substr(p.core_begin, p.core_end - p.core_begin);
}

std::string lower_core(const std::string& w) { return utf8::ascii_lower(core_of(w)); }

bool has_prefix(const std::string& w) { return parts(w).core_begin > 0; }

enum class CaseStyle { lower, capitalized, upper };

CaseStyle case_of(std::string_view core) {
  std::size_t letters = 0;
  std::size_t uppers = 0;
  for (char c : core) {
    if (is_upper(c) || is_lower(c)) ++letters;
    if (is_upper(c)) ++uppers;
  }
  if (uppers == 0) return CaseStyle::lower;
  if (letters > 1 && uppers == letters) return CaseStyle::upper;
  if (!core.empty() && is_upper(core.front())) return CaseStyle::capitalized;
  return CaseStyle::lower;
}

std::string with_case(std::string lower, CaseStyle style) {
  switch (style) {
    case CaseStyle::lower: break;
    case CaseStyle::capitalized:
      if (!lower.empty() && is_lower(lower.front())) lower.front() = static_cast<char>(lower.front() - 'a' + 'A');
      break;
    case CaseStyle::upper:
      for (char& c : lower) {
        if (is_lower(c)) c = static_cast<char>(c - 'a' + 'A');
      }
      break;
  }
  return lower;
}

// Replaces the core of a word, keeping its punctuation and case style.
void replace_core(std::string& word, const std::string& lower_replacement) {
  const auto p = parts(word);
  const auto style = case_of(std::string_view(word).substr(p.core_begin, p.core_end - p.core_begin));
  word = word.substr(0, p.core_begin) + with_case(lower_replacement, style) + word.substr(p.core_end);
}

bool has_letter(const std::string& w) {
  return std::any_of(w.begin(), w.end(), [](char c) { return is_upper(c) || is_lower(c); });
}

bool is_subject(const std::string& lower) { return lower == "he" || lower == "she" || lower == "it"; }

bool is_article_word(const std::string& w) {
  const auto lower = utf8::ascii_lower(w);
  return lower == "a" || lower == "an";
}

bool sentence_start(const Doc& doc, std::size_t i) {
  if (i == 0) return true;
  std::string_view prev = doc.pieces[i - 1].word;
  bool quoted = false;
  while (!prev.empty() && (prev.back() == '"' || prev.back() == '\'' || prev.back() == ')' || prev.back() == ']')) {
    quoted = quoted || prev.back() == '"' || prev.back() == '\'';
    prev.remove_suffix(1);
  }
  if (prev.empty()) return false;
  const char last = prev.back();
  if (last != '.' && last != '!' && last != '?') return false;
  // "Wow!" he said: a quoted exclamation or question usually runs on.
  if (quoted && last != '.') return false;
  return !corpus::is_abbreviation(prev);
}

// Index of the first core character when it is an ASCII letter, else npos.
std::size_t first_letter(const std::string& w) {
  const auto p = parts(w);
  if (p.core_begin >= p.core_end) return std::string::npos;
  const char c = w[p.core_begin];
  return is_upper(c) || is_lower(c) ? p.core_begin : std::string::npos;
}

bool terminal_site(const std::string& w) {
  return w.size() >= 2 && w.back() == '.' && is_alnum(w[w.size() - 2]);
}

// ---- corrector rules -------------------------------------------------------

void fix_duplicates(Doc& doc) {
  for (std::size_t i = 1; i < doc.pieces.size();) {
    auto& prev = doc.pieces[i - 1];
    const auto& cur = doc.pieces[i];
    if (has_letter(cur.word) && utf8::ascii_lower(cur.word) == utf8::ascii_lower(prev.word)) {
      prev.ws = cur.ws;
      doc.pieces.erase(doc.pieces.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
}

void fix_spelling(Doc& doc, const ErrorCatalog& catalog) {
  for (auto& p : doc.pieces) {
    auto it = catalog.misspellings().find(lower_core(p.word));
    if (it != catalog.misspellings().end()) replace_core(p.word, it->second);
  }
}

void fix_articles(Doc& doc, const ErrorCatalog& catalog) {
  for (std::size_t i = 0; i + 1 < doc.pieces.size(); ++i) {
    auto& word = doc.pieces[i].word;
    if (!is_article_word(word)) continue;
    const auto expected = catalog.article_for(core_of(doc.pieces[i + 1].word));
    if (expected.empty() || utf8::ascii_lower(word) == expected) continue;
    word = with_case(std::string(expected), case_of(word));
  }
}

void fix_third_person(Doc& doc, const ErrorCatalog& catalog) {
  for (std::size_t i = 0; i + 1 < doc.pieces.size(); ++i) {
    const auto& subject = doc.pieces[i].word;
    if (!is_subject(utf8::ascii_lower(subject))) continue;
    auto& verb = doc.pieces[i + 1].word;
    if (has_prefix(verb)) continue;
    auto it = catalog.verb_third_person().find(lower_core(verb));
    if (it != catalog.verb_third_person().end()) replace_core(verb, it->second);
  }
}

void fix_capitalization(Doc& doc) {
  for (std::size_t i = 0; i < doc.pieces.size(); ++i) {
    auto& w = doc.pieces[i].word;
    const auto at = first_letter(w);
    if (at == std::string::npos || !is_lower(w[at]) || !sentence_start(doc, i)) continue;
    w[at] = static_cast<char>(w[at] - 'a' + 'A');
  }
}

void fix_terminal(Doc& doc) {
  if (doc.pieces.empty()) return;
  auto& w = doc.pieces.back().word;
  if (!w.empty() && is_alnum(w.back())) w.push_back('.');
}

// ---- injector sites --------------------------------------------------------

std::vector<std::size_t> sites(const Doc& doc, ErrorClass cls, const ErrorCatalog& catalog) {
  std::vector<std::size_t> out;
  const auto& ps = doc.pieces;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].touched) continue;
    const auto& w = ps[i].word;
    bool site = false;
    switch (cls) {
      case ErrorClass::duplicated_word: site = has_letter(w); break;
      case ErrorClass::article_agreement:
        site = i + 1 < ps.size() && is_article_word(w) && !catalog.article_for(core_of(ps[i + 1].word)).empty();
        break;
      case ErrorClass::third_person_s:
        site = i > 0 && is_subject(utf8::ascii_lower(ps[i - 1].word)) && !has_prefix(w) &&
               catalog.verb_base().count(lower_core(w)) > 0;
        break;
      case ErrorClass::misspelling: site = catalog.spellings().count(lower_core(w)) > 0; break;
      case ErrorClass::terminal_punctuation: site = i + 1 == ps.size() && terminal_site(w); break;
      case ErrorClass::sentence_capitalization: {
        const auto at = first_letter(w);
        site = at != std::string::npos && is_upper(w[at]) && sentence_start(doc, i);
        break;
      }
    }
    if (site) out.push_back(i);
  }
  return out;
}

void inject_at(Doc& doc, ErrorClass cls, std::size_t i, const ErrorCatalog& catalog) {
  auto& p = doc.pieces[i];
  p.touched = true;
  switch (cls) {
    case ErrorClass::duplicated_word: {
      Piece copy{p.word, p.ws, true};
      p.ws = " ";
      doc.pieces.insert(doc.pieces.begin() + static_cast<std::ptrdiff_t>(i) + 1, std::move(copy));
      break;
    }
    case ErrorClass::article_agreement:
      p.word = with_case(utf8::ascii_lower(p.word) == "a" ? "an" : "a", case_of(p.word));
      break;
    case ErrorClass::third_person_s: replace_core(p.word, catalog.verb_base().at(lower_core(p.word))); break;
    case ErrorClass::misspelling: replace_core(p.word, catalog.spellings().at(lower_core(p.word))); break;
    case ErrorClass::terminal_punctuation: p.word.pop_back(); break;
    case ErrorClass::sentence_capitalization: {
      const auto at = first_letter(p.word);
      p.word[at] = static_cast<char>(p.word[at] - 'A' + 'a');
      break;
    }
  }
}

}  // namespace

std::string_view to_string(BackendKind kind) noexcept {
  switch (kind) {
    case BackendKind::identity: return "identity";
    case BackendKind::rules: return "rules";
    case BackendKind::http: return "http";
  }
  return "unknown";
}

BackendKind parse_backend(std::string_view name) {
  if (name == "identity") return BackendKind::identity;
  if (name == "rules") return BackendKind::rules;
  if (name == "http") return BackendKind::http;
  throw InvalidArgument("unknown GEC backend '" + std::string(name) + "'");
}

void GecBackendConfig::validate() const {
  if (kind == BackendKind::http && (!endpoint || endpoint->empty()))
    throw InvalidArgument("http GEC backend needs an endpoint");
  if (kind != BackendKind::http && endpoint) throw InvalidArgument("endpoint is only valid for the http backend");
  if (batch_size == 0) throw InvalidArgument("batch_size must be >= 1");
  if (max_in_flight == 0) throw InvalidArgument("max_in_flight must be >= 1");
}

std::string apply_rules_once(std::string_view text, const ErrorCatalog& catalog) {
  Doc doc = Doc::split(text);
  for (const auto& rule : catalog.rules()) {
    switch (rule.cls) {
      case ErrorClass::duplicated_word: fix_duplicates(doc); break;
      case ErrorClass::misspelling: fix_spelling(doc, catalog); break;
      case ErrorClass::article_agreement: fix_articles(doc, catalog); break;
      case ErrorClass::third_person_s: fix_third_person(doc, catalog); break;
      case ErrorClass::sentence_capitalization: fix_capitalization(doc); break;
      case ErrorClass::terminal_punctuation: fix_terminal(doc); break;
    }
  }
  return doc.join();
}

std::string correct_with_rules(std::string_view text, const ErrorCatalog& catalog) {
  std::string current(text);
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    std::string next = apply_rules_once(current, catalog);
    if (next == current) return current;
    current = std::move(next);
  }
  throw GecError("non-converging rules");
}

Injection inject_errors(std::string_view text, std::size_t k, std::uint64_t seed, const ErrorCatalog& catalog) {
  Injection result{std::string(text), k, 0};
  if (k == 0) return result;

  std::mt19937_64 rng(seed);
  Doc doc = Doc::split(text);
  static constexpr ErrorClass kClasses[] = {
      ErrorClass::duplicated_word,      ErrorClass::article_agreement,     ErrorClass::third_person_s,
      ErrorClass::misspelling,          ErrorClass::terminal_punctuation, ErrorClass::sentence_capitalization,
  };
  for (std::size_t step = 0; step < k; ++step) {
    std::vector<std::pair<ErrorClass, std::vector<std::size_t>>> open;
    for (auto cls : kClasses) {
      auto s = sites(doc, cls, catalog);
      if (!s.empty()) open.emplace_back(cls, std::move(s));
    }
    if (open.empty()) break;
    const auto& [cls, where] = open[rng() % open.size()];
    inject_at(doc, cls, where[rng() % where.size()], catalog);
    ++result.applied;
  }
  result.text = doc.join();
  return result;
}

std::optional<std::string> CorrectionCache::find(const std::string& text) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(text);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void CorrectionCache::insert(const std::string& text, std::string corrected) {
  std::lock_guard lock(mutex_);
  entries_.insert_or_assign(text, std::move(corrected));
}

std::size_t CorrectionCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

Corrector::Corrector(GecBackendConfig config, const ErrorCatalog& catalog)
    : config_(std::move(config)),
      catalog_(&catalog),
      cache_(config_.cache_enabled ? std::make_shared<CorrectionCache>() : nullptr),
      backend_calls_(std::make_shared<std::atomic<std::size_t>>(0)) {
  config_.validate();
}

std::vector<std::string> Corrector::run_backend(const std::vector<std::string>& texts) const {
  *backend_calls_ += texts.size();
  switch (config_.kind) {
    case BackendKind::identity: return texts;
    case BackendKind::rules: {
      std::vector<std::string> out;
      out.reserve(texts.size());
      for (const auto& t : texts) out.push_back(correct_with_rules(t, *catalog_));
      return out;
    }
    case BackendKind::http:
      return service::run_batched<std::string>(
          texts.size(), config_.batch_size, config_.max_in_flight, [&](std::size_t begin, std::size_t end) {
            std::vector<std::string> batch(texts.begin() + static_cast<std::ptrdiff_t>(begin),
                                           texts.begin() + static_cast<std::ptrdiff_t>(end));
            return service::post_texts(*config_.endpoint, "/v1/correct", batch, "corrected", config_.timeout);
          });
  }
  return texts;
}

std::vector<std::string> Corrector::correct(const std::vector<std::string>& texts) const {
  if (config_.kind == BackendKind::identity) return texts;
  if (!cache_) return run_backend(texts);

  std::vector<std::string> out(texts.size());
  std::vector<std::string> pending;
  std::vector<std::vector<std::size_t>> positions;
  std::unordered_map<std::string, std::size_t> pending_index;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (auto hit = cache_->find(texts[i])) {
      out[i] = std::move(*hit);
      continue;
    }
    auto [it, fresh] = pending_index.emplace(texts[i], pending.size());
    if (fresh) {
      pending.push_back(texts[i]);
      positions.emplace_back();
    }
    positions[it->second].push_back(i);
  }
  if (pending.empty()) return out;

  auto to_input = [&](const std::vector<std::size_t>& failed) {
    std::vector<std::size_t> mapped;
    for (std::size_t u : failed) mapped.insert(mapped.end(), positions[u].begin(), positions[u].end());
    std::sort(mapped.begin(), mapped.end());
    return mapped;
  };
  std::vector<std::string> fixed;
  try {
    fixed = run_backend(pending);
  } catch (const TransportError& e) {
    throw TransportError(e.what(), to_input(e.failed_indices()));
  } catch (const ProtocolError& e) {
    throw ProtocolError(e.what(), to_input(e.failed_indices()));
  }
  for (std::size_t u = 0; u < pending.size(); ++u) {
    for (std::size_t i : positions[u]) out[i] = fixed[u];
    cache_->insert(pending[u], std::move(fixed[u]));
  }
  return out;
}

std::string Corrector::correct(const std::string& text) const { return correct(std::vector<std::string>{text}).front(); }

std::vector<std::string> correct(const std::vector<std::string>& texts, const GecBackendConfig& config) {
  return Corrector(config).correct(texts);
}

}  // namespace gecscore::gec
