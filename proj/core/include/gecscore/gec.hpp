#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gecscore::gec {

enum class BackendKind { identity, rules, http };

std::string_view to_string(BackendKind kind) noexcept;
BackendKind parse_backend(std::string_view name);

struct GecBackendConfig {
  BackendKind kind = BackendKind::rules;
  std::optional<std::string> endpoint;  // http only
  std::chrono::milliseconds timeout{60000};
  std::size_t batch_size = 16;
  std::size_t max_in_flight = 4;
  bool cache_enabled = true;

  void validate() const;
};

enum class ErrorClass {
  duplicated_word,
  article_agreement,
  third_person_s,
  misspelling,
  terminal_punctuation,
  sentence_capitalization,
};

std::string_view to_string(ErrorClass cls) noexcept;

struct Rule {
  std::string id;
  ErrorClass cls;
};

// The rule table backing the rules corrector and the error injector. Every
// injectable class has exactly one corrector rule; rules run in list order.
class ErrorCatalog {
 public:
  // Parses the plain-text catalog format (see core/data/error_catalog.txt).
  static ErrorCatalog parse(std::string_view text);
  static ErrorCatalog load(const std::string& path);
  // The catalog compiled into the library.
  static const ErrorCatalog& builtin();

  const std::string& version() const noexcept { return version_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }

  // Third-person verb forms keyed by base form, and the inverse.
  const std::map<std::string, std::string>& verb_third_person() const noexcept { return verb_s_; }
  const std::map<std::string, std::string>& verb_base() const noexcept { return verb_base_; }
  // Misspelling -> correct spelling, and correct spelling -> misspelling.
  const std::map<std::string, std::string>& misspellings() const noexcept { return misspell_; }
  const std::map<std::string, std::string>& spellings() const noexcept { return spell_; }
  const std::set<std::string>& an_words() const noexcept { return an_words_; }
  const std::set<std::string>& a_words() const noexcept { return a_words_; }

  // The article the rules expect before a word ("a" or "an"), lowercase.
  std::string_view article_for(std::string_view next_word) const;

 private:
  std::string version_;
  std::vector<Rule> rules_;
  std::map<std::string, std::string> verb_s_;
  std::map<std::string, std::string> verb_base_;
  std::map<std::string, std::string> misspell_;
  std::map<std::string, std::string> spell_;
  std::set<std::string> an_words_;
  std::set<std::string> a_words_;
};

// Applies every catalog rule once, in order.
std::string apply_rules_once(std::string_view text, const ErrorCatalog& catalog);

// Applies rules until nothing changes. Throws GecError("non-converging rules")
// when 10 passes are not enough.
std::string correct_with_rules(std::string_view text, const ErrorCatalog& catalog = ErrorCatalog::builtin());

struct Injection {
  std::string text;
  std::size_t requested = 0;
  std::size_t applied = 0;

  std::size_t shortfall() const noexcept { return requested - applied; }
};

// Injects k catalog errors. Each step draws a class uniformly among classes
// with an untouched site, then a site uniformly within the class. Sites
// already touched by an earlier injection are not reused.
Injection inject_errors(std::string_view text, std::size_t k, std::uint64_t seed,
                        const ErrorCatalog& catalog = ErrorCatalog::builtin());

// Thread-safe map from exact text bytes to corrected text.
class CorrectionCache {
 public:
  std::optional<std::string> find(const std::string& text) const;
  void insert(const std::string& text, std::string corrected);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, std::string> entries_;
};

// The correction function g. Holds the backend configuration and the cache;
// safe to share across threads.
class Corrector {
 public:
  explicit Corrector(GecBackendConfig config, const ErrorCatalog& catalog = ErrorCatalog::builtin());

  // Order-aligned corrections. Throws TransportError/ProtocolError carrying the
  // failed input indices for the http backend; never returns a shorter list.
  std::vector<std::string> correct(const std::vector<std::string>& texts) const;
  std::string correct(const std::string& text) const;

  const GecBackendConfig& config() const noexcept { return config_; }
  std::size_t cache_size() const { return cache_ ? cache_->size() : 0; }
  // Number of texts handed to the backend (cache misses).
  std::size_t backend_calls() const noexcept { return backend_calls_->load(); }

 private:
  std::vector<std::string> run_backend(const std::vector<std::string>& texts) const;

  GecBackendConfig config_;
  const ErrorCatalog* catalog_;
  std::shared_ptr<CorrectionCache> cache_;
  std::shared_ptr<std::atomic<std::size_t>> backend_calls_;
};

std::vector<std::string> correct(const std::vector<std::string>& texts, const GecBackendConfig& config);

}  // namespace gecscore::gec
