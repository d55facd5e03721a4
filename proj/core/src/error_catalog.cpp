#include <fstream>
#include <sstream>

#include "gecscore/errors.hpp"
#include "gecscore/gec.hpp"
#include "gecscore/utf8.hpp"

namespace gecscore::detail {
std::string_view builtin_catalog_text();
}

namespace gecscore::gec {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

ErrorClass parse_class(const std::string& name, std::size_t line_no) {
  static constexpr ErrorClass kAll[] = {
      ErrorClass::duplicated_word,      ErrorClass::article_agreement,     ErrorClass::third_person_s,
      ErrorClass::misspelling,          ErrorClass::terminal_punctuation, ErrorClass::sentence_capitalization,
  };
  for (auto cls : kAll) {
    if (to_string(cls) == name) return cls;
  }
  throw GecError("catalog line " + std::to_string(line_no) + ": unknown error class '" + name + "'");
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

}  // namespace

std::string_view to_string(ErrorClass cls) noexcept {
  switch (cls) {
    case ErrorClass::duplicated_word: return "duplicated_word";
    case ErrorClass::article_agreement: return "article_agreement";
    case ErrorClass::third_person_s: return "third_person_s";
    case ErrorClass::misspelling: return "misspelling";
    case ErrorClass::terminal_punctuation: return "terminal_punctuation";
    case ErrorClass::sentence_capitalization: return "sentence_capitalization";
  }
  return "unknown";
}

ErrorCatalog ErrorCatalog::parse(std::string_view text) {
  ErrorCatalog catalog;
  std::istringstream in{std::string(text)};
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw GecError("catalog line " + std::to_string(line_no) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto words = split_ws(line);
    if (words.empty()) continue;
    if (words.size() == 1 && words[0].front() == '[' && words[0].back() == ']') {
      section = words[0].substr(1, words[0].size() - 2);
      continue;
    }
    if (section.empty()) {
      if (words.size() == 2 && words[0] == "version") {
        catalog.version_ = words[1];
        continue;
      }
      fail("entry outside a section");
    }
    if (section == "rules") {
      if (words.size() != 2) fail("expected '<rule id> <class>'");
      catalog.rules_.push_back({words[0], parse_class(words[1], line_no)});
    } else if (section == "an_words" || section == "a_words") {
      auto& target = section == "an_words" ? catalog.an_words_ : catalog.a_words_;
      for (const auto& w : words) target.insert(utf8::ascii_lower(w));
    } else if (section == "verbs") {
      if (words.size() != 2) fail("expected '<base> <third person>'");
      const auto base = utf8::ascii_lower(words[0]);
      const auto third = utf8::ascii_lower(words[1]);
      if (!catalog.verb_s_.emplace(base, third).second) fail("duplicate verb '" + base + "'");
      if (!catalog.verb_base_.emplace(third, base).second) fail("duplicate verb form '" + third + "'");
    } else if (section == "misspellings") {
      if (words.size() != 2) fail("expected '<misspelling> <correct>'");
      const auto wrong = utf8::ascii_lower(words[0]);
      const auto right = utf8::ascii_lower(words[1]);
      if (wrong.front() != right.front()) fail("misspelling '" + wrong + "' changes the first letter");
      if (!catalog.misspell_.emplace(wrong, right).second) fail("duplicate misspelling '" + wrong + "'");
      catalog.spell_.emplace(right, wrong);
    } else {
      fail("unknown section [" + section + "]");
    }
  }

  for (const auto& [wrong, right] : catalog.misspell_) {
    if (catalog.spell_.count(wrong)) throw GecError("catalog: '" + wrong + "' is both a misspelling and a spelling");
  }
  // Each class needs exactly one corrector rule, otherwise the injector could
  // produce errors the corrector never removes.
  for (auto cls : {ErrorClass::duplicated_word, ErrorClass::article_agreement, ErrorClass::third_person_s,
                   ErrorClass::misspelling, ErrorClass::terminal_punctuation,
                   ErrorClass::sentence_capitalization}) {
    std::size_t n = 0;
    for (const auto& r : catalog.rules_) n += r.cls == cls ? 1 : 0;
    if (n != 1) throw GecError("catalog: class '" + std::string(to_string(cls)) + "' needs exactly one rule");
  }
  return catalog;
}

ErrorCatalog ErrorCatalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GecError("cannot open error catalog '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const ErrorCatalog& ErrorCatalog::builtin() {
  static const ErrorCatalog catalog = parse(detail::builtin_catalog_text());
  return catalog;
}

std::string_view ErrorCatalog::article_for(std::string_view next_word) const {
  const std::string lower = utf8::ascii_lower(next_word);
  if (lower.empty() || lower.front() < 'a' || lower.front() > 'z') return {};
  if (an_words_.count(lower)) return "an";
  if (a_words_.count(lower)) return "a";
  return is_vowel(lower.front()) ? "an" : "a";
}

}  // namespace gecscore::gec
