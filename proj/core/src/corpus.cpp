#include "gecscore/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <unordered_set>

#include <json.hpp>

#include "gecscore/errors.hpp"
#include "gecscore/utf8.hpp"

namespace gecscore {

using nlohmann::json;

std::string_view to_string(Label label) noexcept {
  switch (label) {
    case Label::human: return "human";
    case Label::llm: return "llm";
    case Label::unknown: return "unknown";
  }
  return "unknown";
}

std::size_t count_words(std::string_view text) {
  const std::u32string chars = utf8::decode(text);
  std::size_t words = 0;
  bool in_word = false;
  for (char32_t c : chars) {
    const bool space = utf8::is_space(c);
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return words;
}

TextSample TextSample::make(std::string id, std::string text, Label label) {
  TextSample s;
  s.id = std::move(id);
  s.text = std::move(text);
  s.label = label;
  s.word_count = count_words(s.text);
  return s;
}

}  // namespace gecscore

namespace gecscore::corpus {

namespace {

std::optional<std::string> optional_string(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw CorpusError(std::string("field '") + key + "' must be a string or null", line);
  return it->get<std::string>();
}

Label parse_label(const json& obj, std::size_t line) {
  auto it = obj.find("label");
  if (it == obj.end() || it->is_null()) return Label::unknown;
  if (!it->is_string()) throw CorpusError("field 'label' must be \"human\", \"llm\" or null", line);
  const auto value = it->get<std::string>();
  if (value == "human") return Label::human;
  if (value == "llm") return Label::llm;
  throw CorpusError("unknown label '" + value + "'", line);
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return c == ' ' || (c >= '\t' && c <= '\r'); });
}

const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> kAbbrev{
      "mr.", "mrs.", "ms.", "dr.", "prof.", "sr.", "jr.", "st.", "vs.", "etc.", "e.g.", "i.e.",
  };
  return kAbbrev;
}

std::string_view strip_closers(std::string_view tok) {
  while (!tok.empty() && (tok.back() == '"' || tok.back() == '\'' || tok.back() == ')' || tok.back() == ']'))
    tok.remove_suffix(1);
  return tok;
}

bool starts_upper(std::string_view tok) {
  while (!tok.empty() && (tok.front() == '"' || tok.front() == '\'' || tok.front() == '(' || tok.front() == '['))
    tok.remove_prefix(1);
  return !tok.empty() && tok.front() >= 'A' && tok.front() <= 'Z';
}

std::vector<std::string> whitespace_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  const std::u32string chars = utf8::decode(text);
  std::size_t i = 0;
  while (i < chars.size()) {
    while (i < chars.size() && utf8::is_space(chars[i])) ++i;
    const std::size_t start = i;
    while (i < chars.size() && !utf8::is_space(chars[i])) ++i;
    if (i > start) tokens.push_back(utf8::encode(std::u32string_view(chars).substr(start, i - start)));
  }
  return tokens;
}

}  // namespace

bool is_abbreviation(std::string_view token) {
  while (!token.empty() && (token.front() == '"' || token.front() == '(' || token.front() == '\''))
    token.remove_prefix(1);
  return abbreviations().count(utf8::ascii_lower(token)) > 0;
}

std::vector<TextSample> read_corpus(std::istream& in, bool require_label) {
  std::vector<TextSample> samples;
  std::map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw CorpusError(std::string("malformed JSON: ") + e.what(), line_no);
    }
    if (!obj.is_object()) throw CorpusError("expected a JSON object", line_no);

    auto id = optional_string(obj, "id", line_no);
    if (!id || id->empty()) throw CorpusError("missing or empty id", line_no);
    auto text = optional_string(obj, "text", line_no);
    if (!text || blank(*text)) throw CorpusError("empty text", line_no);

    TextSample s = TextSample::make(*id, std::move(*text), parse_label(obj, line_no));
    if (require_label && s.label == Label::unknown) throw CorpusError("missing label for id '" + s.id + "'", line_no);
    s.source_model = optional_string(obj, "model", line_no);
    s.domain = optional_string(obj, "domain", line_no);

    auto [it, inserted] = seen.emplace(s.id, line_no);
    if (!inserted) {
      throw CorpusError("duplicate id '" + s.id + "' (first seen on line " + std::to_string(it->second) + ")",
                        line_no);
    }
    samples.push_back(std::move(s));
  }
  return samples;
}

std::vector<TextSample> load_corpus(const std::filesystem::path& path, bool require_label) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open corpus file '" + path.string() + "'", 0);
  return read_corpus(in, require_label);
}

void write_corpus(std::ostream& out, const std::vector<TextSample>& samples) {
  for (const auto& s : samples) {
    nlohmann::ordered_json obj;
    obj["id"] = s.id;
    obj["text"] = s.text;
    obj["label"] = s.label == Label::unknown ? nlohmann::ordered_json(nullptr)
                                             : nlohmann::ordered_json(std::string(to_string(s.label)));
    obj["model"] = s.source_model ? nlohmann::ordered_json(*s.source_model) : nlohmann::ordered_json(nullptr);
    obj["domain"] = s.domain ? nlohmann::ordered_json(*s.domain) : nlohmann::ordered_json(nullptr);
    out << obj.dump() << '\n';
  }
}

void write_corpus(const std::filesystem::path& path, const std::vector<TextSample>& samples) {
  std::ofstream out(path);
  if (!out) throw CorpusError("cannot write corpus file '" + path.string() + "'", 0);
  write_corpus(out, samples);
}

std::vector<std::string> segment_sentences(std::string_view text) {
  const auto tokens = whitespace_tokens(text);
  std::vector<std::string> sentences;
  std::string current;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!current.empty()) current.push_back(' ');
    current += tokens[i];
    const auto core = strip_closers(tokens[i]);
    const bool terminal = !core.empty() && (core.back() == '.' || core.back() == '!' || core.back() == '?');
    if (!terminal || is_abbreviation(core)) continue;
    if (i + 1 == tokens.size() || starts_upper(tokens[i + 1])) {
      sentences.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) sentences.push_back(std::move(current));
  return sentences;
}

std::vector<std::string> sliding_windows(const std::vector<std::string>& sentences, std::size_t n) {
  if (n == 0) throw InvalidArgument("window size must be >= 1");
  std::vector<std::string> windows;
  if (sentences.size() < n) return windows;
  for (std::size_t start = 0; start + n <= sentences.size(); ++start) {
    std::string w = sentences[start];
    for (std::size_t k = 1; k < n; ++k) {
      w.push_back(' ');
      w += sentences[start + k];
    }
    windows.push_back(std::move(w));
  }
  return windows;
}

std::vector<LengthBin> bin_by_length(const std::vector<TextSample>& samples, std::size_t width) {
  if (width == 0) throw InvalidArgument("bin width must be >= 1");
  std::map<std::size_t, LengthBin> bins;
  for (const auto& s : samples) {
    const std::size_t lower = (s.word_count / width) * width;
    auto& bin = bins[lower];
    bin.lower = lower;
    bin.upper = lower + width;
    bin.samples.push_back(s);
  }
  std::vector<LengthBin> out;
  out.reserve(bins.size());
  for (auto& [lower, bin] : bins) out.push_back(std::move(bin));
  return out;
}

}  // namespace gecscore::corpus
