#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gecscore {

enum class Label { human, llm, unknown };

std::string_view to_string(Label label) noexcept;

struct TextSample {
  std::string id;
  std::string text;
  Label label = Label::unknown;
  std::optional<std::string> source_model;
  std::optional<std::string> domain;
  std::size_t word_count = 0;

  // Builds a sample with word_count derived from text.
  static TextSample make(std::string id, std::string text, Label label = Label::unknown);
};

// Number of whitespace-delimited tokens.
std::size_t count_words(std::string_view text);

}  // namespace gecscore

namespace gecscore::corpus {

struct LengthBin {
  std::size_t lower = 0;  // inclusive
  std::size_t upper = 0;  // exclusive
  std::vector<TextSample> samples;
};

// Reads a JSONL corpus: one object per line with keys id, text, label, model,
// domain. Blank lines are skipped; unknown keys are ignored.
std::vector<TextSample> load_corpus(const std::filesystem::path& path, bool require_label);
std::vector<TextSample> read_corpus(std::istream& in, bool require_label);

void write_corpus(std::ostream& out, const std::vector<TextSample>& samples);
void write_corpus(const std::filesystem::path& path, const std::vector<TextSample>& samples);

// True for the fixed abbreviation list (Mr., Mrs., Dr., e.g., i.e., ...),
// ignoring case and a leading quote or parenthesis.
bool is_abbreviation(std::string_view token);

// Rule-based splitter: a sentence ends at a token ending in '.', '!' or '?'
// that is not a known abbreviation and is followed by an uppercase-initial
// token or the end of text. Segments are whitespace-normalized.
std::vector<std::string> segment_sentences(std::string_view text);

// All contiguous runs of exactly n sentences, joined with single spaces.
std::vector<std::string> sliding_windows(const std::vector<std::string>& sentences, std::size_t n);

// Lower-inclusive bins of the given width; empty bins are omitted.
std::vector<LengthBin> bin_by_length(const std::vector<TextSample>& samples, std::size_t width);

}  // namespace gecscore::corpus
