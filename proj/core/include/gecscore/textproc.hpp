#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gecscore::textproc {

struct TokenSeq {
  std::vector<std::string> tokens;
  std::size_t source_len_chars = 0;

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }
};

// Multiset of n-grams. Keys are an unambiguous byte encoding of the n-gram
// (length-prefixed tokens for word n-grams, UTF-8 for character n-grams), so
// two keys compare equal iff the n-grams are equal.
struct NgramCounts {
  std::size_t n = 0;
  std::unordered_map<std::string, std::size_t> counts;

  std::size_t total() const noexcept;
  std::size_t count(const std::string& key) const noexcept;
};

// Splits on Unicode whitespace and peels leading/trailing ASCII punctuation
// into single-character tokens.
TokenSeq tokenize_words(std::string_view text, bool lowercase = true);

std::string join(const TokenSeq& seq);

NgramCounts word_ngrams(const TokenSeq& seq, std::size_t n);
NgramCounts char_ngrams(std::string_view text, std::size_t n, bool strip_ws);

// Encodes a word n-gram the same way word_ngrams keys it.
std::string word_ngram_key(const std::vector<std::string>& tokens);

// Sum over keys of min(a[k], b[k]).
std::size_t clipped_overlap(const NgramCounts& a, const NgramCounts& b);

// Sorted packed character n-grams (n <= 6, 21 bits per code point). The fast
// path chrF uses; equal multisets to char_ngrams for the same input.
using PackedGram = std::pair<std::uint64_t, std::uint64_t>;
std::vector<PackedGram> packed_char_ngrams(std::u32string_view chars, std::size_t n);
std::size_t sorted_overlap(const std::vector<PackedGram>& a, const std::vector<PackedGram>& b);

}  // namespace gecscore::textproc
