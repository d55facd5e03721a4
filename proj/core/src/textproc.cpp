#include "gecscore/textproc.hpp"

#include <algorithm>

#include "gecscore/errors.hpp"
#include "gecscore/utf8.hpp"

namespace gecscore::textproc {

namespace {

bool is_ascii_punct(char32_t c) {
  return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
         (c >= 0x7B && c <= 0x7E);
}

void require_order(std::size_t n) {
  if (n == 0) throw InvalidArgument("n-gram order must be >= 1");
}

void push_chunk(std::u32string_view chunk, bool lowercase, std::vector<std::string>& out) {
  std::size_t begin = 0;
  std::size_t end = chunk.size();
  while (begin < end && is_ascii_punct(chunk[begin])) {
    out.push_back(std::string(1, static_cast<char>(chunk[begin])));
    ++begin;
  }
  std::size_t core_end = end;
  while (core_end > begin && is_ascii_punct(chunk[core_end - 1])) --core_end;
  if (core_end > begin) {
    auto core = utf8::encode(chunk.substr(begin, core_end - begin));
    out.push_back(lowercase ? utf8::ascii_lower(core) : std::move(core));
  }
  for (std::size_t i = core_end; i < end; ++i) out.push_back(std::string(1, static_cast<char>(chunk[i])));
}

}  // namespace

std::size_t NgramCounts::total() const noexcept {
  std::size_t sum = 0;
  for (const auto& [key, c] : counts) sum += c;
  return sum;
}

std::size_t NgramCounts::count(const std::string& key) const noexcept {
  auto it = counts.find(key);
  return it == counts.end() ? 0 : it->second;
}

TokenSeq tokenize_words(std::string_view text, bool lowercase) {
  TokenSeq seq;
  const std::u32string chars = utf8::decode(text);
  seq.source_len_chars = chars.size();
  std::size_t i = 0;
  while (i < chars.size()) {
    while (i < chars.size() && utf8::is_space(chars[i])) ++i;
    std::size_t start = i;
    while (i < chars.size() && !utf8::is_space(chars[i])) ++i;
    if (i > start) push_chunk(std::u32string_view(chars).substr(start, i - start), lowercase, seq.tokens);
  }
  return seq;
}

std::string join(const TokenSeq& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += seq.tokens[i];
  }
  return out;
}

std::string word_ngram_key(const std::vector<std::string>& tokens) {
  std::string key;
  for (const auto& t : tokens) {
    const auto len = static_cast<std::uint32_t>(t.size());
    for (int b = 0; b < 4; ++b) key.push_back(static_cast<char>((len >> (8 * b)) & 0xFF));
    key += t;
  }
  return key;
}

NgramCounts word_ngrams(const TokenSeq& seq, std::size_t n) {
  require_order(n);
  NgramCounts out{n, {}};
  if (seq.tokens.size() < n) return out;
  std::vector<std::string> window;
  for (std::size_t i = 0; i + n <= seq.tokens.size(); ++i) {
    window.assign(seq.tokens.begin() + static_cast<std::ptrdiff_t>(i),
                  seq.tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
    ++out.counts[word_ngram_key(window)];
  }
  return out;
}

NgramCounts char_ngrams(std::string_view text, std::size_t n, bool strip_ws) {
  require_order(n);
  std::u32string chars = utf8::decode(text);
  if (strip_ws) std::erase_if(chars, [](char32_t c) { return utf8::is_space(c); });
  NgramCounts out{n, {}};
  if (chars.size() < n) return out;
  const std::u32string_view view(chars);
  for (std::size_t i = 0; i + n <= chars.size(); ++i) ++out.counts[utf8::encode(view.substr(i, n))];
  return out;
}

std::size_t clipped_overlap(const NgramCounts& a, const NgramCounts& b) {
  const auto& small = a.counts.size() <= b.counts.size() ? a : b;
  const auto& large = &small == &a ? b : a;
  std::size_t sum = 0;
  for (const auto& [key, c] : small.counts) sum += std::min(c, large.count(key));
  return sum;
}

std::vector<PackedGram> packed_char_ngrams(std::u32string_view chars, std::size_t n) {
  require_order(n);
  if (n > 6) throw InvalidArgument("packed character n-grams support n <= 6");
  std::vector<PackedGram> out;
  if (chars.size() < n) return out;
  out.reserve(chars.size() - n + 1);
  for (std::size_t i = 0; i + n <= chars.size(); ++i) {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t cp = static_cast<std::uint64_t>(chars[i + k]) & 0x1FFFFF;
      if (k < 3) {
        hi = (hi << 21) | cp;
      } else {
        lo = (lo << 21) | cp;
      }
    }
    out.emplace_back(hi, lo);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t sorted_overlap(const std::vector<PackedGram>& a, const std::vector<PackedGram>& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t matches = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++matches;
      ++i;
      ++j;
    }
  }
  return matches;
}

}  // namespace gecscore::textproc
