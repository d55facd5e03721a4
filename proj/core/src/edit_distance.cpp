#include <string>
#include <unordered_map>

#include "gecscore/similarity.hpp"
#include "gecscore/utf8.hpp"
#include "levenshtein.hpp"

namespace gecscore::similarity {

std::size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  return detail::levenshtein<char32_t>(std::span<const char32_t>(a.data(), a.size()),
                                       std::span<const char32_t>(b.data(), b.size()));
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  return edit_distance(std::u32string_view(utf8::decode(a)), std::u32string_view(utf8::decode(b)));
}

std::size_t word_edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::unordered_map<std::string, int> ids;
  auto encode = [&](const std::vector<std::string>& words) {
    std::vector<int> out;
    out.reserve(words.size());
    for (const auto& w : words) out.push_back(ids.emplace(w, static_cast<int>(ids.size())).first->second);
    return out;
  };
  const auto ia = encode(a);
  const auto ib = encode(b);
  return detail::levenshtein<int>(ia, ib);
}

}  // namespace gecscore::similarity
