#pragma once

#include <string>
#include <string_view>

namespace gecscore::utf8 {

// Decodes UTF-8 into Unicode scalar values. Malformed sequences decode to
// U+FFFD one byte at a time, so decoding never fails.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

bool is_space(char32_t cp) noexcept;

// ASCII-only case mapping; other code points pass through unchanged.
std::string ascii_lower(std::string_view text);
std::u32string ascii_lower(std::u32string_view text);

std::size_t length(std::string_view text);

}  // namespace gecscore::utf8
