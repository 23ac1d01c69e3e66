#ifndef NETTAG_TEXT_HPP
#define NETTAG_TEXT_HPP

#include <string>
#include <vector>

namespace nettag {

// Decodes a UTF-8 string into code points. Invalid bytes are kept as
// single code points in the range [0x80, 0xFF] so that lookup stays total
// on arbitrary byte strings.
std::vector<char32_t> utf8_decode(const std::string& s);

std::string utf8_encode(char32_t cp);
std::string utf8_encode(const std::vector<char32_t>& cps);

// Unicode-aware lowercasing of a whole word.
std::string to_lower(const std::string& word);

// Formats a double with the given number of significant digits (%.Ng).
std::string format_real(double value, int significant_digits);

}  // namespace nettag

#endif
