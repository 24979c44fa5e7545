// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cotguard Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace cotguard::text {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

/// Word constituents for boundary-aware literal matching. Bytes >= 0x80
/// (continuation/lead bytes of multi-byte characters) count as word bytes so
/// a literal never matches inside a multi-byte sequence.
inline bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c >= 0x80;
}

inline char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = ascii_lower(c);
  return out;
}

inline std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

/// Trimmed extent of s[begin, end): returns offsets into the same buffer.
inline std::pair<size_t, size_t> trimmed_range(std::string_view s, size_t begin, size_t end) {
  while (begin < end && is_space(s[begin])) ++begin;
  while (end > begin && is_space(s[end - 1])) --end;
  return {begin, end};
}

/// Expected length of a UTF-8 sequence from its lead byte; 0 if the byte
/// cannot start a sequence.
inline int utf8_sequence_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0) return (lead >= 0xC2) ? 2 : 0;  // reject overlong C0/C1
  if ((lead & 0xF0) == 0xE0) return 3;
  if ((lead & 0xF8) == 0xF0) return (lead <= 0xF4) ? 4 : 0;
  return 0;
}

/// Length of the longest prefix of `s` that ends on a code-point boundary.
/// Trailing bytes of an incomplete final sequence are excluded.
inline size_t utf8_complete_prefix(std::string_view s) {
  if (s.empty()) return 0;
  size_t i = s.size();
  // Walk back over at most 3 continuation bytes to find the lead byte.
  size_t back = 0;
  while (back < 3 && i > 0 && (static_cast<unsigned char>(s[i - 1]) & 0xC0) == 0x80) {
    --i;
    ++back;
  }
  if (i == 0) return s.size();  // pure continuation bytes: invalid, nothing to hold back
  unsigned char lead = static_cast<unsigned char>(s[i - 1]);
  int need = utf8_sequence_length(lead);
  if (need == 0) return s.size();                   // invalid lead: let validation reject it
  size_t have = back + 1;                           // lead plus continuations seen
  if (have < static_cast<size_t>(need)) return i - 1;  // sequence still incomplete
  return s.size();
}

/// Structural UTF-8 validation (sequence shapes, surrogates, range).
inline bool utf8_valid(std::string_view s) {
  size_t i = 0, n = s.size();
  while (i < n) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    int len = utf8_sequence_length(b0);
    if (len == 0 || i + static_cast<size_t>(len) > n) return false;
    for (int k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
    }
    if (len == 3) {
      unsigned char b1 = static_cast<unsigned char>(s[i + 1]);
      if (b0 == 0xE0 && b1 < 0xA0) return false;  // overlong
      if (b0 == 0xED && b1 >= 0xA0) return false;  // surrogate range
    } else if (len == 4) {
      unsigned char b1 = static_cast<unsigned char>(s[i + 1]);
      if (b0 == 0xF0 && b1 < 0x90) return false;  // overlong
      if (b0 == 0xF4 && b1 >= 0x90) return false;  // above U+10FFFF
    }
    i += static_cast<size_t>(len);
  }
  return true;
}

/// Code-point count; counts invalid bytes as one point each so the result
/// is total on arbitrary input.
inline size_t codepoint_count(std::string_view s) {
  size_t count = 0, i = 0;
  while (i < s.size()) {
    int len = utf8_sequence_length(static_cast<unsigned char>(s[i]));
    i += (len > 0) ? static_cast<size_t>(len) : 1;
    ++count;
  }
  return count;
}

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

/// Short stable content digest used in audit records and wire payloads.
inline std::string digest_hex(std::string_view s) {
  static const char* hex = "0123456789abcdef";
  uint64_t h = fnv1a64(s);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = hex[h & 0xF];
    h >>= 4;
  }
  return out;
}

/// Case-insensitive substring search on ASCII letters.
inline bool contains_ci(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return true;
  if (needle.size() > haystack.size()) return false;
  for (size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    size_t j = 0;
    while (j < needle.size() && ascii_lower(haystack[i + j]) == ascii_lower(needle[j])) ++j;
    if (j == needle.size()) return true;
  }
  return false;
}

}  // namespace cotguard::text
