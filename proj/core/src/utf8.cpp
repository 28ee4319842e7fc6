#include "utf8.hpp"

#include <unicode/utf8.h>

#include <cstdint>

namespace wsi::utf8 {

std::optional<std::size_t> length(std::string_view text) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto n = static_cast<std::int32_t>(text.size());
  std::int32_t i = 0;
  std::size_t count = 0;
  while (i < n) {
    UChar32 c;
    U8_NEXT(bytes, i, n, c);
    if (c < 0) return std::nullopt;
    ++count;
  }
  return count;
}

std::vector<std::size_t> scalar_byte_offsets(std::string_view text) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto n = static_cast<std::int32_t>(text.size());
  std::vector<std::size_t> offsets;
  std::int32_t i = 0;
  while (i < n) {
    offsets.push_back(static_cast<std::size_t>(i));
    UChar32 c;
    U8_NEXT(bytes, i, n, c);
  }
  offsets.push_back(text.size());
  return offsets;
}

}  // namespace wsi::utf8
