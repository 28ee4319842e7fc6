#ifndef WSI_SRC_UTF8_HPP_
#define WSI_SRC_UTF8_HPP_

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace wsi::utf8 {

// Number of Unicode scalar values, or nullopt if `text` is not valid UTF-8.
std::optional<std::size_t> length(std::string_view text);

// Byte offset of every scalar boundary: element i is where scalar i starts,
// the last element is text.size(). Invalid sequences count as one scalar.
std::vector<std::size_t> scalar_byte_offsets(std::string_view text);

}  // namespace wsi::utf8

#endif  // WSI_SRC_UTF8_HPP_
