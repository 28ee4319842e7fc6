#ifndef WSI_TOKENIZER_HPP_
#define WSI_TOKENIZER_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace wsi {

struct Token {
  std::string text;   // case-folded
  std::size_t begin;  // Unicode scalar offsets into the source text
  std::size_t end;
};

// Unicode word-boundary segmentation (UAX #29 via ICU). Only segments that
// contain letters, digits or ideographs are kept; punctuation and spaces are
// dropped.
std::vector<Token> tokenize(std::string_view text);

// Full Unicode case folding of a UTF-8 string.
std::string fold_case(std::string_view text);

}  // namespace wsi

#endif  // WSI_TOKENIZER_HPP_
