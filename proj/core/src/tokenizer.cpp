#include "wsi/tokenizer.hpp"

#include <unicode/brkiter.h>
#include <unicode/locid.h>
#include <unicode/unistr.h>

#include <memory>

#include "wsi/error.hpp"

namespace wsi {
namespace {

std::unique_ptr<icu::BreakIterator> make_word_iterator() {
  UErrorCode status = U_ZERO_ERROR;
  std::unique_ptr<icu::BreakIterator> it(
      icu::BreakIterator::createWordInstance(icu::Locale::getRoot(), status));
  if (U_FAILURE(status) || !it) {
    throw Error(std::string("ICU word break iterator unavailable: ") +
                u_errorName(status));
  }
  return it;
}

std::string to_folded_utf8(icu::UnicodeString s) {
  s.foldCase();
  std::string out;
  s.toUTF8String(out);
  return out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  if (text.empty()) return tokens;

  const icu::UnicodeString utext = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  // ICU caches rule data; cloning per thread avoids rebuilding it.
  thread_local std::unique_ptr<icu::BreakIterator> iterator =
      make_word_iterator();
  iterator->setText(utext);

  int32_t start = iterator->first();
  int32_t scanned_utf16 = 0;
  std::size_t scanned_scalars = 0;
  for (int32_t end = iterator->next(); end != icu::BreakIterator::DONE;
       start = end, end = iterator->next()) {
    if (iterator->getRuleStatus() < UBRK_WORD_NONE_LIMIT) continue;
    scanned_scalars += utext.countChar32(scanned_utf16, start - scanned_utf16);
    const std::size_t begin_scalar = scanned_scalars;
    const std::size_t end_scalar =
        begin_scalar + utext.countChar32(start, end - start);
    scanned_utf16 = end;
    scanned_scalars = end_scalar;
    tokens.push_back({to_folded_utf8(utext.tempSubStringBetween(start, end)),
                      begin_scalar, end_scalar});
  }
  return tokens;
}

std::string fold_case(std::string_view text) {
  return to_folded_utf8(icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size()))));
}

}  // namespace wsi
