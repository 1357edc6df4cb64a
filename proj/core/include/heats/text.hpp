#pragma once

#include <string>
#include <string_view>

namespace heats::text {

/// Strips ASCII whitespace from both ends.
std::string_view trim(std::string_view s) noexcept;

/// Simple case folding of UTF-8 text. Handles ASCII, Latin-1 and the
/// Latin Extended-A/B letters used by Romanian place names (Ș, Ț, Ă, Â, Î).
/// Diacritics are kept; "Brașov" folds to "brașov", never to "brasov".
/// Invalid UTF-8 sequences are copied through unchanged.
std::string fold_case(std::string_view s);

/// Matching key used by every named-table lookup: trimmed then folded.
inline std::string match_key(std::string_view s) { return fold_case(trim(s)); }

}  // namespace heats::text
