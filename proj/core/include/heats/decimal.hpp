#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace heats::decimal {

/// Parses a plain decimal literal ("0,80" is not accepted; "0.80", "-21",
/// "1e3" are). Uses a correctly rounded conversion, so a table value and an
/// identical user-supplied literal always map to the same double.
std::optional<double> parse(std::string_view s) noexcept;

/// Strict integer parse; rejects trailing garbage.
std::optional<long> parse_integer(std::string_view s) noexcept;

/// Rounds `value` half-to-even at `places` fractional digits and returns a
/// fixed-point string with exactly `places` digits. Rounding is done on the
/// shortest round-trip decimal form of the double, so 0.00005 rounds to
/// "0.0000" and 0.00015 to "0.0002" the way a person reading the number
/// would expect.
std::string round_fixed(double value, int places);

/// Like round_fixed but drops trailing fractional zeros (and the dot).
std::string round_trimmed(double value, int places);

/// round_fixed converted back to double.
double round_value(double value, int places);

}  // namespace heats::decimal
