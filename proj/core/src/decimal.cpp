#include "heats/decimal.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace heats::decimal {

std::optional<double> parse(std::string_view s) noexcept {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<long> parse_integer(std::string_view s) noexcept {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

namespace {

// value == (negative ? -1 : 1) * digits * 10^exponent, digits without
// leading zeros (or "0").
struct DecimalDigits {
  bool negative = false;
  std::string digits;
  int exponent = 0;
};

DecimalDigits shortest_digits(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
  std::string_view text(buf, static_cast<std::size_t>(end - buf));

  DecimalDigits d;
  if (!text.empty() && text.front() == '-') {
    d.negative = true;
    text.remove_prefix(1);
  }
  int exp_part = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exp_part);
    text = text.substr(0, e);
  }
  int fraction_digits = 0;
  bool after_dot = false;
  for (char c : text) {
    if (c == '.') {
      after_dot = true;
      continue;
    }
    d.digits.push_back(c);
    if (after_dot) ++fraction_digits;
  }
  d.exponent = exp_part - fraction_digits;
  auto first = d.digits.find_first_not_of('0');
  d.digits = first == std::string::npos ? "0" : d.digits.substr(first);
  return d;
}

// Adds one unit in the last place of a decimal digit string.
void increment(std::string& digits) {
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (*it != '9') {
      ++*it;
      return;
    }
    *it = '0';
  }
  digits.insert(digits.begin(), '1');
}

}  // namespace

std::string round_fixed(double value, int places) {
  if (places < 0) throw std::invalid_argument("negative decimal places");
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");

  DecimalDigits d = shortest_digits(value);
  std::string scaled;  // value * 10^places as an integer digit string
  if (d.exponent >= -places) {
    scaled = d.digits + std::string(static_cast<std::size_t>(d.exponent + places), '0');
  } else {
    auto drop = static_cast<std::size_t>(-places - d.exponent);
    std::string kept;
    std::string dropped;
    if (drop >= d.digits.size()) {
      kept = "0";
      dropped = std::string(drop - d.digits.size(), '0') + d.digits;
    } else {
      kept = d.digits.substr(0, d.digits.size() - drop);
      dropped = d.digits.substr(d.digits.size() - drop);
    }
    bool round_up = false;
    if (dropped.front() > '5') {
      round_up = true;
    } else if (dropped.front() == '5') {
      bool rest_zero = dropped.find_first_not_of('0', 1) == std::string::npos;
      round_up = !rest_zero || ((kept.back() - '0') % 2 == 1);
    }
    if (round_up) increment(kept);
    scaled = kept;
  }

  if (scaled.size() <= static_cast<std::size_t>(places)) {
    scaled.insert(0, static_cast<std::size_t>(places) + 1 - scaled.size(), '0');
  }
  std::string out;
  bool is_zero = scaled.find_first_not_of('0') == std::string::npos;
  if (d.negative && !is_zero) out.push_back('-');
  out.append(scaled, 0, scaled.size() - static_cast<std::size_t>(places));
  if (places > 0) {
    out.push_back('.');
    out.append(scaled, scaled.size() - static_cast<std::size_t>(places));
  }
  return out;
}

std::string round_trimmed(double value, int places) {
  std::string s = round_fixed(value, places);
  if (s.find('.') == std::string::npos) return s;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

double round_value(double value, int places) {
  return *parse(round_fixed(value, places));
}

}  // namespace heats::decimal
