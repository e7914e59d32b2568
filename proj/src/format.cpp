#include "ahp/format.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace ahp {

std::string format_roundtrip(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
  return std::string(buf, end);
}

std::string format_half_up(double value, int decimals) {
  if (!std::isfinite(value)) return format_roundtrip(value);
  if (decimals < 0) decimals = 0;
  char buf[512];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
  std::string text(buf, end);

  const bool negative = !text.empty() && text.front() == '-';
  if (negative) text.erase(0, 1);
  const auto dot = text.find('.');
  std::string int_part = dot == std::string::npos ? text : text.substr(0, dot);
  std::string frac = dot == std::string::npos ? std::string() : text.substr(dot + 1);
  if (frac.size() <= std::size_t(decimals)) {
    frac.append(std::size_t(decimals) - frac.size(), '0');
  } else {
    const bool round_up = frac[std::size_t(decimals)] >= '5';
    frac.resize(std::size_t(decimals));
    if (round_up) {
      std::string digits = int_part + frac;
      int i = int(digits.size()) - 1;
      for (; i >= 0; --i) {
        if (digits[std::size_t(i)] == '9') {
          digits[std::size_t(i)] = '0';
        } else {
          ++digits[std::size_t(i)];
          break;
        }
      }
      if (i < 0) digits.insert(digits.begin(), '1');
      int_part = digits.substr(0, digits.size() - frac.size());
      frac = digits.substr(digits.size() - frac.size());
    }
  }
  std::string out = int_part;
  if (decimals > 0) out += "." + frac;
  if (negative && out.find_first_not_of("0.") != std::string::npos) out.insert(0, "-");
  return out;
}

double round_half_up(double value, int decimals) {
  return std::stod(format_half_up(value, decimals));
}

}  // namespace ahp
