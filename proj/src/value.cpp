#include "acol/value.hpp"

#include <charconv>
#include <limits>

#include "acol/errors.hpp"

namespace acol {

Value Value::integer(BigInt v) {
  // Canonical form: demote to the inline word whenever it fits.
  static const BigInt kMin = std::numeric_limits<std::int64_t>::min();
  static const BigInt kMax = std::numeric_limits<std::int64_t>::max();
  if (v >= kMin && v <= kMax) {
    return integer(v.convert_to<std::int64_t>());
  }
  return Value(Repr(std::in_place_index<1>, std::move(v)));
}

Value Value::parse_integer(std::string_view text) {
  std::string_view digits = text;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (digits.empty()) {
    throw Error("empty integer literal");
  }
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw Error("bad integer literal '" + std::string(text) + "'");
    }
  }
  std::int64_t small = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), small);
  if (ec == std::errc() && ptr == text.data() + text.size()) {
    return integer(small);
  }
  BigInt wide{std::string(digits)};
  if (negative) wide = -wide;
  return integer(std::move(wide));
}

std::string Value::str() const {
  switch (repr_.index()) {
    case 0: return std::to_string(std::get<0>(repr_));
    case 1: return std::get<1>(repr_).str();
    default: return std::get<2>(repr_) ? "true" : "false";
  }
}

}  // namespace acol
