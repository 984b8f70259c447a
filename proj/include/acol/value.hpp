#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

namespace acol {

using BigInt = boost::multiprecision::cpp_int;

/// A runtime value: an arbitrary-precision signed integer or a boolean.
///
/// Integers that fit a machine word are stored inline; anything wider is held
/// in a BigInt. The representation is canonical: a BigInt alternative never
/// holds a value that would fit the inline form, so equality is structural.
class Value {
 public:
  Value() = default;  // Int 0

  static Value integer(std::int64_t v) { return Value(Repr(std::in_place_index<0>, v)); }
  static Value integer(BigInt v);
  static Value boolean(bool b) { return Value(Repr(std::in_place_index<2>, b)); }

  // Parses an optionally signed decimal integer of any magnitude.
  static Value parse_integer(std::string_view text);

  bool is_int() const { return repr_.index() != 2; }
  bool is_bool() const { return repr_.index() == 2; }

  bool is_small() const { return repr_.index() == 0; }
  std::int64_t small() const { return std::get<0>(repr_); }
  const BigInt& big() const { return std::get<1>(repr_); }
  bool as_bool() const { return std::get<2>(repr_); }

  std::string str() const;

  friend bool operator==(const Value&, const Value&) = default;

 private:
  using Repr = std::variant<std::int64_t, BigInt, bool>;
  explicit Value(Repr r) : repr_(std::move(r)) {}

  Repr repr_{std::in_place_index<0>, std::int64_t{0}};
};

}  // namespace acol
