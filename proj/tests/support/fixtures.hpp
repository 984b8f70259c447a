#pragma once

// Shared program texts and oracles for the test suites.

#include <cstdint>
#include <string_view>

#include "acol/object_space.hpp"
#include "acol/value.hpp"

namespace fixtures {

// Raises `base` to `exponent`, leaving the result in `val`.
inline constexpr std::string_view kPowerSource = R"(# input: base, exponent
val = 1;
while exponent > 0 {
    val = val * base;
    exponent = exponent - 1;
}
)";

inline constexpr std::string_view kPrimeSource = R"(while (start < V) {
    if (V mod start == 0) {
        is_prime := 0;
    } else {
        is_prime := is_prime;
    }
    start := start + 1;
}
)";

inline constexpr std::string_view kFibSource = R"(i := 1;
while i < n {
    b := b + a;
    a := b - a;
    i := i + 1;
}
)";

inline constexpr std::string_view kFibModSource = R"(i := 1;
while i < n {
    b := b + a mod 1000000;
    a := b - a mod 1000000;
    i := i + 1;
}
)";

inline acol::Env power_env(std::int64_t base, std::int64_t exponent) {
  acol::Env env;
  env.store("base", acol::Value::integer(base));
  env.store("exponent", acol::Value::integer(exponent));
  return env;
}

inline acol::Env prime_env(std::int64_t candidate) {
  acol::Env env;
  env.store("is_prime", acol::Value::integer(1));
  env.store("start", acol::Value::integer(2));
  env.store("V", acol::Value::integer(candidate));
  return env;
}

inline acol::Env fib_env(std::int64_t n) {
  acol::Env env;
  env.store("a", acol::Value::integer(0));
  env.store("b", acol::Value::integer(1));
  env.store("n", acol::Value::integer(n));
  return env;
}

// Trial-division primality, independent of everything under test.
inline bool trial_division_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Iterative big-integer Fibonacci: fib(0) = 0, fib(1) = 1.
inline acol::BigInt fib_oracle(std::uint64_t n) {
  acol::BigInt a = 0;
  acol::BigInt b = 1;
  if (n == 0) return a;
  for (std::uint64_t i = 1; i < n; ++i) {
    acol::BigInt next = a + b;
    a = b;
    b = next;
  }
  return b;
}

// fib(n) mod m with non-negative residues, machine-word arithmetic only.
inline std::int64_t fib_mod_oracle(std::uint64_t n, std::int64_t m) {
  std::int64_t a = 0;
  std::int64_t b = 1;
  if (n == 0) return 0;
  for (std::uint64_t i = 1; i < n; ++i) {
    std::int64_t next = (a + b) % m;
    a = b % m;
    b = next;
  }
  return b;
}

}  // namespace fixtures
