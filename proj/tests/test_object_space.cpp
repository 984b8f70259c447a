#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "acol/errors.hpp"
#include "acol/object_space.hpp"
#include "acol/progen.hpp"
#include "support/decimal_oracle.hpp"

using namespace acol;

namespace {

Value iv(std::int64_t v) { return Value::integer(v); }

Value big_pow2(unsigned exponent) {
  // Built through the value layer itself; checked against the decimal oracle
  // where it matters.
  Value v = iv(1);
  for (unsigned i = 0; i < exponent; ++i) v = space::arith(ArithOp::add, v, v);
  return v;
}

}  // namespace

TEST_CASE("arith basics") {
  CHECK(space::arith(ArithOp::add, iv(2), iv(3)) == iv(5));
  CHECK(space::arith(ArithOp::sub, iv(5), iv(3)) == iv(2));
  CHECK(space::arith(ArithOp::mul, iv(4), iv(6)) == iv(24));
}

TEST_CASE("mod is floored: result sign follows the divisor") {
  CHECK(space::arith(ArithOp::mod, iv(-7), iv(3)) == iv(2));
  CHECK(space::arith(ArithOp::mod, iv(7), iv(3)) == iv(1));
  CHECK(space::arith(ArithOp::mod, iv(7), iv(-3)) == iv(-2));
  CHECK(space::arith(ArithOp::mod, iv(-7), iv(-3)) == iv(-1));
  CHECK(space::arith(ArithOp::mod, iv(6), iv(3)) == iv(0));
  CHECK(space::arith(ArithOp::mod, iv(INT64_MIN), iv(-1)) == iv(0));
  CHECK_THROWS_AS(space::arith(ArithOp::mod, iv(1), iv(0)), DivisionByZero);
}

TEST_CASE("mul of 2^40 by 2^40 matches the decimal oracle") {
  Value a = big_pow2(40);
  Value b = big_pow2(40);
  Value product = space::arith(ArithOp::mul, a, b);
  CHECK(product.str() == oracle::dec_mul(oracle::dec_pow2(40), oracle::dec_pow2(40)));
  CHECK(product.str() == oracle::dec_pow2(80));
}

TEST_CASE("small-word overflow promotes to wide integers exactly") {
  Value max64 = iv(INT64_MAX);
  Value sum = space::arith(ArithOp::add, max64, iv(1));
  CHECK(sum.str() == oracle::dec_pow2(63));
  // ... and shrinking back down demotes to the canonical small form.
  Value back = space::arith(ArithOp::sub, sum, iv(1));
  CHECK(back == max64);
  CHECK(back.is_small());
}

TEST_CASE("comparisons") {
  CHECK(space::compare(CompareOp::gt, iv(5), iv(0)) == Value::boolean(true));
  CHECK(space::compare(CompareOp::eq, iv(0), iv(0)) == Value::boolean(true));
  CHECK(space::compare(CompareOp::le, iv(1), iv(1)) == Value::boolean(true));
  CHECK(space::compare(CompareOp::lt, iv(3), iv(-3)) == Value::boolean(false));

  Value big = big_pow2(100);
  Value bigger = space::arith(ArithOp::add, big, iv(1));
  CHECK(oracle::dec_cmp(oracle::dec_pow2(100), oracle::dec_add(oracle::dec_pow2(100), "1")) < 0);
  CHECK(space::compare(CompareOp::lt, big, bigger) == Value::boolean(true));
  CHECK(space::compare(CompareOp::lt, bigger, big) == Value::boolean(false));
  // mixed widths
  CHECK(space::compare(CompareOp::gt, big, iv(7)) == Value::boolean(true));
  CHECK(space::compare(CompareOp::lt, iv(-1), big) == Value::boolean(true));
}

TEST_CASE("type errors on boolean operands") {
  Value t = Value::boolean(true);
  CHECK_THROWS_AS(space::arith(ArithOp::add, t, iv(1)), TypeError);
  CHECK_THROWS_AS(space::compare(CompareOp::lt, iv(1), t), TypeError);
  CHECK_THROWS_AS(space::bool_not(iv(1)), TypeError);
  CHECK_THROWS_AS(space::truthy(iv(0)), TypeError);
}

TEST_CASE("bool_not and truthy") {
  CHECK(space::bool_not(Value::boolean(true)) == Value::boolean(false));
  CHECK(space::bool_not(Value::boolean(false)) == Value::boolean(true));
  CHECK(space::truthy(Value::boolean(true)));
  CHECK_FALSE(space::truthy(Value::boolean(false)));
}

TEST_CASE("floored-mod identity against machine division") {
  SplitMix64 rng(42);
  for (int i = 0; i < 2000; ++i) {
    auto draw = [&] {
      std::int64_t magnitude = static_cast<std::int64_t>(rng.below(1u << 30));
      return rng.below(2) == 0 ? magnitude : -magnitude;
    };
    std::int64_t a = draw();
    std::int64_t b = draw();
    if (b == 0) continue;
    Value r = space::arith(ArithOp::mod, iv(a), iv(b));
    REQUIRE(r.is_small());
    // a = floor(a/b)*b + r
    __int128 q = (static_cast<__int128>(a) - r.small()) / b;
    CHECK(static_cast<std::int64_t>(q * b + r.small()) == a);
    if (b > 0) {
      CHECK(r.small() >= 0);
      CHECK(r.small() < b);
    } else {
      CHECK(r.small() <= 0);
      CHECK(r.small() > b);
    }
  }
}

TEST_CASE("add/sub inverse and comparison trichotomy") {
  SplitMix64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t a = static_cast<std::int64_t>(rng.next());
    std::int64_t b = static_cast<std::int64_t>(rng.next());
    Value sum = space::arith(ArithOp::add, iv(a), iv(b));
    CHECK(space::arith(ArithOp::sub, sum, iv(b)) == iv(a));

    int holds = 0;
    for (CompareOp op : {CompareOp::lt, CompareOp::eq, CompareOp::gt}) {
      if (space::compare(op, iv(a), iv(b)).as_bool()) ++holds;
    }
    CHECK(holds == 1);
  }
}

TEST_CASE("env lookup and store") {
  Env env;
  CHECK_THROWS_AS(env.lookup("x"), UnboundVariable);
  env.store("val", iv(1));
  CHECK(env.lookup("val") == iv(1));
  env.store("val", iv(2));
  CHECK(env.lookup("val") == iv(2));
  CHECK(env.size() == 1);
  CHECK_THROWS_AS(env.store("x", Value::boolean(true)), TypeError);

  env.store("v", iv(7));
  CHECK(env.lookup("v") == iv(7));
}

TEST_CASE("env file parsing") {
  Env env = Env::parse("# input\nbase = 2\nexponent = 5\n\nbig = -123456789012345678901\n");
  CHECK(env.lookup("base") == iv(2));
  CHECK(env.lookup("exponent") == iv(5));
  CHECK(env.lookup("big").str() == "-123456789012345678901");
  CHECK(env.size() == 3);

  CHECK_THROWS_AS(Env::parse("base 2\n"), EnvFileError);
  CHECK_THROWS_AS(Env::parse("x = y\n"), EnvFileError);
  CHECK_THROWS_AS(Env::parse("1x = 2\n"), EnvFileError);

  // round trip through the text form
  Env again = Env::parse(env.to_text());
  CHECK(again == env);
}

TEST_CASE("slot env maps names to slots and carries extras through") {
  SymbolTable symbols;
  symbols.intern("val");
  symbols.intern("exponent");

  Env initial;
  initial.store("exponent", iv(5));
  initial.store("spare", iv(9));

  SlotEnv slots(symbols, initial);
  CHECK(slots.load(1) == iv(5));
  CHECK_THROWS_AS(slots.load(0), UnboundVariable);  // val is unbound
  slots.store(0, iv(32));
  CHECK_THROWS_AS(slots.store(0, Value::boolean(false)), TypeError);

  Env rendered = slots.render();
  CHECK(rendered.lookup("val") == iv(32));
  CHECK(rendered.lookup("exponent") == iv(5));
  CHECK(rendered.lookup("spare") == iv(9));
}

TEST_CASE("symbol table is a bijection") {
  SymbolTable symbols;
  CHECK(symbols.intern("a") == 0);
  CHECK(symbols.intern("b") == 1);
  CHECK(symbols.intern("a") == 0);
  CHECK(symbols.size() == 2);
  CHECK(symbols.name(1) == "b");
  CHECK(symbols.find("b") == 1u);
  CHECK_FALSE(symbols.find("c"));
  CHECK_THROWS_AS(symbols.name(2), Error);
}

TEST_CASE("virtual boundary gives the same results as direct calls") {
  const ObjectSpaceIface& iface = standard_object_space();
  CHECK(iface.arith(ArithOp::add, iv(2), iv(3)) == space::arith(ArithOp::add, iv(2), iv(3)));
  CHECK(iface.compare(CompareOp::lt, iv(2), iv(3)) ==
        space::compare(CompareOp::lt, iv(2), iv(3)));
  CHECK(iface.bool_not(Value::boolean(true)) == Value::boolean(false));
  CHECK(iface.make_int(41) == iv(41));

  Env env;
  iface.store(env, "x", iv(1));
  CHECK(iface.lookup(env, "x") == iv(1));
}

TEST_CASE("value parsing and printing") {
  CHECK(Value::parse_integer("0") == iv(0));
  CHECK(Value::parse_integer("-42") == iv(-42));
  CHECK(Value::parse_integer("1208925819614629174706176").str() ==
        "1208925819614629174706176");
  CHECK_THROWS_AS(Value::parse_integer(""), Error);
  CHECK_THROWS_AS(Value::parse_integer("12a"), Error);
  CHECK(iv(0).str() == "0");
  CHECK(Value::boolean(true).str() == "true");
}
