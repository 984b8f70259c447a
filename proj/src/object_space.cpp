#include "acol/object_space.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>

#include "acol/errors.hpp"

namespace acol {

std::string_view to_string(ArithOp op) {
  switch (op) {
    case ArithOp::add: return "add";
    case ArithOp::sub: return "sub";
    case ArithOp::mul: return "mul";
    case ArithOp::mod: return "mod";
  }
  return "?";
}

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::lt: return "lt";
    case CompareOp::le: return "le";
    case CompareOp::gt: return "gt";
    case CompareOp::ge: return "ge";
    case CompareOp::eq: return "eq";
  }
  return "?";
}

std::string_view to_string(Boundary b) {
  return b == Boundary::static_call ? "static" : "dynamic";
}

namespace space {
namespace {

[[noreturn]] void bool_operand(std::string_view what) {
  throw TypeError(std::string(what) + " requires integer operands");
}

// Floored modulo on machine words: the result carries the divisor's sign.
// |b| == 1 is short-circuited so INT64_MIN % -1 never evaluates.
std::int64_t floored_mod_small(std::int64_t a, std::int64_t b) {
  if (b == 1 || b == -1) return 0;
  std::int64_t r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) r += b;
  return r;
}

BigInt floored_mod_big(const BigInt& a, const BigInt& b) {
  BigInt r = a % b;  // truncated
  if (r != 0 && ((r < 0) != (b < 0))) r += b;
  return r;
}

BigInt widen(const Value& v) {
  return v.is_small() ? BigInt(v.small()) : v.big();
}

Value arith_big(ArithOp op, const Value& a, const Value& b) {
  BigInt x = widen(a);
  BigInt y = widen(b);
  switch (op) {
    case ArithOp::add: return Value::integer(x + y);
    case ArithOp::sub: return Value::integer(x - y);
    case ArithOp::mul: return Value::integer(x * y);
    case ArithOp::mod:
      if (y == 0) throw DivisionByZero();
      return Value::integer(floored_mod_big(x, y));
  }
  throw Error("unreachable arith op");
}

int order(const Value& a, const Value& b) {
  if (a.is_small() && b.is_small()) {
    if (a.small() < b.small()) return -1;
    return a.small() == b.small() ? 0 : 1;
  }
  // At most one side is wide; mixed comparisons avoid materialising a copy.
  if (a.is_small()) {
    if (b.big() > a.small()) return -1;
    return b.big() == a.small() ? 0 : 1;
  }
  if (b.is_small()) {
    if (a.big() < b.small()) return -1;
    return a.big() == b.small() ? 0 : 1;
  }
  if (a.big() < b.big()) return -1;
  return a.big() == b.big() ? 0 : 1;
}

}  // namespace

Value make_int(std::int64_t v) { return Value::integer(v); }

Value arith(ArithOp op, const Value& a, const Value& b) {
  if (!a.is_int() || !b.is_int()) bool_operand("arithmetic");
  if (a.is_small() && b.is_small()) {
    std::int64_t x = a.small();
    std::int64_t y = b.small();
    std::int64_t r;
    switch (op) {
      case ArithOp::add:
        if (!__builtin_add_overflow(x, y, &r)) return Value::integer(r);
        break;
      case ArithOp::sub:
        if (!__builtin_sub_overflow(x, y, &r)) return Value::integer(r);
        break;
      case ArithOp::mul:
        if (!__builtin_mul_overflow(x, y, &r)) return Value::integer(r);
        break;
      case ArithOp::mod:
        if (y == 0) throw DivisionByZero();
        return Value::integer(floored_mod_small(x, y));
    }
  }
  return arith_big(op, a, b);
}

Value compare(CompareOp op, const Value& a, const Value& b) {
  if (!a.is_int() || !b.is_int()) bool_operand("comparison");
  int c = order(a, b);
  switch (op) {
    case CompareOp::lt: return Value::boolean(c < 0);
    case CompareOp::le: return Value::boolean(c <= 0);
    case CompareOp::gt: return Value::boolean(c > 0);
    case CompareOp::ge: return Value::boolean(c >= 0);
    case CompareOp::eq: return Value::boolean(c == 0);
  }
  throw Error("unreachable compare op");
}

Value bool_not(const Value& v) {
  if (!v.is_bool()) throw TypeError("not requires a boolean operand");
  return Value::boolean(!v.as_bool());
}

bool truthy(const Value& v) {
  if (!v.is_bool()) throw TypeError("condition value must be a boolean");
  return v.as_bool();
}

}  // namespace space

// ---------------------------------------------------------------------------
// Env

const Value& Env::lookup(std::string_view name) const {
  auto it = vars_.find(name);
  if (it == vars_.end()) throw UnboundVariable(std::string(name));
  return it->second;
}

void Env::store(std::string_view name, Value v) {
  if (!v.is_int()) throw TypeError("cannot bind a boolean to variable '" + std::string(name) + "'");
  auto it = vars_.find(name);
  if (it == vars_.end()) {
    vars_.emplace(std::string(name), std::move(v));
  } else {
    it->second = std::move(v);
  }
}

namespace {

bool is_ident(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s.substr(1)) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Env Env::parse(std::string_view text) {
  Env env;
  std::size_t lineno = 0;
  while (!text.empty()) {
    ++lineno;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);

    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw EnvFileError(lineno, "expected 'name = integer'");
    }
    std::string_view name = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (!is_ident(name)) {
      throw EnvFileError(lineno, "bad variable name '" + std::string(name) + "'");
    }
    try {
      env.store(name, Value::parse_integer(value));
    } catch (const Error& e) {
      throw EnvFileError(lineno, e.what());
    }
  }
  return env;
}

Env Env::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string Env::to_text() const {
  std::string out;
  for (const auto& [name, value] : vars_) {
    out += name;
    out += " = ";
    out += value.str();
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// SymbolTable / SlotEnv

std::uint32_t SymbolTable::intern(std::string_view name) {
  auto it = ids_.find(name);
  if (it != ids_.end()) return it->second;
  std::uint32_t id = static_cast<std::uint32_t>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<std::uint32_t> SymbolTable::find(std::string_view name) const {
  auto it = ids_.find(name);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& SymbolTable::name(std::uint32_t id) const {
  if (id >= names_.size()) throw Error("variable id " + std::to_string(id) + " out of range");
  return names_[id];
}

SlotEnv::SlotEnv(const SymbolTable& symbols, const Env& initial)
    : symbols_(&symbols), slots_(symbols.size()) {
  for (const auto& [name, value] : initial.entries()) {
    if (auto id = symbols.find(name)) {
      slots_[*id] = value;
    } else {
      extras_.store(name, value);
    }
  }
}

const Value& SlotEnv::load(std::uint32_t id) const {
  if (id >= slots_.size()) throw Error("variable id " + std::to_string(id) + " out of range");
  const auto& slot = slots_[id];
  if (!slot) throw UnboundVariable(symbols_->name(id));
  return *slot;
}

void SlotEnv::store(std::uint32_t id, Value v) {
  if (id >= slots_.size()) throw Error("variable id " + std::to_string(id) + " out of range");
  if (!v.is_int()) {
    throw TypeError("cannot bind a boolean to variable '" + symbols_->name(id) + "'");
  }
  slots_[id] = std::move(v);
}

Env SlotEnv::render() const {
  Env out = extras_;
  for (std::uint32_t id = 0; id < slots_.size(); ++id) {
    if (slots_[id]) out.store(symbols_->name(id), *slots_[id]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Default virtual object space

namespace {

class StandardSpace final : public ObjectSpaceIface {
 public:
  Value make_int(std::int64_t v) const override { return space::make_int(v); }
  Value arith(ArithOp op, const Value& a, const Value& b) const override {
    return space::arith(op, a, b);
  }
  Value compare(CompareOp op, const Value& a, const Value& b) const override {
    return space::compare(op, a, b);
  }
  Value bool_not(const Value& v) const override { return space::bool_not(v); }
  bool truthy(const Value& v) const override { return space::truthy(v); }
  const Value& lookup(const Env& env, std::string_view name) const override {
    return env.lookup(name);
  }
  void store(Env& env, std::string_view name, Value v) const override {
    env.store(name, std::move(v));
  }
  const Value& load_slot(const SlotEnv& env, std::uint32_t id) const override {
    return env.load(id);
  }
  void store_slot(SlotEnv& env, std::uint32_t id, Value v) const override {
    env.store(id, std::move(v));
  }
};

}  // namespace

const ObjectSpaceIface& standard_object_space() {
  static const StandardSpace instance;
  return instance;
}

}  // namespace acol
