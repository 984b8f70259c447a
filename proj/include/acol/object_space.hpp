#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "acol/value.hpp"

namespace acol {

enum class ArithOp : std::uint8_t { add, sub, mul, mod };
enum class CompareOp : std::uint8_t { lt, le, gt, ge, eq };

std::string_view to_string(ArithOp op);
std::string_view to_string(CompareOp op);

/// The shared semantics layer. Every backend routes value creation,
/// arithmetic, comparison and environment access through these entry points;
/// backend code itself only does machine arithmetic on program counters and
/// stack indices.
namespace space {

Value make_int(std::int64_t v);
Value arith(ArithOp op, const Value& a, const Value& b);
Value compare(CompareOp op, const Value& a, const Value& b);
Value bool_not(const Value& v);
bool truthy(const Value& v);

}  // namespace space

/// Name-keyed variable environment. Holds only integer values; storing a
/// boolean is a type error.
class Env {
 public:
  // Parses the ".env" text format: one `name = decimal-integer` per line,
  // `#` starts a comment, blank lines ignored.
  static Env parse(std::string_view text);
  static Env load_file(const std::string& path);

  const Value& lookup(std::string_view name) const;
  void store(std::string_view name, Value v);
  bool contains(std::string_view name) const { return vars_.find(name) != vars_.end(); }
  bool empty() const { return vars_.empty(); }
  std::size_t size() const { return vars_.size(); }

  const std::map<std::string, Value, std::less<>>& entries() const { return vars_; }

  // One `name = value` line per variable, sorted by name. Round-trips
  // through parse().
  std::string to_text() const;

  friend bool operator==(const Env&, const Env&) = default;

 private:
  std::map<std::string, Value, std::less<>> vars_;
};

/// Bijection between variable ids 0..n-1 and names.
class SymbolTable {
 public:
  std::uint32_t intern(std::string_view name);
  std::optional<std::uint32_t> find(std::string_view name) const;
  const std::string& name(std::uint32_t id) const;
  std::uint32_t size() const { return static_cast<std::uint32_t>(names_.size()); }

  friend bool operator==(const SymbolTable& a, const SymbolTable& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::uint32_t, std::less<>> ids_;
};

/// Slot-array environment for the compiled backends: variables live in a
/// dense array indexed by variable id. Bindings whose names do not occur in
/// the symbol table are carried through untouched so the rendered result
/// stays comparable with the tree-walking backends.
class SlotEnv {
 public:
  SlotEnv(const SymbolTable& symbols, const Env& initial);

  const Value& load(std::uint32_t id) const;
  void store(std::uint32_t id, Value v);

  Env render() const;

 private:
  const SymbolTable* symbols_;
  std::vector<std::optional<Value>> slots_;
  Env extras_;
};

/// Virtual-call facade over the object space, for builds where the dispatch
/// loop and the semantics sit on opposite sides of an opaque call boundary.
class ObjectSpaceIface {
 public:
  virtual ~ObjectSpaceIface() = default;
  virtual Value make_int(std::int64_t v) const = 0;
  virtual Value arith(ArithOp op, const Value& a, const Value& b) const = 0;
  virtual Value compare(CompareOp op, const Value& a, const Value& b) const = 0;
  virtual Value bool_not(const Value& v) const = 0;
  virtual bool truthy(const Value& v) const = 0;
  virtual const Value& lookup(const Env& env, std::string_view name) const = 0;
  virtual void store(Env& env, std::string_view name, Value v) const = 0;
  virtual const Value& load_slot(const SlotEnv& env, std::uint32_t id) const = 0;
  virtual void store_slot(SlotEnv& env, std::uint32_t id, Value v) const = 0;
};

const ObjectSpaceIface& standard_object_space();

/// How a backend reaches the object space: resolved at compile time (calls
/// inline into the dispatch loop) or through the virtual interface.
enum class Boundary { static_call, dynamic_call };

std::string_view to_string(Boundary b);

// Call policies the backends are templated over.

struct InlineSpace {
  Value make_int(std::int64_t v) const { return space::make_int(v); }
  Value arith(ArithOp op, const Value& a, const Value& b) const { return space::arith(op, a, b); }
  Value compare(CompareOp op, const Value& a, const Value& b) const {
    return space::compare(op, a, b);
  }
  Value bool_not(const Value& v) const { return space::bool_not(v); }
  bool truthy(const Value& v) const { return space::truthy(v); }
  const Value& lookup(const Env& env, std::string_view name) const { return env.lookup(name); }
  void store(Env& env, std::string_view name, Value v) const { env.store(name, std::move(v)); }
  const Value& load_slot(const SlotEnv& env, std::uint32_t id) const { return env.load(id); }
  void store_slot(SlotEnv& env, std::uint32_t id, Value v) const { env.store(id, std::move(v)); }
};

struct VirtualSpace {
  const ObjectSpaceIface* iface;

  Value make_int(std::int64_t v) const { return iface->make_int(v); }
  Value arith(ArithOp op, const Value& a, const Value& b) const { return iface->arith(op, a, b); }
  Value compare(CompareOp op, const Value& a, const Value& b) const {
    return iface->compare(op, a, b);
  }
  Value bool_not(const Value& v) const { return iface->bool_not(v); }
  bool truthy(const Value& v) const { return iface->truthy(v); }
  const Value& lookup(const Env& env, std::string_view name) const {
    return iface->lookup(env, name);
  }
  void store(Env& env, std::string_view name, Value v) const {
    iface->store(env, name, std::move(v));
  }
  const Value& load_slot(const SlotEnv& env, std::uint32_t id) const {
    return iface->load_slot(env, id);
  }
  void store_slot(SlotEnv& env, std::uint32_t id, Value v) const {
    iface->store_slot(env, id, std::move(v));
  }
};

}  // namespace acol
