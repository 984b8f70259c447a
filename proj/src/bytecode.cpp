#include "acol/bytecode.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "acol/errors.hpp"

namespace acol {

int arg_width(std::uint8_t opcode) {
  switch (opcode) {
    case op::end:
    case op::mod:
    case op::mul:
    case op::sub:
    case op::add:
    case op::bool_not:
    case op::eq:
    case op::le:
    case op::lt:
    case op::ge:
    case op::gt:
      return 0;
    case op::push1:
      return 1;
    case op::jump:
    case op::jump_if_false:
    case op::jump_if_true:
    case op::push4:
    case op::load:
    case op::assign:
      return 4;
    default:
      return -1;
  }
}

bool is_known_opcode(std::uint8_t opcode) { return arg_width(opcode) >= 0; }

std::string_view mnemonic(std::uint8_t opcode) {
  switch (opcode) {
    case op::end: return "end";
    case op::jump: return "jump";
    case op::jump_if_false: return "jump-if-false";
    case op::jump_if_true: return "jump-if-true";
    case op::push1: return "push1";
    case op::push4: return "push4";
    case op::load: return "load";
    case op::assign: return "assign";
    case op::mod: return "mod";
    case op::mul: return "mul";
    case op::sub: return "sub";
    case op::add: return "add";
    case op::bool_not: return "not";
    case op::eq: return "eq";
    case op::le: return "le";
    case op::lt: return "lt";
    case op::ge: return "ge";
    case op::gt: return "gt";
    default: return "?";
  }
}

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

std::uint32_t read_u32(std::span<const std::uint8_t> bytes, std::size_t at) {
  return static_cast<std::uint32_t>(bytes[at]) |
         (static_cast<std::uint32_t>(bytes[at + 1]) << 8) |
         (static_cast<std::uint32_t>(bytes[at + 2]) << 16) |
         (static_cast<std::uint32_t>(bytes[at + 3]) << 24);
}

std::int32_t read_i32(std::span<const std::uint8_t> bytes, std::size_t at) {
  return static_cast<std::int32_t>(read_u32(bytes, at));
}

// ---------------------------------------------------------------------------
// Compiler

namespace {

class LinearEmitter {
 public:
  BytecodeImage finish(const StmtList& program) {
    emit_stmts(program);
    image_.code.push_back(op::end);
    return std::move(image_);
  }

 private:
  std::uint32_t here() const { return static_cast<std::uint32_t>(image_.code.size()); }

  void emit_stmts(const StmtList& list) {
    for (const Stmt& s : list) {
      std::visit(overloaded{
                     [&](const AssignStmt& a) {
                       emit_expr(*a.value);
                       emit_op_u32(op::assign, image_.symbols.intern(a.target));
                     },
                     [&](const IfStmt& i) { emit_if(i); },
                     [&](const WhileStmt& w) { emit_while(w); },
                 },
                 s.node);
    }
  }

  void emit_if(const IfStmt& i) {
    emit_expr(*i.cond);
    std::uint32_t to_else = emit_jump(op::jump_if_false);
    emit_stmts(i.then_body);
    // The join jump is emitted even for an empty else branch.
    std::uint32_t to_join = emit_jump(op::jump);
    patch(to_else, here());
    emit_stmts(i.else_body);
    patch(to_join, here());
  }

  void emit_while(const WhileStmt& w) {
    std::uint32_t head = here();
    emit_expr(*w.cond);
    std::uint32_t to_exit = emit_jump(op::jump_if_false);
    emit_stmts(w.body);
    emit_op_u32(op::jump, head);
    patch(to_exit, here());
  }

  void emit_expr(const Expr& e) {
    std::visit(overloaded{
                   [&](const IntLit& n) {
                     if (n.value >= -128 && n.value <= 127) {
                       image_.code.push_back(op::push1);
                       image_.code.push_back(static_cast<std::uint8_t>(
                           static_cast<std::int8_t>(n.value)));
                     } else {
                       image_.code.push_back(op::push4);
                       append_u32(image_.code, static_cast<std::uint32_t>(n.value));
                     }
                   },
                   [&](const VarRef& v) {
                     emit_op_u32(op::load, image_.symbols.intern(v.name));
                   },
                   [&](const BinExpr& b) {
                     emit_expr(*b.lhs);
                     emit_expr(*b.rhs);
                     image_.code.push_back(opcode_for(b.op));
                   },
                   [&](const NotExpr& n) {
                     emit_expr(*n.operand);
                     image_.code.push_back(op::bool_not);
                   },
               },
               e.node);
  }

  static std::uint8_t opcode_for(BinOpKind kind) {
    switch (kind) {
      case BinOpKind::add: return op::add;
      case BinOpKind::sub: return op::sub;
      case BinOpKind::mul: return op::mul;
      case BinOpKind::mod: return op::mod;
      case BinOpKind::lt: return op::lt;
      case BinOpKind::le: return op::le;
      case BinOpKind::gt: return op::gt;
      case BinOpKind::ge: return op::ge;
      case BinOpKind::eq: return op::eq;
    }
    throw Error("unreachable operator");
  }

  void emit_op_u32(std::uint8_t opcode, std::uint32_t arg) {
    image_.code.push_back(opcode);
    append_u32(image_.code, arg);
  }

  // Emits a jump with a zero placeholder; returns the argument offset.
  std::uint32_t emit_jump(std::uint8_t opcode) {
    image_.code.push_back(opcode);
    std::uint32_t at = here();
    append_u32(image_.code, 0);
    return at;
  }

  void patch(std::uint32_t at, std::uint32_t target) {
    image_.code[at] = static_cast<std::uint8_t>(target & 0xff);
    image_.code[at + 1] = static_cast<std::uint8_t>((target >> 8) & 0xff);
    image_.code[at + 2] = static_cast<std::uint8_t>((target >> 16) & 0xff);
    image_.code[at + 3] = static_cast<std::uint8_t>((target >> 24) & 0xff);
  }

  BytecodeImage image_;
};

}  // namespace

BytecodeImage compile_linear(const StmtList& program) {
  return LinearEmitter().finish(program);
}

// ---------------------------------------------------------------------------
// Decoding / validation

std::vector<DecodedInstr> decode_all(const BytecodeImage& image) {
  std::vector<DecodedInstr> out;
  const auto& code = image.code;
  std::size_t pc = 0;
  while (pc < code.size()) {
    std::uint8_t opcode = code[pc];
    int width = arg_width(opcode);
    if (width < 0) {
      throw MalformedImage("unknown opcode " + std::to_string(opcode) + " at offset " +
                           std::to_string(pc));
    }
    if (pc + 1 + static_cast<std::size_t>(width) > code.size()) {
      throw MalformedImage("truncated argument at offset " + std::to_string(pc));
    }
    std::int64_t arg = 0;
    if (width == 1) {
      arg = static_cast<std::int8_t>(code[pc + 1]);
    } else if (width == 4) {
      arg = opcode == op::push4 ? static_cast<std::int64_t>(read_i32(code, pc + 1))
                                : static_cast<std::int64_t>(read_u32(code, pc + 1));
    }
    out.push_back(DecodedInstr{static_cast<std::uint32_t>(pc), opcode, arg});
    pc += 1 + static_cast<std::size_t>(width);
  }
  return out;
}

void validate(const BytecodeImage& image) {
  std::vector<DecodedInstr> instrs = decode_all(image);
  if (instrs.empty() || instrs.back().opcode != op::end) {
    throw MalformedImage("missing end sentinel");
  }
  std::vector<std::uint32_t> starts;
  starts.reserve(instrs.size());
  for (const DecodedInstr& d : instrs) starts.push_back(d.offset);

  const std::uint32_t len = static_cast<std::uint32_t>(image.code.size());
  for (const DecodedInstr& d : instrs) {
    switch (d.opcode) {
      case op::jump:
      case op::jump_if_false:
      case op::jump_if_true: {
        std::uint32_t target = static_cast<std::uint32_t>(d.arg);
        bool on_start = std::binary_search(starts.begin(), starts.end(), target);
        if (!on_start && target != len) {
          throw MalformedImage("jump target " + std::to_string(target) +
                               " is not an instruction start");
        }
        break;
      }
      case op::load:
      case op::assign:
        if (static_cast<std::uint32_t>(d.arg) >= image.symbols.size()) {
          throw MalformedImage("variable id " + std::to_string(d.arg) +
                               " outside symbol table");
        }
        break;
      default:
        break;
    }
  }
}

// ---------------------------------------------------------------------------
// Disassembler / assembler

std::string disassemble(const BytecodeImage& image) {
  std::string out;
  for (const DecodedInstr& d : decode_all(image)) {
    out += std::to_string(d.offset);
    out += ": ";
    out += mnemonic(d.opcode);
    switch (d.opcode) {
      case op::push1:
      case op::push4:
      case op::jump:
      case op::jump_if_false:
      case op::jump_if_true:
        out += ' ';
        out += std::to_string(d.arg);
        break;
      case op::load:
      case op::assign:
        out += ' ';
        out += image.symbols.name(static_cast<std::uint32_t>(d.arg));
        break;
      default:
        break;
    }
    out += '\n';
  }
  return out;
}

namespace {

const std::map<std::string_view, std::uint8_t>& mnemonic_table() {
  static const std::map<std::string_view, std::uint8_t> table = {
      {"end", op::end},       {"jump", op::jump},
      {"jump-if-false", op::jump_if_false}, {"jump-if-true", op::jump_if_true},
      {"push1", op::push1},   {"push4", op::push4},
      {"load", op::load},     {"assign", op::assign},
      {"mod", op::mod},       {"mul", op::mul},
      {"sub", op::sub},       {"add", op::add},
      {"not", op::bool_not},  {"eq", op::eq},
      {"le", op::le},         {"lt", op::lt},
      {"ge", op::ge},         {"gt", op::gt},
  };
  return table;
}

std::string_view trim_ws(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int_arg(std::string_view text, std::size_t lineno) {
  if (text.empty()) throw AsmError(lineno, "missing integer argument");
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(std::string(text), &used);
    if (used != text.size()) throw AsmError(lineno, "bad integer '" + std::string(text) + "'");
    return v;
  } catch (const AsmError&) {
    throw;
  } catch (const std::exception&) {
    throw AsmError(lineno, "bad integer '" + std::string(text) + "'");
  }
}

}  // namespace

BytecodeImage assemble(std::string_view text) {
  BytecodeImage image;
  std::size_t lineno = 0;
  std::istringstream input{std::string(text)};
  std::string raw;

  while (std::getline(input, raw)) {
    std::string_view line = raw;
    ++lineno;

    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim_ws(line);
    if (line.empty()) continue;

    // Optional "offset:" prefix; the stated offset must match the actual one.
    if (std::size_t colon = line.find(':'); colon != std::string_view::npos) {
      std::int64_t stated = parse_int_arg(trim_ws(line.substr(0, colon)), lineno);
      if (stated != static_cast<std::int64_t>(image.code.size())) {
        throw AsmError(lineno, "offset " + std::to_string(stated) + " does not match actual " +
                                   std::to_string(image.code.size()));
      }
      line = trim_ws(line.substr(colon + 1));
    }

    std::size_t space = line.find_first_of(" \t");
    std::string_view word = space == std::string_view::npos ? line : line.substr(0, space);
    std::string_view rest = space == std::string_view::npos
                                ? std::string_view()
                                : trim_ws(line.substr(space + 1));

    auto it = mnemonic_table().find(word);
    if (it == mnemonic_table().end()) {
      throw AsmError(lineno, "unknown mnemonic '" + std::string(word) + "'");
    }
    std::uint8_t opcode = it->second;
    int width = arg_width(opcode);

    if (width == 0) {
      if (!rest.empty()) throw AsmError(lineno, "unexpected argument");
      image.code.push_back(opcode);
      continue;
    }
    image.code.push_back(opcode);
    if (opcode == op::load || opcode == op::assign) {
      if (rest.empty()) throw AsmError(lineno, "missing variable name");
      append_u32(image.code, image.symbols.intern(rest));
    } else if (opcode == op::push1) {
      std::int64_t v = parse_int_arg(rest, lineno);
      if (v < -128 || v > 127) throw AsmError(lineno, "push1 argument out of range");
      image.code.push_back(static_cast<std::uint8_t>(static_cast<std::int8_t>(v)));
    } else if (opcode == op::push4) {
      std::int64_t v = parse_int_arg(rest, lineno);
      if (v < -2147483648LL || v > 2147483647LL) {
        throw AsmError(lineno, "push4 argument out of range");
      }
      append_u32(image.code, static_cast<std::uint32_t>(static_cast<std::int32_t>(v)));
    } else {  // jumps
      std::int64_t v = parse_int_arg(rest, lineno);
      if (v < 0 || v > 0xffffffffLL) throw AsmError(lineno, "jump target out of range");
      append_u32(image.code, static_cast<std::uint32_t>(v));
    }
  }

  try {
    validate(image);
  } catch (const MalformedImage& e) {
    throw AsmError(lineno, std::string("invalid image: ") + e.what());
  }
  return image;
}

// ---------------------------------------------------------------------------
// .acbc container

namespace {

constexpr char kMagic[4] = {'A', 'C', 'B', 'C'};
constexpr std::uint8_t kVersion = 1;

void put_u16(std::ostream& out, std::uint16_t v) {
  char bytes[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
  out.write(bytes, 2);
}

void put_u32(std::ostream& out, std::uint32_t v) {
  char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                   static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes, 4);
}

std::uint32_t take_u32(std::istream& in) {
  std::uint8_t b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw MalformedImage("truncated file");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint16_t take_u16(std::istream& in) {
  std::uint8_t b[2];
  if (!in.read(reinterpret_cast<char*>(b), 2)) throw MalformedImage("truncated file");
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

}  // namespace

void save_acbc(const BytecodeImage& image, std::ostream& out) {
  out.write(kMagic, 4);
  out.put(static_cast<char>(kVersion));
  put_u32(out, image.symbols.size());
  for (std::uint32_t id = 0; id < image.symbols.size(); ++id) {
    const std::string& name = image.symbols.name(id);
    if (name.size() > 0xffff) throw Error("symbol name too long");
    put_u16(out, static_cast<std::uint16_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
  }
  put_u32(out, static_cast<std::uint32_t>(image.code.size()));
  out.write(reinterpret_cast<const char*>(image.code.data()),
            static_cast<std::streamsize>(image.code.size()));
}

BytecodeImage load_acbc(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw MalformedImage("bad magic");
  }
  int version = in.get();
  if (version != kVersion) {
    throw MalformedImage("unsupported version " + std::to_string(version));
  }
  BytecodeImage image;
  std::uint32_t nsyms = take_u32(in);
  for (std::uint32_t i = 0; i < nsyms; ++i) {
    std::uint16_t len = take_u16(in);
    std::string name(len, '\0');
    if (!in.read(name.data(), len)) throw MalformedImage("truncated symbol name");
    if (image.symbols.find(name)) throw MalformedImage("duplicate symbol '" + name + "'");
    image.symbols.intern(name);
  }
  std::uint32_t code_len = take_u32(in);
  image.code.resize(code_len);
  if (!in.read(reinterpret_cast<char*>(image.code.data()), code_len)) {
    throw MalformedImage("truncated code section");
  }
  validate(image);
  return image;
}

void save_acbc_file(const BytecodeImage& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  save_acbc(image, out);
}

BytecodeImage load_acbc_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return load_acbc(in);
}

}  // namespace acol
