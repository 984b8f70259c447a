#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "acol/ast.hpp"
#include "acol/object_space.hpp"

namespace acol {

// Instruction set. Multi-byte arguments are encoded least-significant byte
// first: program counters and variable ids as 4 unsigned bytes, push4 as 4
// two's-complement bytes, push1 as 1 two's-complement byte.
namespace op {
inline constexpr std::uint8_t end = 0;             // halt
inline constexpr std::uint8_t jump = 10;           // pc := arg
inline constexpr std::uint8_t jump_if_false = 11;  // pop; jump when falsey
inline constexpr std::uint8_t jump_if_true = 12;   // pop; jump when truthy
inline constexpr std::uint8_t push1 = 20;          // push signed byte
inline constexpr std::uint8_t push4 = 21;          // push signed 32-bit
inline constexpr std::uint8_t load = 40;           // push variable
inline constexpr std::uint8_t assign = 45;         // pop into variable
inline constexpr std::uint8_t mod = 197;
inline constexpr std::uint8_t mul = 198;
inline constexpr std::uint8_t sub = 199;
inline constexpr std::uint8_t add = 200;
inline constexpr std::uint8_t bool_not = 240;
inline constexpr std::uint8_t eq = 251;
inline constexpr std::uint8_t le = 252;
inline constexpr std::uint8_t lt = 253;
inline constexpr std::uint8_t ge = 254;
inline constexpr std::uint8_t gt = 255;
}  // namespace op

// Argument byte width of an opcode; -1 for unknown opcodes.
int arg_width(std::uint8_t opcode);
bool is_known_opcode(std::uint8_t opcode);
std::string_view mnemonic(std::uint8_t opcode);

struct BytecodeImage {
  std::vector<std::uint8_t> code;  // ends with a single `end` byte
  SymbolTable symbols;             // variable id -> name

  friend bool operator==(const BytecodeImage&, const BytecodeImage&) = default;
};

/// Compiles the AST to a linear image. Expressions compile post-order;
/// `if` emits jump-if-false to the else branch and an unconditional jump to
/// the join; `while` tests at the loop head and jumps back. Literals inside
/// the signed 8-bit range use push1, all others push4. Variable ids are
/// assigned by first occurrence in emission order. Deterministic.
BytecodeImage compile_linear(const StmtList& program);

/// Structural validation: decodable code, every jump target on an
/// instruction start (or one past the end), every variable id within the
/// symbol table, trailing end sentinel. Throws MalformedImage.
void validate(const BytecodeImage& image);

// One decoded instruction; `arg` is the jump target, the pushed integer, or
// the variable id depending on the opcode.
struct DecodedInstr {
  std::uint32_t offset = 0;
  std::uint8_t opcode = 0;
  std::int64_t arg = 0;

  friend bool operator==(const DecodedInstr&, const DecodedInstr&) = default;
};

// Decodes every instruction in offset order. Throws MalformedImage on
// unknown opcodes or truncated arguments.
std::vector<DecodedInstr> decode_all(const BytecodeImage& image);

/// One line per instruction, `offset: mnemonic arg`, variable ids rendered
/// as names. assemble() reverses it.
std::string disassemble(const BytecodeImage& image);

/// Parses disassembly text back into an image; variable ids are assigned by
/// first occurrence, matching the compiler's rule. Throws AsmError.
BytecodeImage assemble(std::string_view text);

// Container format: "ACBC", version byte 1, symbol count (4 bytes), per
// symbol a 2-byte length plus UTF-8 bytes, code length (4 bytes), code
// bytes. All multi-byte fields least-significant byte first.
void save_acbc(const BytecodeImage& image, std::ostream& out);
BytecodeImage load_acbc(std::istream& in);
void save_acbc_file(const BytecodeImage& image, const std::string& path);
BytecodeImage load_acbc_file(const std::string& path);

// Little-endian byte helpers shared by the encoders.
void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v);
std::uint32_t read_u32(std::span<const std::uint8_t> bytes, std::size_t at);
std::int32_t read_i32(std::span<const std::uint8_t> bytes, std::size_t at);

}  // namespace acol
