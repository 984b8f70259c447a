#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace acol {

// Base class for every diagnosable failure raised by the toolchain.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class LexError : public Error {
 public:
  LexError(std::size_t offset, const std::string& msg) : Error(msg), offset(offset) {}
  std::size_t offset;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& msg) : Error(msg), offset(offset) {}
  std::size_t offset;
};

class TypeError : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable '" + name + "'"), name(name) {}
  std::string name;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("mod with zero divisor") {}
};

class StackUnderflow : public Error {
 public:
  using Error::Error;
};

// Raised for structurally broken bytecode: truncated arguments, unknown
// opcodes, out-of-range jump targets or variable ids, missing terminator.
class MalformedImage : public Error {
 public:
  using Error::Error;
};

class AsmError : public Error {
 public:
  AsmError(std::size_t line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line(line) {}
  std::size_t line;
};

class UnknownBlockId : public Error {
 public:
  explicit UnknownBlockId(std::uint32_t id)
      : Error("unknown block id " + std::to_string(id)), id(id) {}
  std::uint32_t id;
};

// A condition block must leave exactly one value on its fresh stack.
class ConditionArity : public Error {
 public:
  using Error::Error;
};

// A block program violating the structural rules (jump opcodes inside a
// block, env-mutating opcodes inside a condition block, bad block refs).
class InvalidBlockProgram : public Error {
 public:
  using Error::Error;
};

class EnvFileError : public Error {
 public:
  EnvFileError(std::size_t line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line(line) {}
  std::size_t line;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

// A backend produced a final environment different from the reference
// backend's on the same program. Raised by the benchmark correctness gate
// and the differential driver.
class BackendMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace acol
