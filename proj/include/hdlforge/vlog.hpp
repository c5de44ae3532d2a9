#pragma once

// Reader and cycle-level interpreter for the small Verilog subset this
// library emits: one module with ANSI port declarations, parameters,
// reg/wire declarations, continuous assigns, always_comb / always @(*) and
// edge-triggered always blocks containing begin/end, if/else, case and
// blocking or nonblocking assignments.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hdlforge::vlog {

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A value of up to 64 bits. Set bits of `xmask` are unknown; their
/// positions in `bits` are kept at zero.
struct Value {
  std::uint64_t bits = 0;
  int width = 1;
  std::uint64_t xmask = 0;

  static Value of(std::uint64_t v, int w);
  static Value x(int w);
  bool has_x() const { return xmask != 0; }
  /// Some known bit is 1.
  bool truthy() const { return (bits & ~xmask) != 0; }
  /// Every bit is known to be 0.
  bool falsy() const { return xmask == 0 && bits == 0; }

  friend bool operator==(const Value&, const Value&) = default;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { number, unknown, ident, index, slice, concat, replicate, unary, binary, ternary };
  Kind kind;
  std::string name;  ///< ident / index / slice base, or operator spelling
  Value value;       ///< number literal
  bool sized = false;
  std::vector<ExprPtr> args;
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct CaseItem {
  std::vector<ExprPtr> labels; ///< empty for default
  StmtPtr body;
};

struct Stmt {
  enum class Kind { block, blocking, nonblocking, if_else, case_stmt, empty };
  Kind kind;
  std::vector<StmtPtr> body;     ///< block
  ExprPtr lhs;                   ///< assignment target
  ExprPtr rhs;                   ///< assignment value / condition / case selector
  StmtPtr then_branch, else_branch;
  std::vector<CaseItem> items;
};

struct PortDecl {
  std::string name;
  bool is_input = true;
  bool is_reg = false;
  int width = 1;
};

struct AlwaysBlock {
  bool combinational = true;
  std::vector<std::string> posedges; ///< sensitivity list for edge-triggered blocks
  StmtPtr body;
};

struct ContinuousAssign {
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Module {
  std::string name;
  std::vector<PortDecl> ports;
  std::vector<std::pair<std::string, ExprPtr>> params;
  std::map<std::string, int> widths; ///< every declared signal
  std::vector<ContinuousAssign> assigns;
  std::vector<AlwaysBlock> blocks;

  const PortDecl* port(const std::string& n) const;
};

/// Parses the first module in `text`. Markdown fences and comments are skipped.
Module parse_module(std::string_view text);

/// Evaluates parameters and tracks signal values of one module instance.
class Simulator {
public:
  explicit Simulator(Module module);

  const Module& module() const noexcept { return mod_; }

  std::optional<Value> param(const std::string& n) const;

  void set(const std::string& signal, std::uint64_t value);
  void set(const std::string& signal, Value value);
  Value get(const std::string& signal) const;

  /// Re-evaluates continuous assigns and combinational blocks until stable.
  void settle();

  /// Settles, runs every edge-triggered block sensitive to `posedge signal`
  /// with nonblocking semantics, then settles again.
  void posedge(const std::string& signal);

private:
  Value eval(const Expr& e) const;
  void exec(const Stmt& s, std::map<std::string, Value>* deferred);
  void write(const Expr& lhs, const Value& v, std::map<std::string, Value>* deferred);
  void store(const std::string& name, const Value& v, std::map<std::string, Value>* deferred);
  int width_of(const std::string& name) const;

  Module mod_;
  std::map<std::string, Value> params_;
  std::map<std::string, Value> env_;
};

} // namespace hdlforge::vlog
