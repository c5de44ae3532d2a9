#include "hdlforge/vlog.hpp"

#include <algorithm>
#include <cctype>

namespace hdlforge::vlog {

namespace {

std::uint64_t mask(int width)
{
  return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
}

Value resize(Value v, int width)
{
  v.bits &= mask(width);
  v.xmask &= mask(width);
  v.width = width;
  return v;
}

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum class Kind { ident, number, op, end };
  Kind kind;
  std::string text;
};

std::string strip_fences(std::string_view text)
{
  std::string out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      nl = text.size();
    }
    std::string_view line = text.substr(start, nl - start);
    std::size_t first = line.find_first_not_of(" \t");
    if (!(first != std::string_view::npos && line.substr(first, 3) == "```")) {
      out.append(line);
    }
    out += '\n';
    start = nl + 1;
  }
  return out;
}

std::vector<Token> lex(std::string_view src)
{
  static const std::vector<std::string> multi = {"===", "!==", "==", "!=", "<=", ">=", "&&", "||", "<<", ">>"};
  std::vector<Token> toks;
  std::size_t i = 0;
  const auto n = src.size();
  while (i < n) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') {
        ++i;
      }
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      const auto end = src.find("*/", i + 2);
      if (end == std::string_view::npos) {
        throw ParseError("unterminated block comment");
      }
      i = end + 2;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      std::size_t j = i + 1;
      while (j < n && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '$')) {
        ++j;
      }
      toks.push_back({Token::Kind::ident, std::string(src.substr(i, j - i))});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '\'') {
      std::size_t j = i;
      while (j < n && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      if (j < n && src[j] == '\'') {
        ++j;
        if (j < n && (src[j] == 's' || src[j] == 'S')) {
          ++j;
        }
        while (j < n && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
          ++j;
        }
      }
      if (j == i) {
        throw ParseError("stray quote in source");
      }
      toks.push_back({Token::Kind::number, std::string(src.substr(i, j - i))});
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& m : multi) {
      if (src.substr(i, m.size()) == m) {
        toks.push_back({Token::Kind::op, m});
        i += m.size();
        matched = true;
        break;
      }
    }
    if (matched) {
      continue;
    }
    static const std::string singles = "()[]{},;:?=~!&|^+-*@#<>.";
    if (singles.find(c) == std::string::npos) {
      throw ParseError(std::string("unexpected character '") + c + "'");
    }
    toks.push_back({Token::Kind::op, std::string(1, c)});
    ++i;
  }
  toks.push_back({Token::Kind::end, ""});
  return toks;
}

Expr make_number(const std::string& tok)
{
  Expr e{Expr::Kind::number, tok, {}, false, {}};
  const auto q = tok.find('\'');
  if (q == std::string::npos) {
    std::string digits;
    std::copy_if(tok.begin(), tok.end(), std::back_inserter(digits), [](char ch) { return ch != '_'; });
    e.value = Value::of(std::stoull(digits), 32);
    return e;
  }
  std::size_t p = q + 1;
  if (p < tok.size() && (tok[p] == 's' || tok[p] == 'S')) {
    ++p;
  }
  const int width = q == 0 ? 32 : std::stoi(tok.substr(0, q));
  if (width < 1 || width > 64) {
    throw ParseError("unsupported literal width in '" + tok + "'");
  }
  e.sized = q != 0;
  if (p >= tok.size()) {
    throw ParseError("malformed literal '" + tok + "'");
  }
  const char base = static_cast<char>(std::tolower(static_cast<unsigned char>(tok[p])));
  std::string digits;
  for (std::size_t k = p + 1; k < tok.size(); ++k) {
    if (tok[k] != '_') {
      digits += static_cast<char>(std::tolower(static_cast<unsigned char>(tok[k])));
    }
  }
  if (base == 'x' || base == 'z') {
    // An unsized x fills whatever it is assigned to.
    e.kind = Expr::Kind::unknown;
    e.value = Value::x(q == 0 ? 64 : width);
    return e;
  }
  if (digits.find_first_of("xz") != std::string::npos) {
    e.kind = Expr::Kind::unknown;
    e.value = Value::x(q == 0 ? 64 : width);
    return e;
  }
  int radix = 10;
  if (base == 'b') {
    radix = 2;
  } else if (base == 'h') {
    radix = 16;
  } else if (base == 'o') {
    radix = 8;
  } else if (base != 'd') {
    throw ParseError("unknown literal base in '" + tok + "'");
  }
  if (digits.empty()) {
    throw ParseError("malformed literal '" + tok + "'");
  }
  e.value = Value::of(std::stoull(digits, nullptr, radix), width);
  return e;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Module module()
  {
    while (!at_end() && !is("module")) {
      ++pos_;
    }
    expect("module");
    Module m;
    m.name = ident();
    if (accept("#")) {
      throw ParseError("parameter port lists are not supported");
    }
    expect("(");
    if (!is(")")) {
      do {
        port_decl(m);
      } while (accept(","));
    }
    expect(")");
    expect(";");
    while (!accept("endmodule")) {
      if (at_end()) {
        throw ParseError("missing endmodule");
      }
      item(m);
    }
    return m;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Token::Kind::end; }
  bool is(std::string_view s) const { return peek().text == s && peek().kind != Token::Kind::end; }
  bool accept(std::string_view s)
  {
    if (is(s)) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(std::string_view s)
  {
    if (!accept(s)) {
      throw ParseError("expected '" + std::string(s) + "' but found '" + peek().text + "'");
    }
  }
  std::string ident()
  {
    if (peek().kind != Token::Kind::ident) {
      throw ParseError("expected identifier but found '" + peek().text + "'");
    }
    return toks_[pos_++].text;
  }

  std::int64_t const_eval(const Expr& e) const
  {
    switch (e.kind) {
    case Expr::Kind::number:
      return static_cast<std::int64_t>(e.value.bits);
    case Expr::Kind::ident: {
      auto it = consts_.find(e.name);
      if (it == consts_.end()) {
        throw ParseError("non-constant range bound '" + e.name + "'");
      }
      return it->second;
    }
    case Expr::Kind::binary:
      if (e.name == "+") {
        return const_eval(*e.args[0]) + const_eval(*e.args[1]);
      }
      if (e.name == "-") {
        return const_eval(*e.args[0]) - const_eval(*e.args[1]);
      }
      if (e.name == "*") {
        return const_eval(*e.args[0]) * const_eval(*e.args[1]);
      }
      break;
    default:
      break;
    }
    throw ParseError("unsupported constant expression");
  }

  int range_width()
  {
    if (!accept("[")) {
      return 1;
    }
    const auto msb = const_eval(*expr());
    expect(":");
    const auto lsb = const_eval(*expr());
    expect("]");
    if (lsb != 0 || msb < 0 || msb >= 64) {
      throw ParseError("only [N:0] ranges up to 64 bits are supported");
    }
    return static_cast<int>(msb + 1);
  }

  void declare(Module& m, const std::string& name, int width)
  {
    if (!m.widths.emplace(name, width).second) {
      throw ParseError("duplicate declaration of '" + name + "'");
    }
  }

  void port_decl(Module& m)
  {
    PortDecl p;
    if (accept("input")) {
      p.is_input = true;
    } else if (accept("output")) {
      p.is_input = false;
    } else if (!m.ports.empty()) {
      p = m.ports.back();
      p.name = ident();
      declare(m, p.name, p.width);
      m.ports.push_back(p);
      return;
    } else {
      throw ParseError("expected port direction");
    }
    if (accept("reg")) {
      p.is_reg = true;
    } else {
      accept("wire");
      accept("logic");
    }
    p.width = range_width();
    p.name = ident();
    declare(m, p.name, p.width);
    m.ports.push_back(p);
  }

  void item(Module& m)
  {
    if (accept("parameter") || accept("localparam")) {
      do {
        const std::string name = ident();
        expect("=");
        auto value = expr();
        consts_[name] = const_eval(*value);
        m.params.emplace_back(name, value);
      } while (accept(","));
      expect(";");
      return;
    }
    if (accept("reg") || accept("wire") || accept("logic")) {
      const int w = range_width();
      do {
        declare(m, ident(), w);
      } while (accept(","));
      expect(";");
      return;
    }
    if (accept("assign")) {
      ContinuousAssign a;
      a.lhs = lvalue();
      expect("=");
      a.rhs = expr();
      expect(";");
      m.assigns.push_back(std::move(a));
      return;
    }
    if (accept("always_comb")) {
      m.blocks.push_back({true, {}, stmt()});
      return;
    }
    if (accept("always") || accept("always_ff")) {
      expect("@");
      expect("(");
      AlwaysBlock b;
      if (accept("*")) {
        b.combinational = true;
      } else {
        b.combinational = false;
        do {
          expect("posedge");
          b.posedges.push_back(ident());
        } while (accept(",") || accept("or"));
      }
      expect(")");
      b.body = stmt();
      m.blocks.push_back(std::move(b));
      return;
    }
    throw ParseError("unsupported module item starting at '" + peek().text + "'");
  }

  StmtPtr stmt()
  {
    auto s = std::make_shared<Stmt>();
    if (accept(";")) {
      s->kind = Stmt::Kind::empty;
      return s;
    }
    if (accept("begin")) {
      s->kind = Stmt::Kind::block;
      while (!accept("end")) {
        if (at_end()) {
          throw ParseError("missing end");
        }
        s->body.push_back(stmt());
      }
      return s;
    }
    if (accept("if")) {
      s->kind = Stmt::Kind::if_else;
      expect("(");
      s->rhs = expr();
      expect(")");
      s->then_branch = stmt();
      if (accept("else")) {
        s->else_branch = stmt();
      }
      return s;
    }
    if (accept("case") || accept("casez")) {
      s->kind = Stmt::Kind::case_stmt;
      expect("(");
      s->rhs = expr();
      expect(")");
      while (!accept("endcase")) {
        if (at_end()) {
          throw ParseError("missing endcase");
        }
        CaseItem item;
        if (accept("default")) {
          accept(":");
        } else {
          do {
            item.labels.push_back(expr());
          } while (accept(","));
          expect(":");
        }
        item.body = stmt();
        s->items.push_back(std::move(item));
      }
      return s;
    }
    s->lhs = lvalue();
    if (accept("<=")) {
      s->kind = Stmt::Kind::nonblocking;
    } else {
      expect("=");
      s->kind = Stmt::Kind::blocking;
    }
    s->rhs = expr();
    expect(";");
    return s;
  }

  ExprPtr lvalue()
  {
    if (accept("{")) {
      auto e = std::make_shared<Expr>(Expr{Expr::Kind::concat, "{}", {}, false, {}});
      do {
        e->args.push_back(lvalue());
      } while (accept(","));
      expect("}");
      return e;
    }
    return postfix(ident_expr(ident()));
  }

  static ExprPtr ident_expr(std::string name)
  {
    return std::make_shared<Expr>(Expr{Expr::Kind::ident, std::move(name), {}, false, {}});
  }

  ExprPtr postfix(ExprPtr base)
  {
    if (!accept("[")) {
      return base;
    }
    auto hi = expr();
    if (accept(":")) {
      auto lo = expr();
      expect("]");
      return std::make_shared<Expr>(Expr{Expr::Kind::slice, base->name, {}, false, {hi, lo}});
    }
    expect("]");
    return std::make_shared<Expr>(Expr{Expr::Kind::index, base->name, {}, false, {hi}});
  }

  static ExprPtr binary(std::string op, ExprPtr a, ExprPtr b)
  {
    return std::make_shared<Expr>(Expr{Expr::Kind::binary, std::move(op), {}, false, {std::move(a), std::move(b)}});
  }

  ExprPtr expr() { return ternary(); }

  ExprPtr ternary()
  {
    auto cond = level(0);
    if (accept("?")) {
      auto a = ternary();
      expect(":");
      auto b = ternary();
      return std::make_shared<Expr>(Expr{Expr::Kind::ternary, "?:", {}, false, {cond, a, b}});
    }
    return cond;
  }

  // Binary precedence levels, loosest first.
  ExprPtr level(std::size_t k)
  {
    static const std::vector<std::vector<std::string>> levels = {
      {"||"}, {"&&"}, {"|"}, {"^"}, {"&"}, {"==", "!=", "===", "!=="}, {"<", ">", "<=", ">="},
      {"<<", ">>"}, {"+", "-"}, {"*"}};
    if (k == levels.size()) {
      return unary();
    }
    auto lhs = level(k + 1);
    for (;;) {
      const auto& ops = levels[k];
      auto it = std::find(ops.begin(), ops.end(), peek().text);
      if (peek().kind != Token::Kind::op || it == ops.end()) {
        return lhs;
      }
      ++pos_;
      lhs = binary(*it, lhs, level(k + 1));
    }
  }

  ExprPtr unary()
  {
    for (const char* op : {"~", "!", "-"}) {
      if (peek().kind == Token::Kind::op && accept(op)) {
        return std::make_shared<Expr>(Expr{Expr::Kind::unary, op, {}, false, {unary()}});
      }
    }
    return primary();
  }

  ExprPtr primary()
  {
    if (accept("(")) {
      auto e = expr();
      expect(")");
      return e;
    }
    if (accept("{")) {
      auto first = expr();
      if (accept("{")) {
        auto inner = expr();
        expect("}");
        expect("}");
        return std::make_shared<Expr>(Expr{Expr::Kind::replicate, "{{}}", {}, false, {first, inner}});
      }
      auto e = std::make_shared<Expr>(Expr{Expr::Kind::concat, "{}", {}, false, {first}});
      while (accept(",")) {
        e->args.push_back(expr());
      }
      expect("}");
      return e;
    }
    if (peek().kind == Token::Kind::number) {
      return std::make_shared<Expr>(make_number(toks_[pos_++].text));
    }
    if (peek().kind == Token::Kind::ident) {
      return postfix(ident_expr(ident()));
    }
    throw ParseError("unexpected token '" + peek().text + "' in expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, std::int64_t> consts_;
};

} // namespace

Value Value::of(std::uint64_t v, int w)
{
  return {v & mask(w), w, 0};
}

Value Value::x(int w)
{
  return {0, w, mask(w)};
}

const PortDecl* Module::port(const std::string& n) const
{
  for (const auto& p : ports) {
    if (p.name == n) {
      return &p;
    }
  }
  return nullptr;
}

Module parse_module(std::string_view text)
{
  Parser parser(lex(strip_fences(text)));
  return parser.module();
}

Simulator::Simulator(Module module) : mod_(std::move(module))
{
  for (const auto& [name, expr] : mod_.params) {
    params_[name] = eval(*expr);
  }
}

std::optional<Value> Simulator::param(const std::string& n) const
{
  auto it = params_.find(n);
  if (it == params_.end()) {
    return std::nullopt;
  }
  return it->second;
}

int Simulator::width_of(const std::string& name) const
{
  auto it = mod_.widths.find(name);
  if (it == mod_.widths.end()) {
    throw EvalError("undeclared signal '" + name + "'");
  }
  return it->second;
}

void Simulator::set(const std::string& signal, std::uint64_t value)
{
  env_[signal] = Value::of(value, width_of(signal));
}

void Simulator::set(const std::string& signal, Value value)
{
  env_[signal] = resize(value, width_of(signal));
}

Value Simulator::get(const std::string& signal) const
{
  auto it = env_.find(signal);
  if (it != env_.end()) {
    return it->second;
  }
  return Value::x(width_of(signal));
}

Value Simulator::eval(const Expr& e) const
{
  switch (e.kind) {
  case Expr::Kind::number:
  case Expr::Kind::unknown:
    return e.value;
  case Expr::Kind::ident: {
    if (auto it = params_.find(e.name); it != params_.end()) {
      return it->second;
    }
    return get(e.name);
  }
  case Expr::Kind::index: {
    const Value base = eval(Expr{Expr::Kind::ident, e.name, {}, false, {}});
    const Value idx = eval(*e.args[0]);
    if (idx.has_x() || idx.bits >= static_cast<std::uint64_t>(base.width)) {
      return Value::x(1);
    }
    Value out = Value::of((base.bits >> idx.bits) & 1U, 1);
    out.xmask = (base.xmask >> idx.bits) & 1U;
    out.bits &= ~out.xmask;
    return out;
  }
  case Expr::Kind::slice: {
    const Value base = eval(Expr{Expr::Kind::ident, e.name, {}, false, {}});
    const Value hi = eval(*e.args[0]);
    const Value lo = eval(*e.args[1]);
    if (hi.has_x() || lo.has_x() || hi.bits < lo.bits || hi.bits >= static_cast<std::uint64_t>(base.width)) {
      throw EvalError("bad slice bounds on '" + e.name + "'");
    }
    const int w = static_cast<int>(hi.bits - lo.bits + 1);
    Value out = Value::of(base.bits >> lo.bits, w);
    out.xmask = (base.xmask >> lo.bits) & mask(w);
    return out;
  }
  case Expr::Kind::concat: {
    Value acc{0, 0, 0};
    for (const auto& a : e.args) {
      if (a->kind == Expr::Kind::number && !a->sized) {
        throw EvalError("unsized literal in concatenation");
      }
      const Value v = eval(*a);
      if (acc.width + v.width > 64) {
        throw EvalError("concatenation wider than 64 bits");
      }
      acc.bits = (acc.bits << v.width) | v.bits;
      acc.xmask = (acc.xmask << v.width) | v.xmask;
      acc.width += v.width;
    }
    return acc;
  }
  case Expr::Kind::replicate: {
    const Value count = eval(*e.args[0]);
    const Value v = eval(*e.args[1]);
    if (count.has_x() || count.bits == 0 || count.bits * static_cast<std::uint64_t>(v.width) > 64) {
      throw EvalError("bad replication");
    }
    Value acc{0, 0, 0};
    for (std::uint64_t i = 0; i < count.bits; ++i) {
      acc.bits = (acc.bits << v.width) | v.bits;
      acc.xmask = (acc.xmask << v.width) | v.xmask;
      acc.width += v.width;
    }
    return acc;
  }
  case Expr::Kind::unary: {
    const Value v = eval(*e.args[0]);
    if (e.name == "!") {
      if (v.truthy()) {
        return Value::of(0, 1);
      }
      return v.falsy() ? Value::of(1, 1) : Value::x(1);
    }
    if (e.name == "~") {
      Value out = Value::of(~v.bits, v.width);
      out.xmask = v.xmask;
      out.bits &= ~out.xmask;
      return out;
    }
    if (v.has_x()) {
      return Value::x(v.width);
    }
    return Value::of(~v.bits + 1, v.width);
  }
  case Expr::Kind::binary: {
    const Value a = eval(*e.args[0]);
    const Value b = eval(*e.args[1]);
    const std::string& op = e.name;
    const int w = std::max(a.width, b.width);
    const auto logic = [](const Value& v) -> std::optional<bool> {
      if (v.truthy()) {
        return true;
      }
      if (v.falsy()) {
        return false;
      }
      return std::nullopt;
    };
    if (op == "&&" || op == "||") {
      const auto la = logic(a);
      const auto lb = logic(b);
      const bool dominant = op == "||";
      if (la == dominant || lb == dominant) {
        return Value::of(dominant ? 1 : 0, 1);
      }
      if (!la || !lb) {
        return Value::x(1);
      }
      return Value::of(dominant ? 0 : 1, 1);
    }
    if (op == "===" || op == "!==") {
      const bool same = a.xmask == b.xmask && a.bits == b.bits;
      return Value::of(same == (op == "==="), 1);
    }
    if (op == "&" || op == "|") {
      const std::uint64_t m = mask(w);
      const std::uint64_t a1 = a.bits & ~a.xmask, b1 = b.bits & ~b.xmask;
      const std::uint64_t a0 = ~a.bits & ~a.xmask & m, b0 = ~b.bits & ~b.xmask & m;
      Value out{0, w, 0};
      if (op == "&") {
        out.bits = a1 & b1;
        const std::uint64_t zero = a0 | b0;
        out.xmask = m & ~(out.bits | zero);
      } else {
        out.bits = a1 | b1;
        const std::uint64_t zero = a0 & b0;
        out.xmask = m & ~(out.bits | zero);
      }
      return out;
    }
    if (op == "^") {
      Value out = Value::of(a.bits ^ b.bits, w);
      out.xmask = (a.xmask | b.xmask) & mask(w);
      out.bits &= ~out.xmask;
      return out;
    }
    const bool compare = op == "==" || op == "!=" || op == "<" || op == ">" || op == "<=" || op == ">=";
    if (a.has_x() || b.has_x()) {
      if ((op == "==" || op == "!=") && ((a.bits ^ b.bits) & ~a.xmask & ~b.xmask) != 0) {
        // A known differing bit decides equality regardless of x bits.
        return Value::of(op == "!=", 1);
      }
      return Value::x(compare ? 1 : (op == "<<" || op == ">>" ? a.width : w));
    }
    if (op == "==") {
      return Value::of(a.bits == b.bits, 1);
    }
    if (op == "!=") {
      return Value::of(a.bits != b.bits, 1);
    }
    if (op == "<") {
      return Value::of(a.bits < b.bits, 1);
    }
    if (op == ">") {
      return Value::of(a.bits > b.bits, 1);
    }
    if (op == "<=") {
      return Value::of(a.bits <= b.bits, 1);
    }
    if (op == ">=") {
      return Value::of(a.bits >= b.bits, 1);
    }
    if (op == "+") {
      return Value::of(a.bits + b.bits, w);
    }
    if (op == "-") {
      return Value::of(a.bits - b.bits, w);
    }
    if (op == "*") {
      return Value::of(a.bits * b.bits, w);
    }
    if (op == "<<") {
      return Value::of(b.bits >= 64 ? 0 : a.bits << b.bits, a.width);
    }
    if (op == ">>") {
      return Value::of(b.bits >= 64 ? 0 : a.bits >> b.bits, a.width);
    }
    throw EvalError("unsupported operator '" + op + "'");
  }
  case Expr::Kind::ternary: {
    const Value c = eval(*e.args[0]);
    if (c.truthy()) {
      return eval(*e.args[1]);
    }
    if (c.falsy()) {
      return eval(*e.args[2]);
    }
    const Value a = eval(*e.args[1]);
    const Value b = eval(*e.args[2]);
    const int w = std::max(a.width, b.width);
    Value out{a.bits & b.bits, w, (a.xmask | b.xmask | (a.bits ^ b.bits)) & mask(w)};
    out.bits &= ~out.xmask;
    return out;
  }
  }
  throw EvalError("unhandled expression");
}

void Simulator::store(const std::string& name, const Value& v, std::map<std::string, Value>* deferred)
{
  if (params_.count(name) != 0) {
    throw EvalError("assignment to parameter '" + name + "'");
  }
  const Value sized = resize(v, width_of(name));
  if (deferred != nullptr) {
    (*deferred)[name] = sized;
  } else {
    env_[name] = sized;
  }
}

void Simulator::write(const Expr& lhs, const Value& v, std::map<std::string, Value>* deferred)
{
  const auto current = [&](const std::string& name) {
    if (deferred != nullptr) {
      if (auto it = deferred->find(name); it != deferred->end()) {
        return it->second;
      }
    }
    return get(name);
  };
  switch (lhs.kind) {
  case Expr::Kind::ident:
    store(lhs.name, v, deferred);
    return;
  case Expr::Kind::index:
  case Expr::Kind::slice: {
    const int total = width_of(lhs.name);
    const Value hi = eval(*lhs.args[0]);
    const Value lo = lhs.kind == Expr::Kind::slice ? eval(*lhs.args[1]) : hi;
    if (hi.has_x() || lo.has_x() || hi.bits < lo.bits || hi.bits >= static_cast<std::uint64_t>(total)) {
      throw EvalError("bad select on assignment to '" + lhs.name + "'");
    }
    const int w = static_cast<int>(hi.bits - lo.bits + 1);
    const Value part = resize(v, w);
    Value base = current(lhs.name);
    const std::uint64_t m = mask(w) << lo.bits;
    base.bits = (base.bits & ~m) | (part.bits << lo.bits);
    base.xmask = (base.xmask & ~m) | (part.xmask << lo.bits);
    store(lhs.name, base, deferred);
    return;
  }
  case Expr::Kind::concat: {
    int total = 0;
    std::vector<int> widths;
    for (const auto& part : lhs.args) {
      int w = 0;
      if (part->kind == Expr::Kind::ident) {
        w = width_of(part->name);
      } else if (part->kind == Expr::Kind::index) {
        w = 1;
      } else if (part->kind == Expr::Kind::slice) {
        w = static_cast<int>(eval(*part->args[0]).bits - eval(*part->args[1]).bits + 1);
      } else {
        throw EvalError("unsupported concatenation target");
      }
      widths.push_back(w);
      total += w;
    }
    const Value full = resize(v, total);
    int shift = total;
    for (std::size_t i = 0; i < lhs.args.size(); ++i) {
      shift -= widths[i];
      Value part = Value::of(full.bits >> shift, widths[i]);
      part.xmask = (full.xmask >> shift) & mask(widths[i]);
      write(*lhs.args[i], part, deferred);
    }
    return;
  }
  default:
    throw EvalError("unsupported assignment target");
  }
}

void Simulator::exec(const Stmt& s, std::map<std::string, Value>* deferred)
{
  switch (s.kind) {
  case Stmt::Kind::empty:
    return;
  case Stmt::Kind::block:
    for (const auto& b : s.body) {
      exec(*b, deferred);
    }
    return;
  case Stmt::Kind::blocking:
    write(*s.lhs, eval(*s.rhs), nullptr);
    return;
  case Stmt::Kind::nonblocking:
    write(*s.lhs, eval(*s.rhs), deferred);
    return;
  case Stmt::Kind::if_else: {
    const Value c = eval(*s.rhs);
    if (c.truthy()) {
      exec(*s.then_branch, deferred);
    } else if (s.else_branch) {
      exec(*s.else_branch, deferred);
    }
    return;
  }
  case Stmt::Kind::case_stmt: {
    const Value sel = eval(*s.rhs);
    const CaseItem* fallback = nullptr;
    for (const auto& item : s.items) {
      if (item.labels.empty()) {
        fallback = &item;
        continue;
      }
      if (sel.has_x()) {
        continue;
      }
      for (const auto& label : item.labels) {
        const Value lv = eval(*label);
        if (!lv.has_x() && lv.bits == sel.bits) {
          exec(*item.body, deferred);
          return;
        }
      }
    }
    if (fallback != nullptr) {
      exec(*fallback->body, deferred);
    }
    return;
  }
  }
}

void Simulator::settle()
{
  for (int iter = 0; iter < 64; ++iter) {
    const auto before = env_;
    for (const auto& a : mod_.assigns) {
      write(*a.lhs, eval(*a.rhs), nullptr);
    }
    for (const auto& b : mod_.blocks) {
      if (b.combinational) {
        exec(*b.body, nullptr);
      }
    }
    if (env_ == before) {
      return;
    }
  }
  throw EvalError("combinational logic did not settle");
}

void Simulator::posedge(const std::string& signal)
{
  // Inputs may have changed since the last settle.
  settle();
  std::map<std::string, Value> deferred;
  for (const auto& b : mod_.blocks) {
    if (!b.combinational && std::find(b.posedges.begin(), b.posedges.end(), signal) != b.posedges.end()) {
      exec(*b.body, &deferred);
    }
  }
  for (const auto& [name, v] : deferred) {
    env_[name] = v;
  }
  settle();
}

} // namespace hdlforge::vlog
