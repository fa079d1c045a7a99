#pragma once

/**
 * @file dsl.hpp
 * @brief Manifold-presentation text format: lexer, parser, canonical printer.
 *
 *   document    = header stmt*
 *   header      = "manifold" STRING
 *   stmt        = params | dim | frame | metric | bracket | connection
 *               | contact | submanifold | claim
 *   params      = "params" IDENT ("," IDENT)*
 *   dim         = "dim" INT
 *   frame       = "frame" IDENT+
 *   metric      = "metric" ("diag" "(" rational ("," rational)* ")" | entry+)
 *   entry       = "(" IDENT "," IDENT ")" "=" rational
 *   bracket     = "bracket" "[" IDENT "," IDENT "]" "=" vexpr
 *   connection  = "connection" IDENT "{" (IDENT IDENT "=" vexpr ";")* "}"
 *   contact     = "contact" "{" ("phi" IDENT "=" vexpr ";")* "xi" "=" IDENT ";" "}"
 *   submanifold = "submanifold" IDENT "{" "tangent" IDENT ("," IDENT)* ";" "}"
 *   claim       = "claim" STRING claim-body
 *   claim-body  = "scalar" src "=" sexpr
 *               | "ricci" src "(" IDENT "," IDENT ")" "=" sexpr
 *               | "curvature" src "(" IDENT "," IDENT ")" IDENT "=" vexpr
 *               | "connection" src IDENT IDENT "=" vexpr
 *               | "einstein" src "=" sexpr
 *               | "sectional" src "(" IDENT "," IDENT ")" "=" sexpr
 *               | "soliton" KIND src vexpr "lambda" "=" sexpr ["omega" "=" sexpr]
 *   src         = IDENT | "dual" "(" IDENT ")" | "stat" "(" IDENT ")" | "lc"
 *
 * Expressions use + - * / ^ and parentheses over numbers, parameters and
 * frame names. They are typed: a frame name is a vector, everything else a
 * scalar; the literal 0 also serves as the zero vector. Division only by a
 * nonzero constant. "#" starts a line comment.
 *
 * Syntax errors abort at the first offending token; reference and type
 * errors are collected and reported together.
 */

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "statman/errors.hpp"
#include "statman/frame_algebra.hpp"
#include "statman/soliton.hpp"
#include "statman/structures.hpp"

namespace statman {

struct Span {
  int line = 0;
  int col = 0;
  int length = 0;
};

struct Diagnostic {
  Span span;
  std::string kind;  ///< "lexical", "syntax", "reference", "type"
  std::string message;

  std::string str() const {
    return std::to_string(span.line) + ":" + std::to_string(span.col) + ": " + kind + " error: " + message;
  }
};

class ParseError : public StructuralError {
 public:
  explicit ParseError(std::vector<Diagnostic> diags) : StructuralError(render(diags)), diagnostics_(std::move(diags)) {}
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  static std::string render(const std::vector<Diagnostic>& d) {
    std::string s;
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "\n" : "") + d[i].str();
    return s;
  }
  std::vector<Diagnostic> diagnostics_;
};

// ---------------------------------------------------------------------------
// Document model (resolved form)

struct SourceRef {
  enum class Kind { plain, dual, statistical, levi_civita };
  Kind kind = Kind::plain;
  std::string connection;

  std::string str() const {
    switch (kind) {
      case Kind::plain: return connection;
      case Kind::dual: return "dual(" + connection + ")";
      case Kind::statistical: return "stat(" + connection + ")";
      case Kind::levi_civita: return "lc";
    }
    return "?";
  }
  friend bool operator==(const SourceRef&, const SourceRef&) = default;
};

enum class ClaimKind { scalar, ricci, curvature, connection, einstein, sectional, soliton };

inline const char* to_string(ClaimKind k) {
  switch (k) {
    case ClaimKind::scalar: return "scalar";
    case ClaimKind::ricci: return "ricci";
    case ClaimKind::curvature: return "curvature";
    case ClaimKind::connection: return "connection";
    case ClaimKind::einstein: return "einstein";
    case ClaimKind::sectional: return "sectional";
    case ClaimKind::soliton: return "soliton";
  }
  return "?";
}

struct Claim {
  std::string id;
  ClaimKind kind = ClaimKind::scalar;
  SourceRef source;
  std::vector<std::string> args;  ///< frame names in order of appearance
  Poly scalar_value;              ///< scalar / ricci / einstein / sectional / soliton lambda
  VectorField vector_value;       ///< curvature / connection
  SolitonKind soliton_kind = SolitonKind::ricci;
  VectorField potential;
  std::optional<Poly> omega;
  Span span;

  friend bool operator==(const Claim& a, const Claim& b) {
    return a.id == b.id && a.kind == b.kind && a.source == b.source && a.args == b.args && a.scalar_value == b.scalar_value &&
           a.vector_value == b.vector_value && a.soliton_kind == b.soliton_kind && a.potential == b.potential && a.omega == b.omega;
  }
};

struct ConnectionBlock {
  std::string name;
  Connection table;
  Span span;
  friend bool operator==(const ConnectionBlock& a, const ConnectionBlock& b) { return a.name == b.name && a.table == b.table; }
};

struct ContactBlock {
  Endomorphism phi;
  std::string xi;
  Span span;
  friend bool operator==(const ContactBlock& a, const ContactBlock& b) { return a.phi == b.phi && a.xi == b.xi; }
};

struct SubmanifoldBlock {
  std::string name;
  std::vector<std::string> tangent;
  Span span;
  friend bool operator==(const SubmanifoldBlock& a, const SubmanifoldBlock& b) { return a.name == b.name && a.tangent == b.tangent; }
};

struct ManifoldDoc {
  std::string source;
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> frame;
  Metric metric;
  Brackets brackets;
  std::vector<ConnectionBlock> connections;
  std::optional<ContactBlock> contact;
  std::vector<SubmanifoldBlock> submanifolds;
  std::vector<Claim> claims;
  /// Source spans keyed by "bracket e1 xi", "connection nabla e1 xi", "claim id", ...
  std::map<std::string, Span> spans;

  ParamsPtr param_ptr() const { return make_params(params); }

  FramePresentation presentation() const {
    FramePresentation p;
    p.name = name;
    p.params = param_ptr();
    p.frame = frame;
    p.metric = metric;
    p.brackets = brackets;
    for (const auto& c : connections) p.connections[c.name] = c.table;
    validate(p);
    return p;
  }

  std::optional<ContactTriple> contact_triple() const {
    if (!contact) return std::nullopt;
    ContactTriple ct;
    ct.phi = contact->phi;
    for (std::size_t i = 0; i < frame.size(); ++i)
      if (frame[i] == contact->xi) ct.xi = VectorField::basis(frame.size(), i);
    ct.xi = ct.xi.size() ? ct.xi : VectorField(frame.size());
    for (auto& c : ct.xi.coeffs) c = c.rebased(param_ptr());
    return ct;
  }

  const SubmanifoldBlock* submanifold(const std::string& n) const {
    for (const auto& s : submanifolds)
      if (s.name == n) return &s;
    return nullptr;
  }

  /// Structural identity: every resolved field, ignoring source text and spans.
  friend bool operator==(const ManifoldDoc& a, const ManifoldDoc& b) {
    return a.name == b.name && a.params == b.params && a.frame == b.frame && a.metric == b.metric && a.brackets == b.brackets &&
           a.connections == b.connections && a.contact == b.contact && a.submanifolds == b.submanifolds && a.claims == b.claims;
  }
};

// ---------------------------------------------------------------------------
// Lexer

namespace dsl_detail {

enum class Tok { ident, string, number, punct, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  Span span;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t t = 0; t < k; ++t, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.span = {line, col, 1};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::ident;
      t.text = src.substr(i, j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      t.kind = Tok::number;
      t.text = src.substr(i, j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') throw ParseError({{t.span, "lexical", "unterminated string"}});
      t.kind = Tok::string;
      t.text = src.substr(i + 1, j - i - 1);
      t.span.length = static_cast<int>(j - i + 1);
      out.push_back(t);
      advance(j - i + 1);
      continue;
    } else if (std::string("[](){},;=+-*/^").find(c) != std::string::npos) {
      t.kind = Tok::punct;
      t.text = std::string(1, c);
    } else {
      throw ParseError({{t.span, "lexical", std::string("unexpected character '") + c + "'"}});
    }
    t.span.length = static_cast<int>(t.text.size());
    out.push_back(t);
    advance(t.text.size());
  }
  Token end;
  end.kind = Tok::end;
  end.span = {line, col, 0};
  out.push_back(end);
  return out;
}

/// Typed expression value.
struct Value {
  bool vector = false;
  bool literal_zero = false;
  Poly scalar;
  VectorField vec;
  Span span;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) { doc_.source = text; }

  /// Expression mode: names resolve against an already parsed document.
  Parser(const std::string& text, const ManifoldDoc& context) : toks_(lex(text)) {
    doc_.params = context.params;
    doc_.frame = context.frame;
    params_ = context.param_ptr();
    tables_ready_ = true;
  }

  Value standalone_expr() {
    Value v = expr();
    if (peek().kind != Tok::end) syntax(peek(), "end of expression");
    if (!diags_.empty()) throw ParseError(diags_);
    return v;
  }

  ManifoldDoc run() {
    expect_keyword("manifold");
    doc_.name = expect(Tok::string, "manifold name string").text;
    params_ = make_params({});
    while (peek().kind != Tok::end) statement();
    finish();
    if (!diags_.empty()) {
      std::stable_sort(diags_.begin(), diags_.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::pair(a.span.line, a.span.col) < std::pair(b.span.line, b.span.col);
      });
      throw ParseError(diags_);
    }
    return std::move(doc_);
  }

 private:
  // --- token helpers
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool at_punct(const char* p) const { return peek().kind == Tok::punct && peek().text == p; }
  bool at_keyword(const char* k) const { return peek().kind == Tok::ident && peek().text == k; }

  [[noreturn]] void syntax(const Token& t, const std::string& what) {
    std::vector<Diagnostic> all = diags_;
    const std::string got = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    all.push_back({t.span, "syntax", "expected " + what + ", found " + got});
    throw ParseError(all);
  }
  Token expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) syntax(peek(), what);
    return next();
  }
  Token expect_punct(const char* p) {
    if (!at_punct(p)) syntax(peek(), std::string("'") + p + "'");
    return next();
  }
  Token expect_keyword(const char* k) {
    if (!at_keyword(k)) syntax(peek(), std::string("'") + k + "'");
    return next();
  }
  void error(const Span& s, const std::string& kind, const std::string& msg) { diags_.push_back({s, kind, msg}); }

  // --- frame / params
  std::optional<std::size_t> frame_index(const Token& t, bool report = true) {
    for (std::size_t i = 0; i < doc_.frame.size(); ++i)
      if (doc_.frame[i] == t.text) return i;
    if (report) error(t.span, "reference", "undeclared frame vector '" + t.text + "'");
    return std::nullopt;
  }
  bool frame_declared() const { return !doc_.frame.empty(); }
  std::size_t n() const { return doc_.frame.size(); }
  Poly zero() const { return Poly::constant(params_, 0); }

  void ensure_tables() {
    if (tables_ready_) return;
    tables_ready_ = true;
    doc_.metric = Metric(n());
    doc_.brackets = Brackets(n(), zero());
  }

  // --- statements
  void statement() {
    const Token& t = peek();
    if (t.kind != Tok::ident) syntax(t, "statement keyword");
    if (t.text == "params") return params_stmt();
    if (t.text == "dim") return dim_stmt();
    if (t.text == "frame") return frame_stmt();
    if (t.text == "metric") return metric_stmt();
    if (t.text == "bracket") return bracket_stmt();
    if (t.text == "connection") return connection_stmt();
    if (t.text == "contact") return contact_stmt();
    if (t.text == "submanifold") return submanifold_stmt();
    if (t.text == "claim") return claim_stmt();
    syntax(t, "statement keyword");
  }

  void params_stmt() {
    const Token kw = next();
    if (!doc_.params.empty() || frame_declared()) error(kw.span, "reference", "params must be declared once, before the frame");
    do {
      const Token id = expect(Tok::ident, "parameter name");
      if (std::find(doc_.params.begin(), doc_.params.end(), id.text) != doc_.params.end())
        error(id.span, "reference", "parameter '" + id.text + "' declared twice");
      else doc_.params.push_back(id.text);
    } while (at_punct(",") && (next(), true));
    params_ = make_params(doc_.params);
  }

  void dim_stmt() {
    next();
    const Token num = expect(Tok::number, "dimension");
    if (num.text.find('.') != std::string::npos) syntax(num, "integer dimension");
    dim_ = std::stoul(num.text);
    dim_span_ = num.span;
  }

  void frame_stmt() {
    const Token kw = next();
    if (frame_declared()) error(kw.span, "reference", "frame declared twice");
    const bool fresh = !frame_declared();
    std::vector<std::string> names;
    while (peek().kind == Tok::ident && !is_statement_keyword(peek().text)) {
      const Token id = next();
      if (id.text == "0" || std::find(names.begin(), names.end(), id.text) != names.end())
        error(id.span, "reference", "frame vector '" + id.text + "' declared twice");
      else if (std::find(doc_.params.begin(), doc_.params.end(), id.text) != doc_.params.end())
        error(id.span, "reference", "frame vector '" + id.text + "' shadows a parameter");
      names.push_back(id.text);
    }
    if (names.empty()) syntax(peek(), "frame vector name");
    if (fresh) {
      doc_.frame = names;
      ensure_tables();
    }
  }

  static bool is_statement_keyword(const std::string& s) {
    static const char* kws[] = {"params", "dim", "frame", "metric", "bracket", "connection", "contact", "submanifold", "claim"};
    for (const char* k : kws)
      if (s == k) return true;
    return false;
  }

  void generate_frame() {
    for (std::size_t i = 1; i <= *dim_; ++i) doc_.frame.push_back("e" + std::to_string(i));
    ensure_tables();
  }

  bool require_frame(const Token& at) {
    if (frame_declared()) return true;
    if (dim_ && *dim_ > 0) {
      generate_frame();
      return true;
    }
    error(at.span, "reference", "'" + at.text + "' before the frame declaration");
    return false;
  }

  Rational rational_literal() {
    bool neg = false;
    if (at_punct("-")) {
      next();
      neg = true;
    }
    const Token num = expect(Tok::number, "rational number");
    Rational r = parse_rational(num.text);
    if (at_punct("/")) {
      next();
      const Token den = expect(Tok::number, "denominator");
      const Rational d = parse_rational(den.text);
      if (d == 0) {
        error(den.span, "type", "division by zero");
      } else {
        r /= d;
      }
    }
    return neg ? Rational(-r) : r;
  }

  void metric_stmt() {
    const Token kw = next();
    const bool ok = require_frame(kw);
    if (metric_seen_) error(kw.span, "reference", "metric declared twice");
    metric_seen_ = true;
    doc_.spans["metric"] = kw.span;
    if (at_keyword("diag")) {
      next();
      expect_punct("(");
      std::vector<Rational> vals{rational_literal()};
      while (at_punct(",")) {
        next();
        vals.push_back(rational_literal());
      }
      const Token close = expect_punct(")");
      if (!ok) return;
      if (vals.size() != n()) {
        error(close.span, "reference", "diag has " + std::to_string(vals.size()) + " entries for " + std::to_string(n()) + " frame vectors");
        return;
      }
      for (std::size_t i = 0; i < n(); ++i) doc_.metric(i, i) = vals[i];
      return;
    }
    if (!at_punct("(")) syntax(peek(), "'diag' or metric entry");
    std::map<std::pair<std::size_t, std::size_t>, Rational> seen;
    while (at_punct("(")) {
      next();
      const Token a = expect(Tok::ident, "frame vector");
      expect_punct(",");
      const Token b = expect(Tok::ident, "frame vector");
      expect_punct(")");
      expect_punct("=");
      const Rational r = rational_literal();
      if (!ok) continue;
      const auto ia = frame_index(a), ib = frame_index(b);
      if (!ia || !ib) continue;
      const auto key = std::minmax(*ia, *ib);
      if (seen.count(key)) {
        error(a.span, "reference", "metric entry (" + a.text + ", " + b.text + ") given twice");
        continue;
      }
      seen[key] = r;
      doc_.metric(*ia, *ib) = r;
      doc_.metric(*ib, *ia) = r;
    }
  }

  void bracket_stmt() {
    const Token kw = next();
    const bool ok = require_frame(kw);
    expect_punct("[");
    const Token x = expect(Tok::ident, "frame vector");
    expect_punct(",");
    const Token y = expect(Tok::ident, "frame vector");
    expect_punct("]");
    expect_punct("=");
    const Value v = vexpr();
    if (!ok) return;
    const auto ix = frame_index(x), iy = frame_index(y);
    if (!ix || !iy) return;
    const std::string key = "bracket " + doc_.frame[std::min(*ix, *iy)] + " " + doc_.frame[std::max(*ix, *iy)];
    if (doc_.spans.count(key)) {
      error(x.span, "reference", "bracket [" + x.text + ", " + y.text + "] given twice");
      return;
    }
    doc_.spans[key] = kw.span;
    if (*ix == *iy) {
      if (!v.vec.is_zero()) error(x.span, "reference", "bracket [" + x.text + ", " + x.text + "] must vanish");
      return;
    }
    for (std::size_t k = 0; k < n(); ++k) {
      doc_.brackets(*ix, *iy, k) = v.vec[k];
      doc_.brackets(*iy, *ix, k) = -v.vec[k];
    }
  }

  void connection_stmt() {
    const Token kw = next();
    const bool ok = require_frame(kw);
    const Token name = expect(Tok::ident, "connection name");
    ConnectionBlock block;
    block.name = name.text;
    block.span = name.span;
    block.table = Connection(ok ? n() : 0, ConnectionRole::given);
    for (auto& p : block.table.gamma.data()) p = zero();
    for (const auto& c : doc_.connections)
      if (c.name == name.text) error(name.span, "reference", "connection '" + name.text + "' declared twice");
    if (name.text == "lc") error(name.span, "reference", "'lc' is reserved for the Levi-Civita connection");
    expect_punct("{");
    while (!at_punct("}")) {
      const Token x = expect(Tok::ident, "frame vector or '}'");
      const Token y = expect(Tok::ident, "frame vector");
      expect_punct("=");
      const Value v = vexpr();
      expect_punct(";");
      if (!ok) continue;
      const auto ix = frame_index(x), iy = frame_index(y);
      if (!ix || !iy) continue;
      const std::string key = "connection " + name.text + " " + x.text + " " + y.text;
      if (doc_.spans.count(key)) {
        error(x.span, "reference", "entry " + x.text + " " + y.text + " of connection '" + name.text + "' given twice");
        continue;
      }
      doc_.spans[key] = x.span;
      for (std::size_t k = 0; k < n(); ++k) block.table.gamma(*ix, *iy, k) = v.vec[k];
    }
    expect_punct("}");
    doc_.spans["connection " + name.text] = name.span;
    if (ok) doc_.connections.push_back(std::move(block));
  }

  void contact_stmt() {
    const Token kw = next();
    const bool ok = require_frame(kw);
    if (doc_.contact) error(kw.span, "reference", "contact block declared twice");
    ContactBlock cb;
    cb.span = kw.span;
    cb.phi = Endomorphism(ok ? n() : 0, zero());
    expect_punct("{");
    std::vector<bool> seen(ok ? n() : 0, false);
    while (at_keyword("phi")) {
      next();
      const Token x = expect(Tok::ident, "frame vector");
      expect_punct("=");
      const Value v = vexpr();
      expect_punct(";");
      if (!ok) continue;
      const auto ix = frame_index(x);
      if (!ix) continue;
      if (seen[*ix]) {
        error(x.span, "reference", "phi " + x.text + " given twice");
        continue;
      }
      seen[*ix] = true;
      for (std::size_t k = 0; k < n(); ++k) cb.phi(*ix, k) = v.vec[k];
    }
    expect_keyword("xi");
    expect_punct("=");
    const Token xi = expect(Tok::ident, "frame vector");
    expect_punct(";");
    expect_punct("}");
    if (!ok) return;
    if (frame_index(xi)) cb.xi = xi.text;
    doc_.spans["contact"] = kw.span;
    if (!doc_.contact) doc_.contact = std::move(cb);
  }

  void submanifold_stmt() {
    const Token kw = next();
    const bool ok = require_frame(kw);
    const Token name = expect(Tok::ident, "submanifold name");
    SubmanifoldBlock sb;
    sb.name = name.text;
    sb.span = name.span;
    expect_punct("{");
    expect_keyword("tangent");
    do {
      const Token id = expect(Tok::ident, "frame vector");
      if (ok && frame_index(id)) {
        if (std::find(sb.tangent.begin(), sb.tangent.end(), id.text) != sb.tangent.end())
          error(id.span, "reference", "frame vector '" + id.text + "' repeated in tangent set");
        else sb.tangent.push_back(id.text);
      }
    } while (at_punct(",") && (next(), true));
    expect_punct(";");
    expect_punct("}");
    for (const auto& s : doc_.submanifolds)
      if (s.name == sb.name) error(name.span, "reference", "submanifold '" + sb.name + "' declared twice");
    doc_.spans["submanifold " + sb.name] = name.span;
    doc_.submanifolds.push_back(std::move(sb));
  }

  SourceRef source_ref() {
    SourceRef s;
    const Token t = expect(Tok::ident, "connection source");
    std::string target = t.text;
    Token target_tok = t;
    if (t.text == "lc") {
      s.kind = SourceRef::Kind::levi_civita;
      return s;
    }
    if ((t.text == "dual" || t.text == "stat") && at_punct("(")) {
      next();
      target_tok = expect(Tok::ident, "connection name");
      expect_punct(")");
      s.kind = t.text == "dual" ? SourceRef::Kind::dual : SourceRef::Kind::statistical;
      target = target_tok.text;
    }
    s.connection = target;
    bool found = false;
    for (const auto& c : doc_.connections)
      if (c.name == target) found = true;
    if (!found) error(target_tok.span, "reference", "unknown connection '" + target + "'");
    return s;
  }

  std::optional<std::size_t> frame_arg(Claim& c) {
    const Token t = expect(Tok::ident, "frame vector");
    c.args.push_back(t.text);
    return frame_index(t);
  }

  void pair_args(Claim& c) {
    expect_punct("(");
    frame_arg(c);
    expect_punct(",");
    frame_arg(c);
    expect_punct(")");
  }

  Poly scalar_rhs() {
    const Value v = vexpr_or_scalar();
    if (v.vector) {
      error(v.span, "type", "expected a scalar expression");
      return zero();
    }
    return v.scalar;
  }
  VectorField vector_rhs() {
    const Value v = vexpr();
    return v.vec;
  }

  void claim_stmt() {
    const Token kw = next();
    if (!require_frame(kw)) syntax(kw, "frame declaration before claims");
    Claim c;
    const Token id = expect(Tok::string, "claim id string");
    c.id = id.text;
    c.span = id.span;
    c.scalar_value = zero();
    c.vector_value = VectorField(n());
    c.potential = VectorField(n());
    for (auto* v : {&c.vector_value, &c.potential})
      for (auto& p : v->coeffs) p = zero();
    for (const auto& other : doc_.claims)
      if (other.id == c.id) error(id.span, "reference", "claim '" + c.id + "' declared twice");
    const Token kind = expect(Tok::ident, "claim kind");
    if (kind.text == "scalar" || kind.text == "einstein") {
      c.kind = kind.text == "scalar" ? ClaimKind::scalar : ClaimKind::einstein;
      c.source = source_ref();
      expect_punct("=");
      c.scalar_value = scalar_rhs();
    } else if (kind.text == "ricci" || kind.text == "sectional") {
      c.kind = kind.text == "ricci" ? ClaimKind::ricci : ClaimKind::sectional;
      c.source = source_ref();
      pair_args(c);
      expect_punct("=");
      c.scalar_value = scalar_rhs();
    } else if (kind.text == "curvature") {
      c.kind = ClaimKind::curvature;
      c.source = source_ref();
      pair_args(c);
      frame_arg(c);
      expect_punct("=");
      c.vector_value = vector_rhs();
    } else if (kind.text == "connection") {
      c.kind = ClaimKind::connection;
      c.source = source_ref();
      if (c.source.kind == SourceRef::Kind::statistical) error(kind.span, "reference", "stat(...) is not a connection");
      frame_arg(c);
      frame_arg(c);
      expect_punct("=");
      c.vector_value = vector_rhs();
    } else if (kind.text == "soliton") {
      c.kind = ClaimKind::soliton;
      const Token sk = expect(Tok::ident, "soliton kind");
      try {
        c.soliton_kind = parse_soliton_kind(sk.text);
      } catch (const StructuralError&) {
        error(sk.span, "reference", "unknown soliton kind '" + sk.text + "'");
      }
      c.source = source_ref();
      if (c.source.kind == SourceRef::Kind::levi_civita) error(sk.span, "reference", "soliton claims need a named connection");
      c.potential = vexpr().vec;
      expect_keyword("lambda");
      expect_punct("=");
      c.scalar_value = scalar_rhs();
      if (at_keyword("omega")) {
        next();
        expect_punct("=");
        c.omega = scalar_rhs();
      }
    } else {
      syntax(kind, "claim kind");
    }
    doc_.spans["claim " + c.id] = id.span;
    doc_.claims.push_back(std::move(c));
  }

  void finish() {
    if (!frame_declared()) {
      if (dim_) {
        generate_frame();
      } else {
        error(peek().span, "reference", "no frame declared");
        return;
      }
    }
    if (dim_ && *dim_ != n()) error(dim_span_, "reference", "dim " + std::to_string(*dim_) + " disagrees with " + std::to_string(n()) + " frame vectors");
    if (!metric_seen_) error(peek().span, "reference", "no metric declared");
    if (doc_.contact && doc_.contact->xi.empty()) error(doc_.contact->span, "reference", "contact block has no valid xi");
  }

  // --- expressions

  Value vexpr() {
    Value v = expr();
    if (!v.vector) {
      if (v.literal_zero || v.scalar.is_zero()) return as_zero_vector(v);
      error(v.span, "type", "expected a vector expression");
      return as_zero_vector(v);
    }
    return v;
  }
  Value vexpr_or_scalar() { return expr(); }

  Value as_zero_vector(const Value& v) {
    Value z;
    z.vector = true;
    z.vec = VectorField(n());
    for (auto& p : z.vec.coeffs) p = zero();
    z.span = v.span;
    return z;
  }

  Value expr() {
    Value lhs = term();
    while (at_punct("+") || at_punct("-")) {
      const bool plus = next().text == "+";
      Value rhs = term();
      lhs = add(lhs, rhs, plus);
    }
    return lhs;
  }

  Value add(Value a, Value b, bool plus) {
    if (a.vector != b.vector) {
      if (!a.vector && a.literal_zero) a = as_zero_vector(a);
      else if (!b.vector && b.literal_zero) b = as_zero_vector(b);
      else {
        error(b.span, "type", "cannot add a scalar and a vector");
        return a;
      }
    }
    Value r;
    r.vector = a.vector;
    r.span = a.span;
    if (r.vector) r.vec = plus ? a.vec + b.vec : a.vec - b.vec;
    else r.scalar = plus ? a.scalar + b.scalar : a.scalar - b.scalar;
    return r;
  }

  Value term() {
    Value lhs = unary();
    while (at_punct("*") || at_punct("/")) {
      const Token op = next();
      Value rhs = unary();
      if (op.text == "*") {
        if (lhs.vector && rhs.vector) {
          error(rhs.span, "type", "cannot multiply two vectors");
          continue;
        }
        Value r;
        r.span = lhs.span;
        if (lhs.vector) {
          r.vector = true;
          r.vec = rhs.scalar * lhs.vec;
        } else if (rhs.vector) {
          r.vector = true;
          r.vec = lhs.scalar * rhs.vec;
        } else {
          r.scalar = lhs.scalar * rhs.scalar;
        }
        lhs = r;
      } else {
        if (rhs.vector || !rhs.scalar.is_constant() || rhs.scalar.is_zero()) {
          error(rhs.span, "type", "division only by a nonzero constant");
          continue;
        }
        const Rational inv = Rational(1) / rhs.scalar.constant_term();
        Value r;
        r.span = lhs.span;
        r.vector = lhs.vector;
        if (lhs.vector) r.vec = Poly::constant(params_, inv) * lhs.vec;
        else r.scalar = lhs.scalar.scaled(inv);
        lhs = r;
      }
    }
    return lhs;
  }

  Value unary() {
    if (at_punct("-")) {
      const Token m = next();
      Value v = unary();
      v.span = m.span;
      v.literal_zero = false;
      if (v.vector) v.vec = -v.vec;
      else v.scalar = -v.scalar;
      return v;
    }
    return power();
  }

  Value power() {
    Value base = atom();
    if (at_punct("^")) {
      next();
      const Token e = expect(Tok::number, "integer exponent");
      if (e.text.find('.') != std::string::npos) syntax(e, "integer exponent");
      if (base.vector) {
        error(e.span, "type", "cannot raise a vector to a power");
        return base;
      }
      const unsigned long k = std::stoul(e.text);
      Poly r = Poly::constant(params_, 1);
      for (unsigned long i = 0; i < k; ++i) r = r * base.scalar;
      base.scalar = r;
      base.literal_zero = false;
    }
    return base;
  }

  Value atom() {
    const Token t = peek();
    Value v;
    v.span = t.span;
    if (t.kind == Tok::number) {
      next();
      v.scalar = Poly::constant(params_, parse_rational(t.text));
      v.literal_zero = v.scalar.is_zero();
      return v;
    }
    if (t.kind == Tok::ident) {
      next();
      for (const auto& p : doc_.params)
        if (p == t.text) {
          v.scalar = Poly::variable(params_, p);
          return v;
        }
      if (const auto i = frame_index(t, false)) {
        v.vector = true;
        v.vec = VectorField(n());
        for (auto& p : v.vec.coeffs) p = zero();
        v.vec[*i] = Poly::constant(params_, 1);
        return v;
      }
      error(t.span, "reference", "unknown name '" + t.text + "'");
      v.scalar = zero();
      return v;
    }
    if (at_punct("(")) {
      next();
      Value inner = expr();
      expect_punct(")");
      inner.span = t.span;
      inner.literal_zero = false;
      return inner;
    }
    syntax(t, "expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ManifoldDoc doc_;
  ParamsPtr params_;
  std::vector<Diagnostic> diags_;
  std::optional<std::size_t> dim_;
  Span dim_span_;
  bool tables_ready_ = false;
  bool metric_seen_ = false;
};

}  // namespace dsl_detail

/// Parses and resolves a document; throws ParseError with every diagnostic.
inline ManifoldDoc parse(const std::string& text) { return dsl_detail::Parser(text).run(); }

/// Parses a vector expression over the frame of `doc`; "0" is the zero field.
inline VectorField parse_vector(const ManifoldDoc& doc, const std::string& text) {
  dsl_detail::Parser p(text, doc);
  dsl_detail::Value v = p.standalone_expr();
  if (!v.vector) {
    if (!v.scalar.is_zero()) throw ParseError({{v.span, "type", "expected a vector expression"}});
    VectorField z(doc.frame.size());
    for (auto& c : z.coeffs) c = Poly::constant(doc.param_ptr(), 0);
    return z;
  }
  return v.vec;
}

/// Parses a scalar expression over the parameters of `doc`.
inline Poly parse_scalar(const ManifoldDoc& doc, const std::string& text) {
  dsl_detail::Parser p(text, doc);
  dsl_detail::Value v = p.standalone_expr();
  if (v.vector) throw ParseError({{v.span, "type", "expected a scalar expression"}});
  return v.scalar;
}

// ---------------------------------------------------------------------------
// Canonical printer

namespace dsl_detail {

inline std::string scalar_str(const Poly& p) { return p.str(); }

inline std::string vec_str(const ManifoldDoc& d, const VectorField& v) {
  FramePresentation tmp;
  tmp.frame = d.frame;
  return detail::vector_str(tmp, v);
}

}  // namespace dsl_detail

inline std::string print(const ManifoldDoc& d) {
  using dsl_detail::scalar_str;
  using dsl_detail::vec_str;
  std::ostringstream out;
  const std::size_t n = d.frame.size();
  out << "manifold \"" << d.name << "\"\n";
  if (!d.params.empty()) {
    out << "params ";
    for (std::size_t i = 0; i < d.params.size(); ++i) out << (i ? ", " : "") << d.params[i];
    out << "\n";
  }
  out << "frame";
  for (const auto& f : d.frame) out << " " << f;
  out << "\n";
  bool diagonal = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && d.metric(i, j) != 0) diagonal = false;
  if (diagonal) {
    out << "metric diag(";
    for (std::size_t i = 0; i < n; ++i) out << (i ? ", " : "") << rational_str(d.metric(i, i));
    out << ")\n";
  } else {
    out << "metric";
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (d.metric(i, j) != 0) out << " (" << d.frame[i] << ", " << d.frame[j] << ") = " << rational_str(d.metric(i, j));
    out << "\n";
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      VectorField v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = d.brackets(i, j, k);
      if (!v.is_zero()) out << "bracket [" << d.frame[i] << ", " << d.frame[j] << "] = " << vec_str(d, v) << "\n";
    }
  for (const auto& c : d.connections) {
    out << "connection " << c.name << " {\n";
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const VectorField v = c.table.apply(i, j);
        if (!v.is_zero()) out << "  " << d.frame[i] << " " << d.frame[j] << " = " << vec_str(d, v) << ";\n";
      }
    out << "}\n";
  }
  if (d.contact) {
    out << "contact {\n";
    for (std::size_t i = 0; i < n; ++i) {
      VectorField v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = d.contact->phi(i, k);
      if (!v.is_zero()) out << "  phi " << d.frame[i] << " = " << vec_str(d, v) << ";\n";
    }
    out << "  xi = " << d.contact->xi << ";\n}\n";
  }
  for (const auto& s : d.submanifolds) {
    out << "submanifold " << s.name << " {\n  tangent ";
    for (std::size_t i = 0; i < s.tangent.size(); ++i) out << (i ? ", " : "") << s.tangent[i];
    out << ";\n}\n";
  }
  for (const auto& c : d.claims) {
    out << "claim \"" << c.id << "\" " << to_string(c.kind) << " ";
    switch (c.kind) {
      case ClaimKind::scalar:
      case ClaimKind::einstein:
        out << c.source.str() << " = " << scalar_str(c.scalar_value);
        break;
      case ClaimKind::ricci:
      case ClaimKind::sectional:
        out << c.source.str() << " (" << c.args[0] << ", " << c.args[1] << ") = " << scalar_str(c.scalar_value);
        break;
      case ClaimKind::curvature:
        out << c.source.str() << " (" << c.args[0] << ", " << c.args[1] << ") " << c.args[2] << " = " << vec_str(d, c.vector_value);
        break;
      case ClaimKind::connection:
        out << c.source.str() << " " << c.args[0] << " " << c.args[1] << " = " << vec_str(d, c.vector_value);
        break;
      case ClaimKind::soliton: {
        std::string kind = to_string(c.soliton_kind);
        std::replace(kind.begin(), kind.end(), '-', '_');
        out << kind << " " << c.source.str() << " " << vec_str(d, c.potential) << " lambda = " << scalar_str(c.scalar_value);
        if (c.omega) out << " omega = " << scalar_str(*c.omega);
        break;
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace statman
