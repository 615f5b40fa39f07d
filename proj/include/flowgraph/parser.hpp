#pragma once

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "flowgraph/ast.hpp"
#include "flowgraph/error.hpp"
#include "flowgraph/lexer.hpp"

namespace flowgraph {

namespace detail {

// Recursive descent over the token stream. Name binding and the int/boolean
// type rules are checked while parsing, so a returned tree is always well
// scoped and well typed.
class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : tokens_(tokens) {}

  AstNode parse_unit() {
    AstNode unit;
    unit.kind = AstKind::CompilationUnit;
    if (at_end()) {
      throw Error(ErrorKind::Syntax, "expected 'class', found end of input", eof_pos());
    }
    unit.span.begin = peek().pos();
    if (peek().is(TokenKind::Keyword, "package") || peek().is(TokenKind::Keyword, "import")) {
      throw Error(ErrorKind::OutsideSubset,
                  "'" + peek().lexeme + "' declarations are not supported", peek().pos());
    }
    unit.children.push_back(parse_class());
    if (!at_end()) {
      if (starts_modifiers_or(peek(), "class") || peek().is(TokenKind::Keyword, "interface") ||
          peek().is(TokenKind::Keyword, "enum")) {
        throw Error(ErrorKind::OutsideSubset,
                    "a compilation unit holds exactly one class", peek().pos());
      }
      throw unexpected("end of input");
    }
    unit.span.end = unit.children.front().span.end;
    return unit;
  }

 private:
  struct Binding {
    std::string name;
    ScalarType type;
  };

  // ---- token helpers -----------------------------------------------------

  bool at_end() const { return pos_ >= tokens_.size(); }

  const Token& peek(std::size_t ahead = 0) const {
    static const Token kEof{TokenKind::Punctuation, "<eof>", 0, 0};
    return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : kEof;
  }

  bool peek_is(TokenKind kind, std::string_view text, std::size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() && peek(ahead).is(kind, text);
  }

  SourcePos eof_pos() const {
    if (tokens_.empty()) return {1, 1};
    return tokens_.back().end();
  }

  SourcePos last_end() const { return tokens_[pos_ - 1].end(); }

  Error unexpected(std::string_view expected) const {
    if (at_end()) {
      return Error(ErrorKind::Syntax,
                   "expected " + std::string(expected) + ", found end of input", eof_pos());
    }
    return Error(ErrorKind::Syntax,
                 "expected " + std::string(expected) + ", found '" + peek().lexeme + "'",
                 peek().pos());
  }

  const Token& expect(TokenKind kind, std::string_view text) {
    if (!peek_is(kind, text)) throw unexpected("'" + std::string(text) + "'");
    return tokens_[pos_++];
  }

  const Token& expect_identifier() {
    if (at_end() || peek().kind != TokenKind::Identifier) throw unexpected("identifier");
    return tokens_[pos_++];
  }

  bool accept(TokenKind kind, std::string_view text) {
    if (peek_is(kind, text)) {
      ++pos_;
      return true;
    }
    return false;
  }

  static bool is_modifier(const Token& t) {
    if (t.kind != TokenKind::Keyword) return false;
    static constexpr std::string_view kAll[] = {
        "public",   "private",   "protected",    "static",   "final",
        "abstract", "native",    "synchronized", "transient", "volatile",
        "strictfp"};
    return std::find(std::begin(kAll), std::end(kAll), t.lexeme) != std::end(kAll);
  }

  static bool is_supported_modifier(const Token& t) {
    return t.lexeme == "public" || t.lexeme == "private" || t.lexeme == "protected" ||
           t.lexeme == "static" || t.lexeme == "final";
  }

  bool starts_modifiers_or(const Token& t, std::string_view kw) const {
    return is_modifier(t) || t.is(TokenKind::Keyword, kw);
  }

  std::vector<std::string> parse_modifiers() {
    std::vector<std::string> mods;
    while (!at_end() && is_modifier(peek())) {
      if (!is_supported_modifier(peek())) {
        throw Error(ErrorKind::OutsideSubset,
                    "modifier '" + peek().lexeme + "' is not supported", peek().pos());
      }
      if (std::find(mods.begin(), mods.end(), peek().lexeme) != mods.end()) {
        throw Error(ErrorKind::Syntax, "repeated modifier '" + peek().lexeme + "'",
                    peek().pos());
      }
      mods.push_back(peek().lexeme);
      ++pos_;
    }
    return mods;
  }

  // ---- declarations ------------------------------------------------------

  AstNode parse_class() {
    AstNode cls;
    cls.kind = AstKind::ClassDecl;
    cls.span.begin = peek().pos();
    cls.modifiers = parse_modifiers();
    if (peek_is(TokenKind::Keyword, "interface") || peek_is(TokenKind::Keyword, "enum")) {
      throw Error(ErrorKind::OutsideSubset, "'" + peek().lexeme + "' is not supported",
                  peek().pos());
    }
    expect(TokenKind::Keyword, "class");
    cls.name = expect_identifier().lexeme;
    if (peek_is(TokenKind::Keyword, "extends") || peek_is(TokenKind::Keyword, "implements") ||
        peek_is(TokenKind::Operator, "<")) {
      throw Error(ErrorKind::OutsideSubset, "class inheritance and generics are not supported",
                  peek().pos());
    }
    expect(TokenKind::Punctuation, "{");
    if (peek_is(TokenKind::Punctuation, "}")) {
      throw Error(ErrorKind::OutsideSubset, "the class must declare exactly one method",
                  peek().pos());
    }
    cls.children.push_back(parse_method());
    if (!peek_is(TokenKind::Punctuation, "}")) {
      if (at_end()) throw unexpected("'}'");
      throw Error(ErrorKind::OutsideSubset, "the class must declare exactly one method",
                  peek().pos());
    }
    ++pos_;
    cls.span.end = last_end();
    return cls;
  }

  ScalarType parse_type(bool allow_void) {
    const Token& t = peek();
    if (t.is(TokenKind::Keyword, "int")) {
      ++pos_;
      return ScalarType::Int;
    }
    if (t.is(TokenKind::Keyword, "boolean")) {
      ++pos_;
      return ScalarType::Boolean;
    }
    if (allow_void && t.is(TokenKind::Keyword, "void")) {
      ++pos_;
      return ScalarType::Void;
    }
    if (t.kind == TokenKind::Identifier ||
        (t.kind == TokenKind::Keyword &&
         (t.lexeme == "long" || t.lexeme == "short" || t.lexeme == "byte" ||
          t.lexeme == "char" || t.lexeme == "float" || t.lexeme == "double" ||
          t.lexeme == "void"))) {
      throw Error(ErrorKind::OutsideSubset, "type '" + t.lexeme + "' is not supported",
                  t.pos());
    }
    throw unexpected("type");
  }

  AstNode parse_method() {
    AstNode method;
    method.kind = AstKind::MethodDecl;
    method.span.begin = peek().pos();
    method.modifiers = parse_modifiers();
    if (peek_is(TokenKind::Keyword, "class")) {
      throw Error(ErrorKind::OutsideSubset, "nested classes are not supported", peek().pos());
    }
    if (peek().kind == TokenKind::Identifier && peek_is(TokenKind::Punctuation, "(", 1)) {
      throw Error(ErrorKind::OutsideSubset, "constructors are not supported", peek().pos());
    }
    method.type = parse_type(/*allow_void=*/true);
    method.name = expect_identifier().lexeme;
    if (!peek_is(TokenKind::Punctuation, "(")) {
      if (peek_is(TokenKind::Operator, "=") || peek_is(TokenKind::Punctuation, ";") ||
          peek_is(TokenKind::Punctuation, ",")) {
        throw Error(ErrorKind::OutsideSubset, "field declarations are not supported",
                    peek().pos());
      }
      throw unexpected("'('");
    }
    ++pos_;
    return_type_ = method.type;
    scopes_.clear();
    scopes_.emplace_back();
    if (!peek_is(TokenKind::Punctuation, ")")) {
      do {
        AstNode param;
        param.kind = AstKind::ParamDecl;
        param.span.begin = peek().pos();
        if (peek_is(TokenKind::Keyword, "final")) {
          throw Error(ErrorKind::OutsideSubset, "parameter modifiers are not supported",
                      peek().pos());
        }
        param.type = parse_type(/*allow_void=*/false);
        const Token& name = expect_identifier();
        param.name = name.lexeme;
        param.span.end = name.end();
        if (peek_is(TokenKind::Punctuation, "[")) {
          throw Error(ErrorKind::OutsideSubset, "arrays are not supported", peek().pos());
        }
        declare(param.name, param.type, name.pos());
        method.children.push_back(std::move(param));
      } while (accept(TokenKind::Punctuation, ","));
    }
    expect(TokenKind::Punctuation, ")");
    if (peek_is(TokenKind::Keyword, "throws")) {
      throw Error(ErrorKind::OutsideSubset, "throws clauses are not supported", peek().pos());
    }
    if (!peek_is(TokenKind::Punctuation, "{")) throw unexpected("'{'");
    method.children.push_back(parse_block());
    method.span.end = last_end();
    return method;
  }

  // ---- statements --------------------------------------------------------

  void declare(const std::string& name, ScalarType type, SourcePos where) {
    for (const auto& scope : scopes_) {
      for (const auto& b : scope) {
        if (b.name == name) {
          throw Error(ErrorKind::DuplicateVariable,
                      "variable '" + name + "' is already defined in this scope", where);
        }
      }
    }
    scopes_.back().push_back({name, type});
  }

  ScalarType lookup(const Token& name) const {
    for (auto scope = scopes_.rbegin(); scope != scopes_.rend(); ++scope) {
      for (const auto& b : *scope) {
        if (b.name == name.lexeme) return b.type;
      }
    }
    throw Error(ErrorKind::UnboundVariable, "cannot resolve variable '" + name.lexeme + "'",
                name.pos());
  }

  AstNode parse_block() {
    AstNode block;
    block.kind = AstKind::BlockStmt;
    block.span.begin = expect(TokenKind::Punctuation, "{").pos();
    scopes_.emplace_back();
    while (!peek_is(TokenKind::Punctuation, "}")) {
      if (at_end()) throw unexpected("'}'");
      block.children.push_back(parse_statement(/*allow_decl=*/true));
    }
    ++pos_;
    scopes_.pop_back();
    block.span.end = last_end();
    return block;
  }

  [[noreturn]] void unsupported_statement(const Token& t, std::string_view what) const {
    throw Error(ErrorKind::OutsideSubset, std::string(what) + " is not supported", t.pos());
  }

  AstNode parse_statement(bool allow_decl) {
    const Token& t = peek();
    if (at_end()) throw unexpected("statement");

    if (t.is(TokenKind::Punctuation, "{")) return parse_block();
    if (t.is(TokenKind::Punctuation, ";")) unsupported_statement(t, "the empty statement");

    if (t.kind == TokenKind::Keyword) {
      if (t.lexeme == "if") return parse_if();
      if (t.lexeme == "while") return parse_while();
      if (t.lexeme == "return") return parse_return();
      if (t.lexeme == "break" || t.lexeme == "continue") return parse_jump();
      if (t.lexeme == "int" || t.lexeme == "boolean") {
        if (!allow_decl) {
          throw Error(ErrorKind::Syntax,
                      "a variable declaration is not allowed here; wrap it in a block",
                      t.pos());
        }
        return parse_var_decl();
      }
      if (t.lexeme == "final") unsupported_statement(t, "'final' local variables");
      if (t.lexeme == "for") unsupported_statement(t, "the 'for' statement");
      if (t.lexeme == "do") unsupported_statement(t, "the 'do' statement");
      if (t.lexeme == "switch") unsupported_statement(t, "the 'switch' statement");
      if (t.lexeme == "try") unsupported_statement(t, "the 'try' statement");
      if (t.lexeme == "throw") unsupported_statement(t, "the 'throw' statement");
      if (t.lexeme == "else") throw Error(ErrorKind::Syntax, "'else' without 'if'", t.pos());
      unsupported_statement(t, "'" + t.lexeme + "'");
    }

    if (t.kind == TokenKind::Operator && (t.lexeme == "++" || t.lexeme == "--")) {
      unsupported_statement(t, "prefix " + t.lexeme);
    }

    if (t.kind == TokenKind::Identifier) {
      const Token& next = peek(1);
      if (peek_is(TokenKind::Punctuation, ":", 1)) return parse_labeled();
      if (peek_is(TokenKind::Operator, "=", 1)) return parse_assign();
      if (peek_is(TokenKind::Operator, "++", 1) || peek_is(TokenKind::Operator, "--", 1)) {
        return parse_incdec();
      }
      if (pos_ + 1 < tokens_.size()) {
        if (next.kind == TokenKind::Operator && next.lexeme.size() >= 2 &&
            next.lexeme.back() == '=' && next.lexeme != "==" && next.lexeme != "!=" &&
            next.lexeme != "<=" && next.lexeme != ">=") {
          unsupported_statement(next, "compound assignment '" + next.lexeme + "'");
        }
        if (next.is(TokenKind::Punctuation, "(")) unsupported_statement(t, "method invocation");
        if (next.is(TokenKind::Punctuation, ".") || next.is(TokenKind::Punctuation, "[")) {
          unsupported_statement(next, "member and array access");
        }
        if (next.kind == TokenKind::Identifier) {
          unsupported_statement(t, "type '" + t.lexeme + "'");
        }
      }
    }
    throw unexpected("statement");
  }

  AstNode parse_var_decl() {
    AstNode decl;
    decl.kind = AstKind::VarDeclStmt;
    decl.span.begin = peek().pos();
    decl.type = parse_type(/*allow_void=*/false);
    const Token& name = expect_identifier();
    decl.name = name.lexeme;
    if (peek_is(TokenKind::Punctuation, "[")) unsupported_statement(peek(), "arrays");
    if (accept(TokenKind::Operator, "=")) {
      AstNode init = parse_expression();
      require_type(init, decl.type, "initializer of '" + decl.name + "'");
      decl.children.push_back(std::move(init));
    }
    if (peek_is(TokenKind::Punctuation, ",")) {
      unsupported_statement(peek(), "declaring several variables in one statement");
    }
    expect(TokenKind::Punctuation, ";");
    declare(decl.name, decl.type, name.pos());
    decl.span.end = last_end();
    return decl;
  }

  AstNode parse_assign() {
    AstNode assign;
    assign.kind = AstKind::AssignStmt;
    const Token& name = tokens_[pos_++];
    assign.span.begin = name.pos();
    assign.name = name.lexeme;
    ScalarType target = lookup(name);
    expect(TokenKind::Operator, "=");
    AstNode value = parse_expression();
    require_type(value, target, "assignment to '" + assign.name + "'");
    assign.children.push_back(std::move(value));
    expect(TokenKind::Punctuation, ";");
    assign.span.end = last_end();
    return assign;
  }

  AstNode parse_incdec() {
    AstNode stmt;
    stmt.kind = AstKind::IncDecStmt;
    const Token& name = tokens_[pos_++];
    stmt.span.begin = name.pos();
    stmt.name = name.lexeme;
    if (lookup(name) != ScalarType::Int) {
      throw Error(ErrorKind::TypeMismatch,
                  "'" + name.lexeme + "' must be an int to be incremented or decremented",
                  name.pos());
    }
    stmt.op = tokens_[pos_++].lexeme;
    expect(TokenKind::Punctuation, ";");
    stmt.span.end = last_end();
    return stmt;
  }

  AstNode parse_return() {
    AstNode ret;
    ret.kind = AstKind::ReturnStmt;
    const Token& kw = tokens_[pos_++];
    ret.span.begin = kw.pos();
    if (!peek_is(TokenKind::Punctuation, ";")) {
      AstNode value = parse_expression();
      if (return_type_ == ScalarType::Void) {
        throw Error(ErrorKind::TypeMismatch, "a void method cannot return a value",
                    value.span.begin);
      }
      require_type(value, return_type_, "return value");
      ret.children.push_back(std::move(value));
    } else if (return_type_ != ScalarType::Void) {
      throw Error(ErrorKind::TypeMismatch, "missing return value", kw.pos());
    }
    expect(TokenKind::Punctuation, ";");
    ret.span.end = last_end();
    return ret;
  }

  AstNode parse_jump() {
    AstNode jump;
    const Token& kw = tokens_[pos_++];
    jump.kind = kw.lexeme == "break" ? AstKind::BreakStmt : AstKind::ContinueStmt;
    jump.span.begin = kw.pos();
    if (peek().kind == TokenKind::Identifier && !at_end()) {
      jump.name = tokens_[pos_++].lexeme;
    }
    expect(TokenKind::Punctuation, ";");
    jump.span.end = last_end();
    return jump;
  }

  AstNode parse_labeled() {
    AstNode labeled;
    labeled.kind = AstKind::LabeledStmt;
    const Token& name = tokens_[pos_];
    labeled.span.begin = name.pos();
    labeled.name = name.lexeme;
    pos_ += 2;
    labeled.children.push_back(parse_statement(/*allow_decl=*/false));
    labeled.span.end = labeled.children.back().span.end;
    return labeled;
  }

  AstNode parse_condition() {
    expect(TokenKind::Punctuation, "(");
    AstNode cond = parse_expression();
    require_type(cond, ScalarType::Boolean, "condition");
    expect(TokenKind::Punctuation, ")");
    return cond;
  }

  AstNode parse_if() {
    AstNode stmt;
    stmt.kind = AstKind::IfStmt;
    stmt.span.begin = tokens_[pos_++].pos();
    stmt.children.push_back(parse_condition());
    stmt.children.push_back(parse_statement(/*allow_decl=*/false));
    if (accept(TokenKind::Keyword, "else")) {
      stmt.children.push_back(parse_statement(/*allow_decl=*/false));
    }
    stmt.span.end = stmt.children.back().span.end;
    return stmt;
  }

  AstNode parse_while() {
    AstNode stmt;
    stmt.kind = AstKind::WhileStmt;
    stmt.span.begin = tokens_[pos_++].pos();
    stmt.children.push_back(parse_condition());
    stmt.children.push_back(parse_statement(/*allow_decl=*/false));
    stmt.span.end = stmt.children.back().span.end;
    return stmt;
  }

  // ---- expressions -------------------------------------------------------
  //
  //   or       := and ('||' and)*
  //   and      := equality ('&&' equality)*
  //   equality := relational (('==' | '!=') relational)*
  //   relation := additive (('<' | '>' | '<=' | '>=') additive)?
  //   additive := term (('+' | '-') term)*
  //   term     := unary (('*' | '/') unary)*
  //   unary    := ('-' | '!') unary | primary
  //   primary  := int | bool | ident | '(' or ')'

  void require_type(const AstNode& expr, ScalarType want, std::string_view context) const {
    if (expr.type != want) {
      throw Error(ErrorKind::TypeMismatch,
                  std::string(context) + " must be " + std::string(to_string(want)) +
                      ", found " + std::string(to_string(expr.type)),
                  expr.span.begin);
    }
  }

  AstNode make_binary(AstNode lhs, const Token& op, AstNode rhs) const {
    AstNode node;
    node.kind = AstKind::BinaryExpr;
    node.op = op.lexeme;
    node.span = {lhs.span.begin, rhs.span.end};
    const std::string& o = node.op;
    if (o == "+" || o == "-" || o == "*" || o == "/") {
      require_type(lhs, ScalarType::Int, "operand of '" + o + "'");
      require_type(rhs, ScalarType::Int, "operand of '" + o + "'");
      node.type = ScalarType::Int;
    } else if (o == "<" || o == ">" || o == "<=" || o == ">=") {
      require_type(lhs, ScalarType::Int, "operand of '" + o + "'");
      require_type(rhs, ScalarType::Int, "operand of '" + o + "'");
      node.type = ScalarType::Boolean;
    } else if (o == "==" || o == "!=") {
      require_type(rhs, lhs.type, "right operand of '" + o + "'");
      node.type = ScalarType::Boolean;
    } else {
      require_type(lhs, ScalarType::Boolean, "operand of '" + o + "'");
      require_type(rhs, ScalarType::Boolean, "operand of '" + o + "'");
      node.type = ScalarType::Boolean;
    }
    node.children.push_back(std::move(lhs));
    node.children.push_back(std::move(rhs));
    return node;
  }

  template <typename Next>
  AstNode parse_left_assoc(std::initializer_list<std::string_view> ops, Next next) {
    AstNode lhs = (this->*next)();
    for (;;) {
      bool matched = false;
      for (auto op : ops) {
        if (peek_is(TokenKind::Operator, op)) {
          const Token& tok = tokens_[pos_++];
          AstNode rhs = (this->*next)();
          lhs = make_binary(std::move(lhs), tok, std::move(rhs));
          matched = true;
          break;
        }
      }
      if (!matched) return lhs;
    }
  }

  AstNode parse_expression() {
    AstNode e = parse_or();
    reject_unsupported_operator();
    return e;
  }

  void reject_unsupported_operator() const {
    if (at_end()) return;
    const Token& t = peek();
    if (t.kind == TokenKind::Operator &&
        (t.lexeme == "%" || t.lexeme == "&" || t.lexeme == "|" || t.lexeme == "^" ||
         t.lexeme == "<<" || t.lexeme == ">>" || t.lexeme == ">>>" || t.lexeme == "->" ||
         t.lexeme == "++" || t.lexeme == "--" || t.lexeme == "=" ||
         (t.lexeme.size() >= 2 && t.lexeme.back() == '='))) {
      throw Error(ErrorKind::OutsideSubset,
                  "operator '" + t.lexeme + "' is not supported in expressions", t.pos());
    }
    if (t.is(TokenKind::Punctuation, "?")) {
      throw Error(ErrorKind::OutsideSubset, "the conditional operator is not supported",
                  t.pos());
    }
    if (t.is(TokenKind::Keyword, "instanceof")) {
      throw Error(ErrorKind::OutsideSubset, "'instanceof' is not supported", t.pos());
    }
  }

  AstNode parse_or() { return parse_left_assoc({"||"}, &Parser::parse_and); }
  AstNode parse_and() { return parse_left_assoc({"&&"}, &Parser::parse_equality); }
  AstNode parse_equality() {
    return parse_left_assoc({"==", "!="}, &Parser::parse_relational);
  }

  AstNode parse_relational() {
    AstNode lhs = parse_additive();
    for (auto op : {"<=", ">=", "<", ">"}) {
      if (peek_is(TokenKind::Operator, op)) {
        const Token& tok = tokens_[pos_++];
        AstNode rhs = parse_additive();
        return make_binary(std::move(lhs), tok, std::move(rhs));
      }
    }
    return lhs;
  }

  AstNode parse_additive() { return parse_left_assoc({"+", "-"}, &Parser::parse_term); }
  AstNode parse_term() { return parse_left_assoc({"*", "/"}, &Parser::parse_unary); }

  AstNode parse_unary() {
    if (peek_is(TokenKind::Operator, "-") || peek_is(TokenKind::Operator, "!")) {
      const Token& op = tokens_[pos_++];
      AstNode operand = parse_unary();
      AstNode node;
      node.kind = AstKind::UnaryExpr;
      node.op = op.lexeme;
      node.span = {op.pos(), operand.span.end};
      if (op.lexeme == "-") {
        require_type(operand, ScalarType::Int, "operand of unary '-'");
        node.type = ScalarType::Int;
      } else {
        require_type(operand, ScalarType::Boolean, "operand of '!'");
        node.type = ScalarType::Boolean;
      }
      node.children.push_back(std::move(operand));
      return node;
    }
    if (peek_is(TokenKind::Operator, "+") || peek_is(TokenKind::Operator, "~") ||
        peek_is(TokenKind::Operator, "++") || peek_is(TokenKind::Operator, "--")) {
      throw Error(ErrorKind::OutsideSubset,
                  "unary operator '" + peek().lexeme + "' is not supported", peek().pos());
    }
    return parse_primary();
  }

  AstNode parse_primary() {
    if (at_end()) throw unexpected("expression");
    const Token& t = peek();
    AstNode node;
    node.span = {t.pos(), t.end()};
    switch (t.kind) {
      case TokenKind::IntLiteral: {
        ++pos_;
        node.kind = AstKind::IntLit;
        node.type = ScalarType::Int;
        node.int_value = parse_int_literal(t);
        return node;
      }
      case TokenKind::BoolLiteral:
        ++pos_;
        node.kind = AstKind::BoolLit;
        node.type = ScalarType::Boolean;
        node.bool_value = t.lexeme == "true";
        return node;
      case TokenKind::Identifier:
        ++pos_;
        if (peek_is(TokenKind::Punctuation, "(")) {
          throw Error(ErrorKind::OutsideSubset, "method invocation is not supported", t.pos());
        }
        if (peek_is(TokenKind::Punctuation, ".") || peek_is(TokenKind::Punctuation, "[")) {
          throw Error(ErrorKind::OutsideSubset, "member and array access are not supported",
                      peek().pos());
        }
        if (peek_is(TokenKind::Operator, "++") || peek_is(TokenKind::Operator, "--")) {
          throw Error(ErrorKind::OutsideSubset,
                      "increment and decrement are only supported as statements",
                      peek().pos());
        }
        node.kind = AstKind::VarRef;
        node.name = t.lexeme;
        node.type = lookup(t);
        return node;
      case TokenKind::Punctuation:
        if (t.lexeme == "(") {
          ++pos_;
          AstNode inner = parse_or();
          reject_unsupported_operator();
          expect(TokenKind::Punctuation, ")");
          node.kind = AstKind::ParenExpr;
          node.type = inner.type;
          node.span.end = last_end();
          node.children.push_back(std::move(inner));
          return node;
        }
        break;
      case TokenKind::Keyword:
        if (t.lexeme == "new" || t.lexeme == "this" || t.lexeme == "super") {
          throw Error(ErrorKind::OutsideSubset, "'" + t.lexeme + "' is not supported", t.pos());
        }
        break;
      case TokenKind::Operator:
        break;
    }
    throw unexpected("expression");
  }

  static std::int64_t parse_int_literal(const Token& t) {
    const std::string& s = t.lexeme;
    if (!std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw Error(ErrorKind::OutsideSubset,
                  "integer literal '" + s + "' is not a plain decimal literal", t.pos());
    }
    if (s.size() > 1 && s.front() == '0') {
      throw Error(ErrorKind::OutsideSubset, "octal literal '" + s + "' is not supported",
                  t.pos());
    }
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || value > std::numeric_limits<std::int32_t>::max()) {
      throw Error(ErrorKind::Syntax, "integer literal '" + s + "' is too large", t.pos());
    }
    return value;
  }

  std::span<const Token> tokens_;
  std::size_t pos_{0};
  ScalarType return_type_{ScalarType::Void};
  std::vector<std::vector<Binding>> scopes_;
};

}  // namespace detail

inline AstNode parse_compilation_unit(std::span<const Token> tokens) {
  return detail::Parser(tokens).parse_unit();
}

inline AstNode parse_source(std::string_view source) {
  auto tokens = tokenize(source);
  return parse_compilation_unit(tokens);
}

}  // namespace flowgraph
