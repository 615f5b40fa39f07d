#pragma once

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "flowgraph/error.hpp"

namespace flowgraph {

enum class TokenKind {
  Keyword,
  Identifier,
  IntLiteral,
  BoolLiteral,
  Punctuation,
  Operator,
};

struct Token {
  TokenKind kind;
  std::string lexeme;
  int line{1};
  int column{1};

  SourcePos pos() const { return {line, column}; }
  // Column one past the last character.
  SourcePos end() const { return {line, column + static_cast<int>(lexeme.size())}; }

  bool is(TokenKind k, std::string_view text) const {
    return kind == k && lexeme == text;
  }

  friend bool operator==(const Token&, const Token&) = default;
};

namespace detail {

// Reserved words of Java. The subset only uses some of them; the rest are
// still lexed as keywords so the parser can report them as unsupported.
inline constexpr std::array<std::string_view, 50> kJavaKeywords = {
    "abstract", "assert",     "boolean",   "break",      "byte",
    "case",     "catch",      "char",      "class",      "const",
    "continue", "default",    "do",        "double",     "else",
    "enum",     "extends",    "final",     "finally",    "float",
    "for",      "goto",       "if",        "implements", "import",
    "instanceof", "int",      "interface", "long",       "native",
    "new",      "package",    "private",   "protected",  "public",
    "return",   "short",      "static",    "strictfp",   "super",
    "switch",   "synchronized", "this",    "throw",      "throws",
    "transient", "try",       "void",      "volatile",   "while",
};

inline bool is_keyword(std::string_view word) {
  for (auto kw : kJavaKeywords) {
    if (kw == word) return true;
  }
  return false;
}

// Longest match first.
inline constexpr std::array<std::string_view, 37> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "++", "--", "&&", "||", "==", "!=", "<=",
    ">=",   "+=",  "-=",  "*=",  "/=", "%=", "&=", "|=", "^=", "<<", ">>",
    "->",   "::",  "+",   "-",   "*",  "/",  "%",  "<",  ">",  "=",  "!",
    "&",    "|",   "^",   "~",
};

inline constexpr std::string_view kPunctuation = "(){}[];,.:?@";

inline bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

inline bool is_ident_part(char c) {
  return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

}  // namespace detail

// Splits source text into tokens, skipping whitespace and both comment forms.
inline std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  int line = 1;
  int column = 1;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < source.size(); ++k, ++i) {
      if (source[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };

  while (i < source.size()) {
    char c = source[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
      advance(1);
      continue;
    }
    if (source.substr(i, 2) == "//") {
      while (i < source.size() && source[i] != '\n') advance(1);
      continue;
    }
    if (source.substr(i, 2) == "/*") {
      SourcePos start{line, column};
      auto close = source.find("*/", i + 2);
      if (close == std::string_view::npos) {
        throw Error(ErrorKind::Lexical, "unterminated block comment", start);
      }
      advance(close + 2 - i);
      continue;
    }

    const int tok_line = line;
    const int tok_col = column;
    auto push = [&](TokenKind kind, std::size_t len) {
      tokens.push_back(Token{kind, std::string(source.substr(i, len)), tok_line, tok_col});
      advance(len);
    };

    if (detail::is_ident_start(c)) {
      std::size_t len = 1;
      while (i + len < source.size() && detail::is_ident_part(source[i + len])) ++len;
      auto word = source.substr(i, len);
      if (word == "true" || word == "false") {
        push(TokenKind::BoolLiteral, len);
      } else if (detail::is_keyword(word)) {
        push(TokenKind::Keyword, len);
      } else {
        push(TokenKind::Identifier, len);
      }
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t len = 1;
      while (i + len < source.size() && detail::is_ident_part(source[i + len])) ++len;
      push(TokenKind::IntLiteral, len);
      continue;
    }
    if (c == '"' || c == '\'') {
      throw Error(ErrorKind::OutsideSubset,
                  c == '"' ? "string literals are not supported"
                           : "character literals are not supported",
                  SourcePos{tok_line, tok_col});
    }

    bool matched = false;
    for (auto op : detail::kOperators) {
      if (source.substr(i, op.size()) == op) {
        push(TokenKind::Operator, op.size());
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (detail::kPunctuation.find(c) != std::string_view::npos) {
      push(TokenKind::Punctuation, 1);
      continue;
    }
    throw Error(ErrorKind::Lexical,
                std::string("unexpected character '") + c + "'",
                SourcePos{tok_line, tok_col});
  }
  return tokens;
}

}  // namespace flowgraph
