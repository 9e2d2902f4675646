// lexer.hpp - line tokenizer for the Z-like notation. `--` comments to EOL.
#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "zedmet/common/error.hpp"
#include "zedmet/zspec/ast.hpp"

namespace zedmet::zspec {

enum class TokKind {
  keyword,   // given schema end delta xi includes decl pred and or implies not in notin subseteq
  ident,     // base name + decoration
  number,
  symbol,    // = /= < <= > >= + - * / ( ) { } , :
  eol,
};

struct Token {
  TokKind kind = TokKind::eol;
  std::string text;  // keyword/symbol text, identifier base, literal digits
  Decoration decoration = Decoration::plain;
  int line = 0;
  int column = 0;  // 1-based
};

inline bool is_zspec_keyword(std::string_view s) {
  return s == "given" || s == "schema" || s == "end" || s == "delta" ||
         s == "xi" || s == "includes" || s == "decl" || s == "pred" ||
         s == "and" || s == "or" || s == "implies" || s == "not" ||
         s == "in" || s == "notin" || s == "subseteq";
}

// Tokenizes one physical line (comment already stripped by the caller).
inline std::vector<Token> lex_line(std::string_view line, int line_no) {
  std::vector<Token> toks;
  std::size_t i = 0;
  auto push = [&](TokKind k, std::string text, int col,
                  Decoration d = Decoration::plain) {
    toks.push_back(Token{k, std::move(text), d, line_no, col});
  };
  while (i < line.size()) {
    char c = line[i];
    int col = static_cast<int>(i) + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[j])) ||
              line[j] == '_'))
        ++j;
      std::string word(line.substr(i, j - i));
      if (is_zspec_keyword(word)) {
        push(TokKind::keyword, word, col);
        i = j;
        continue;
      }
      Decoration d = Decoration::plain;
      if (j < line.size()) {
        if (line[j] == '\'') {
          d = Decoration::primed;
          ++j;
        } else if (line[j] == '?') {
          d = Decoration::input;
          ++j;
        } else if (line[j] == '!') {
          d = Decoration::output;
          ++j;
        }
      }
      push(TokKind::ident, word, col, d);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() &&
             std::isdigit(static_cast<unsigned char>(line[j])))
        ++j;
      push(TokKind::number, std::string(line.substr(i, j - i)), col);
      i = j;
      continue;
    }
    auto two = line.substr(i, 2);
    if (two == "/=" || two == "<=" || two == ">=") {
      push(TokKind::symbol, std::string(two), col);
      i += 2;
      continue;
    }
    if (std::string_view("=<>+-*/(){},:").find(c) != std::string_view::npos) {
      push(TokKind::symbol, std::string(1, c), col);
      ++i;
      continue;
    }
    throw Error(ErrorKind::syntax,
                "line " + std::to_string(line_no) +
                    ": unexpected character '" + std::string(1, c) + "'",
                line_no);
  }
  push(TokKind::eol, "", static_cast<int>(line.size()) + 1);
  return toks;
}

inline std::string_view strip_comment(std::string_view line) {
  auto pos = line.find("--");
  return pos == std::string_view::npos ? line : line.substr(0, pos);
}

}  // namespace zedmet::zspec
