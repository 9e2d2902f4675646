// lexer.hpp - tokenizer for MIL source. `--` comments to end of line.
#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "zedmet/common/error.hpp"
#include "zedmet/common/text.hpp"

namespace zedmet::mil {

enum class MilTok { ident, keyword, number, symbol, eof };

struct MilToken {
  MilTok kind = MilTok::eof;
  std::string text;
  int line = 0;
  int column = 0;
};

inline bool is_mil_keyword(std::string_view s) {
  return s == "procedure" || s == "function" || s == "is" || s == "begin" ||
         s == "end" || s == "if" || s == "then" || s == "elsif" ||
         s == "else" || s == "while" || s == "for" || s == "in" ||
         s == "out" || s == "loop" || s == "case" || s == "when" ||
         s == "others" || s == "exit" || s == "goto" || s == "return" ||
         s == "null" || s == "and" || s == "or" || s == "not" || s == "mod";
}

inline std::vector<MilToken> lex_mil(const std::vector<std::string>& lines) {
  std::vector<MilToken> toks;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    int line_no = static_cast<int>(li) + 1;
    std::string_view line = lines[li];
    auto cpos = line.find("--");
    if (cpos != std::string_view::npos) line = line.substr(0, cpos);
    std::size_t i = 0;
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
        toks.push_back({is_mil_keyword(word) ? MilTok::keyword : MilTok::ident,
                        std::move(word), line_no, col});
        i = j;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < line.size() &&
               (std::isdigit(static_cast<unsigned char>(line[j])) ||
                line[j] == '.'))
          ++j;
        // ".." range dots are not part of a number
        std::string_view num = line.substr(i, j - i);
        if (auto dots = num.find(".."); dots != std::string_view::npos) {
          num = num.substr(0, dots);
          j = i + dots;
        }
        toks.push_back({MilTok::number, std::string(num), line_no, col});
        i = j;
        continue;
      }
      auto two = line.substr(i, 2);
      if (two == ":=" || two == "/=" || two == "<=" || two == ">=" ||
          two == "=>" || two == ".." || two == "<<" || two == ">>") {
        toks.push_back({MilTok::symbol, std::string(two), line_no, col});
        i += 2;
        continue;
      }
      if (std::string_view("();,:=<>+-*/").find(c) !=
          std::string_view::npos) {
        toks.push_back({MilTok::symbol, std::string(1, c), line_no, col});
        ++i;
        continue;
      }
      throw Error(ErrorKind::syntax,
                  "line " + std::to_string(line_no) +
                      ": unexpected character '" + std::string(1, c) + "'",
                  line_no);
    }
  }
  toks.push_back({MilTok::eof, "",
                  static_cast<int>(lines.size()) + (lines.empty() ? 1 : 0), 1});
  if (!lines.empty()) toks.back().line = static_cast<int>(lines.size());
  return toks;
}

}  // namespace zedmet::mil
