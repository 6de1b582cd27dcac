#include "varcore/formula_parser.hpp"

#include <cctype>
#include <sstream>

namespace varcore::logic {

namespace {

std::string describe(const std::string& problem, std::size_t position,
                     const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << "syntax error at offset " << position << ": " << problem;
  if (!expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) os << (i + 1 == expected.size() ? " or " : ", ");
      os << expected[i];
    }
    os << ')';
  }
  return os.str();
}

enum class Tok { Ident, True, False, Not, And, Or, Implies, Iff, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;  // 0-based
};

const std::vector<std::string> kOperandStart = {"identifier", "'true'", "'false'", "'!'",
                                                "'('"};
const std::vector<std::string> kAfterOperand = {"'&'", "'|'", "'=>'", "'<=>'", "end of input"};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", text_.size()});
        return out;
      }
      std::size_t start = pos_;
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          ++pos_;
        }
        std::string word(text_.substr(start, pos_ - start));
        Tok kind = word == "true" ? Tok::True : word == "false" ? Tok::False : Tok::Ident;
        out.push_back({kind, std::move(word), start});
        continue;
      }
      auto single = [&](Tok kind) {
        ++pos_;
        out.push_back({kind, std::string(1, c), start});
      };
      switch (c) {
        case '!': single(Tok::Not); continue;
        case '&': single(Tok::And); continue;
        case '|': single(Tok::Or); continue;
        case '(': single(Tok::LParen); continue;
        case ')': single(Tok::RParen); continue;
        default: break;
      }
      if (text_.substr(pos_, 2) == "=>") {
        pos_ += 2;
        out.push_back({Tok::Implies, "=>", start});
        continue;
      }
      if (text_.substr(pos_, 3) == "<=>") {
        pos_ += 3;
        out.push_back({Tok::Iff, "<=>", start});
        continue;
      }
      throw FormulaSyntaxError(std::string("unexpected character '") + c + "'", start + 1,
                               kOperandStart);
    }
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula parse() {
    Formula f = equivalence();
    const Token& t = peek();
    if (t.kind == Tok::RParen) {
      throw FormulaSyntaxError("unbalanced parenthesis: unmatched ')'", t.offset + 1,
                               kAfterOperand);
    }
    if (t.kind != Tok::End) {
      throw FormulaSyntaxError("unexpected '" + t.text + "'", t.offset + 1, kAfterOperand);
    }
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  Formula equivalence() {
    Formula lhs = implication();
    while (accept(Tok::Iff)) lhs = Formula::equivalence(std::move(lhs), implication());
    return lhs;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::Implies)) return Formula::implication(std::move(lhs), implication());
    return lhs;
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (accept(Tok::Or)) parts.push_back(conjunction());
    return any_of(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (accept(Tok::And)) parts.push_back(unary());
    return all_of(std::move(parts));
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::negation(unary());
    return primary();
  }

  Formula primary() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Ident: return Formula::var(t.text);
      case Tok::True: return Formula::constant(true);
      case Tok::False: return Formula::constant(false);
      case Tok::LParen: {
        Formula inner = equivalence();
        if (!accept(Tok::RParen)) {
          const Token& at = peek();
          if (at.kind == Tok::End) {
            throw FormulaSyntaxError("unbalanced parenthesis: unclosed '('", t.offset + 1,
                                     {"')'"});
          }
          throw FormulaSyntaxError("unexpected '" + at.text + "'", at.offset + 1,
                                   {"'&'", "'|'", "'=>'", "'<=>'", "')'"});
        }
        return inner;
      }
      case Tok::End:
        throw FormulaSyntaxError("unexpected end of input", t.offset + 1, kOperandStart);
      case Tok::RParen:
        throw FormulaSyntaxError("unbalanced parenthesis: unmatched ')'", t.offset + 1,
                                 kOperandStart);
      default:
        throw FormulaSyntaxError("unexpected '" + t.text + "'", t.offset + 1, kOperandStart);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

FormulaSyntaxError::FormulaSyntaxError(std::string problem, std::size_t position,
                                       std::vector<std::string> expected)
    : Error(describe(problem, position, expected)),
      problem_(std::move(problem)),
      position_(position),
      expected_(std::move(expected)) {}

Formula parse_formula(std::string_view text) {
  auto tokens = Lexer(text).run();
  if (tokens.size() == 1) throw FormulaSyntaxError("empty formula", 1, kOperandStart);
  return Parser(std::move(tokens)).parse();
}

}  // namespace varcore::logic
