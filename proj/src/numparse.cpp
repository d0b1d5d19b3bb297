#include "ksum/numparse.hpp"

#include <cctype>
#include <string>

#include "ksum/error.hpp"

namespace ksum {

namespace {

class Parser {
 public:
  Parser(std::string_view text, int digits) : text_(text), digits_(digits) {}

  BigReal run() {
    BigReal v = expression();
    skip_space();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::Parse, "cannot parse '" + std::string(text_) + "': " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool starts_factor() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return std::isalpha(static_cast<unsigned char>(c)) || c == '(';
  }

  BigReal expression() {
    BigReal v = term();
    for (;;) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  BigReal term() {
    BigReal v = unary();
    for (;;) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        BigReal d = unary();
        if (d.is_zero()) error("division by zero");
        v /= d;
      } else if (starts_factor()) {
        v *= power();  // implicit product, e.g. "3pi"
      } else {
        return v;
      }
    }
  }

  BigReal unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  BigReal power() {
    BigReal base = primary();
    if (accept('^')) {
      skip_space();
      const size_t start = pos_;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string exponent(text_.substr(start, pos_ - start));
      if (exponent.empty() || exponent == "-" || exponent == "+") error("integer exponent expected");
      return pow(base, std::stol(exponent));
    }
    return base;
  }

  BigReal primary() {
    skip_space();
    if (pos_ >= text_.size()) error("unexpected end of input");
    if (accept('(')) {
      BigReal v = expression();
      if (!accept(')')) error("missing ')'");
      return v;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    error("unexpected '" + std::string(1, c) + "'");
  }

  BigReal number() {
    const size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    // exponent part, only when followed by a digit so that "2e" is not swallowed
    if (pos_ + 1 < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      size_t look = pos_ + 1;
      if (text_[look] == '+' || text_[look] == '-') ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    return BigReal::parse(text_.substr(start, pos_ - start), digits_);
  }

  BigReal identifier() {
    const size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "pi") return BigReal::pi(digits_);
    if (!accept('(')) error("'" + name + "' is not a known constant");
    BigReal arg = expression();
    if (!accept(')')) error("missing ')'");
    if (name == "sqrt") {
      if (arg.sign() < 0) error("sqrt of a negative number");
      return sqrt(arg);
    }
    if (name == "log") {
      if (arg.sign() <= 0) error("log of a non-positive number");
      return log(arg);
    }
    if (name == "exp") return exp(arg);
    if (name == "sin") return sin(arg);
    if (name == "cos") return cos(arg);
    error("unknown function '" + name + "'");
  }

  std::string_view text_;
  int digits_;
  size_t pos_ = 0;
};

}  // namespace

BigReal parse_value(std::string_view text, int digits) { return Parser(text, digits).run(); }

}  // namespace ksum
