#include "tatekit/parse.hpp"

#include "tatekit/error.hpp"

#include <cctype>
#include <optional>
#include <string>

namespace tatekit {

namespace {

class Parser {
 public:
  Parser(const FieldSpec& spec, std::string_view text) : spec_(spec), text_(text) {}

  Scalar run() {
    Scalar value = expr(true);
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    if (precision_) value = value.truncated_to(*precision_);
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("scalar literal '" + std::string(text_) + "': " + why + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_big_o() {
    skip();
    if (pos_ + 1 < text_.size() && text_[pos_] == 'O') {
      std::size_t k = pos_ + 1;
      while (k < text_.size() && std::isspace(static_cast<unsigned char>(text_[k]))) ++k;
      return k < text_.size() && text_[k] == '(';
    }
    return false;
  }

  // The O(x) term is only allowed as a summand of the outermost expression.
  Scalar expr(bool top) {
    std::optional<Scalar> acc;
    bool negate = false;
    if (eat('-')) negate = true;
    else eat('+');
    for (;;) {
      if (top && at_big_o()) {
        if (negate) fail("negated O-term");
        ++pos_;
        eat('(');
        const Scalar bound = expr(false);
        if (!eat(')')) fail("missing ')'");
        const auto v = bound.valuation();
        if (!v) fail("O(0) carries no precision");
        precision_ = precision_ ? std::min(*precision_, *v) : *v;
      } else {
        Scalar t = term();
        if (negate) t = -t;
        acc = acc ? *acc + t : t;
      }
      if (eat('+')) negate = false;
      else if (eat('-')) negate = true;
      else break;
    }
    return acc ? *acc : Scalar::zero(spec_);
  }

  Scalar term() {
    Scalar acc = power();
    for (;;) {
      if (eat('*')) acc = acc * power();
      else if (eat('/')) {
        const Scalar d = power();
        if (d.is_zero()) fail("division by zero");
        acc = acc / d;
      } else break;
    }
    return acc;
  }

  Scalar power() {
    Scalar base = primary();
    if (eat('^')) {
      skip();
      bool neg = false;
      if (eat('-')) neg = true;
      else eat('+');
      skip();
      const auto digits = read_digits();
      if (digits.empty()) fail("exponent must be an integer");
      const auto e = std::stoll(digits);
      if (neg && base.is_zero()) fail("negative power of zero");
      base = base.pow(neg ? -e : e);
    }
    return base;
  }

  std::string read_digits() {
    std::string out;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) out += text_[pos_++];
    return out;
  }

  Scalar primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar v = expr(false);
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Scalar::from_rational(spec_, parse_rational(read_digits()));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string id;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) id += text_[pos_++];
      return identifier(id);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Scalar identifier(const std::string& id) {
    if (id == "t") {
      if (!spec_.is_laurent()) fail("t is not defined over Q_q");
      return Scalar::uniformizer(spec_);
    }
    if (id == "z") {
      if (spec_.kind() != FieldKind::FqLaurent || spec_.field_size() == spec_.residue_prime())
        fail("z needs a residue field extension");
      return Scalar::residue_generator(spec_);
    }
    if (id.size() > 1 && id[0] == 'u' && id.find_first_not_of("0123456789", 1) == std::string::npos) {
      const auto i = std::stoul(id.substr(1));
      if (spec_.kind() != FieldKind::RatfunLaurent || i == 0 || i > spec_.num_pbasis_vars())
        fail("undeclared variable " + id);
      return Scalar::pbasis_variable(spec_, i);
    }
    fail("unknown identifier " + id);
  }

  const FieldSpec& spec_;
  std::string_view text_;
  std::size_t pos_ = 0;
  std::optional<std::int64_t> precision_;
};

}  // namespace

Scalar parse_scalar(const FieldSpec& spec, std::string_view text) { return Parser(spec, text).run(); }

}  // namespace tatekit
