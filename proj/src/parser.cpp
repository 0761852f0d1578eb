#include "hklab/parser.hpp"

#include <cctype>
#include <limits>

#include "hklab/error.hpp"

namespace hklab {

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, RingRef ring) : text_(text), ring_(std::move(ring)) {}

  Polynomial parse() {
    Polynomial value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(pos_, message); }

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

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Polynomial expr() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial value = term();
    if (negate) value = -value;
    while (true) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        break;
      }
    }
    return value;
  }

  Polynomial term() {
    Polynomial value = factor();
    while (true) {
      if (accept('*')) {
        value = value * factor();
      } else if (peek() == '/') {
        const std::size_t at = pos_;
        ++pos_;
        Polynomial divisor = factor();
        if (divisor.is_zero()) throw SyntaxError(at, "division by zero");
        if (!divisor.is_constant()) throw SyntaxError(at, "division by a non-constant expression");
        try {
          value = value.scaled(divisor.leading_coefficient().inverse());
        } catch (const DivisionByZero&) {
          throw SyntaxError(at, "division by zero");
        }
      } else {
        break;
      }
    }
    return value;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_space();
      const std::uint64_t e = natural();
      base = base.pow(e);
    }
    return base;
  }

  std::uint64_t natural() {
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected a natural number exponent");
    }
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > (std::numeric_limits<std::uint32_t>::max() - digit) / 10) fail("exponent too large");
      value = value * 10 + digit;
      ++pos_;
    }
    return value;
  }

  Polynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::uint32_t p = ring_->field().characteristic();
      std::uint64_t residue = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        residue = (residue * 10 + static_cast<std::uint64_t>(text_[pos_] - '0')) % p;
        ++pos_;
      }
      if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        fail("implicit multiplication is not allowed; write '*'");
      }
      return Polynomial::constant(ring_, ring_->field().from_integer(static_cast<std::int64_t>(residue)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      if (const auto index = ring_->index_of(name)) return Polynomial::variable(ring_, *index);
      const Field& field = ring_->field();
      if (field.parameter() && name == *field.parameter()) return Polynomial::constant(ring_, field.generator());
      if (field.kind() == FieldKind::extension && name == Field::kGeneratorName) {
        return Polynomial::constant(ring_, field.generator());
      }
      throw UnknownVariable("unknown variable '" + name + "' at position " + std::to_string(start));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  RingRef ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingRef& ring) {
  return ExpressionParser(text, ring).parse();
}

Polynomial parse_polynomial(std::string_view text, const RingPresentation& ring) {
  return parse_polynomial(text, ring.ring);
}

FieldElement parse_field_element(std::string_view text, const Field& field) {
  const RingRef scalars = PolyRing::make(field, {});
  const Polynomial value = parse_polynomial(text, scalars);
  if (value.is_zero()) return field.zero();
  return value.leading_coefficient();
}

std::vector<Polynomial> parse_polynomial_list(std::string_view text, const RingRef& ring) {
  std::vector<Polynomial> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    if (piece.find_first_not_of(" \t\n") != std::string_view::npos) out.push_back(parse_polynomial(piece, ring));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace hklab
