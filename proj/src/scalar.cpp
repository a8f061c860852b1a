#include "bldg/scalar.hpp"

#include <cctype>

namespace bldg {

const char* lambda_name(LambdaKind k) {
  switch (k) {
    case LambdaKind::integers: return "Z";
    case LambdaKind::rationals: return "Q";
    case LambdaKind::lex_pair: return "QxQ_lex";
  }
  return "?";
}

LambdaKind lambda_from_name(const std::string& s) {
  if (s == "Z") return LambdaKind::integers;
  if (s == "Q") return LambdaKind::rationals;
  if (s == "QxQ_lex") return LambdaKind::lex_pair;
  throw parse_error("unknown lambda group: " + s);
}

static void require_same(const Scalar& a, const Scalar& b) {
  if (a.kind != b.kind) throw spec_mismatch();
}

Cmp compare(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  if (a.hi != b.hi) return a.hi < b.hi ? Cmp::less : Cmp::greater;
  if (a.lo != b.lo) return a.lo < b.lo ? Cmp::less : Cmp::greater;
  return Cmp::equal;
}

Scalar add(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  return Scalar{a.kind, a.hi + b.hi, a.lo + b.lo};
}

Scalar sub(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  return Scalar{a.kind, a.hi - b.hi, a.lo - b.lo};
}

Scalar neg(const Scalar& a) { return Scalar{a.kind, -a.hi, -a.lo}; }

int sign(const Scalar& a) {
  if (a.hi != 0) return a.hi < 0 ? -1 : 1;
  if (a.lo != 0) return a.lo < 0 ? -1 : 1;
  return 0;
}

bool is_zero(const Scalar& a) { return a.hi == 0 && a.lo == 0; }

Scalar abs(const Scalar& a) { return sign(a) < 0 ? neg(a) : a; }

Scalar scale(const Rational& c, const Scalar& a) {
  return Scalar{a.kind, c * a.hi, c * a.lo};
}

bool in_lambda(const Scalar& a) {
  switch (a.kind) {
    case LambdaKind::integers: return denominator(a.lo) == 1;
    case LambdaKind::rationals: return true;
    case LambdaKind::lex_pair: return true;
  }
  return false;
}

std::string to_string(const Rational& r) { return r.str(); }

std::string to_string(const Scalar& a) {
  if (a.kind == LambdaKind::lex_pair)
    return "(" + a.hi.str() + "," + a.lo.str() + ")";
  return a.lo.str();
}

Rational parse_rational(const std::string& text) {
  // strict "p" or "p/q": optional leading '-', digits, optional /digits
  size_t i = 0;
  auto fail = [&](const char* why) { throw parse_error(std::string(why) + ": '" + text + "'", 0, int(i)); };
  if (text.empty()) fail("empty rational");
  bool negate = false;
  if (text[i] == '-') { negate = true; ++i; }
  size_t num_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_start) fail("expected digits");
  BigInt num(text.substr(num_start, i - num_start));
  BigInt den = 1;
  if (i < text.size()) {
    if (text[i] != '/') fail("expected '/'");
    ++i;
    size_t den_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_start || i != text.size()) fail("malformed denominator");
    den = BigInt(text.substr(den_start));
    if (den == 0) fail("zero denominator");
  }
  Rational r(num, den);
  return negate ? Rational(-r) : r;
}

Scalar parse_scalar(LambdaKind k, const std::string& text) {
  if (k == LambdaKind::lex_pair) {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
      throw parse_error("lex scalar must look like (p1/q1,p2/q2): '" + text + "'");
    std::string body = text.substr(1, text.size() - 2);
    size_t comma = body.find(',');
    if (comma == std::string::npos)
      throw parse_error("lex scalar missing comma: '" + text + "'");
    return Scalar::lex(parse_rational(body.substr(0, comma)),
                       parse_rational(body.substr(comma + 1)));
  }
  // hull elements are accepted for every kind; Lambda-membership is a
  // separate predicate checked where the group itself is required
  return Scalar::of(k, parse_rational(text));
}

} // namespace bldg
