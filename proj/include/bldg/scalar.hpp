#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <stdexcept>
#include <string>

namespace bldg {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Raised when two scalars from different ordered groups meet in one operation.
struct spec_mismatch : std::runtime_error {
  spec_mismatch() : std::runtime_error("scalar spec mismatch") {}
};

struct parse_error : std::runtime_error {
  int line = 0, column = 0;
  parse_error(const std::string& what, int l = 0, int c = 0)
      : std::runtime_error(what), line(l), column(c) {}
};

/// The totally ordered abelian groups the library computes over. Coordinates,
/// metric values and germ radii all live in the divisible hull of the chosen
/// group, so rational scaling is always defined:
///   integers / rationals -> Q,   lex_pair -> Q x Q ordered lexicographically.
/// lex_pair is genuinely non-Archimedean: (0,1) is positive but smaller than
/// every positive rational (r,0).
enum class LambdaKind { integers, rationals, lex_pair };

const char* lambda_name(LambdaKind k);           // "Z" | "Q" | "QxQ_lex"
LambdaKind lambda_from_name(const std::string&); // throws parse_error

enum class Cmp { less, equal, greater };

/// One element of the divisible hull of Lambda. `hi` is the leading (infinite)
/// component, used only for lex_pair; for the archimedean kinds it stays 0.
struct Scalar {
  LambdaKind kind = LambdaKind::rationals;
  Rational hi;
  Rational lo;

  static Scalar zero(LambdaKind k) { return Scalar{k, 0, 0}; }
  static Scalar of(LambdaKind k, Rational value) {
    return k == LambdaKind::lex_pair ? Scalar{k, std::move(value), 0}
                                     : Scalar{k, 0, std::move(value)};
  }
  static Scalar lex(Rational first, Rational second) {
    return Scalar{LambdaKind::lex_pair, std::move(first), std::move(second)};
  }

  bool operator==(const Scalar&) const = default;
};

Cmp compare(const Scalar& a, const Scalar& b); // throws spec_mismatch
Scalar add(const Scalar& a, const Scalar& b);
Scalar sub(const Scalar& a, const Scalar& b);
Scalar neg(const Scalar& a);
Scalar abs(const Scalar& a);
Scalar scale(const Rational& c, const Scalar& a);

inline bool lt(const Scalar& a, const Scalar& b) { return compare(a, b) == Cmp::less; }
inline bool le(const Scalar& a, const Scalar& b) { return compare(a, b) != Cmp::greater; }
inline bool eq(const Scalar& a, const Scalar& b) { return compare(a, b) == Cmp::equal; }

int sign(const Scalar& a); // -1, 0, +1
bool is_zero(const Scalar& a);

/// Membership in Lambda itself (not just its hull); only Z is a proper subset.
bool in_lambda(const Scalar& a);

/// Textual encoding: rationals as "p/q" (q>0, reduced, plain "p" for q=1),
/// lex pairs as "(p1/q1,p2/q2)".
std::string to_string(const Scalar& a);
std::string to_string(const Rational& r);
Scalar parse_scalar(LambdaKind k, const std::string& text); // throws parse_error
Rational parse_rational(const std::string& text);           // throws parse_error

} // namespace bldg
