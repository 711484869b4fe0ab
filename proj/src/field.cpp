#include "webendo/field.hpp"

#include <cctype>

#include "webendo/error.hpp"

namespace webendo {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::CoincidentLines: return "CoincidentLines";
    case ErrorKind::RegimeMismatch: return "RegimeMismatch";
    case ErrorKind::ZeroForm: return "ZeroForm";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NoCurveFound: return "NoCurveFound";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::DegenerateTangent: return "DegenerateTangent";
    case ErrorKind::Indeterminate: return "Indeterminate";
    case ErrorKind::WholePencil: return "WholePencil";
    case ErrorKind::AtOrigin: return "AtOrigin";
    case ErrorKind::DegenerateTriple: return "DegenerateTriple";
    case ErrorKind::CommonZero: return "CommonZero";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NearCriticalPoint: return "NearCriticalPoint";
    case ErrorKind::NotOnCurve: return "NotOnCurve";
    case ErrorKind::InconsistentImage: return "InconsistentImage";
    case ErrorKind::DegenerateRestriction: return "DegenerateRestriction";
    case ErrorKind::SplitMismatch: return "SplitMismatch";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Rational make_rational(long num, long den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  if (text.empty()) throw Error(ErrorKind::Parse, "empty rational literal");
  if (text.front() == '+') text.erase(0, 1);

  const auto dot = text.find('.');
  const auto exp = text.find_first_of("eE");
  if (dot != std::string::npos || exp != std::string::npos) {
    // Decimal literal: mantissa digits over a power of ten.
    std::string mantissa = text.substr(0, exp);
    long exponent = 0;
    if (exp != std::string::npos) {
      try {
        exponent = std::stol(text.substr(exp + 1));
      } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, "bad exponent in '" + raw + "'");
      }
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false;
    for (char c : mantissa) {
      if (c == '.') {
        if (seen_dot) throw Error(ErrorKind::Parse, "bad decimal '" + raw + "'");
        seen_dot = true;
      } else {
        digits.push_back(c);
        if (seen_dot) ++frac_digits;
      }
    }
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw Error(ErrorKind::Parse, "bad decimal '" + raw + "'");
    const long shift = exponent - frac_digits;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    Rational r = shift < 0 ? Rational(num, scale) : Rational(num * scale);
    r.canonicalize();
    return r;
  }

  Rational r;
  if (r.set_str(text, 10) != 0) throw Error(ErrorKind::Parse, "bad rational '" + raw + "'");
  if (sgn(r.get_den()) == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + raw + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(10); }

std::optional<Rational> rationalize(double x, long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  // Convergents h/k of the continued fraction of x.
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
  mpz_class k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    Rational approx(h, k);
    approx.canonicalize();
    if (std::fabs(approx.get_d() - x) <= tol) return approx;
    if (frac < 1e-15) break;
    const double inv = 1.0 / frac;
    const long a = static_cast<long>(std::floor(inv));
    frac = inv - static_cast<double>(a);
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  Rational approx(h, k);
  approx.canonicalize();
  if (std::fabs(approx.get_d() - x) <= tol) return approx;
  return std::nullopt;
}

bool is_finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace webendo
