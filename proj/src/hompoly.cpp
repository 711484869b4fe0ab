#include "webendo/hompoly.hpp"

#include <cstdio>
#include <sstream>

namespace webendo {

template <>
HomPoly3<Rational> HomPoly3<Rational>::normalized() const {
  HomPoly3 out = *this;
  const int lead = leading_index();
  if (lead < 0) return out;
  mpz_class den = 1, num = 0;
  for (const auto& c : c_) {
    if (sgn(c) == 0) continue;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  for (const auto& c : c_) {
    if (sgn(c) == 0) continue;
    mpz_class v = c.get_num() * (den / c.get_den());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
  }
  Rational scale(den, num);
  scale.canonicalize();
  if (sgn(c_[static_cast<std::size_t>(lead)]) < 0) scale = -scale;
  for (auto& c : out.c_) c *= scale;
  return out;
}

template <>
HomPoly3<Complex> HomPoly3<Complex>::normalized() const {
  HomPoly3 out = *this;
  const double n = norm();
  if (n == 0.0) return out;
  const double big = max_abs();
  Complex phase = 1.0;
  for (const auto& c : c_) {
    if (std::abs(c) > 1e-6 * big) {
      phase = std::conj(c) / std::abs(c);
      break;
    }
  }
  for (auto& c : out.c_) c *= phase / n;
  return out;
}

namespace {

std::string coeff_text(const Rational& c, bool& negative) {
  negative = sgn(c) < 0;
  return to_string(negative ? Rational(-c) : c);
}

std::string coeff_text(const Complex& c, bool& negative) {
  char buf[80];
  if (c.imag() == 0.0) {
    negative = c.real() < 0;
    std::snprintf(buf, sizeof buf, "%.12g", std::abs(c.real()));
  } else {
    negative = false;
    std::snprintf(buf, sizeof buf, "(%.12g%+.12gi)", c.real(), c.imag());
  }
  return buf;
}

bool is_one(const std::string& s) { return s == "1"; }

}  // namespace

template <Field F>
std::string HomPoly3<F>::to_string(const char* vars) const {
  std::ostringstream os;
  bool first = true;
  for (int t = 0; t < size(); ++t) {
    const F& c = c_[static_cast<std::size_t>(t)];
    if (FieldTraits<F>::is_zero(c, 0.0)) continue;
    bool neg = false;
    const std::string mag = coeff_text(c, neg);
    const Exponent e = monomial_exponent(n_, t);
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    std::string mono;
    const int ex[3] = {e.i, e.j, e.k};
    for (int v = 0; v < 3; ++v) {
      if (ex[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[v];
      if (ex[v] > 1) mono += "^" + std::to_string(ex[v]);
    }
    if (mono.empty()) {
      os << mag;
    } else if (is_one(mag)) {
      os << mono;
    } else {
      os << mag << "*" << mono;
    }
  }
  if (first) os << "0";
  return os.str();
}

template class HomPoly3<Rational>;
template class HomPoly3<Complex>;

}  // namespace webendo
