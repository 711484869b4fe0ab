#include "webendo/upoly.hpp"

#include <utility>

#include "webendo/error.hpp"

namespace webendo {

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  const Rational inv = 1 / lead();
  std::vector<Rational> c = c_;
  for (auto& x : c) x *= inv;
  return UPoly(std::move(c));
}

Rational UPoly::eval(const Rational& t) const {
  Rational s = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * t + *it;
  return s;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(c));
}

UPoly operator*(const Rational& s, const UPoly& a) {
  std::vector<Rational> c = a.c_;
  for (auto& x : c) x *= s;
  return UPoly(std::move(c));
}

UDivRem divrem(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  const int dq = a.degree() - db;
  if (dq < 0) return {UPoly(), a};
  std::vector<Rational> q(static_cast<std::size_t>(dq + 1), Rational(0));
  const Rational inv = 1 / b.lead();
  for (int k = dq; k >= 0; --k) {
    const Rational t = r[static_cast<std::size_t>(k + db)] * inv;
    q[static_cast<std::size_t>(k)] = t;
    if (sgn(t) == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= t * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(const UPoly& a0, const UPoly& b0) {
  UPoly a = a0, b = b0;
  while (!b.is_zero()) {
    UPoly r = divrem(a, b).r;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

void trim(BPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

namespace {

int xdeg(const BPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly content(const BPoly& p) {
  UPoly g;
  for (const auto& c : p) g = gcd(g, c);
  return g;
}

BPoly divide_by(const BPoly& p, const UPoly& c) {
  BPoly out;
  for (const auto& x : p) {
    const UDivRem qr = divrem(x, c);
    out.push_back(qr.q);
  }
  trim(out);
  return out;
}

BPoly scale(const BPoly& p, const UPoly& c) {
  BPoly out;
  for (const auto& x : p) out.push_back(c * x);
  trim(out);
  return out;
}

// Pseudo-remainder of a by b with respect to x.
BPoly prem(BPoly a, const BPoly& b) {
  const int db = xdeg(b);
  const UPoly& lb = b.back();
  while (xdeg(a) >= db && !a.empty()) {
    const int shift = xdeg(a) - db;
    const UPoly la = a.back();
    a = scale(a, lb);
    for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(j + shift)] = a[static_cast<std::size_t>(j + shift)] - la * b[static_cast<std::size_t>(j)];
    trim(a);
  }
  return a;
}

BPoly make_monic(BPoly p) {
  if (p.empty()) return p;
  const Rational inv = 1 / p.back().lead();
  for (auto& c : p) c = inv * c;
  return p;
}

}  // namespace

BPoly gcd(BPoly a, BPoly b) {
  trim(a);
  trim(b);
  if (a.empty()) return make_monic(b);
  if (b.empty()) return make_monic(a);
  const UPoly ca = content(a), cb = content(b);
  const UPoly cg = gcd(ca, cb);
  a = divide_by(a, ca);
  b = divide_by(b, cb);
  if (xdeg(a) < xdeg(b)) std::swap(a, b);
  while (!b.empty() && xdeg(b) > 0) {
    BPoly r = prem(a, b);
    a = std::move(b);
    if (r.empty()) {
      b.clear();
      break;
    }
    b = divide_by(r, content(r));
  }
  BPoly g;
  if (b.empty()) {
    g = a;  // a is primitive and divides both
  } else {
    g = {UPoly::constant(Rational(1))};  // remainder constant in x: coprime
  }
  return make_monic(scale(g, cg));
}

bool divide_exact(const BPoly& a0, const BPoly& b, BPoly& q) {
  BPoly a = a0;
  trim(a);
  q.clear();
  if (b.empty()) throw Error(ErrorKind::InvalidArgument, "division by zero polynomial");
  const int db = xdeg(b);
  if (a.empty()) return true;
  if (xdeg(a) < db) return false;
  q.assign(static_cast<std::size_t>(xdeg(a) - db + 1), UPoly());
  while (!a.empty() && xdeg(a) >= db) {
    const int shift = xdeg(a) - db;
    const UDivRem t = divrem(a.back(), b.back());
    if (!t.r.is_zero()) return false;
    q[static_cast<std::size_t>(shift)] = t.q;
    for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(j + shift)] = a[static_cast<std::size_t>(j + shift)] - t.q * b[static_cast<std::size_t>(j)];
    trim(a);
  }
  trim(q);
  return a.empty();
}

}  // namespace webendo
