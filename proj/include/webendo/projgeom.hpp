#pragma once

// Points and lines of P^2 and its dual. Both are homogeneous coordinate
// triples; the tag keeps them apart at compile time while dualize() is the
// only sanctioned way to move between them.

#include <array>
#include <cmath>
#include <string>

#include "webendo/error.hpp"
#include "webendo/field.hpp"

namespace webendo {

inline constexpr double kDefaultTol = 1e-9;

template <Field F>
using Coords = std::array<F, 3>;

template <Field F>
Coords<F> cross(const Coords<F>& a, const Coords<F>& b) {
  return {F(a[1] * b[2] - a[2] * b[1]), F(a[2] * b[0] - a[0] * b[2]), F(a[0] * b[1] - a[1] * b[0])};
}

// Bilinear pairing (no conjugation), so incidence is algebraic.
template <Field F>
F dot(const Coords<F>& a, const Coords<F>& b) {
  return F(a[0] * b[0] + a[1] * b[1] + a[2] * b[2]);
}

template <Field F>
F det3(const Coords<F>& a, const Coords<F>& b, const Coords<F>& c) {
  return dot(a, cross(b, c));
}

template <Field F>
double norm(const Coords<F>& a) {
  double s = 0.0;
  for (const auto& x : a) {
    const double m = magnitude(x);
    s += m * m;
  }
  return std::sqrt(s);
}

template <Field F>
bool is_zero_vector(const Coords<F>& a) {
  if constexpr (is_exact_v<F>) {
    return sgn(a[0]) == 0 && sgn(a[1]) == 0 && sgn(a[2]) == 0;
  } else {
    return norm(a) == 0.0;
  }
}

// Unit-norm copy of a floating triple with the phase of the first
// significant entry rotated to the positive reals.
Coords<Complex> unit_canonical(const Coords<Complex>& a);

template <Field F>
Coords<F> canonical_coords(const Coords<F>& a) {
  if constexpr (is_exact_v<F>) {
    Coords<F> out = a;
    for (const auto& x : a) {
      if (sgn(x) != 0) {
        const Rational inv = 1 / x;
        for (auto& y : out) y *= inv;
        break;
      }
    }
    return out;
  } else {
    return unit_canonical(a);
  }
}

struct PointTag {};
struct LineTag {};

template <Field F, class Tag>
class Homogeneous3 {
 public:
  using field_type = F;

  explicit Homogeneous3(const Coords<F>& c) : c_(c) {
    if constexpr (!is_exact_v<F>) {
      for (const auto& x : c_)
        if (!is_finite(x)) throw Error(ErrorKind::InvalidArgument, "non-finite homogeneous coordinate");
    }
    if (is_zero_vector(c_)) throw Error(ErrorKind::InvalidArgument, "all homogeneous coordinates are zero");
  }
  Homogeneous3(const F& x, const F& y, const F& z) : Homogeneous3(Coords<F>{x, y, z}) {}

  const Coords<F>& coords() const { return c_; }
  const F& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

  Homogeneous3 canonical() const { return Homogeneous3(canonical_coords(c_)); }

  // Unit-norm floating representative (exact values are converted).
  Coords<Complex> unit() const {
    Coords<Complex> z{to_complex(c_[0]), to_complex(c_[1]), to_complex(c_[2])};
    const double n = norm(z);
    for (auto& x : z) x /= n;
    return z;
  }

  std::string to_string() const;

 private:
  Coords<F> c_;
};

template <Field F>
using ProjPoint = Homogeneous3<F, PointTag>;
template <Field F>
using ProjLine = Homogeneous3<F, LineTag>;

template <Field F, class Tag>
std::string Homogeneous3<F, Tag>::to_string() const {
  std::string out = "[";
  for (int i = 0; i < 3; ++i) {
    if (i) out += ":";
    if constexpr (is_exact_v<F>) {
      out += webendo::to_string(c_[static_cast<std::size_t>(i)]);
    } else {
      const Complex z = c_[static_cast<std::size_t>(i)];
      out += "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
    }
  }
  return out + "]";
}

// Chordal distance between two projective triples: |a x b| on unit
// representatives. Zero exactly when they are proportional.
template <Field F>
double chordal_distance(const Coords<F>& a, const Coords<F>& b) {
  Coords<Complex> ua{to_complex(a[0]), to_complex(a[1]), to_complex(a[2])};
  Coords<Complex> ub{to_complex(b[0]), to_complex(b[1]), to_complex(b[2])};
  const double na = norm(ua), nb = norm(ub);
  return norm(cross(ua, ub)) / (na * nb);
}

template <Field F>
bool proportional(const Coords<F>& a, const Coords<F>& b, double tol = kDefaultTol) {
  if constexpr (is_exact_v<F>) {
    return is_zero_vector(cross(a, b));
  } else {
    return chordal_distance(a, b) <= tol;
  }
}

template <Field F, class Tag>
bool same(const Homogeneous3<F, Tag>& a, const Homogeneous3<F, Tag>& b, double tol = kDefaultTol) {
  return proportional(a.coords(), b.coords(), tol);
}

template <Field F, class Tag>
bool operator==(const Homogeneous3<F, Tag>& a, const Homogeneous3<F, Tag>& b) {
  return same(a, b);
}

template <Field F>
ProjLine<F> dualize(const ProjPoint<F>& p) {
  return ProjLine<F>(p.coords());
}

template <Field F>
ProjPoint<F> dualize(const ProjLine<F>& l) {
  return ProjPoint<F>(l.coords());
}

template <Field F>
ProjLine<F> join(const ProjPoint<F>& p, const ProjPoint<F>& q, double tol = kDefaultTol) {
  if (proportional(p.coords(), q.coords(), tol))
    throw Error(ErrorKind::CoincidentPoints, "join of " + p.to_string() + " with itself");
  return ProjLine<F>(cross(p.coords(), q.coords()));
}

template <Field F>
ProjPoint<F> meet(const ProjLine<F>& l, const ProjLine<F>& m, double tol = kDefaultTol) {
  if (proportional(l.coords(), m.coords(), tol))
    throw Error(ErrorKind::CoincidentLines, "meet of " + l.to_string() + " with itself");
  return ProjPoint<F>(cross(l.coords(), m.coords()));
}

struct IncidenceResult {
  bool flag = false;
  double residual = 0.0;
};

// |l . p| on unit representatives.
template <Field F>
IncidenceResult incident(const ProjPoint<F>& p, const ProjLine<F>& l, double tol = kDefaultTol) {
  if constexpr (is_exact_v<F>) {
    const F v = dot(p.coords(), l.coords());
    return {sgn(v) == 0, magnitude(v)};
  } else {
    const double r = std::abs(dot(p.unit(), l.unit()));
    return {r < tol, r};
  }
}

// Residual is |det| of canonical representatives.
template <Field F>
IncidenceResult collinear(const ProjPoint<F>& p, const ProjPoint<F>& q, const ProjPoint<F>& r, double tol = kDefaultTol) {
  if constexpr (is_exact_v<F>) {
    const F d = det3(canonical_coords(p.coords()), canonical_coords(q.coords()), canonical_coords(r.coords()));
    return {sgn(d) == 0, magnitude(d)};
  } else {
    const double res = std::abs(det3(p.unit(), q.unit(), r.unit()));
    return {res < tol, res};
  }
}

template <Field F, class Tag>
Homogeneous3<Complex, Tag> to_complex(const Homogeneous3<F, Tag>& p) {
  return Homogeneous3<Complex, Tag>(Coords<Complex>{to_complex(p[0]), to_complex(p[1]), to_complex(p[2])});
}

// Two independent points spanning the line l, chosen deterministically:
// with k the index of the largest |l_k| and {i, j} the others in order,
// e_i * l_k - e_k * l_i and e_j * l_k - e_k * l_j.
template <Field F>
std::array<Coords<F>, 2> line_basis(const Coords<F>& l) {
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (magnitude(l[static_cast<std::size_t>(i)]) > magnitude(l[static_cast<std::size_t>(k)])) k = i;
  int others[2];
  int n = 0;
  for (int i = 0; i < 3; ++i)
    if (i != k) others[n++] = i;
  std::array<Coords<F>, 2> out{};
  for (int b = 0; b < 2; ++b) {
    Coords<F> v{F(0), F(0), F(0)};
    v[static_cast<std::size_t>(others[b])] = l[static_cast<std::size_t>(k)];
    v[static_cast<std::size_t>(k)] = -l[static_cast<std::size_t>(others[b])];
    out[static_cast<std::size_t>(b)] = v;
  }
  return out;
}

}  // namespace webendo
