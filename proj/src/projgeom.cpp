#include "webendo/projgeom.hpp"

namespace webendo {

Coords<Complex> unit_canonical(const Coords<Complex>& a) {
  const double n = norm(a);
  Coords<Complex> out{a[0] / n, a[1] / n, a[2] / n};
  // Entries below this are treated as zero when choosing the phase.
  constexpr double kSignificant = 1e-12;
  for (const auto& x : out) {
    if (std::abs(x) > kSignificant) {
      const Complex phase = std::conj(x) / std::abs(x);
      for (auto& y : out) y *= phase;
      break;
    }
  }
  return out;
}

}  // namespace webendo
