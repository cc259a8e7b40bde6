#pragma once

// Shared helpers for the test binaries: terse constructors for small
// polynomials and random sampling utilities.

#include <vector>

#include "nodal/poly.hpp"
#include "nodal/rng.hpp"

namespace testsupport {

/// Poly over Z_m from small signed coefficients, ascending degree:
/// P(7, {1, 0, 1}) is x^2 + 1 over Z_7.
inline nodal::Poly P(long m, std::vector<long> coeffs) {
  std::vector<nodal::BigUint> c(coeffs.begin(), coeffs.end());
  return nodal::Poly(nodal::BigUint(m), std::move(c));
}

/// Random polynomial of degree <= max_degree (possibly zero).
inline nodal::Poly random_poly(const nodal::BigUint& m, int max_degree,
                               nodal::RandomSource& rng) {
  std::vector<nodal::BigUint> c(static_cast<std::size_t>(max_degree) + 1);
  for (auto& v : c) v = rng.below(m);
  return nodal::Poly(m, std::move(c));
}

/// Random nonzero polynomial of degree <= max_degree.
inline nodal::Poly random_nonzero_poly(const nodal::BigUint& m, int max_degree,
                                       nodal::RandomSource& rng) {
  for (;;) {
    nodal::Poly p = random_poly(m, max_degree, rng);
    if (!p.is_zero()) return p;
  }
}

}  // namespace testsupport
