#pragma once

#include <complex>
#include <vector>

#include "curvebound/intpoly.hpp"

namespace curvebound::detail {

// Approximate complex roots of a squarefree polynomial (Aberth iteration in
// long double).  Empty when the iteration does not converge.
std::vector<std::complex<long double>> approximate_roots(const IntPoly& squarefree);

}  // namespace curvebound::detail
