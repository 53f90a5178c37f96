#pragma once

#include <vector>

#include "ellsec/linalg.hpp"
#include "ellsec/multipoly.hpp"
#include "ellsec/skewsolve.hpp"

namespace ellsec {

/// Pf by first-row expansion Pf(M) = sum_{j>1} (-1)^j m_1j Pf(M without rows/cols 1, j),
/// memoized on the set of surviving indices. Even size only.
MultiPoly pfaffian(const SkewPolyMatrix& m);
Fp pfaffian(const Matrix& m);

/// Odd size: component i (one-based) is (-1)^(i+1) Pf(M without row and column i).
/// M * result = 0 is checked before returning; a failure throws std::logic_error.
PolyMap sub_pfaffians(const SkewPolyMatrix& m);
std::vector<Fp> sub_pfaffians(const Matrix& m);

}  // namespace ellsec
