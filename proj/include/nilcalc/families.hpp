#pragma once

#include "nilcalc/liealg.hpp"

#include <vector>

namespace nilcalc::families {

GradedLieAlgebra abelian(std::size_t n);
GradedLieAlgebra heisenberg(std::size_t n);
GradedLieAlgebra complex_heisenberg(std::size_t n);
GradedLieAlgebra heisenberg_product(const std::vector<std::size_t> &ns);
GradedLieAlgebra quotient_chain(std::size_t n);
GradedLieAlgebra free_step2(std::size_t q);
GradedLieAlgebra engel();
// strictly upper triangular (n+1)x(n+1) matrices
GradedLieAlgebra upper_triangular(std::size_t n);

} // namespace nilcalc::families
