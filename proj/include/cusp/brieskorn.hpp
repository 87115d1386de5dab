#pragma once

#include <vector>

#include "cusp/model.hpp"
#include "cusp/series.hpp"

namespace cusp {

// f dx^dy = alpha(H) dx^dy + beta(H) y dx^dy  (mod dH ^ d eta) on H = y^3 - x^2.
struct BrieskornPair {
    RationalSeries alpha;
    RationalSeries beta;

    TruncatedSeries alpha_real() const { return to_double(alpha); }
    TruncatedSeries beta_real() const { return to_double(beta); }
};

// Exact reduction of a polynomial density in (x, y) (lambda is set to 0).
// Coefficients are converted to rationals exactly.
//   x^2      -> y^3 - H
//   x y^j    -> 0
//   y^j      -> 2(j-2)/(2j-1) H y^{j-3}   (j >= 2)
BrieskornPair reduce(const Polynomial& f, std::size_t order = 4);
BrieskornPair reduce(const Density& f, std::size_t order = 4);

std::vector<BrieskornPair> reduce_batch(const std::vector<Density>& densities, std::size_t order = 4);

}  // namespace cusp
