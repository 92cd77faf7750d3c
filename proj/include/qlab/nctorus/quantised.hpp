#pragma once

#include <functional>
#include <vector>

#include "qlab/skew_form.hpp"
#include "qlab/vec.hpp"

namespace qlab::nctorus {

// A test function on the scaled groupoid family, H(hbar, u, q).
using GroupoidFn = std::function<cplx(double, const VecD&, const VecD&)>;

// Closed-form action of the quantised character of mode r at (hbar, q):
//   e^{i<r,q>} H(hbar, eta(r/2), q).
// The double oscillatory integral collapses exactly because the symbol is a
// pure phase in the fiber variable.
cplx evaluate_quantised(const std::vector<int>& r, const GroupoidFn& H, double hbar, const VecD& q,
                        const SkewForm& eta);

// Composition of the quantised characters of r and rp in convolution order:
// the inner operator is pushed along right translations and the outer one is
// evaluated on the result. Equals exp(i*hbar/2 <r, eta rp>) times the action
// of the quantised character of r + rp.
cplx compose_quantised(const std::vector<int>& r, const std::vector<int>& rp, const GroupoidFn& H,
                       double hbar, const VecD& q, const SkewForm& eta);

}  // namespace qlab::nctorus
