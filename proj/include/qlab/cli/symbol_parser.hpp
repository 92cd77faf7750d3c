#pragma once

#include <string>

#include "qlab/trig_poly.hpp"
#include "qlab/weylrn/symbol.hpp"

namespace qlab::cli {

// Tiny expression syntax for phase-space symbols: sums of products of
//   - numbers            2, -0.5, 1.5e-2
//   - fiber factors      X, X^2, X1, X2^3        (X means X1)
//   - base factors       sin(p), cos(2p), sin(3p2), cos(p1)
// Examples: "X", "X^2 + sin(p)", "cos(2p)*X1*X2", "0.5*X^2 - cos(p2)".
// Throws InvalidArgument with a pointer to the offending position.
weylrn::SymbolRn parse_symbol(const std::string& text, int n);

// Mode lists for torus elements: "r1,r2:re,im;..." e.g. "1,0:1,0;0,1:0.5,-0.25".
TrigPoly parse_mode_list(const std::string& text, int n);

}  // namespace qlab::cli
