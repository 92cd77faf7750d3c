#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "qlab/liepoisson/fiber_poly.hpp"

namespace qlab::liepoisson {

// The three recognised families of quantisable functions on the dual bundle.
enum class QuantisableTag {
  FourierOfCompact,  // Fourier transform of a compactly supported function
  FiberPolynomial,   // polynomial in the fibres
  CompactCharacter,  // X -> e^{i<ell, X>} with ell a compactly supported section
};

// f = Fourier transform of g, where g vanishes outside ||xi|| <= support_radius.
struct FourierOfCompactRep {
  std::function<double(const VecD&)> g;
  double support_radius = 0.0;
};

// X -> e^{i<ell, X>} with a constant section ell over a compact base.
struct CompactCharacterRep {
  VecD ell;
};

// A bare callable: membership in the quantisable class is undecidable from
// point samples, so these are always rejected.
struct OpaqueCallableRep {
  std::function<double(const VecD&)> f;
};

using QuantisableFunction =
    std::variant<FiberPolynomial, CompactCharacterRep, FourierOfCompactRep, OpaqueCallableRep>;

// Tag for the recognised families; nullopt rejects opaque callables.
inline std::optional<QuantisableTag> classify_quantisable(const QuantisableFunction& f) {
  if (std::holds_alternative<FiberPolynomial>(f)) return QuantisableTag::FiberPolynomial;
  if (std::holds_alternative<CompactCharacterRep>(f)) return QuantisableTag::CompactCharacter;
  if (std::holds_alternative<FourierOfCompactRep>(f)) return QuantisableTag::FourierOfCompact;
  return std::nullopt;
}

}  // namespace qlab::liepoisson
