#pragma once

#include <string>
#include <vector>

#include "core/series.hpp"

namespace conelab {

// Formal stationary-phase (Laplace) expansion of
//
//     ∫ a(y) e^{-phase(y)/z} dy   /   (leading Gaussian factor)
//
// at a nondegenerate critical point, with phase(y) = c2 y^2 + c3 y^3 + ...
// given by its Taylor coefficients at the critical point (c2 invertible) and
// amplitude a(y) = a0 + a1 y + ... .  The result is sum_k r_k z^k with each
// r_k a polynomial in the phase/amplitude data, computed through Gaussian
// moments <y^{2m}> = (2m-1)!! (z/(2 c2))^m; odd moments vanish.
//
// `zvar` names the expansion variable in the output table; phase and
// amplitude coefficients are scalar series over an arbitrary common
// coefficient ring (symbols allowed).
Series stationary_phase(const std::vector<Series>& amplitude,
                        const std::vector<Series>& phase,  // phase[k] = c_{k+2}
                        const std::string& zvar, int order);

}  // namespace conelab
