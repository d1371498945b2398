#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/series.hpp"

namespace conelab {

// Multiplicative inverse within the truncation region.  The series must
// factor as c * x^m * (1 + nilpotent) with c an invertible rational and x^m
// the componentwise-minimal monomial; matrix series additionally need an
// invertible block at the minimal monomial.  Throws std::domain_error when
// no such factorization exists or the tail fails to vanish within the
// region.
Series series_invert(const Series& s);

Series series_pow(const Series& s, long e);

// exp needs a nilpotent argument (zero constant term in practice), log an
// argument of the form 1 + nilpotent; both are exact within the region.
Series series_exp(const Series& s);
Series series_log(const Series& s);

// Substitute scalar series for variables.  Substituted variables disappear
// from the result; remaining variables keep their windows intersected with
// the inner tables.  Negative exponents of a substituted variable use the
// inverse of the inner series.
Series series_subst(const Series& outer, const std::map<std::string, Series>& inner);

// Compositional inverse in `var`: f = c1*var + O(var^2) with c1 invertible;
// returns g with f(g(var)) = var = g(f(var)) up to var^order.
Series series_reversion(const Series& f, const std::string& var, int order);

// var ↦ c * var.
Series series_scale_var(const Series& s, const std::string& var, const Rat& c);

// Solve dX/dvars[i] = grads[i], X(0) = 0, where "0" sets every listed
// variable to zero.  Integrability is re-verified on the region where the
// antiderivative is reliable (listed-group degree below the cap); a mismatch
// throws std::domain_error.
Series integrate_gradient(const std::vector<std::string>& vars, const std::vector<Series>& grads);

// Conservative bound on the nilpotency order of the truncation region
// (used to cut off geometric/exponential iterations).
int region_nilpotency_bound(const VarTable& tab);

}  // namespace conelab
