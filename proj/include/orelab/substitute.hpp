#pragma once

#include <functional>
#include <map>

#include "orelab/ratfunc.hpp"

namespace orelab {

template <BaseField F>
using Assignment = std::map<VarId, RatFunc<F>>;

/// Image of a variable under a substitution.
template <BaseField F>
using VarImage = std::function<RatFunc<F>(VarId)>;

/// Image of f under the field homomorphism induced by `image`.
/// Throws DomainError when the substituted denominator vanishes.
template <BaseField F>
RatFunc<F> substitute(const RatFunc<F>& f, const VarImage<F>& image);

/// Variables missing from the assignment map to themselves.
template <BaseField F>
RatFunc<F> substitute(const RatFunc<F>& f, const Assignment<F>& assignment);

}  // namespace orelab
