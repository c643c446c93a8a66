#ifndef TORIC_LP_HPP
#define TORIC_LP_HPP

#include <optional>
#include <vector>

#include "toric/exactla.hpp"

namespace toric {

/// Exact rational feasibility of { x >= 0 : rows * x = rhs }.
/// Returns a feasible point, or nullopt. Phase-1 simplex, Bland's rule.
std::optional<RatVec> feasible_nonnegative(const std::vector<RatVec>& rows, const RatVec& rhs);

/// Exact rational feasibility of { x free : rows * x >= rhs }.
std::optional<RatVec> feasible_at_least(const std::vector<RatVec>& rows, const RatVec& rhs);

}  // namespace toric

#endif  // TORIC_LP_HPP
