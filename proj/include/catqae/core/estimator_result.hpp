#pragma once

#include <cstdint>
#include <string>

namespace catqae {

/// One run of an estimator: a dollar estimate and what it cost.
struct EstimatorResult {
    double estimate = 0.0;      // dollars
    std::uint64_t queries = 0;  // oracle calls or samples consumed
    std::string estimator;
    std::uint64_t seed = 0;
    std::uint64_t rep_index = 0;
};

} // namespace catqae
