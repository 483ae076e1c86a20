#pragma once

#include <array>
#include <cstddef>

#include "qnls/analysis.hpp"

namespace qnls {

/// Published reference error levels for the benchmark experiments, used
/// for side-by-side printing in the sweep tables. Values exist for the
/// canonical q grid {i/8 : i = 1..7}, K in {10, 15, 20} and N in {20, 50}.
struct ReferenceTable {
    std::array<std::size_t, 3> step_counts;
    std::array<std::array<double, 7>, 3> er;  ///< [K row][q column]
};

inline constexpr std::array<double, 7> reference_q_values = {
    0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875};

/// Reference table for the experiment at truncation order N, or nullptr
/// when no published values exist for that N.
const ReferenceTable* reference_table(Experiment experiment, std::size_t order);

/// Published Er for (q, K) when the experiment, order, q and K all match
/// a reference entry; quiet NaN otherwise.
double reference_er(Experiment experiment, std::size_t order, double q, std::size_t steps);

}  // namespace qnls
