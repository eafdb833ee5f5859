#pragma once

#include <iosfwd>
#include <utility>

#include "potts/types.hpp"

namespace potts::oracle {

enum class Norm { L1, L2 };

// Global optimum by enumeration of all 2^(n-1) partitions; n <= 16.
// Segment levels by sort-based weighted median (L1) or weighted mean (L2).
// Among equal-energy partitions the lexicographically smallest boundary set
// wins.
std::pair<StepSignal, double> enumerate_exact(const WeightedSignal& f, double gamma, Norm norm);

// Same Bellman recursion as the fast solver, but with per-cell sort-based
// median and deviation. Deliberately simple; cubic time.
std::pair<Partition, double> naive_dp(const WeightedSignal& f, double gamma);

// Writes an (instance, energy, partition) triple as CSV for the regression
// suite.
void write_fixture(std::ostream& os, const WeightedSignal& f, double gamma,
                   const Partition& partition, double energy);

} // namespace potts::oracle
