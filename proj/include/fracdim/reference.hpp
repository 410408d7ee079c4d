#pragma once

#include "fracdim/estimators.hpp"
#include "fracdim/generators.hpp"
#include "fracdim/types.hpp"

// Plain single-threaded versions of the kernels that carry OpenMP pragmas in
// the main library. They share the exact per-element arithmetic, so tests can
// require bit-identical output, and the benchmark tool uses them as the
// baseline for speedup numbers.
namespace fracdim::reference {

TimeSeries weierstrass(const WeierstrassSpec& spec);

EstimateResult higuchi(const TimeSeries& ts, const HiguchiConfig& cfg = {});
EstimateResult ghe(const TimeSeries& ts, const GheConfig& cfg = {});
EstimateResult dfa(const TimeSeries& ts, const DfaConfig& cfg = {});

}  // namespace fracdim::reference
