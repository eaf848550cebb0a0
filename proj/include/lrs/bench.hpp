#pragma once

// Sign/verify wall time and signature size as a function of ring size.

#include "lrs/params.hpp"
#include "lrs/stats.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lrs {

struct BenchRow {
  std::size_t ring_size = 0;
  double sign_ms = 0;    // mean per signature
  double verify_ms = 0;  // mean per verification
  std::size_t bytes = 0;    // serialized signature file, header included
  std::size_t entries = 0;  // l*m integers + k trits
};

struct BenchResult {
  std::vector<BenchRow> rows;
  LinearFit sign_fit;
  LinearFit verify_fit;
};

/// One ring per size; a warmup signature and verification precede each timed
/// batch of `reps`. Ring sizes must be nonempty and strictly ascending.
BenchResult bench_scaling(const ParameterSet& params, const std::vector<std::size_t>& ring_sizes, std::size_t reps,
                          std::uint64_t seed);

/// Fixed-width table plus the two fits.
std::string format_bench(const BenchResult& result);

}  // namespace lrs
