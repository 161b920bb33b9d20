#pragma once

#include <array>
#include <cstdint>

namespace csbm {

// Error-compensated accumulator for real-valued sums; long chains of
// incremental +/- updates would otherwise drift.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
  void reset() { sum = comp = 0.0; }
};

// Per-block-pair sufficient statistics. The integer counters are
// modality-dependent:
//
//   binary : cat[0] = edge count s_rs
//   count  : cat[0] = value sum S_rs
//   sign   : cat[0] = #(+1), cat[1] = #(-1)          (zeros implicit)
//   dyad4  : cat[0] = #(10), cat[1] = #(01), cat[2] = #(11)   (00 implicit)
//   count+ZIP : cat[0] = active dyads m, cat[1] = active value sum S
//
// sum_y / sum_y2 are used by the real modality only.
struct BlockStats {
  std::int64_t n = 0;  // dyad count n_rs
  std::array<std::int64_t, 3> cat{0, 0, 0};
  KahanSum sum_y;
  KahanSum sum_y2;
};

}  // namespace csbm
