#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace phibvp {

// Controls the Monte-Carlo probing used by the certificate estimators.
struct SamplingPlan {
  double radius = 1.0;    // sup-norm radius of the probed state ball
  int samples = 2000;     // draws per estimated quantity
  std::uint64_t seed = 0; // base seed; estimators derive sub-seeds from it
  int t_nodes = 9;        // time points probed per draw

  void validate() const {
    if (!(radius > 0.0)) throw std::invalid_argument("SamplingPlan: radius must be positive");
    if (samples < 1) throw std::invalid_argument("SamplingPlan: samples must be at least 1");
    if (t_nodes < 2) throw std::invalid_argument("SamplingPlan: t_nodes must be at least 2");
  }
};

// Deterministic uniform generator. Draws mantissa bits straight from the
// engine so output is identical across platforms and standard libraries.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Uniform in [-r, r).
  double symmetric(double r) { return range(-r, r); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace phibvp
