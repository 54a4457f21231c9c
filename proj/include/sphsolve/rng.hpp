#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace sphsolve {

/// Seeded Gaussian stream. Box-Muller on top of mt19937_64 so the draw
/// sequence is identical across platforms and standard library versions.
class GaussianRng {
 public:
  static constexpr const char* kAlgorithmId = "mt19937_64-boxmuller-v1";

  explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0,1], u2 in [0,1)
    double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1p-53;
    double u2 = static_cast<double>(gen_() >> 11) * 0x1p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1p-53; }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sphsolve
