#pragma once

#include <span>
#include <string>
#include <vector>

namespace rocaudit {

// Neumaier-compensated accumulator. Result depends only on the order of
// add() calls, never on how the caller partitions work.
class CompensatedSum {
 public:
  void add(double value) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Standard normal CDF via erfc; absolute error well below 1e-12.
double normal_cdf(double x) noexcept;

// Composite Simpson rule over uniformly spaced samples spanning [lo, hi].
// samples.size() must be odd and >= 3.
double simpson(std::span<const double> samples, double lo, double hi);

// Composite trapezoid rule over uniformly spaced samples spanning [lo, hi].
double trapezoid(std::span<const double> samples, double lo, double hi);

// `count` uniformly spaced points from lo to hi inclusive; endpoints exact.
std::vector<double> linspace(double lo, double hi, std::size_t count);

// Round-trip rendering with 17 significant digits ("%.17g").
std::string format_real(double value);

}  // namespace rocaudit
