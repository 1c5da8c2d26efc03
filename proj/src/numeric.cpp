#include "rocaudit/numeric.hpp"

#include <cmath>
#include <cstdio>

#include "rocaudit/error.hpp"

namespace rocaudit {

void CompensatedSum::add(double value) noexcept {
  const double t = sum_ + value;
  if (std::abs(sum_) >= std::abs(value)) {
    compensation_ += (sum_ - t) + value;
  } else {
    compensation_ += (value - t) + sum_;
  }
  sum_ = t;
}

double normal_cdf(double x) noexcept {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double simpson(std::span<const double> samples, double lo, double hi) {
  const std::size_t n = samples.size();
  if (n < 3 || n % 2 == 0) {
    throw Error(ErrorKind::InvalidArgument,
                "simpson needs an odd sample count >= 3");
  }
  const double h = (hi - lo) / static_cast<double>(n - 1);
  CompensatedSum acc;
  acc.add(samples.front());
  acc.add(samples.back());
  for (std::size_t i = 1; i + 1 < n; ++i) {
    acc.add((i % 2 == 1 ? 4.0 : 2.0) * samples[i]);
  }
  return acc.value() * h / 3.0;
}

double trapezoid(std::span<const double> samples, double lo, double hi) {
  const std::size_t n = samples.size();
  if (n < 2) {
    throw Error(ErrorKind::InvalidArgument, "trapezoid needs >= 2 samples");
  }
  const double h = (hi - lo) / static_cast<double>(n - 1);
  CompensatedSum acc;
  acc.add(0.5 * samples.front());
  acc.add(0.5 * samples.back());
  for (std::size_t i = 1; i + 1 < n; ++i) acc.add(samples[i]);
  return acc.value() * h;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 0) return out;
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double last = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / last;
    out[i] = lo + (hi - lo) * t;
  }
  out.back() = hi;
  return out;
}

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace rocaudit
