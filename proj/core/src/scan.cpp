#include "widom/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "widom/error.hpp"
#include "widom/parallel.hpp"

namespace widom {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kCandidates = 16;

}  // namespace

PeriodicMax scan_periodic_max(const std::function<double(double)>& f, int grid, double tol) {
  if (grid < 3) throw Error(ErrorKind::parameter, "scan_periodic_max: grid must be >= 3");
  auto angle = [&](long i) { return kTwoPi * (static_cast<double>(i) / grid); };

  std::vector<double> values(grid);
  parallel_for(static_cast<std::size_t>(grid), [&](std::size_t i) { values[i] = f(angle(static_cast<long>(i))); });

  std::vector<int> peaks;
  for (int i = 0; i < grid; ++i) {
    const double prev = values[(i + grid - 1) % grid];
    const double next = values[(i + 1) % grid];
    if (values[i] >= prev && values[i] >= next) peaks.push_back(i);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](int a, int b) { return values[a] > values[b]; });
  if (peaks.size() > kCandidates) peaks.resize(kCandidates);

  PeriodicMax best{-std::numeric_limits<double>::infinity(), 0.0};
  auto consider = [&](double theta, double value) {
    theta = std::fmod(theta, kTwoPi);
    if (theta < 0) theta += kTwoPi;
    if (value > best.value || (value == best.value && theta < best.theta)) {
      best.value = value;
      best.theta = theta;
    }
  };
  for (int i = 0; i < grid; ++i) consider(angle(i), values[i]);

  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  std::vector<PeriodicMax> refined(peaks.size());
  parallel_for(peaks.size(), [&](std::size_t p) {
    const int i = peaks[p];
    double a = angle(i - 1), b = angle(i + 1);
    double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    PeriodicMax local{values[i], angle(i)};
    auto keep = [&](double x, double v) {
      if (v > local.value) local = {v, x};
    };
    keep(x1, f1);
    keep(x2, f2);
    for (int it = 0; it < 200 && b - a > tol; ++it) {
      if (f1 >= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - golden * (b - a);
        f1 = f(x1);
        keep(x1, f1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + golden * (b - a);
        f2 = f(x2);
        keep(x2, f2);
      }
    }
    refined[p] = local;
  });
  for (const PeriodicMax& v : refined) consider(v.theta, v.value);
  return best;
}

}  // namespace widom
