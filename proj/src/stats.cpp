#include "exekg/stats.hpp"

#include <algorithm>
#include <cmath>

namespace exekg {

double mean(std::span<const double> values) {
  if (values.empty()) throw Error("mean of an empty column");
  double sum = 0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double std_dev(std::span<const double> values) {
  if (values.empty()) throw Error("standard deviation of an empty column");
  double m = mean(values);
  double sq = 0;
  for (double v : values) sq += (v - m) * (v - m);
  return std::sqrt(sq / static_cast<double>(values.size()));
}

namespace {
double interpolated_quantile(const std::vector<double>& sorted, double fraction) {
  double position = fraction * static_cast<double>(sorted.size() - 1);
  auto lower = static_cast<std::size_t>(position);
  double weight = position - static_cast<double>(lower);
  if (lower + 1 >= sorted.size()) return sorted.back();
  return sorted[lower] + weight * (sorted[lower + 1] - sorted[lower]);
}
}  // namespace

Quartiles quartiles(std::span<const double> values) {
  if (values.size() < 2) throw Error("quartiles need at least 2 values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  Quartiles q;
  q.q1 = interpolated_quantile(sorted, 0.25);
  q.q3 = interpolated_quantile(sorted, 0.75);
  q.iqr = q.q3 - q.q1;
  return q;
}

std::vector<bool> detect_outliers(std::span<const double> values) {
  Quartiles q = quartiles(values);
  double lo = q.q1 - 1.5 * q.iqr;
  double hi = q.q3 + 1.5 * q.iqr;
  std::vector<bool> mask(values.size());
  for (std::size_t i = 0; i < values.size(); i++) mask[i] = values[i] < lo || values[i] > hi;
  return mask;
}

std::vector<double> normalize(std::span<const double> values) {
  if (values.empty()) throw Error("normalize of an empty column");
  double m = mean(values);
  double s = std_dev(values);
  std::vector<double> out(values.size());
  if (s == 0) return out;  // degenerate column maps to zeros
  for (std::size_t i = 0; i < values.size(); i++) out[i] = (values[i] - m) / s;
  return out;
}

}  // namespace exekg
