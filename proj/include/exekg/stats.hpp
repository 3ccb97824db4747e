#pragma once

#include <span>
#include <vector>

#include "exekg/errors.hpp"

namespace exekg {

struct Quartiles {
  double q1 = 0;
  double q3 = 0;
  double iqr = 0;
};

// Arithmetic mean; empty-column error on length 0.
double mean(std::span<const double> values);

// Population standard deviation (divide by n); empty-column error on length 0.
double std_dev(std::span<const double> values);

// Linear-interpolation quantiles at positions (n-1)*0.25 and (n-1)*0.75 over
// the sorted values. Requires length >= 2.
Quartiles quartiles(std::span<const double> values);

// mask[i] is true iff values[i] lies outside [q1 - 1.5*iqr, q3 + 1.5*iqr].
std::vector<bool> detect_outliers(std::span<const double> values);

// Z-score normalization; a zero-std column maps to all zeros.
std::vector<double> normalize(std::span<const double> values);

}  // namespace exekg
