#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace hp {

// f(t, out) fills out[0..dim). Called concurrently when threads > 1.
using VecFn = std::function<void(double, double*)>;

struct QuadResult {
  std::vector<double> value;
  double error = 0;  // sum of accepted |K15 - G7| panel estimates, max over components
  std::size_t evaluations = 0;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b], starting from panels of width `step`.
// A panel is accepted when its error is below tol_per_length * width.
QuadResult gk15_adaptive(const VecFn& f, std::size_t dim, double a, double b, double step,
                         double tol_per_length, unsigned max_depth = 12, unsigned threads = 1);

double gk15_adaptive(const std::function<double(double)>& f, double a, double b, double step,
                     double tol_per_length, double* error = nullptr);

}  // namespace hp
