#pragma once

#include <functional>

namespace maternpar {

/// Adaptive Gauss-Kronrod 7/15 integration on [a, b]. Bisects the interval
/// with the largest K15-G7 error estimate until the total estimate drops
/// below max(abs_tol, rel_floor * |integral|). Throws QuadratureError (with
/// the achieved estimate) if the subdivision budget is exhausted first.
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol = 1e-10, double rel_floor = 1e-13,
                    int max_intervals = 4000);

} // namespace maternpar
