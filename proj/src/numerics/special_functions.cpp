#include "subpot/numerics.hpp"

#include <cmath>
#include <numbers>

#include "subpot/errors.hpp"

namespace subpot::numerics {

double gamma_fn(double x)
{
    if (!(x > 0.0)) {
        throw DomainError("gamma_fn", "argument must be positive");
    }
    if (x > 171.0) {
        throw OverflowError("gamma_fn", "argument above 171 overflows double");
    }
    return std::tgamma(x);
}

double erfc_fn(double x)
{
    // For x < 0 the value lies in (1, 2) and is formed from the positive
    // branch, so erfc(-x) + erfc(x) == 2 up to one rounding.
    if (x < 0.0) {
        return 2.0 - std::erfc(-x);
    }
    return std::erfc(x);
}

double erfc_asymptotic(double x, int n_terms)
{
    if (!(x > 0.0)) {
        throw DomainError("erfc_asymptotic", "argument must be positive");
    }
    if (n_terms < 0) {
        throw DomainError("erfc_asymptotic", "n_terms must be non-negative");
    }
    const double inv_2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0;
    double series = 1.0;
    for (int n = 1; n <= n_terms; ++n) {
        term *= -(2.0 * n - 1.0) * inv_2x2;
        series += term;
    }
    return std::exp(-x * x) / (x * std::sqrt(std::numbers::pi)) * series;
}

}  // namespace subpot::numerics
