#pragma once

// Truncated formal power series: coefficient vectors c[0..N] in ascending order.

#include <complex>
#include <span>
#include <vector>

namespace harmconv::fps {

using Cx = std::complex<double>;
using Series = std::vector<Cx>;

// Coefficients 0..order of the product.
Series multiply(std::span<const Cx> f, std::span<const Cx> g, int order);

// Coefficients 0..order of f/g. Requires g[0] != 0. Sparse divisors (a few nonzero
// terms, as in 1 + e^{iθ} z^n) cost O(order * nnz).
Series divide(std::span<const Cx> f, std::span<const Cx> g, int order);

// Antiderivative with zero constant term; one order longer than the input.
Series integrate(std::span<const Cx> f);

Series differentiate(std::span<const Cx> f);

Cx evaluate(std::span<const Cx> f, Cx z) noexcept;
// f'(z) without forming the derivative series.
Cx evaluate_derivative(std::span<const Cx> f, Cx z) noexcept;

// Zero-padded or truncated copy with coefficients 0..order.
Series resized(std::span<const Cx> f, int order);

}  // namespace harmconv::fps
