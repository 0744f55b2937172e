#include "harmconv/fps.hpp"

#include "harmconv/errors.hpp"

#include <algorithm>
#include <utility>

namespace harmconv::fps {

Series multiply(std::span<const Cx> f, std::span<const Cx> g, int order)
{
    Series r(static_cast<std::size_t>(order) + 1);
    for (std::size_t i = 0; i < f.size() && i <= static_cast<std::size_t>(order); ++i) {
        if (f[i] == Cx{}) {
            continue;
        }
        for (std::size_t j = 0; j < g.size() && i + j <= static_cast<std::size_t>(order); ++j) {
            r[i + j] += f[i] * g[j];
        }
    }
    return r;
}

Series divide(std::span<const Cx> f, std::span<const Cx> g, int order)
{
    if (g.empty() || g[0] == Cx{}) {
        throw ParameterError("series division by a series with zero constant term");
    }
    std::vector<std::pair<std::size_t, Cx>> divisor;
    for (std::size_t k = 1; k < g.size() && k <= static_cast<std::size_t>(order); ++k) {
        if (g[k] != Cx{}) {
            divisor.emplace_back(k, g[k]);
        }
    }
    const Cx inv0 = 1.0 / g[0];
    Series q(static_cast<std::size_t>(order) + 1);
    for (std::size_t k = 0; k < q.size(); ++k) {
        Cx acc = k < f.size() ? f[k] : Cx{};
        for (const auto& [j, gj] : divisor) {
            if (j > k) {
                break;
            }
            acc -= gj * q[k - j];
        }
        q[k] = acc * inv0;
    }
    return q;
}

Series integrate(std::span<const Cx> f)
{
    Series r(f.size() + 1);
    for (std::size_t k = 0; k < f.size(); ++k) {
        r[k + 1] = f[k] / static_cast<double>(k + 1);
    }
    return r;
}

Series differentiate(std::span<const Cx> f)
{
    if (f.size() <= 1) {
        return Series{Cx{}};
    }
    Series r(f.size() - 1);
    for (std::size_t k = 1; k < f.size(); ++k) {
        r[k - 1] = static_cast<double>(k) * f[k];
    }
    return r;
}

Cx evaluate(std::span<const Cx> f, Cx z) noexcept
{
    // Real arithmetic avoids the NaN-recovery path of std::complex multiplication.
    const double x = z.real();
    const double y = z.imag();
    double re = 0.0;
    double im = 0.0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) {
        const double t = re * x - im * y + it->real();
        im = re * y + im * x + it->imag();
        re = t;
    }
    return {re, im};
}

Cx evaluate_derivative(std::span<const Cx> f, Cx z) noexcept
{
    const double x = z.real();
    const double y = z.imag();
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = f.size(); k-- > 1;) {
        const double kk = static_cast<double>(k);
        const double t = re * x - im * y + kk * f[k].real();
        im = re * y + im * x + kk * f[k].imag();
        re = t;
    }
    return {re, im};
}

Series resized(std::span<const Cx> f, int order)
{
    Series r(static_cast<std::size_t>(order) + 1);
    std::copy_n(f.begin(), std::min(f.size(), r.size()), r.begin());
    return r;
}

}  // namespace harmconv::fps
