#include "harmconv/cpoly.hpp"

#include "harmconv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace harmconv {
namespace {

double max_modulus(const std::vector<Cx>& c) noexcept
{
    double m = 0.0;
    for (const Cx& v : c) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

// Drops trailing coefficients that are negligible relative to `scale`.
void trim_trailing(std::vector<Cx>& c, double scale)
{
    const double eps = kTrimRelative * scale;
    while (!c.empty() && std::abs(c.back()) <= eps) {
        c.pop_back();
    }
}

CPoly with_scale(std::vector<Cx> c, double scale)
{
    trim_trailing(c, scale);
    return CPoly(std::move(c));
}

// p(z) and p'(z) together.
void horner2(const std::vector<Cx>& c, Cx z, Cx& value, Cx& deriv) noexcept
{
    value = Cx{};
    deriv = Cx{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        deriv = deriv * z + value;
        value = value * z + *it;
    }
}

}  // namespace

CPoly::CPoly(std::vector<Cx> coeffs) : coeffs_(std::move(coeffs))
{
    for (const Cx& c : coeffs_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw ParameterError("polynomial coefficient is not finite");
        }
    }
    trim_trailing(coeffs_, max_modulus(coeffs_));
}

CPoly CPoly::monomial(Cx c, int k)
{
    if (k < 0) {
        throw ParameterError("negative monomial degree");
    }
    std::vector<Cx> v(static_cast<std::size_t>(k) + 1);
    v.back() = c;
    return CPoly(std::move(v));
}

double CPoly::max_abs() const noexcept { return max_modulus(coeffs_); }

Cx CPoly::operator()(Cx z) const noexcept
{
    // Real arithmetic avoids the NaN-recovery path of std::complex multiplication.
    const double x = z.real();
    const double y = z.imag();
    double re = 0.0;
    double im = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        const double t = re * x - im * y + it->real();
        im = re * y + im * x + it->imag();
        re = t;
    }
    return {re, im};
}

CPoly CPoly::derivative() const
{
    if (coeffs_.size() <= 1) {
        return {};
    }
    std::vector<Cx> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        d[k - 1] = static_cast<double>(k) * coeffs_[k];
    }
    return CPoly(std::move(d));
}

CPoly operator+(const CPoly& p, const CPoly& q)
{
    std::vector<Cx> r(std::max(p.coeffs_.size(), q.coeffs_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) {
        r[k] = p[k] + q[k];
    }
    return with_scale(std::move(r), std::max(p.max_abs(), q.max_abs()));
}

CPoly operator-(const CPoly& p, const CPoly& q)
{
    std::vector<Cx> r(std::max(p.coeffs_.size(), q.coeffs_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) {
        r[k] = p[k] - q[k];
    }
    return with_scale(std::move(r), std::max(p.max_abs(), q.max_abs()));
}

CPoly operator*(const CPoly& p, const CPoly& q)
{
    if (p.is_zero() || q.is_zero()) {
        return {};
    }
    std::vector<Cx> r(p.coeffs_.size() + q.coeffs_.size() - 1);
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < q.coeffs_.size(); ++j) {
            r[i + j] += p.coeffs_[i] * q.coeffs_[j];
        }
    }
    return CPoly(std::move(r));
}

CPoly operator*(Cx s, const CPoly& p)
{
    std::vector<Cx> r = p.coeffs_;
    for (Cx& c : r) {
        c *= s;
    }
    return CPoly(std::move(r));
}

Cx eval(const CPoly& p, Cx z) noexcept { return p(z); }

CPoly conj_reciprocal(const CPoly& p)
{
    if (p.is_zero()) {
        throw ParameterError("undefined reciprocal of the zero polynomial");
    }
    const auto& c = p.coeffs();
    std::vector<Cx> r(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        r[k] = std::conj(c[c.size() - 1 - k]);
    }
    return CPoly(std::move(r));
}

CohnStep cohn_reduce(const CPoly& p, double margin)
{
    const int n = p.degree();
    if (n < 1) {
        throw ParameterError("cohn_reduce needs a polynomial of degree >= 1");
    }
    const Cx an = p.leading();
    const Cx a0 = p[0];
    CohnStep step;
    step.input = p;
    step.reciprocal = conj_reciprocal(p);

    // The constant term cancels identically: conj(an)*a0 - a0*conj(an).
    std::vector<Cx> num(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        num[k] = std::conj(an) * p[k] - a0 * step.reciprocal[k];
    }
    const double scale = p.max_abs() * p.max_abs();
    if (std::abs(num[0]) >= 1e-10 * scale) {
        throw StructuralError("Cohn numerator has a nonzero constant term");
    }
    step.reduced = CPoly(std::vector<Cx>(num.begin() + 1, num.end()));

    step.applicable = std::abs(a0) < std::abs(an) - margin * p.max_abs() && step.reduced.degree() == n - 1;
    return step;
}

ZeroCount classify_roots(std::span<const Cx> roots, double on_band)
{
    ZeroCount zc;
    for (const Cx& r : roots) {
        const double m = std::abs(r);
        if (m < 1.0 - on_band) {
            ++zc.inside;
        } else if (m > 1.0 + on_band) {
            ++zc.outside;
        } else {
            ++zc.on;
        }
    }
    return zc;
}

CohnCount cohn_count(const CPoly& p, const CountOptions& opts)
{
    if (p.is_zero()) {
        throw ParameterError("cannot count zeros of the zero polynomial");
    }
    CohnCount out;
    CPoly cur = p;
    int inside = 0;
    while (cur.degree() >= 1) {
        // Each step squares the coefficient scale; rescaling leaves the zeros alone.
        const double m = cur.max_abs();
        if (m > 1e8 || m < 1e-8) {
            cur = Cx(1.0 / m) * cur;
        }
        CohnStep step = cohn_reduce(cur, opts.cohn_margin);
        if (!step.applicable) {
            out.used_oracle = true;
            out.oracle_roots = find_roots(cur);
            const ZeroCount rest = classify_roots(out.oracle_roots, opts.on_band);
            out.steps.push_back(std::move(step));
            out.count = {inside + rest.inside, rest.on, rest.outside};
            return out;
        }
        cur = step.reduced;
        out.steps.push_back(std::move(step));
        ++inside;
    }
    out.count = {inside, 0, 0};
    return out;
}

ZeroCount count_zeros_unit_circle(const CPoly& p, const CountOptions& opts)
{
    return cohn_count(p, opts).count;
}

std::vector<Cx> find_roots(const CPoly& p, const RootOptions& opts)
{
    if (p.degree() < 1) {
        throw ParameterError("find_roots needs a polynomial of degree >= 1");
    }
    const auto& c = p.coeffs();
    const double coeff_max = p.max_abs();

    // Negligible low-order coefficients are zeros at the origin.
    std::size_t low = 0;
    while (low < c.size() && std::abs(c[low]) <= p.trim_eps()) {
        ++low;
    }
    std::vector<Cx> roots(low, Cx{});

    std::vector<Cx> monic(c.begin() + static_cast<std::ptrdiff_t>(low), c.end());
    const Cx lead = monic.back();
    for (Cx& v : monic) {
        v /= lead;
    }
    const int n = static_cast<int>(monic.size()) - 1;

    if (n >= 1) {
        // Fujiwara bound on the root moduli.
        double bound = 0.0;
        for (int k = 1; k <= n; ++k) {
            double mag = std::abs(monic[n - k]);
            if (k == n) {
                mag *= 0.5;
            }
            bound = std::max(bound, std::pow(mag, 1.0 / k));
        }
        bound = std::max(2.0 * bound, 1e-3);

        std::vector<Cx> z(n);
        for (int k = 0; k < n; ++k) {
            z[k] = std::polar(bound, 2.0 * std::numbers::pi * k / n + 0.4);
        }

        for (int iter = 0; iter < opts.max_iterations; ++iter) {
            double largest_step = 0.0;
            for (int i = 0; i < n; ++i) {
                Cx value, deriv;
                horner2(monic, z[i], value, deriv);
                if (value == Cx{}) {
                    continue;
                }
                const Cx ratio = value / deriv;
                Cx repulsion{};
                for (int j = 0; j < n; ++j) {
                    if (j != i) {
                        repulsion += 1.0 / (z[i] - z[j]);
                    }
                }
                const Cx w = ratio / (1.0 - ratio * repulsion);
                if (std::isfinite(w.real()) && std::isfinite(w.imag())) {
                    z[i] -= w;
                    largest_step = std::max(largest_step, std::abs(w) / (1.0 + std::abs(z[i])));
                }
            }
            if (largest_step < 1e-15) {
                break;
            }
        }

        // Newton polish, kept only when the residual improves.
        for (Cx& r : z) {
            for (int k = 0; k < 3; ++k) {
                Cx value, deriv;
                horner2(monic, r, value, deriv);
                if (deriv == Cx{}) {
                    break;
                }
                const Cx next = r - value / deriv;
                Cx nv, nd;
                horner2(monic, next, nv, nd);
                if (!(std::abs(nv) < std::abs(value))) {
                    break;
                }
                r = next;
            }
        }
        roots.insert(roots.end(), z.begin(), z.end());
    }

    double worst = 0.0;
    bool ok = true;
    for (const Cx& r : roots) {
        double absolute_sum = 0.0;
        double power = 1.0;
        for (const Cx& v : c) {
            absolute_sum += std::abs(v) * power;
            power *= std::abs(r);
        }
        const double residual = std::abs(p(r));
        const double tol = opts.residual_tolerance * std::max(coeff_max, absolute_sum);
        worst = std::max(worst, residual / std::max(coeff_max, absolute_sum));
        if (!(residual < tol)) {
            ok = false;
        }
    }
    if (!ok) {
        throw ConvergenceError("root finder did not reach the residual tolerance (relative residual "
                                   + std::to_string(worst) + ")",
                               roots, worst);
    }
    return roots;
}

}  // namespace harmconv
