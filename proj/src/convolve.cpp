#include "harmconv/convolve.hpp"

#include "harmconv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace harmconv {
namespace {

constexpr double kStructuralTolerance = 1e-10;
constexpr double kCollapseTolerance = 1e-9;

Cx expi(double t) { return std::polar(1.0, t); }

void require_printed_match(const CPoly& computed, const CPoly& printed, const char* what)
{
    const double scale = std::max(1.0, printed.max_abs());
    if (coefficient_distance(computed, printed) > 1e-12 * scale) {
        throw StructuralError(what);
    }
}

}  // namespace

void ParamSet::validate() const
{
    if (!(a > -1.0 && a < 1.0)) {
        throw ParameterError("a must lie in (-1, 1)");
    }
    if (!(beta > 0.0 && beta < std::numbers::pi)) {
        throw ParameterError("beta must lie in (0, pi)");
    }
    if (!std::isfinite(theta)) {
        throw ParameterError("theta must be finite");
    }
    if (n < 1) {
        throw ParameterError("n must be >= 1");
    }
}

double coefficient_distance(const CPoly& p, const CPoly& q) noexcept
{
    const std::size_t len = std::max(p.coeffs().size(), q.coeffs().size());
    double d = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
        d = std::max(d, std::abs(p[k] - q[k]));
    }
    return d;
}

HarmonicMap hadamard(const HarmonicMap& F, const HarmonicMap& f, int N)
{
    const TaylorPair A = taylor_coeffs(F, N);
    const TaylorPair B = taylor_coeffs(f, N);
    fps::Series h(static_cast<std::size_t>(N) + 1);
    fps::Series g(static_cast<std::size_t>(N) + 1);
    for (int k = 0; k <= N; ++k) {
        h[k] = A.a[k] * B.a[k];
        g[k] = A.b[k] * B.b[k];
    }
    return make_series(std::move(h), std::move(g));
}

HarmonicMap convolved_map(const ParamSet& params, int N)
{
    params.validate();
    const HarmonicMap strip = make_strip(params.beta, DilatationSpec::rotated_power(params.theta, params.n), N);
    return hadamard(make_half_plane(params.a), strip, N);
}

RationalFn build_numerator_general(const ParamSet& params)
{
    params.validate();
    const double a = params.a;
    const double c = std::cos(params.beta);
    const int n = params.n;
    const Cx rot = expi(params.theta);

    const CPoly one{1.0};
    const CPoly omega = CPoly::monomial(rot, n);
    const CPoly quad{1.0, 2.0 * c, 1.0};               // 1 + 2z cosβ + z^2
    const CPoly upper{a, (1.0 + a) * c, 1.0};          // a + a z cosβ + z cosβ + z^2
    const CPoly lower{1.0, (1.0 + a) * c, a};          // 1 + z cosβ + a z cosβ + a z^2
    const double shear = static_cast<double>(n) * (1.0 - a);

    // Numerator 2ω(1+ω)·upper − zω'(1−a)·quad with zω' = nω, divided by ω.
    const CPoly t = Cx(2.0) * ((one + omega) * upper) - Cx(shear) * quad;
    // Denominator 2·lower·(1+ω) − zω'(1−a)·quad.
    const CPoly den = Cx(2.0) * (lower * (one + omega)) - Cx(shear) * (omega * quad);

    const CPoly t_star = conj_reciprocal(t);
    const Cx lambda = den[0] / t_star[0];
    const double scale = std::max(den.max_abs(), t.max_abs());
    if (std::abs(std::abs(lambda) - 1.0) > kStructuralTolerance
        || coefficient_distance(den, lambda * t_star) > kStructuralTolerance * scale) {
        throw StructuralError("convolution dilatation denominator is not a unimodular multiple of the reciprocal numerator");
    }
    return RationalFn(t, den, rot, n);
}

RationalFn tilde_omega_closed(const ParamSet& params)
{
    RationalFn w = build_numerator_general(params);
    const auto& num = w.num.coeffs();
    const std::size_t pivot = static_cast<std::size_t>(
        std::max_element(num.begin(), num.end(), [](Cx x, Cx y) { return std::abs(x) < std::abs(y); }) - num.begin());
    const Cx mu = w.den[pivot] / num[pivot];
    const double scale = std::max(w.den.max_abs(), w.num.max_abs());
    if (coefficient_distance(w.den, mu * w.num) <= kCollapseTolerance * scale) {
        // num and den share every zero: ω̃ = z^n e^{iθ} / μ.
        const Cx pre = w.prefactor / mu;
        return RationalFn(CPoly{1.0}, CPoly{1.0}, pre / std::abs(pre), w.power);
    }
    return w;
}

bool is_collapsed(const RationalFn& w) noexcept { return w.num.degree() == 0 && w.den.degree() == 0; }

HGDilatation::HGDilatation(double a, const HarmonicMap& strip) : a_(a)
{
    if (!(a > -1.0 && a < 1.0)) {
        throw ParameterError("a must lie in (-1, 1)");
    }
    const auto* s = std::get_if<HarmonicMap::StripShear>(&strip.rep());
    if (s == nullptr) {
        throw ParameterError("G'/H' dilatation needs a strip shear map");
    }
    h1_ = fps::differentiate(s->h);
    h2_ = fps::differentiate(h1_);
    g1_ = fps::differentiate(s->g);
    g2_ = fps::differentiate(g1_);
}

Cx HGDilatation::operator()(Cx z) const
{
    if (!(std::abs(z) < 1.0)) {
        throw DomainError("point outside the open unit disk");
    }
    const Cx den = 2.0 * fps::evaluate(h1_, z) + (1.0 - a_) * z * fps::evaluate(h2_, z);
    if (std::abs(den) < 1e-14) {
        throw DomainError("G'/H' denominator vanishes at z = (" + std::to_string(z.real()) + ", "
                          + std::to_string(z.imag()) + ")");
    }
    const Cx num = 2.0 * a_ * fps::evaluate(g1_, z) - (1.0 - a_) * z * fps::evaluate(g2_, z);
    return num / den;
}

HGDilatation tilde_omega_HG(double a, const HarmonicMap& strip) { return HGDilatation(a, strip); }

fps::Series tilde_omega_series(double a, const HarmonicMap& strip, int N)
{
    const Dilatation w = dilatation_of(hadamard(make_half_plane(a), strip, N));
    return std::get<fps::Series>(w.form);
}

CPoly build_p(double a, double beta, double theta)
{
    const double c = std::cos(beta);
    const Cx e = expi(theta);
    const CPoly p{(3.0 * a - 1.0) / 2.0, a * (2.0 * c + e), 0.5 + a * e * c + e * c + a / 2.0, e};
    require_printed_match(conj_reciprocal(p), printed_p_star(a, beta, theta), "p* does not match its printed form");
    if (std::abs(a - 1.0 / 3.0) < 1e-12) {
        // p(z) = (1/3) e^{iθ} z [3z^2 + 2(2cosβ + e^{−iθ}) z + (2cosβ e^{−iθ} + 1)].
        const Cx ec = std::conj(e);
        const CPoly factored = (e / 3.0) * (CPoly{0.0, 1.0} * CPoly{2.0 * c * ec + 1.0, 2.0 * (2.0 * c + ec), 3.0});
        require_printed_match(p, factored, "p at a = 1/3 does not match its printed factorization");
    }
    return p;
}

CPoly printed_p_star(double a, double beta, double theta)
{
    const double c = std::cos(beta);
    const Cx ec = expi(-theta);
    return CPoly{ec, ec * c + a * ec * c + 0.5 + a / 2.0, a * (ec + 2.0 * c), (3.0 * a - 1.0) / 2.0};
}

CPoly printed_p1(double a, double beta, double theta)
{
    const double c = std::cos(beta);
    const Cx ec = expi(-theta);
    const double k = 0.25 * (1.0 + 2.0 * a - 3.0 * a * a);
    return Cx(k) * CPoly{2.0 * c * ec + 1.0, 2.0 * (2.0 * c + ec), 3.0};
}

CPoly build_q(double a, double beta, double theta)
{
    const double c = std::cos(beta);
    const Cx ec = expi(-theta);
    const CPoly q{ec * (2.0 * a - 1.0), ec * c * (3.0 * a - 1.0), a * (1.0 + ec), c * (a + 1.0), 1.0};
    require_printed_match(conj_reciprocal(q), printed_q_star(a, beta, theta), "q* does not match its printed form");
    if (std::abs(a - 0.5) < 1e-12) {
        // q(z) = (z/2)(2z^3 + 3cosβ z^2 + (1 + e^{−iθ}) z + e^{−iθ} cosβ).
        const CPoly factored = Cx(0.5) * (CPoly{0.0, 1.0} * CPoly{ec * c, 1.0 + ec, 3.0 * c, 2.0});
        require_printed_match(q, factored, "q at a = 1/2 does not match its printed factorization");
    }
    return q;
}

CPoly printed_q_star(double a, double beta, double theta)
{
    const double c = std::cos(beta);
    const Cx e = expi(theta);
    return CPoly{1.0, c * (a + 1.0), a * (1.0 + e), e * c * (3.0 * a - 1.0), e * (2.0 * a - 1.0)};
}

CPoly printed_q1(double a, double beta, double theta)
{
    const double c = std::cos(beta);
    const Cx ec = expi(-theta);
    return Cx(2.0 * a * (1.0 - a)) * CPoly{ec * c, 1.0 + ec, 3.0 * c, 2.0};
}

}  // namespace harmconv
