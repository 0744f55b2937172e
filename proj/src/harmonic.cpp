#include "harmconv/harmonic.hpp"

#include "harmconv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace harmconv {
namespace {

constexpr Cx kI{0.0, 1.0};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_in_disk(Cx z)
{
    if (!(std::abs(z) < 1.0)) {
        throw DomainError("point outside the open unit disk");
    }
}

void require_half_plane_parameter(double a)
{
    if (!(a > -1.0 && a < 1.0)) {
        throw ParameterError("half-plane parameter a must lie in (-1, 1)");
    }
}

// 1 + 2 z cosβ + z^2 = (1 + z e^{iβ})(1 + z e^{-iβ}).
Cx strip_quadratic(double beta, Cx z) { return 1.0 + 2.0 * z * std::cos(beta) + z * z; }

}  // namespace

int truncation_for_radius(double r)
{
    if (!(r > 0.0 && r < 1.0)) {
        throw ParameterError("radius must lie in (0, 1)");
    }
    const double n = std::ceil(std::log(1e-14) / std::log(r));
    return std::max(kDefaultTruncation, static_cast<int>(std::min(n, 1e6)));
}

DilatationSpec DilatationSpec::moebius(double a)
{
    require_half_plane_parameter(a);
    return DilatationSpec(Moebius{a});
}

DilatationSpec DilatationSpec::rotated_power(double theta, int n)
{
    if (n < 1) {
        throw ParameterError("dilatation power n must be >= 1");
    }
    if (!std::isfinite(theta)) {
        throw ParameterError("dilatation angle must be finite");
    }
    return DilatationSpec(RotatedPower{theta, n});
}

Cx DilatationSpec::operator()(Cx z) const
{
    return std::visit(overloaded{
                          [&](const Moebius& m) { return (m.a - z) / (1.0 - m.a * z); },
                          [&](const RotatedPower& r) { return std::polar(1.0, r.theta) * std::pow(z, r.n); },
                      },
                      kind_);
}

Cx DilatationSpec::derivative(Cx z) const
{
    return std::visit(overloaded{
                          [&](const Moebius& m) {
                              const Cx d = 1.0 - m.a * z;
                              return (m.a * m.a - 1.0) / (d * d);
                          },
                          [&](const RotatedPower& r) {
                              return static_cast<double>(r.n) * std::polar(1.0, r.theta) * std::pow(z, r.n - 1);
                          },
                      },
                      kind_);
}

fps::Series DilatationSpec::series(int order) const
{
    return std::visit(overloaded{
                          [&](const Moebius& m) {
                              const std::vector<Cx> num{m.a, -1.0};
                              const std::vector<Cx> den{1.0, -m.a};
                              return fps::divide(num, den, order);
                          },
                          [&](const RotatedPower& r) {
                              fps::Series s(static_cast<std::size_t>(order) + 1);
                              if (r.n <= order) {
                                  s[r.n] = std::polar(1.0, r.theta);
                              }
                              return s;
                          },
                      },
                      kind_);
}

RationalFn DilatationSpec::rational() const
{
    return std::visit(overloaded{
                          [](const Moebius& m) { return RationalFn(CPoly{m.a, -1.0}, CPoly{1.0, -m.a}); },
                          [](const RotatedPower& r) {
                              return RationalFn(CPoly{1.0}, CPoly{1.0}, std::polar(1.0, r.theta), r.n);
                          },
                      },
                      kind_);
}

std::string DilatationSpec::describe() const
{
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const Moebius& m) { os << "(a - z)/(1 - a z), a=" << m.a; },
                   [&](const RotatedPower& r) { os << "e^{i" << r.theta << "} z^" << r.n; },
               },
               kind_);
    return os.str();
}

HarmonicMap::HarmonicMap(Rep rep) : rep_(std::move(rep))
{
    std::visit(overloaded{
                   [&](const HalfPlane& hp) { normalized_sh0_ = hp.a == 0.0; },
                   [&](const StripShear& s) { normalized_sh0_ = s.g.size() < 2 || std::abs(s.g[1]) < 1e-15; },
                   [&](const Series& s) { normalized_sh0_ = s.g.size() < 2 || std::abs(s.g[1]) < 1e-15; },
               },
               rep_);
}

int HarmonicMap::truncation() const noexcept
{
    return std::visit(overloaded{
                          [](const HalfPlane&) { return 0; },
                          [](const StripShear& s) { return static_cast<int>(s.h.size()) - 1; },
                          [](const Series& s) { return static_cast<int>(s.h.size()) - 1; },
                      },
                      rep_);
}

std::string HarmonicMap::describe() const
{
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const HalfPlane& hp) { os << "half-plane F_a, a=" << hp.a; },
                   [&](const StripShear& s) {
                       os << "strip shear, beta=" << s.beta << ", omega=" << s.omega.describe();
                   },
                   [&](const Series& s) { os << "series map, N=" << s.h.size() - 1; },
               },
               rep_);
    return os.str();
}

HarmonicMap make_half_plane(double a)
{
    require_half_plane_parameter(a);
    HarmonicMap f{HarmonicMap::HalfPlane{a}};
#ifndef NDEBUG
    const Dilatation w = dilatation_of(f);
    for (int k = 0; k < 8; ++k) {
        const Cx z = std::polar(0.3 + 0.08 * k, 0.7 * k);
        const MapDerivatives d = derivatives(f, z);
        if (std::abs(d.g / d.h - w(z)) > 1e-9 || std::abs(d.h + d.g - 1.0 / ((1.0 - z) * (1.0 - z))) > 1e-9) {
            throw StructuralError("half-plane closed form failed its self-check");
        }
    }
#endif
    return f;
}

HarmonicMap shear_from_sum(std::span<const Cx> s_prime, const DilatationSpec& omega, int N)
{
    if (N < 2) {
        throw ParameterError("series truncation must be >= 2");
    }
    if (s_prime.empty() || std::abs(s_prime[0] - 1.0) > 1e-12) {
        throw ParameterError("shear needs s'(0) = 1");
    }
    fps::Series one_plus_omega = omega.series(N - 1);
    one_plus_omega[0] += 1.0;
    const fps::Series hp = fps::divide(s_prime, one_plus_omega, N - 1);
    const fps::Series gp = fps::multiply(omega.series(N - 1), hp, N - 1);
    return HarmonicMap{HarmonicMap::Series{fps::integrate(hp), fps::integrate(gp)}};
}

HarmonicMap make_strip(double beta, const DilatationSpec& omega, int N)
{
    if (!(beta > 0.0 && beta < std::numbers::pi)) {
        throw ParameterError("strip angle beta must lie in (0, pi)");
    }
    const std::vector<Cx> quad{1.0, 2.0 * std::cos(beta), 1.0};
    const std::vector<Cx> one{1.0};
    const fps::Series s_prime = fps::divide(one, quad, N - 1);
    HarmonicMap sheared = shear_from_sum(s_prime, omega, N);
    auto& s = std::get<HarmonicMap::Series>(sheared.rep());
    return HarmonicMap{HarmonicMap::StripShear{beta, omega, s.h, s.g}};
}

HarmonicMap make_series(fps::Series h, fps::Series g)
{
    if (h.size() < 2) {
        throw ParameterError("series map needs coefficients up to z^1");
    }
    g.resize(std::max(g.size(), h.size()));
    h.resize(g.size());
    if (std::abs(h[0]) > 1e-14 || std::abs(g[0]) > 1e-14) {
        throw ParameterError("series map must satisfy h(0) = g(0) = 0");
    }
    return HarmonicMap{HarmonicMap::Series{std::move(h), std::move(g)}};
}

Cx strip_sum(double beta, Cx z)
{
    require_in_disk(z);
    // For |z| < 1 both 1 + z e^{±iβ} have positive real part, so the difference of the
    // principal logarithms stays in (-π, π) and equals the principal log of the ratio.
    const Cx log_ratio = std::log(1.0 + z * std::polar(1.0, beta)) - std::log(1.0 + z * std::polar(1.0, -beta));
    if (!(std::abs(log_ratio.imag()) < std::numbers::pi)) {
        throw StructuralError("strip logarithm left the principal branch");
    }
    return log_ratio / (2.0 * kI * std::sin(beta));
}

Cx Dilatation::operator()(Cx z) const
{
    return std::visit(overloaded{
                          [&](const RationalFn& r) { return r(z); },
                          [&](const fps::Series& s) { return fps::evaluate(s, z); },
                      },
                      form);
}

Dilatation dilatation_of(const HarmonicMap& f)
{
    return std::visit(overloaded{
                          [](const HarmonicMap::HalfPlane& hp) {
                              return Dilatation{DilatationSpec::moebius(hp.a).rational()};
                          },
                          [](const HarmonicMap::StripShear& s) { return Dilatation{s.omega.rational()}; },
                          [](const HarmonicMap::Series& s) {
                              const fps::Series hp = fps::differentiate(s.h);
                              const fps::Series gp = fps::differentiate(s.g);
                              if (std::abs(hp[0]) == 0.0) {
                                  throw ParameterError("degenerate map: h'(0) = 0");
                              }
                              const int order = static_cast<int>(hp.size()) - 1;
                              return Dilatation{fps::divide(gp, hp, order)};
                          },
                      },
                      f.rep());
}

Cx eval_map(const HarmonicMap& f, Cx z)
{
    require_in_disk(z);
    return std::visit(overloaded{
                          [&](const HarmonicMap::HalfPlane& hp) {
                              if (std::abs(1.0 - z) < 1e-8) {
                                  throw DomainError("too close to the boundary pole at z = 1");
                              }
                              const Cx d = (1.0 - z) * (1.0 - z);
                              const Cx h = (z / (1.0 + hp.a) - 0.5 * z * z) / d;
                              const Cx g = (hp.a * z / (1.0 + hp.a) - 0.5 * z * z) / d;
                              return h + std::conj(g);
                          },
                          [&](const HarmonicMap::StripShear& s) {
                              return fps::evaluate(s.h, z) + std::conj(fps::evaluate(s.g, z));
                          },
                          [&](const HarmonicMap::Series& s) {
                              return fps::evaluate(s.h, z) + std::conj(fps::evaluate(s.g, z));
                          },
                      },
                      f.rep());
}

MapDerivatives derivatives(const HarmonicMap& f, Cx z)
{
    require_in_disk(z);
    return std::visit(overloaded{
                          [&](const HarmonicMap::HalfPlane& hp) {
                              if (std::abs(1.0 - z) < 1e-8) {
                                  throw DomainError("too close to the boundary pole at z = 1");
                              }
                              const Cx d = (1.0 + hp.a) * (1.0 - z) * (1.0 - z) * (1.0 - z);
                              return MapDerivatives{(1.0 - hp.a * z) / d, (hp.a - z) / d};
                          },
                          [&](const HarmonicMap::StripShear& s) {
                              const Cx w = s.omega(z);
                              const Cx h = 1.0 / ((1.0 + w) * strip_quadratic(s.beta, z));
                              return MapDerivatives{h, w * h};
                          },
                          [&](const HarmonicMap::Series& s) {
                              return MapDerivatives{fps::evaluate_derivative(s.h, z), fps::evaluate_derivative(s.g, z)};
                          },
                      },
                      f.rep());
}

double jacobian(const HarmonicMap& f, Cx z)
{
    const MapDerivatives d = derivatives(f, z);
    return std::norm(d.h) - std::norm(d.g);
}

TaylorPair taylor_coeffs(const HarmonicMap& f, int N)
{
    if (N < 2) {
        throw ParameterError("Taylor truncation must be >= 2");
    }
    TaylorPair out;
    out.N = N;
    std::visit(overloaded{
                   [&](const HarmonicMap::HalfPlane& hp) {
                       // (c z - z^2/2) * 1/(1 - z)^2, c = 1/(1+a) for H_a and a/(1+a) for G_a.
                       const std::vector<Cx> sq{1.0, -2.0, 1.0};
                       const std::vector<Cx> one{1.0};
                       const fps::Series inv = fps::divide(one, sq, N);
                       const std::vector<Cx> hn{0.0, 1.0 / (1.0 + hp.a), -0.5};
                       const std::vector<Cx> gn{0.0, hp.a / (1.0 + hp.a), -0.5};
                       out.a = fps::multiply(hn, inv, N);
                       out.b = fps::multiply(gn, inv, N);
                   },
                   [&](const HarmonicMap::StripShear& s) {
                       if (N < static_cast<int>(s.h.size())) {
                           out.a = fps::resized(s.h, N);
                           out.b = fps::resized(s.g, N);
                       } else {
                           const HarmonicMap longer = make_strip(s.beta, s.omega, N);
                           const auto& ls = std::get<HarmonicMap::StripShear>(longer.rep());
                           out.a = ls.h;
                           out.b = ls.g;
                       }
                   },
                   [&](const HarmonicMap::Series& s) {
                       out.a = fps::resized(s.h, N);
                       out.b = fps::resized(s.g, N);
                   },
               },
               f.rep());
    return out;
}

}  // namespace harmconv
