#pragma once

// Planar harmonic maps f = h + conj(g) on the unit disk: the right half-plane family F_a,
// the vertical-strip shears f_β, and truncated series maps.

#include "harmconv/cpoly.hpp"
#include "harmconv/fps.hpp"
#include "harmconv/rational.hpp"

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace harmconv {

// Series order used for strip shears and Hadamard products. The strip derivatives have
// poles on |z| = 1 and only polynomially growing coefficients, so the truncation error at
// radius r is about r^N N^2; 1024 keeps it far below 1e-12 for r <= 0.95.
inline constexpr int kDefaultTruncation = 1024;

// Series order whose geometric tail at radius r is below 1e-14 (never less than the default).
int truncation_for_radius(double r);

class DilatationSpec {
public:
    struct Moebius {
        double a;  // ω(z) = (a - z) / (1 - a z)
    };
    struct RotatedPower {
        double theta;  // ω(z) = e^{iθ} z^n
        int n;
    };

    static DilatationSpec moebius(double a);
    static DilatationSpec rotated_power(double theta, int n);

    Cx operator()(Cx z) const;
    Cx derivative(Cx z) const;
    fps::Series series(int order) const;
    RationalFn rational() const;
    std::string describe() const;

    const std::variant<Moebius, RotatedPower>& kind() const noexcept { return kind_; }

private:
    explicit DilatationSpec(std::variant<Moebius, RotatedPower> k) : kind_(k) {}
    std::variant<Moebius, RotatedPower> kind_;
};

// Taylor coefficients a[0..N] of h and b[0..N] of g.
struct TaylorPair {
    std::vector<Cx> a;
    std::vector<Cx> b;
    int N = 0;
};

class HarmonicMap {
public:
    struct HalfPlane {
        double a;
    };
    struct StripShear {
        double beta;
        DilatationSpec omega;
        fps::Series h;
        fps::Series g;
    };
    struct Series {
        fps::Series h;
        fps::Series g;
    };
    using Rep = std::variant<HalfPlane, StripShear, Series>;

    explicit HarmonicMap(Rep rep);

    const Rep& rep() const noexcept { return rep_; }
    // g'(0) = 0.
    bool normalized_sh0() const noexcept { return normalized_sh0_; }
    // Series order for series-backed maps, 0 for the closed-form half-plane maps.
    int truncation() const noexcept;
    std::string describe() const;

private:
    Rep rep_;
    bool normalized_sh0_ = false;
};

HarmonicMap make_half_plane(double a);
HarmonicMap make_strip(double beta, const DilatationSpec& omega, int N = kDefaultTruncation);
// Shear with prescribed (h + g)' = s' and dilatation ω: h' = s'/(1+ω), g' = ω h'.
HarmonicMap shear_from_sum(std::span<const Cx> s_prime, const DilatationSpec& omega, int N);
HarmonicMap make_series(fps::Series h, fps::Series g);

// Closed form of h_β + g_β, principal branch.
Cx strip_sum(double beta, Cx z);

// g'/h' either as an exact rational function or as a formal quotient series.
struct Dilatation {
    std::variant<RationalFn, fps::Series> form;

    bool is_rational() const noexcept { return std::holds_alternative<RationalFn>(form); }
    Cx operator()(Cx z) const;
};

Dilatation dilatation_of(const HarmonicMap& f);

Cx eval_map(const HarmonicMap& f, Cx z);

struct MapDerivatives {
    Cx h;  // h'(z)
    Cx g;  // g'(z)
};

MapDerivatives derivatives(const HarmonicMap& f, Cx z);

// |h'|^2 - |g'|^2.
double jacobian(const HarmonicMap& f, Cx z);

TaylorPair taylor_coeffs(const HarmonicMap& f, int N);

}  // namespace harmconv
