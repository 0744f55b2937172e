#pragma once

// Proof-transcript checks for the n = 1 and n = 2 convolution theorems, a numeric pipeline
// for general n, the threshold scan over a, counterexample search, and the three
// trigonometric inequalities the reductions rely on.

#include "harmconv/convolve.hpp"
#include "harmconv/cpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace harmconv {

// Slack on grid maxima of |ω̃|.
inline constexpr double kGridSlack = 1e-6;
// Parameters closer than this to a special value (a = ±1/3, 1/2, 0, β = π/2, θ = 2kπ)
// take the special branch.
inline constexpr double kSpecialTolerance = 1e-9;

struct GridSpec {
    int radii = 60;
    int angles = 120;
    double max_radius = 0.995;
};

struct GridMax {
    double value = 0.0;
    Cx at{};
};

// Maximum of |w| over r_k = max_radius * k / radii (k = 1..radii), t_j = 2πj / angles.
// A pole hit exactly counts as +inf.
GridMax scan_modulus(const RationalFn& w, const GridSpec& grid);

enum class SpecialCase { none, a_minus_one_third, a_one_third, a_zero, a_one_half, beta_half_pi_theta_zero };

std::string to_string(SpecialCase c);

// A named inequality checked along a transcript, lhs < rhs (or <= when inclusive).
struct Gate {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

struct CohnChainTrace {
    std::string method;  // "transcript" or "numeric"
    std::vector<CohnStep> steps;
    std::vector<Cx> terminal_roots;
    std::optional<Cx> z0;
    SpecialCase special_case = SpecialCase::none;
    bool oracle_fallback = false;
    // Max coefficient distance between the computed first reduction and its printed form.
    std::optional<double> printed_reduction_residual;
    std::vector<Gate> gates;
};

struct VerificationReport {
    ParamSet params;
    ZeroCount zero_count;
    double max_abs_dilatation = 0.0;
    GridSpec grid_spec;
    bool passed = false;
    std::optional<Cx> witness;
    std::optional<CohnChainTrace> trace;
};

struct VerifyOptions {
    GridSpec grid;
    CountOptions count;
};

enum class LemmaPart { a, b, c };

struct LemmaGap {
    double gap = 0.0;       // LHS^2 - RHS^2 from the moduli
    double factored = 0.0;  // closed factorization in x = cosβ, y = cosθ
    double residual = 0.0;  // |gap - factored|
};

// True when (β, θ) lies in the stated domain of the inequality.
bool lemma22_in_domain(LemmaPart part, double beta, double theta) noexcept;
// Throws ParameterError outside the domain.
LemmaGap lemma22_gap(LemmaPart part, double beta, double theta);
// gap <= 0 for (a); gap < 0 for (b) and (c).
bool lemma22_direction_holds(LemmaPart part, const LemmaGap& g) noexcept;

VerificationReport verify_n1(double a, double beta, double theta, const VerifyOptions& opts = {});
VerificationReport verify_n2(double a, double beta, double theta, const VerifyOptions& opts = {});
VerificationReport verify_general(const ParamSet& params, const VerifyOptions& opts = {});
// n = 1 and n = 2 take the transcripts, everything else the numeric pipeline.
VerificationReport verify(const ParamSet& params, const VerifyOptions& opts = {});

struct ScanGrid {
    int beta_points = 24;  // evenly spaced over [margin, π − margin]
    int theta_points = 24; // 2πj / theta_points
    double beta_margin = 0.1;

    std::vector<double> betas() const;
    std::vector<double> thetas() const;
};

struct CurvePoint {
    double a = 0.0;
    int worst_outside = 0;
    double worst_max_abs = 0.0;
    bool passed = false;
};

struct ConjectureScan {
    int n = 1;
    double a_step = 0.01;
    std::optional<double> a_star;
    double predicted = 0.0;  // (n − 2)/(n + 2)
    std::vector<CurvePoint> curve;
    // Passing grid values of a that sit below a failing one.
    std::vector<double> monotonicity_violations;
};

// Grid a_k = k * a_step inside (−1, 1).
std::vector<double> a_grid(double a_step);

ConjectureScan conjecture_scan(int n, double a_step, const ScanGrid& scan = {}, const GridSpec& grid = {});

struct Witness {
    ParamSet params;
    Cx z{};
    double value = 0.0;
};

// Maximum of |ω̃| over a fine z-grid for one parameter set; present only when it exceeds
// 1 + kGridSlack.
std::optional<Witness> counterexample_search(const ParamSet& params, const GridSpec& fine);

// Largest witness over the (β, θ) grid for fixed n and a.
std::optional<Witness> counterexample_search(int n, double a, const ScanGrid& scan, const GridSpec& fine);

}  // namespace harmconv
