#pragma once

// Complex polynomials, the Cohn reduction step and unit-circle zero counting.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace harmconv {

using Cx = std::complex<double>;

inline constexpr double kCohnMargin = 1e-12;    // strictness band for |a0| < |an|
inline constexpr double kOnCircleBand = 1e-9;   // | |z| - 1 | below this counts as "on"
inline constexpr double kTrimRelative = 1e-13;  // trailing coefficients below this * max|c| are dropped

// Polynomial a_0 + a_1 z + ... + a_n z^n, coefficients stored in ascending order.
// The zero polynomial has an empty coefficient list and degree -1.
class CPoly {
public:
    CPoly() = default;
    explicit CPoly(std::vector<Cx> coeffs);
    CPoly(std::initializer_list<Cx> coeffs) : CPoly(std::vector<Cx>(coeffs)) {}

    // z^k scaled by c.
    static CPoly monomial(Cx c, int k);

    const std::vector<Cx>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    // Coefficient k, zero beyond the degree.
    Cx operator[](std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : Cx{}; }
    Cx leading() const noexcept { return coeffs_.empty() ? Cx{} : coeffs_.back(); }
    double max_abs() const noexcept;
    double trim_eps() const noexcept { return kTrimRelative * max_abs(); }

    Cx operator()(Cx z) const noexcept;

    CPoly derivative() const;

    friend CPoly operator+(const CPoly& p, const CPoly& q);
    friend CPoly operator-(const CPoly& p, const CPoly& q);
    friend CPoly operator*(const CPoly& p, const CPoly& q);
    friend CPoly operator*(Cx s, const CPoly& p);
    friend CPoly operator*(const CPoly& p, Cx s) { return s * p; }

private:
    std::vector<Cx> coeffs_;
};

Cx eval(const CPoly& p, Cx z) noexcept;

// t*(z) = z^n conj(t(1/conj z)); coefficient k is conj(a_{n-k}).
CPoly conj_reciprocal(const CPoly& p);

struct CohnStep {
    CPoly input;
    CPoly reciprocal;  // input*
    CPoly reduced;     // (conj(a_n) input - a_0 input*) / z
    bool applicable = false;
};

// One step of Cohn's rule. The reduction is always computed; `applicable` records whether
// |a0| < |an| held with the strictness margin (relative to the largest coefficient).
CohnStep cohn_reduce(const CPoly& p, double margin = kCohnMargin);

struct ZeroCount {
    int inside = 0;
    int on = 0;
    int outside = 0;

    int total() const noexcept { return inside + on + outside; }
    friend bool operator==(const ZeroCount&, const ZeroCount&) = default;
};

struct CountOptions {
    double cohn_margin = kCohnMargin;
    double on_band = kOnCircleBand;
};

// Full record of a zero count: the Cohn steps taken and, when a step was not applicable,
// the roots the oracle produced for the remaining polynomial.
struct CohnCount {
    ZeroCount count;
    std::vector<CohnStep> steps;
    bool used_oracle = false;
    std::vector<Cx> oracle_roots;
};

CohnCount cohn_count(const CPoly& p, const CountOptions& opts = {});
ZeroCount count_zeros_unit_circle(const CPoly& p, const CountOptions& opts = {});

ZeroCount classify_roots(std::span<const Cx> roots, double on_band = kOnCircleBand);

struct RootOptions {
    int max_iterations = 500;
    double residual_tolerance = 1e-10;  // relative to max(max|a_k|, sum |a_k||z|^k)
};

// All complex roots by Aberth-Ehrlich simultaneous iteration followed by Newton polishing.
// Throws ConvergenceError carrying the best iterate when the residual test fails.
std::vector<Cx> find_roots(const CPoly& p, const RootOptions& opts = {});

}  // namespace harmconv
