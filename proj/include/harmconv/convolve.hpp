#pragma once

// Hadamard convolution F_a * f_β and its dilatation, computed three independent ways:
// the expanded closed form, the G'/H' form built from strip-map derivatives, and the
// quotient series of the convolved Taylor coefficients.

#include "harmconv/cpoly.hpp"
#include "harmconv/fps.hpp"
#include "harmconv/harmonic.hpp"
#include "harmconv/rational.hpp"

namespace harmconv {

// a ∈ (−1,1), β ∈ (0,π), θ real, n >= 1; the strip map carries ω(z) = e^{iθ} z^n.
struct ParamSet {
    double a = 0.0;
    double beta = 0.0;
    double theta = 0.0;
    int n = 1;

    void validate() const;
};

HarmonicMap hadamard(const HarmonicMap& F, const HarmonicMap& f, int N);

// F_a * f_β as a series map.
HarmonicMap convolved_map(const ParamSet& params, int N = kDefaultTruncation);

// Numerator e^{iθ} z^n t(z) and denominator of the convolution dilatation, with the
// e^{iθ} z^n factor held in (prefactor, power) and num = t, the bracket polynomial of
// degree n+2. Throws StructuralError unless den = λ conj_reciprocal(t) with |λ| = 1.
RationalFn build_numerator_general(const ParamSet& params);

// Same, but when num and den are proportional (t self-inversive, e.g. a = −1/3 for n = 1)
// the quotient is collapsed to the unimodular monomial it equals.
RationalFn tilde_omega_closed(const ParamSet& params);

// True when the closed form collapsed to a monomial.
bool is_collapsed(const RationalFn& w) noexcept;

// Pointwise G'/H' from the series derivatives of a strip shear.
class HGDilatation {
public:
    HGDilatation(double a, const HarmonicMap& strip);
    Cx operator()(Cx z) const;

private:
    double a_;
    fps::Series h1_, h2_, g1_, g2_;
};

HGDilatation tilde_omega_HG(double a, const HarmonicMap& strip);

// Quotient series of the dilatation of hadamard(F_a, strip).
fps::Series tilde_omega_series(double a, const HarmonicMap& strip, int N);

// The printed cubic of the n = 1 case and its reciprocal:
// p(z) = e^{iθ} z^3 + (1/2 + a e^{iθ} cosβ + e^{iθ} cosβ + a/2) z^2 + a(2cosβ + e^{iθ}) z + (3a − 1)/2.
CPoly build_p(double a, double beta, double theta);
CPoly printed_p_star(double a, double beta, double theta);
// p_1 = (1/4)(1 + 2a − 3a^2)[3z^2 + 2(2cosβ + e^{−iθ}) z + (2cosβ e^{−iθ} + 1)].
CPoly printed_p1(double a, double beta, double theta);

// The printed quartic of the n = 2 case:
// q(z) = z^4 + cosβ(a+1) z^3 + a(1 + e^{−iθ}) z^2 + e^{−iθ} cosβ (3a − 1) z + e^{−iθ}(2a − 1).
CPoly build_q(double a, double beta, double theta);
CPoly printed_q_star(double a, double beta, double theta);
// q_1 = 2a(1 − a)(2z^3 + 3cosβ z^2 + (1 + e^{−iθ}) z + e^{−iθ} cosβ).
CPoly printed_q1(double a, double beta, double theta);

// Largest coefficientwise modulus of p − q.
double coefficient_distance(const CPoly& p, const CPoly& q) noexcept;

}  // namespace harmconv
