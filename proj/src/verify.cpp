#include "harmconv/verify.hpp"

#include "harmconv/errors.hpp"
#include "harmconv/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace harmconv {
namespace {

constexpr double kPi = std::numbers::pi;

bool near(double x, double target) { return std::abs(x - target) < kSpecialTolerance; }

bool theta_is_multiple_of_two_pi(double theta, double tol)
{
    return std::abs(std::remainder(theta, 2.0 * kPi)) < tol;
}

// Cohn steps on `p` until the degree reaches zero or a step is not applicable, in which case
// the remaining polynomial is classified by the root oracle. Roots of linear stages are
// recorded as terminal roots.
ZeroCount follow_chain(const CPoly& p, CohnChainTrace& trace, const CountOptions& opts)
{
    CPoly cur = p;
    int inside = 0;
    while (cur.degree() >= 1) {
        if (cur.degree() == 1) {
            trace.terminal_roots.push_back(-cur[0] / cur[1]);
        }
        CohnStep step = cohn_reduce(cur, opts.cohn_margin);
        const bool applicable = step.applicable;
        CPoly next = step.reduced;
        trace.steps.push_back(std::move(step));
        if (!applicable) {
            trace.oracle_fallback = true;
            const std::vector<Cx> roots = find_roots(cur);
            if (cur.degree() > 1) {
                trace.terminal_roots.insert(trace.terminal_roots.end(), roots.begin(), roots.end());
            }
            const ZeroCount rest = classify_roots(roots, opts.on_band);
            return {inside + rest.inside, rest.on, rest.outside};
        }
        cur = std::move(next);
        ++inside;
    }
    return {inside, 0, 0};
}

// p(z) = z * r(z) when the constant term vanishes; returns r.
CPoly divide_by_z(const CPoly& p)
{
    const auto& c = p.coeffs();
    return CPoly(std::vector<Cx>(c.begin() + 1, c.end()));
}

Gate make_gate(std::string name, double lhs, double rhs, bool inclusive)
{
    return Gate{std::move(name), lhs, rhs, inclusive ? lhs <= rhs : lhs < rhs};
}

void finish(VerificationReport& r, const RationalFn& w, const VerifyOptions& opts)
{
    const GridMax m = scan_modulus(w, opts.grid);
    r.max_abs_dilatation = m.value;
    if (m.value > 1.0 + kGridSlack) {
        r.witness = m.at;
    }
    r.passed = r.zero_count.outside == 0 && m.value < 1.0 + kGridSlack;
}

// The z0 of the n = 1 chain as printed.
Cx printed_z0(double beta, double theta)
{
    const double c = std::cos(beta);
    const Cx ec = std::polar(1.0, -theta);
    const Cx num = -2.0 * c + 4.0 * ec * c * c - 3.0 * ec + std::polar(1.0, theta);
    const double den = 4.0 - 2.0 * c * c - 2.0 * c * std::cos(theta);
    return num / den;
}

}  // namespace

GridMax scan_modulus(const RationalFn& w, const GridSpec& grid)
{
    if (grid.radii < 1 || grid.angles < 1 || !(grid.max_radius > 0.0 && grid.max_radius < 1.0)) {
        throw ParameterError("grid needs radii, angles >= 1 and 0 < max_radius < 1");
    }
    std::vector<Cx> unit(static_cast<std::size_t>(grid.angles));
    for (int j = 0; j < grid.angles; ++j) {
        unit[j] = std::polar(1.0, 2.0 * kPi * j / grid.angles);
    }
    // Compare squared moduli; take one square root at the end.
    double best2 = 0.0;
    Cx at{};
    for (int k = 1; k <= grid.radii; ++k) {
        const double r = grid.max_radius * k / grid.radii;
        const double rp2 = std::pow(r, 2 * w.power);
        for (const Cx& u : unit) {
            const Cx z = r * u;
            const double d2 = std::norm(w.den(z));
            const double v2 = d2 == 0.0 ? std::numeric_limits<double>::infinity() : rp2 * std::norm(w.num(z)) / d2;
            if (v2 > best2) {
                best2 = v2;
                at = z;
            }
        }
    }
    return {std::sqrt(best2), at};
}

std::string to_string(SpecialCase c)
{
    switch (c) {
    case SpecialCase::none: return "none";
    case SpecialCase::a_minus_one_third: return "a=-1/3";
    case SpecialCase::a_one_third: return "a=1/3";
    case SpecialCase::a_zero: return "a=0";
    case SpecialCase::a_one_half: return "a=1/2";
    case SpecialCase::beta_half_pi_theta_zero: return "beta=pi/2,theta=2k*pi";
    }
    return "none";
}

bool lemma22_in_domain(LemmaPart part, double beta, double theta) noexcept
{
    if (!(beta > 0.0 && beta < kPi) || !std::isfinite(theta)) {
        return false;
    }
    if (part == LemmaPart::c) {
        return std::abs(beta - kPi / 2.0) >= 1e-6 && !theta_is_multiple_of_two_pi(theta, 1e-6);
    }
    return true;
}

LemmaGap lemma22_gap(LemmaPart part, double beta, double theta)
{
    if (!lemma22_in_domain(part, beta, theta)) {
        throw ParameterError("(beta, theta) outside the domain of this inequality");
    }
    const double x = std::cos(beta);
    const double y = std::cos(theta);
    const Cx e = std::polar(1.0, theta);
    const Cx ec = std::conj(e);
    double lhs = 0.0;
    double rhs = 0.0;
    double factored = 0.0;
    switch (part) {
    case LemmaPart::a:
        lhs = std::abs(-2.0 * x + 4.0 * ec * x * x - 3.0 * ec + e);
        rhs = std::abs(4.0 - 2.0 * x * x - 2.0 * x * y);
        factored = -12.0 * (1.0 - x * x) * (x - y) * (x - y);
        break;
    case LemmaPart::b:
        lhs = std::abs(x * (ec - 5.0));
        rhs = std::abs(6.0 - x * x + 2.0 * ec - 3.0 * ec * x * x);
        factored = -2.0 * (x * x - 4.0) * (x * x - 1.0) * (5.0 + 3.0 * y);
        break;
    case LemmaPart::c:
        lhs = std::abs(2.0 * (1.0 + ec) - 3.0 * ec * x * x);
        rhs = std::abs(4.0 - x * x);
        factored = 4.0 * (2.0 * (x * x - 1.0) * (x * x + 1.0 - y) - x * x * (y + 1.0));
        break;
    }
    LemmaGap g;
    g.gap = lhs * lhs - rhs * rhs;
    g.factored = factored;
    g.residual = std::abs(g.gap - g.factored);
    return g;
}

bool lemma22_direction_holds(LemmaPart part, const LemmaGap& g) noexcept
{
    return part == LemmaPart::a ? g.gap <= 0.0 : g.gap < 0.0;
}

VerificationReport verify_n1(double a, double beta, double theta, const VerifyOptions& opts)
{
    const ParamSet ps{a, beta, theta, 1};
    ps.validate();
    VerificationReport r;
    r.params = ps;
    r.grid_spec = opts.grid;
    CohnChainTrace tr;
    tr.method = "transcript";

    const RationalFn w = tilde_omega_closed(ps);
    const CPoly p = build_p(a, beta, theta);

    if (near(a, -1.0 / 3.0)) {
        // ω̃ = −e^{iθ} z: the bracket cancels against its reciprocal.
        tr.special_case = SpecialCase::a_minus_one_third;
        const double off = std::abs(w.prefactor + std::polar(1.0, theta));
        tr.gates.push_back(make_gate("dilatation is -e^{i theta} z", is_collapsed(w) ? off : 1.0, 1e-6, false));
        r.zero_count = {};
    } else {
        if (near(a, 1.0 / 3.0)) {
            tr.special_case = SpecialCase::a_one_third;
            r.zero_count = follow_chain(divide_by_z(p), tr, opts.count);
            r.zero_count.inside += 1;  // the factored-out zero at the origin
        } else {
            r.zero_count = follow_chain(p, tr, opts.count);
            if (!tr.steps.empty() && tr.steps.front().applicable) {
                tr.printed_reduction_residual = coefficient_distance(tr.steps.front().reduced, printed_p1(a, beta, theta));
            }
        }
        const Cx z0 = printed_z0(beta, theta);
        if (std::isfinite(z0.real()) && std::isfinite(z0.imag())) {
            tr.z0 = z0;
            tr.gates.push_back(make_gate("|z0| <= 1", std::abs(z0), 1.0 + opts.count.on_band, true));
            // The chain's linear stage p2 should vanish exactly at the printed z0.
            const std::size_t expected_steps = tr.special_case == SpecialCase::a_one_third ? 1 : 2;
            if (tr.steps.size() > expected_steps && tr.steps[expected_steps].input.degree() == 1) {
                const CPoly& p2 = tr.steps[expected_steps].input;
                tr.gates.push_back(make_gate("printed z0 is the zero of p2", std::abs(-p2[0] / p2[1] - z0), 1e-9, false));
            }
        }
        const LemmaGap g = lemma22_gap(LemmaPart::a, beta, theta);
        tr.gates.push_back(make_gate("lemma (a): gap <= 0", g.gap, 0.0, true));
    }
    r.trace = std::move(tr);
    finish(r, w, opts);
    return r;
}

VerificationReport verify_n2(double a, double beta, double theta, const VerifyOptions& opts)
{
    const ParamSet ps{a, beta, theta, 2};
    ps.validate();
    VerificationReport r;
    r.params = ps;
    r.grid_spec = opts.grid;
    CohnChainTrace tr;
    tr.method = "transcript";

    const RationalFn w = tilde_omega_closed(ps);
    const CPoly q = build_q(a, beta, theta);

    if (near(a, 0.0)) {
        // Covered by earlier work; checked here on the closed form and the grid.
        tr.special_case = SpecialCase::a_zero;
        if (is_collapsed(w)) {
            r.zero_count = {};
        } else {
            const CohnCount cc = cohn_count(w.num, opts.count);
            tr.steps = cc.steps;
            tr.terminal_roots = cc.oracle_roots;
            tr.oracle_fallback = cc.used_oracle;
            r.zero_count = cc.count;
        }
    } else if (near(a, 0.5)) {
        tr.special_case = SpecialCase::a_one_half;
        r.zero_count = follow_chain(divide_by_z(q), tr, opts.count);
        r.zero_count.inside += 1;
    } else {
        if (std::abs(beta - kPi / 2.0) < kSpecialTolerance && theta_is_multiple_of_two_pi(theta, kSpecialTolerance)) {
            tr.special_case = SpecialCase::beta_half_pi_theta_zero;
        }
        r.zero_count = follow_chain(q, tr, opts.count);
        if (!tr.steps.empty() && tr.steps.front().applicable) {
            tr.printed_reduction_residual = coefficient_distance(tr.steps.front().reduced, printed_q1(a, beta, theta));
        }
        if (tr.steps.size() >= 2 && tr.steps[1].applicable) {
            const CPoly& q2 = tr.steps[1].reduced;
            tr.gates.push_back(make_gate("q2: |c0| < |c2|", std::abs(q2[0]), std::abs(q2[2]), false));
        }
        if (lemma22_in_domain(LemmaPart::c, beta, theta)) {
            const LemmaGap g = lemma22_gap(LemmaPart::c, beta, theta);
            tr.gates.push_back(make_gate("lemma (c): gap < 0", g.gap, 0.0, false));
        }
        const LemmaGap gb = lemma22_gap(LemmaPart::b, beta, theta);
        tr.gates.push_back(make_gate("lemma (b): gap < 0", gb.gap, 0.0, false));
    }
    r.trace = std::move(tr);
    finish(r, w, opts);
    return r;
}

VerificationReport verify_general(const ParamSet& params, const VerifyOptions& opts)
{
    params.validate();
    VerificationReport r;
    r.params = params;
    r.grid_spec = opts.grid;
    CohnChainTrace tr;
    tr.method = "numeric";

    const RationalFn w = tilde_omega_closed(params);
    if (is_collapsed(w)) {
        r.zero_count = {};
    } else {
        const CohnCount cc = cohn_count(w.num, opts.count);
        tr.steps = cc.steps;
        tr.terminal_roots = cc.oracle_roots;
        tr.oracle_fallback = cc.used_oracle;
        r.zero_count = cc.count;
    }
    r.trace = std::move(tr);
    finish(r, w, opts);
    return r;
}

VerificationReport verify(const ParamSet& params, const VerifyOptions& opts)
{
    switch (params.n) {
    case 1: return verify_n1(params.a, params.beta, params.theta, opts);
    case 2: return verify_n2(params.a, params.beta, params.theta, opts);
    default: return verify_general(params, opts);
    }
}

std::vector<double> ScanGrid::betas() const
{
    std::vector<double> out;
    if (beta_points == 1) {
        out.push_back(kPi / 2.0);
        return out;
    }
    for (int k = 0; k < beta_points; ++k) {
        out.push_back(beta_margin + (kPi - 2.0 * beta_margin) * k / (beta_points - 1));
    }
    return out;
}

std::vector<double> ScanGrid::thetas() const
{
    std::vector<double> out;
    for (int j = 0; j < theta_points; ++j) {
        out.push_back(2.0 * kPi * j / theta_points);
    }
    return out;
}

std::vector<double> a_grid(double a_step)
{
    if (!(a_step > 0.0 && a_step <= 0.5)) {
        throw ParameterError("a_step must lie in (0, 0.5]");
    }
    const double inv = 1.0 / a_step;
    const double m = std::round(inv);
    const bool exact = std::abs(inv - m) < 1e-9;
    std::vector<double> out;
    const int kmax = static_cast<int>(std::ceil(inv)) + 1;
    for (int k = -kmax; k <= kmax; ++k) {
        const double a = exact ? k / m : k * a_step;
        if (a > -1.0 && a < 1.0) {
            out.push_back(a);
        }
    }
    return out;
}

ConjectureScan conjecture_scan(int n, double a_step, const ScanGrid& scan, const GridSpec& grid)
{
    if (n < 1) {
        throw ParameterError("n must be >= 1");
    }
    ConjectureScan out;
    out.n = n;
    out.a_step = a_step;
    out.predicted = static_cast<double>(n - 2) / (n + 2);
    const std::vector<double> as = a_grid(a_step);
    const std::vector<double> betas = scan.betas();
    const std::vector<double> thetas = scan.thetas();
    VerifyOptions opts;
    opts.grid = grid;

    out.curve.resize(as.size());
    parallel_for(as.size(), [&](std::size_t i) {
        CurvePoint cp;
        cp.a = as[i];
        cp.passed = true;
        for (double b : betas) {
            for (double t : thetas) {
                const VerificationReport rep = verify_general(ParamSet{as[i], b, t, n}, opts);
                cp.worst_outside = std::max(cp.worst_outside, rep.zero_count.outside);
                cp.worst_max_abs = std::max(cp.worst_max_abs, rep.max_abs_dilatation);
                cp.passed = cp.passed && rep.passed;
            }
        }
        out.curve[i] = cp;
    });

    std::size_t first = out.curve.size();
    while (first > 0 && out.curve[first - 1].passed) {
        --first;
    }
    if (first < out.curve.size()) {
        out.a_star = out.curve[first].a;
    }
    for (std::size_t i = 0; i < first; ++i) {
        if (out.curve[i].passed) {
            out.monotonicity_violations.push_back(out.curve[i].a);
        }
    }
    return out;
}

std::optional<Witness> counterexample_search(const ParamSet& params, const GridSpec& fine)
{
    const RationalFn w = tilde_omega_closed(params);
    const GridMax m = scan_modulus(w, fine);
    if (m.value > 1.0 + kGridSlack) {
        return Witness{params, m.at, m.value};
    }
    return std::nullopt;
}

std::optional<Witness> counterexample_search(int n, double a, const ScanGrid& scan, const GridSpec& fine)
{
    const std::vector<double> betas = scan.betas();
    const std::vector<double> thetas = scan.thetas();
    std::vector<std::optional<Witness>> found(betas.size() * thetas.size());
    parallel_for(found.size(), [&](std::size_t i) {
        found[i] = counterexample_search(ParamSet{a, betas[i / thetas.size()], thetas[i % thetas.size()], n}, fine);
    });
    // Reduction in (β, θ) order with strict comparison keeps the result reproducible.
    std::optional<Witness> best;
    for (const auto& w : found) {
        if (w && (!best || w->value > best->value)) {
            best = w;
        }
    }
    return best;
}

}  // namespace harmconv
