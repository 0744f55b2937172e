#include "harmconv/cpoly.hpp"
#include "harmconv/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace harmconv;

namespace {

// z^3 + z^2/2 - 1/2
CPoly cubic() { return CPoly{-0.5, 0.0, 0.5, 1.0}; }

CPoly random_poly(std::mt19937_64& rng, int degree)
{
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Cx> c(static_cast<std::size_t>(degree) + 1);
    for (Cx& v : c) {
        v = {g(rng), g(rng)};
    }
    return CPoly(c);
}

}  // namespace

TEST_SUITE("cpoly")
{
    TEST_CASE("evaluation")
    {
        CHECK(CPoly{1.0, 1.0}(Cx{0.0, 1.0}) == Cx{1.0, 1.0});
        CHECK(cubic()(0.0) == Cx{-0.5});

        // Real root of the cubic located by bisection on [0.65, 0.66].
        const double root = oracle::bisect([](double x) { return x * x * x + 0.5 * x * x - 0.5; }, 0.65, 0.66);
        CHECK(root == doctest::Approx(0.6573).epsilon(1e-4));
        CHECK(std::abs(cubic()(root)) < 1e-14);
        CHECK(eval(cubic(), root) == cubic()(root));
    }

    TEST_CASE("construction trims and rejects non-finite coefficients")
    {
        CHECK(CPoly{1.0, 2.0, 0.0, 0.0}.degree() == 1);
        CHECK(CPoly{}.degree() == -1);
        CHECK(CPoly{0.0}.is_zero());
        CHECK_THROWS_AS(CPoly({1.0, Cx{std::nan(""), 0.0}}), ParameterError);
        CHECK(CPoly::monomial(Cx{0.0, 2.0}, 3).coeffs() == std::vector<Cx>{0.0, 0.0, 0.0, Cx{0.0, 2.0}});
        CHECK(CPoly{1.0, 2.0}[5] == Cx{});
    }

    TEST_CASE("arithmetic")
    {
        CHECK((CPoly{1.0, 1.0} * CPoly{1.0, -1.0}).coeffs() == std::vector<Cx>{1.0, 0.0, -1.0});
        CHECK(CPoly{0.0, 0.0, 0.0, 1.0}.derivative().coeffs() == std::vector<Cx>{0.0, 0.0, 3.0});
        CHECK((CPoly{1.0, 1.0} - CPoly{1.0, 1.0}).is_zero());
        CHECK((CPoly{1.0, 2.0} + CPoly{0.0, -2.0}).degree() == 0);
        CHECK((Cx{2.0} * CPoly{1.0, 1.0}).coeffs() == std::vector<Cx>{2.0, 2.0});
    }

    TEST_CASE("arithmetic agrees with pointwise evaluation on random polynomials")
    {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 200; ++trial) {
            const CPoly p = random_poly(rng, trial % 7);
            const CPoly q = random_poly(rng, (trial / 7) % 5);
            const Cx z = oracle::random_in_disk(rng, 1.5);
            const double scale = 1.0 + std::abs(p(z)) * std::abs(q(z)) + std::abs(p(z)) + std::abs(q(z));
            CHECK(std::abs((p * q)(z) - p(z) * q(z)) < 1e-12 * scale);
            CHECK(std::abs((p + q)(z) - (p(z) + q(z))) < 1e-12 * scale);
            CHECK(std::abs((p - q)(z) - (p(z) - q(z))) < 1e-12 * scale);
            // Central difference for the derivative.
            const Cx h{1e-6, 0.0};
            const Cx fd = (p(z + h) - p(z - h)) / (2.0 * h);
            CHECK(std::abs(p.derivative()(z) - fd) < 1e-5 * (1.0 + std::abs(fd)));
        }
    }

    TEST_CASE("conjugate reciprocal")
    {
        CHECK(conj_reciprocal(CPoly{2.0, Cx{0.0, 1.0}}).coeffs() == std::vector<Cx>{Cx{0.0, -1.0}, 2.0});
        CHECK(conj_reciprocal(cubic()).coeffs() == std::vector<Cx>{1.0, 0.5, 0.0, -0.5});
        CHECK_THROWS_AS(conj_reciprocal(CPoly{}), ParameterError);

        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 100; ++trial) {
            const CPoly p = random_poly(rng, 1 + trial % 8);
            CHECK(conj_reciprocal(conj_reciprocal(p)).coeffs() == p.coeffs());
            // Zeros are inverted in the circle: t*(z) = z^n conj(t(1/conj z)).
            const Cx z = oracle::random_in_disk(rng, 0.9) + 0.05;
            const Cx expected = std::pow(z, p.degree()) * std::conj(p(1.0 / std::conj(z)));
            CHECK(std::abs(conj_reciprocal(p)(z) - expected) < 1e-10 * (1.0 + std::abs(expected)));
        }
    }

    TEST_CASE("Cohn reduction chain of the cubic")
    {
        const CohnStep s1 = cohn_reduce(cubic());
        CHECK(s1.applicable);
        CHECK(oracle::max_distance(s1.reduced.coeffs(), {0.25, 0.5, 0.75}) < 1e-15);
        const CohnStep s2 = cohn_reduce(s1.reduced);
        CHECK(s2.applicable);
        CHECK(oracle::max_distance(s2.reduced.coeffs(), {0.25, 0.5}) < 1e-15);
        CHECK(std::abs(-s2.reduced[0] / s2.reduced[1] - (-0.5)) < 1e-15);

        const CohnStep lin = cohn_reduce(CPoly{1.0, 2.0});
        CHECK(lin.applicable);
        CHECK(lin.reduced.coeffs() == std::vector<Cx>{3.0});

        CHECK_FALSE(cohn_reduce(CPoly{1.0, 0.0, 1.0}).applicable);
        CHECK_FALSE(cohn_reduce(CPoly{3.0, 1.0}).applicable);
        CHECK_THROWS_AS(cohn_reduce(CPoly{2.0}), ParameterError);
    }

    TEST_CASE("Cohn step keeps zeros on the circle and drops exactly one inside")
    {
        std::mt19937_64 rng(3);
        int applicable = 0;
        for (int trial = 0; trial < 300; ++trial) {
            const auto rr = oracle::random_roots(rng, 2 + trial % 6, 1e-2);
            const CPoly p(oracle::from_roots(rr.roots, rr.lead));
            const CohnStep s = cohn_reduce(p);
            if (!s.applicable) {
                continue;
            }
            ++applicable;
            const ZeroCount before = classify_roots(rr.roots);
            const ZeroCount after = classify_roots(find_roots(s.reduced));
            CHECK(after.inside == before.inside - 1);
            CHECK(after.outside == before.outside);
        }
        CHECK(applicable > 50);
    }

    TEST_CASE("zero counting")
    {
        CHECK(count_zeros_unit_circle(cubic()) == ZeroCount{3, 0, 0});
        CHECK(count_zeros_unit_circle(CPoly{1.0, 0.0, 1.0}) == ZeroCount{0, 2, 0});
        CHECK(count_zeros_unit_circle(CPoly{1.0, -2.5, 1.0}) == ZeroCount{1, 0, 1});
        CHECK(count_zeros_unit_circle(CPoly{0.0, 0.0, 1.0}) == ZeroCount{2, 0, 0});

        const CohnCount cc = cohn_count(CPoly{1.0, 0.0, 1.0});
        CHECK(cc.used_oracle);
        CHECK(cc.oracle_roots.size() == 2);
        CHECK_THROWS_AS(cohn_count(CPoly{}), ParameterError);
    }

    TEST_CASE("zero counts match the prescribed roots")
    {
        std::mt19937_64 rng(2024);
        for (int trial = 0; trial < 500; ++trial) {
            const auto rr = oracle::random_roots(rng, 1 + trial % 8, 1e-3);
            const CPoly p(oracle::from_roots(rr.roots, rr.lead));
            const ZeroCount expected = classify_roots(rr.roots);
            CHECK(count_zeros_unit_circle(p) == expected);
            // Scaling the polynomial does not move its zeros.
            CHECK(count_zeros_unit_circle(Cx{1e9} * p) == expected);
            CHECK(count_zeros_unit_circle(Cx{1e-9} * p) == expected);
        }
    }

    TEST_CASE("root finder")
    {
        auto sorted = [](std::vector<Cx> r) {
            std::sort(r.begin(), r.end(), [](Cx a, Cx b) { return a.imag() < b.imag(); });
            return r;
        };
        const auto r2 = sorted(find_roots(CPoly{1.0, 0.0, 1.0}));
        CHECK(std::abs(r2[0] - Cx{0.0, -1.0}) < 1e-14);
        CHECK(std::abs(r2[1] - Cx{0.0, 1.0}) < 1e-14);

        for (Cx r : find_roots(CPoly{-1.0, 0.0, 0.0, 1.0})) {
            CHECK(std::abs(std::abs(r) - 1.0) < 1e-10);
            CHECK(std::abs(r * r * r - 1.0) < 1e-10);
        }

        // q2 of the n = 2 chain at a = 1/4, β = π/2, θ = 0 is 16(a(1−a))^2 (z^2 + 1).
        const double k = 16.0 * std::pow(0.25 * 0.75, 2);
        for (Cx r : find_roots(CPoly{k, 0.0, k})) {
            CHECK(std::abs(std::abs(r) - 1.0) < 1e-12);
            CHECK(std::abs(std::abs(r.imag()) - 1.0) < 1e-12);
        }

        const auto zeros = find_roots(CPoly{0.0, 0.0, 1.0, 1.0});
        CHECK(std::count(zeros.begin(), zeros.end(), Cx{}) == 2);
        CHECK_THROWS_AS(find_roots(CPoly{1.0}), ParameterError);
    }

    TEST_CASE("root finder recovers prescribed roots")
    {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 200; ++trial) {
            const auto rr = oracle::random_roots(rng, 1 + trial % 8, 0.0);
            const CPoly p(oracle::from_roots(rr.roots, rr.lead));
            const std::vector<Cx> found = find_roots(p);
            REQUIRE(found.size() == rr.roots.size());
            for (Cx r : rr.roots) {
                double best = 1e300;
                for (Cx f : found) {
                    best = std::min(best, std::abs(f - r));
                }
                // Nearly coincident random roots are ill-conditioned; 1e-6 is generous for them.
                CHECK(best < 1e-6);
            }
        }
    }

    TEST_CASE("convergence failure carries the best iterate")
    {
        RootOptions opts;
        opts.max_iterations = 1;
        opts.residual_tolerance = 1e-300;
        try {
            (void)find_roots(CPoly{1.0, 2.0, 3.0, 4.0, 5.0}, opts);
            FAIL("expected ConvergenceError");
        } catch (const ConvergenceError& e) {
            CHECK(e.best_iterate().size() == 4);
            CHECK(e.residual() > 0.0);
        }
    }
}
