#include "harmconv/errors.hpp"
#include "harmconv/verify.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace harmconv;
using oracle::kPi;

TEST_SUITE("verify")
{
    TEST_CASE("trigonometric inequalities")
    {
        const LemmaGap a1 = lemma22_gap(LemmaPart::a, kPi / 2.0, 0.0);
        CHECK(a1.gap == doctest::Approx(-12.0));
        CHECK(a1.residual < 1e-10);
        const LemmaGap a2 = lemma22_gap(LemmaPart::a, 1.0, 1.0);
        CHECK(std::abs(a2.gap) < 1e-12);
        CHECK(lemma22_direction_holds(LemmaPart::a, a2));

        CHECK_FALSE(lemma22_in_domain(LemmaPart::c, kPi / 2.0, 1.0));
        CHECK_FALSE(lemma22_in_domain(LemmaPart::c, 1.0, 4.0 * kPi));
        CHECK_FALSE(lemma22_in_domain(LemmaPart::a, 0.0, 1.0));
        CHECK(lemma22_in_domain(LemmaPart::c, 1.0, 1.0));
        CHECK_THROWS_AS(lemma22_gap(LemmaPart::c, 1.5707963, 0.0), ParameterError);

        // Random angles: the modulus form matches the factored form and has the stated sign.
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> ub(0.0, kPi), ut(-10.0, 10.0);
        for (int i = 0; i < 2000; ++i) {
            const double b = ub(rng), t = ut(rng);
            for (LemmaPart part : {LemmaPart::a, LemmaPart::b, LemmaPart::c}) {
                if (!lemma22_in_domain(part, b, t)) {
                    continue;
                }
                const LemmaGap g = lemma22_gap(part, b, t);
                CHECK(g.residual < 1e-10);
                CHECK(lemma22_direction_holds(part, g));
            }
        }
    }

    TEST_CASE("modulus scan")
    {
        const RationalFn z2(CPoly{1.0}, CPoly{1.0}, 1.0, 2);
        const GridMax m = scan_modulus(z2, GridSpec{10, 8, 0.9});
        CHECK(m.value == doctest::Approx(0.81));
        CHECK(std::abs(m.at) == doctest::Approx(0.9));
        // A pole on the grid counts as infinity.
        const RationalFn pole(CPoly{1.0}, CPoly{-0.5, 1.0});
        CHECK(std::isinf(scan_modulus(pole, GridSpec{10, 4, 0.5}).value));
        CHECK_THROWS_AS(scan_modulus(z2, GridSpec{0, 4, 0.5}), ParameterError);
    }

    TEST_CASE("n = 1 transcript at a = 0, beta = pi/2, theta = 0")
    {
        const VerificationReport r = verify_n1(0.0, kPi / 2.0, 0.0);
        CHECK(r.passed);
        REQUIRE(r.trace);
        const CohnChainTrace& tr = *r.trace;
        REQUIRE(tr.steps.size() == 3);
        CHECK(oracle::max_distance(tr.steps[0].input.coeffs(), {-0.5, 0.0, 0.5, 1.0}) < 1e-15);
        CHECK(oracle::max_distance(tr.steps[0].reduced.coeffs(), {0.25, 0.5, 0.75}) < 1e-15);
        REQUIRE(tr.z0);
        CHECK(std::abs(*tr.z0 + 0.5) < 1e-15);
        REQUIRE(tr.printed_reduction_residual);
        CHECK(*tr.printed_reduction_residual < 1e-15);
        CHECK(r.zero_count == ZeroCount{3, 0, 0});
        for (const Gate& g : tr.gates) {
            CHECK_MESSAGE(g.holds, g.name);
        }
    }

    TEST_CASE("n = 1 special branches")
    {
        for (double beta : {0.4, 2.0}) {
            for (double theta : {0.0, 3.0}) {
                const VerificationReport m = verify_n1(-1.0 / 3.0, beta, theta);
                CHECK(m.passed);
                CHECK(m.trace->special_case == SpecialCase::a_minus_one_third);
                CHECK(m.max_abs_dilatation == doctest::Approx(0.995));

                const VerificationReport p = verify_n1(1.0 / 3.0, beta, theta);
                CHECK(p.passed);
                CHECK(p.trace->special_case == SpecialCase::a_one_third);
                CHECK(p.zero_count.total() == 3);
            }
        }
        CHECK(verify_n1(-0.3333333333, 1.0, 0.0).trace->special_case == SpecialCase::a_minus_one_third);
    }

    TEST_CASE("n = 1 with beta = theta puts z0 on the circle")
    {
        for (double t : {0.4, 1.3, 2.2}) {
            const VerificationReport r = verify_n1(0.2, t, t);
            REQUIRE(r.trace->z0);
            CHECK(std::abs(std::abs(*r.trace->z0) - 1.0) < 1e-9);
            CHECK(r.zero_count.outside == 0);
        }
    }

    TEST_CASE("n = 1 fails below -1/3")
    {
        const VerificationReport r = verify_n1(-0.6, 1.0, 0.0);
        CHECK_FALSE(r.passed);
        CHECK(r.witness);
        CHECK(r.zero_count.outside > 0);
    }

    TEST_CASE("n = 2 transcripts")
    {
        const VerificationReport c = verify_n2(0.25, kPi / 2.0, 0.0);
        CHECK(c.passed);
        CHECK(c.trace->special_case == SpecialCase::beta_half_pi_theta_zero);
        CHECK(c.zero_count.on == 2);
        int on_circle = 0;
        for (Cx z : c.trace->terminal_roots) {
            if (std::abs(std::abs(z) - 1.0) < 1e-12 && std::abs(std::abs(z.imag()) - 1.0) < 1e-12) {
                ++on_circle;
            }
        }
        CHECK(on_circle == 2);

        const VerificationReport h = verify_n2(0.5, 1.0, 2.0);
        CHECK(h.passed);
        CHECK(h.trace->special_case == SpecialCase::a_one_half);
        CHECK(h.zero_count.total() == 4);

        const VerificationReport g = verify_n2(0.7, 1.2, 2.0);
        CHECK(g.passed);
        CHECK(g.zero_count.outside == 0);
        REQUIRE(g.trace->printed_reduction_residual);
        CHECK(*g.trace->printed_reduction_residual < 1e-12);
        for (const Gate& gate : g.trace->gates) {
            CHECK_MESSAGE(gate.holds, gate.name);
        }

        const VerificationReport z = verify_n2(0.0, 1.0, 1.0);
        CHECK(z.passed);
        CHECK(z.trace->special_case == SpecialCase::a_zero);

        CHECK_FALSE(verify_n2(-0.3, 1.0, 1.0).passed);
    }

    TEST_CASE("numeric pipeline")
    {
        CHECK(verify_general({0.2, 1.0, 0.5, 3}).passed);
        const VerificationReport bad = verify_general({0.0, 1.0, 0.5, 3});
        CHECK_FALSE(bad.passed);
        REQUIRE(bad.witness);
        CHECK(bad.max_abs_dilatation > 1.0);
        CHECK(verify({-1.0 / 3.0, 2.0, 1.0, 1}).passed);
        CHECK(verify({0.5, 2.0, 1.0, 5}).passed);
        CHECK_THROWS_AS(verify({0.5, 4.0, 1.0, 2}), ParameterError);

        // Dispatch by n agrees with the numeric pipeline on zero counts.
        for (double a : {-0.2, 0.3, 0.8}) {
            for (int n : {1, 2}) {
                const ParamSet ps{a, 1.4, 2.3, n};
                CHECK(verify(ps).zero_count.outside == verify_general(ps).zero_count.outside);
                CHECK(verify(ps).passed == verify_general(ps).passed);
            }
        }
    }

    TEST_CASE("a grid")
    {
        const std::vector<double> g = a_grid(0.1);
        CHECK(g.size() == 19);
        CHECK(g.front() == doctest::Approx(-0.9));
        CHECK(g[9] == 0.0);
        CHECK(g[10] == 1.0 / 10.0);
        CHECK_THROWS_AS(a_grid(0.0), ParameterError);
        CHECK(ScanGrid{}.betas().size() == 24);
        CHECK(ScanGrid{}.thetas().front() == 0.0);
    }

    TEST_CASE("coarse threshold scan")
    {
        ScanGrid scan;
        scan.beta_points = 6;
        scan.theta_points = 6;
        const GridSpec grid{20, 40, 0.99};
        const ConjectureScan s2 = conjecture_scan(2, 0.1, scan, grid);
        REQUIRE(s2.a_star);
        CHECK(*s2.a_star == doctest::Approx(0.0));
        CHECK(s2.predicted == 0.0);
        CHECK(s2.monotonicity_violations.empty());
        const ConjectureScan s1 = conjecture_scan(1, 0.1, scan, grid);
        REQUIRE(s1.a_star);
        CHECK(*s1.a_star == doctest::Approx(-0.3));
    }

    TEST_CASE("counterexample search")
    {
        ScanGrid scan;
        scan.beta_points = 6;
        scan.theta_points = 6;
        const auto w = counterexample_search(3, 0.0, scan, GridSpec{});
        REQUIRE(w);
        CHECK(w->value > 1.0);
        CHECK(std::abs(w->z) < 1.0);
        CHECK_FALSE(counterexample_search(ParamSet{0.0, 3.0 * kPi / 4.0, 1.0, 1}, GridSpec{}));
        CHECK_FALSE(counterexample_search(2, 0.5, scan, GridSpec{}));
    }
}
