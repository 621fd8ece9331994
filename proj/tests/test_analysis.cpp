#include "doctest.h"

#include <cmath>

#include "bnec/analysis.hpp"
#include "bnec/combin.hpp"
#include "bnec/verify.hpp"
#include "fixtures.hpp"

using namespace bnec;
using namespace bnec::test;

namespace {

// Two-path oracle: evaluate the binomial sums by explicit enumeration over
// edge subsets (no binomial coefficients involved).
double detection_bound_oracle(int et, int delta, double rho) {
    double sum = 0;
    for (unsigned long long mask = 0; mask < (1ull << et); ++mask) {
        int errs = __builtin_popcountll(mask);
        if (errs > delta) continue;
        sum += std::pow(rho, errs) * std::pow(1 - rho, et - errs);
    }
    return sum;
}

double bd_bound_oracle(int et, int delta, double rho1, double rho2) {
    double sum = 0;
    for (unsigned long long ers = 0; ers < (1ull << et); ++ers) {
        int a = __builtin_popcountll(ers);
        if (a > delta) continue;
        double p_ers = std::pow(rho2, a) * std::pow(1 - rho2, et - a);
        // errors live on the remaining edges
        int rest = et - a;
        double inner = 0;
        for (unsigned long long err = 0; err < (1ull << rest); ++err) {
            int b = __builtin_popcountll(err);
            if (b > (delta - a) / 2) continue;
            inner += std::pow(rho1, b) * std::pow(1 - rho1, rest - b);
        }
        sum += p_ers * inner;
    }
    return sum;
}

}  // namespace

TEST_CASE("detection probability bound") {
    CHECK(detection_prob_bound(6, 2, 0.1) == doctest::Approx(0.98415).epsilon(1e-9));
    CHECK(detection_prob_bound(6, 2, 0.0) == 1.0);
    CHECK(detection_prob_bound(5, 5, 0.37) == doctest::Approx(1.0).epsilon(1e-12));
    for (int et : {3, 5, 8})
        for (int delta : {0, 1, 2, 3})
            for (double rho : {0.02, 0.1, 0.4})
                CHECK(detection_prob_bound(et, delta, rho) ==
                      doctest::Approx(detection_bound_oracle(et, delta, rho)).epsilon(1e-12));
}

TEST_CASE("general detection bound reduces to the uniform closed form") {
    std::vector<int> et{0, 1, 2, 3, 4, 5};
    NoiseModel uni = uniform_noise_model(6, 7, 0.1, 0.0);
    CHECK(detection_prob_general(uni, et, 2) == doctest::Approx(detection_prob_bound(6, 2, 0.1)).epsilon(1e-12));

    NoiseModel skew = uniform_noise_model(6, 7, 0.1, 0.0);
    skew.p_err = {0.01, 0.2, 0.05, 0.1, 0.0, 0.3};
    double exact = detection_prob_general(skew, et, 2);
    CHECK(exact > 0.0);
    CHECK(exact < 1.0);
    // Monte Carlo path agrees within sampling noise on a wide instance
    std::vector<int> wide(14);
    for (int i = 0; i < 14; ++i) wide[i] = i;
    NoiseModel big = uniform_noise_model(14, 7, 0.05, 0.0);
    double mc = detection_prob_general(big, wide, 2, 5, 200000);
    CHECK(mc == doctest::Approx(detection_prob_bound(14, 2, 0.05)).epsilon(0.01));
}

TEST_CASE("bounded-distance correction bound") {
    CHECK(bd_correction_bound(5, 2, 0.1, 0.0) == doctest::Approx(0.91854).epsilon(1e-9));
    CHECK(bd_correction_bound(5, 2, 0.0, 0.0) == 1.0);
    CHECK(bd_correction_bound(4, 0, 0.1, 0.0) == doctest::Approx(std::pow(0.9, 4)).epsilon(1e-12));
    CHECK(bd_correction_bound(6, 2, 0.05, 0.0) == doctest::Approx(0.9672).epsilon(1e-4));
    for (int et : {4, 6})
        for (int delta : {1, 2, 3})
            for (double r2 : {0.0, 0.05, 0.2})
                CHECK(bd_correction_bound(et, delta, 0.1, r2) ==
                      doctest::Approx(bd_bound_oracle(et, delta, 0.1, r2)).epsilon(1e-12));
}

TEST_CASE("complete-decoding correction bound") {
    // delta = 2: the improvement sum is empty, equal to the BD bound
    CHECK(complete_correction_bound(6, 6, 2, 0.1, 64) ==
          doctest::Approx(bd_correction_bound(6, 2, 0.1, 0.0)).epsilon(1e-12));

    // two-path: bd term by subset enumeration, improvement term by hand
    double expected = bd_bound_oracle(10, 3, 0.05, 0.0) +
                      (1.0 - 45.0 / 64.0) * 45.0 * 0.0025 * std::pow(0.95, 8);
    CHECK(complete_correction_bound(10, 10, 3, 0.05, 64) == doctest::Approx(expected).epsilon(1e-12));

    // the weight-(delta-1) failure term halves when q doubles
    double f64 = double(binomial(10, 2)) / 64.0;
    double f128 = double(binomial(10, 2)) / 128.0;
    CHECK(f128 == doctest::Approx(f64 / 2).epsilon(1e-12));

    // tiny q clamps the negative factor instead of producing a bound < BD term
    bool clamped = false;
    double v = complete_correction_bound(10, 10, 3, 0.05, 2, &clamped);
    CHECK(clamped);
    CHECK(v >= bd_correction_bound(10, 3, 0.05, 0.0));
}

TEST_CASE("table counts") {
    TableCounts tc = table_counts(6, 2, 7, 1, 0);
    CHECK(tc.ncn_phi == 37);   // 1 + 6*6
    CHECK(tc.ns_phi == 37);
    CHECK(tc.nrec_phi == 259); // q^k * 37
    CHECK(tc.nerror[1] == 36);
    CHECK(tc.nerror[2] == 36 + 15 * 36);
    // all erasure patterns: sum over sizes of C(6,a) * inner
    unsigned long long expect_ncn = 0;
    expect_ncn += 1 * 37;       // a = 0
    expect_ncn += 6 * 1;        // a = 1, beta' = 0
    expect_ncn += 15 * 1;       // a = 2
    CHECK(tc.ncn == expect_ncn);
    CHECK(tc.nrec == 7 * expect_ncn);

    TableCounts degenerate = table_counts(6, 0, 7, 2, 0);
    CHECK(degenerate.ncn_phi == 1);
    CHECK(degenerate.nrec_phi == 49);
}

TEST_CASE("measured bd table entries stay below the closed-form count") {
    BnecCode code = repetition_code();
    BdTable tables = build_bd_tables(code, "t");
    TableCounts tc = table_counts(6, 2, 7, 1, 0);
    CHECK(tables.by_pattern.at({}).entries.size() == 19);
    CHECK(tables.by_pattern.at({}).entries.size() <= tc.ncn_phi);
}

TEST_CASE("lemma-style solution counts") {
    FieldPtr f3 = Field::make(3);

    Matrix m22(f3, {{1, 0}, {0, 1}});
    CHECK(lemma1_count(m22) == 1);  // m <= delta

    Matrix m23(f3, {{1, 0, 1}, {0, 1, 1}});
    CHECK(lemma1_count(m23) == 3);  // q^(m - delta)

    Matrix m1(f3, {{2}});
    CHECK(lemma1_count(m1) == 1);

    Matrix dep(f3, {{1, 2}, {2, 4 % 3}});
    CHECK_THROWS_AS(lemma1_count(dep), NotIndependent);
}

TEST_CASE("random delta-independent instances obey the two-case bound") {
    CheckResult res = check_solution_counts(2024, 60);
    CHECK(res.pass);
    CHECK(res.checked == 60);
}

TEST_CASE("wilson interval sanity") {
    auto [lo, hi] = wilson_interval(90, 100);
    CHECK(lo < 0.9);
    CHECK(hi > 0.9);
    CHECK(lo > 0.78);
    CHECK(hi < 0.97);
    auto [l0, h0] = wilson_interval(0, 50);
    CHECK(l0 == 0.0);
    CHECK(h0 < 0.2);
}

TEST_CASE("monte_carlo") {
    BnecCode code = repetition_code();
    NoiseModel model = noise_model_from(code);

    SUBCASE("zero noise: correction rate exactly 1") {
        for (auto& p : model.p_err) p = 0.0;
        std::vector<BoundReport> reports = monte_carlo(code, "t", model, "bd", 500, 1);
        for (const BoundReport& r : reports) CHECK(*r.measured == 1.0);
    }
    SUBCASE("rates respect the bounds at modest trial counts") {
        for (auto& p : model.p_err) p = 0.05;
        std::vector<BoundReport> reports = monte_carlo(code, "t", model, "bd", 20000, 7);
        REQUIRE(reports.size() == 2);
        for (const BoundReport& r : reports) {
            REQUIRE(r.bound);
            double sigma = std::sqrt(*r.measured * (1.0 - *r.measured) / double(r.trials));
            CHECK(*r.measured >= *r.bound - 3 * sigma);
        }
    }
    SUBCASE("mixed erasures use the mixture bound") {
        for (auto& p : model.p_err) p = 0.05;
        for (auto& p : model.p_ers) p = 0.05;
        std::vector<BoundReport> reports = monte_carlo(code, "t", model, "bd", 20000, 9);
        REQUIRE(reports.size() == 1);  // detection is reported errors-only
        CHECK(reports[0].formula == "bd_correction");
        double sigma = std::sqrt(*reports[0].measured * (1 - *reports[0].measured) / 20000.0);
        CHECK(*reports[0].measured >= *reports[0].bound - 3 * sigma);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(monte_carlo(code, "t", model, "bd", 0, 1), Error);
        CHECK_THROWS_AS(monte_carlo(code, "t", model, "nope", 10, 1), BadDecoder);
        for (auto& p : model.p_ers) p = 0.1;
        CHECK_THROWS_AS(monte_carlo(code, "t", model, "three-stage", 10, 1), ErasuresPresent);
    }
}
