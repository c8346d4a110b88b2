#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>
#include <vector>

#include "softdmp/operators.hpp"

using namespace softdmp;

namespace {

// Independent oracle: the log-average-exp formula evaluated directly in
// extended precision, with no shift. Valid while |eta * q| stays small.
long double mm_reference(const std::vector<double>& q, long double eta) {
    if (eta == 0.0L) {
        long double sum = 0.0L;
        for (double x : q) sum += x;
        return sum / static_cast<long double>(q.size());
    }
    long double sum = 0.0L;
    for (double x : q) sum += expl(eta * static_cast<long double>(x));
    return logl(sum / static_cast<long double>(q.size())) / eta;
}

std::vector<double> random_row(std::mt19937_64& gen, int max_len = 8, double scale = 10.0) {
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_real_distribution<double> val(-scale, scale);
    std::vector<double> row(static_cast<std::size_t>(len(gen)));
    for (double& x : row) x = val(gen);
    return row;
}

}  // namespace

TEST_CASE("EntropyParam parsing and classification") {
    CHECK(EntropyParam::parse("inf").is_pos_inf());
    CHECK(EntropyParam::parse("+inf").is_pos_inf());
    CHECK(EntropyParam::parse("-inf").is_neg_inf());
    CHECK(EntropyParam::parse("0").is_zero());
    CHECK(EntropyParam::parse("-0.1").value() == doctest::Approx(-0.1));
    CHECK(EntropyParam::parse(" 1000 ").value() == 1000.0);
    CHECK_THROWS_AS(EntropyParam::parse("min"), std::invalid_argument);
    CHECK_THROWS_AS(EntropyParam::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(EntropyParam::finite(std::nan("")), std::invalid_argument);

    // finite magnitudes at/above the threshold collapse to the hard operators
    CHECK(EntropyParam::finite(1e7).is_pos_inf());
    CHECK(EntropyParam::finite(-1e8).is_neg_inf());
    CHECK(EntropyParam::finite(9.9e6).is_finite());

    CHECK(EntropyParam::neg_inf() < EntropyParam::finite(-1000.0));
    CHECK(EntropyParam::finite(-1000.0) < EntropyParam::finite(0.0));
    CHECK(EntropyParam::finite(3.0) < EntropyParam::pos_inf());
    CHECK(EntropyParam::pos_inf().negated().is_neg_inf());
    CHECK(EntropyParam::finite(2.5).negated().value() == -2.5);

    // str round-trips through parse
    for (const char* t : {"inf", "-inf", "0", "0.01", "-1000", "3.5"}) {
        auto e = EntropyParam::parse(t);
        CHECK(EntropyParam::parse(e.str()) == e);
    }
}

TEST_CASE("mellow_max: closed-form cases") {
    const std::vector<double> constant = {2.5, 2.5, 2.5};
    for (auto eta : {EntropyParam::neg_inf(), EntropyParam::finite(-3.0), EntropyParam::finite(0.0),
                     EntropyParam::finite(7.0), EntropyParam::pos_inf()})
        CHECK(mellow_max(constant, eta) == doctest::Approx(2.5).epsilon(1e-14));

    const std::vector<double> q = {0.0, 1.0};
    CHECK(mellow_max(q, EntropyParam::pos_inf()) == 1.0);
    CHECK(mellow_max(q, EntropyParam::neg_inf()) == 0.0);
    CHECK(mellow_max(q, EntropyParam::finite(0.0)) == 0.5);

    // eta = 1: log((e^0 + e^1) / 2), frozen from the extended-precision oracle
    const double expected = static_cast<double>(mm_reference(q, 1.0L));
    CHECK(expected == doctest::Approx(0.62011).epsilon(1e-5));
    CHECK(mellow_max(q, EntropyParam::finite(1.0)) == doctest::Approx(expected).epsilon(1e-15));

    CHECK_THROWS_AS(mellow_max(std::vector<double>{}, EntropyParam::finite(1.0)),
                    std::invalid_argument);
}

TEST_CASE("mellow_max: matches the reference formula on random rows") {
    std::mt19937_64 gen(11);
    for (int i = 0; i < 2000; ++i) {
        const auto row = random_row(gen, 8, 5.0);
        std::uniform_real_distribution<double> eta_dist(-6.0, 6.0);
        const double eta = eta_dist(gen);
        const double got = mellow_max(row, EntropyParam::finite(eta));
        const double want = static_cast<double>(mm_reference(row, static_cast<long double>(eta)));
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("mellow_max: no overflow for large |eta * q|") {
    // with the far entry underflowed, MM = extremum -/+ log(2) / |eta|
    const std::vector<double> q = {0.0, 1000.0};
    const double hi = mellow_max(q, EntropyParam::finite(1000.0));
    CHECK(std::isfinite(hi));
    CHECK(hi == doctest::Approx(1000.0 - std::log(2.0) / 1000.0).epsilon(1e-12));
    const double lo = mellow_max(q, EntropyParam::finite(-1000.0));
    CHECK(std::isfinite(lo));
    CHECK(lo == doctest::Approx(std::log(2.0) / 1000.0).epsilon(1e-12));

    // |eta * q| = 1e6 on both sides of zero
    const std::vector<double> wide = {-500.0, 500.0};
    for (double eta : {2000.0, -2000.0}) {
        const double v = mellow_max(wide, EntropyParam::finite(eta));
        CHECK(std::isfinite(v));
    }
}

TEST_CASE("mellow_max: operator family properties") {
    std::mt19937_64 gen(42);
    const std::vector<EntropyParam> etas = {
        EntropyParam::neg_inf(),      EntropyParam::finite(-100.0), EntropyParam::finite(-1.0),
        EntropyParam::finite(-0.01),  EntropyParam::finite(0.0),    EntropyParam::finite(0.01),
        EntropyParam::finite(1.0),    EntropyParam::finite(100.0),  EntropyParam::pos_inf()};

    for (int i = 0; i < 2000; ++i) {
        const auto row = random_row(gen);
        std::uniform_real_distribution<double> shift_dist(-5.0, 5.0);

        // bounds
        const double lo = *std::min_element(row.begin(), row.end());
        const double hi = *std::max_element(row.begin(), row.end());
        for (const auto& eta : etas) {
            const double v = mellow_max(row, eta);
            CHECK(v >= lo - 1e-12);
            CHECK(v <= hi + 1e-12);
        }

        // monotonicity in eta
        double prev = mellow_max(row, etas[0]);
        for (std::size_t k = 1; k < etas.size(); ++k) {
            const double cur = mellow_max(row, etas[k]);
            CHECK(cur >= prev - 1e-12);
            prev = cur;
        }

        // shift equivariance
        const double c = shift_dist(gen);
        std::vector<double> shifted = row;
        for (double& x : shifted) x += c;
        for (const auto& eta : {EntropyParam::finite(-2.0), EntropyParam::finite(3.0)}) {
            CHECK(mellow_max(shifted, eta) ==
                  doctest::Approx(mellow_max(row, eta) + c).epsilon(1e-10));
        }

        // non-expansion against a perturbed row of the same length
        std::vector<double> other = row;
        for (double& x : other) x += shift_dist(gen);
        double max_diff = 0.0;
        for (std::size_t k = 0; k < row.size(); ++k)
            max_diff = std::max(max_diff, std::abs(row[k] - other[k]));
        for (const auto& eta : etas) {
            const double d = std::abs(mellow_max(row, eta) - mellow_max(other, eta));
            CHECK(d <= max_diff + 1e-12);
        }

        // limit consistency at eta = +/-1e6 (still finite: below the threshold)
        CHECK(mellow_max(row, EntropyParam::finite(1e6)) == doctest::Approx(hi).epsilon(1e-5));
        CHECK(mellow_max(row, EntropyParam::finite(-1e6)) == doctest::Approx(lo).epsilon(1e-5));
    }
}

TEST_CASE("greedy_action_set: ties within tolerance") {
    const std::vector<double> q = {0.0, 0.0, -1.0};
    CHECK(greedy_action_set(q, GreedyMode::Argmax) == std::vector<int>{0, 1});
    CHECK(greedy_action_set(q, GreedyMode::Argmin) == std::vector<int>{2});

    const std::vector<double> close = {1.0, 1.0 + 0.5e-9, 0.0};
    CHECK(greedy_action_set(close, GreedyMode::Argmax) == std::vector<int>{0, 1});
    const std::vector<double> apart = {1.0, 1.0 + 2e-9, 0.0};
    CHECK(greedy_action_set(apart, GreedyMode::Argmax) == std::vector<int>{1});
}

TEST_CASE("boltzmann_policy: closed-form cases") {
    const std::vector<double> flat = {1.0, 1.0};
    for (auto eta : {EntropyParam::neg_inf(), EntropyParam::finite(-2.0), EntropyParam::finite(0.0),
                     EntropyParam::finite(5.0), EntropyParam::pos_inf()}) {
        const auto p = boltzmann_policy(flat, eta);
        CHECK(p[0] == doctest::Approx(0.5));
        CHECK(p[1] == doctest::Approx(0.5));
    }

    const std::vector<double> q = {0.0, 1.0};
    const auto greedy_min = boltzmann_policy(q, EntropyParam::neg_inf(), false);
    CHECK(greedy_min == ActionDistribution{1.0, 0.0});

    // flipped mellow policy: softmax of -eta * q with eta = -1 -> softmax(q)
    const auto p = boltzmann_policy(q, EntropyParam::finite(-1.0), true);
    const double e = std::exp(1.0);
    CHECK(p[0] == doctest::Approx(1.0 / (1.0 + e)).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(e / (1.0 + e)).epsilon(1e-12));
    CHECK(p[0] == doctest::Approx(0.2689).epsilon(1e-3));
    CHECK(p[1] == doctest::Approx(0.7311).epsilon(1e-3));

    // eta = 0 is uniform regardless of q
    const auto u = boltzmann_policy(q, EntropyParam::finite(0.0));
    CHECK(u == ActionDistribution{0.5, 0.5});
}

TEST_CASE("boltzmann_policy: flipped equals negated eta, exactly") {
    std::mt19937_64 gen(7);
    const std::vector<EntropyParam> etas = {EntropyParam::neg_inf(), EntropyParam::finite(-3.3),
                                            EntropyParam::finite(0.0), EntropyParam::finite(1.7),
                                            EntropyParam::pos_inf()};
    for (int i = 0; i < 500; ++i) {
        const auto row = random_row(gen);
        for (const auto& eta : etas) {
            const auto a = boltzmann_policy(row, eta, true);
            const auto b = boltzmann_policy(row, eta.negated(), false);
            CHECK(a == b);  // same code path, so equality is exact
            CHECK(is_distribution(a, 1e-12));
        }
    }
}
