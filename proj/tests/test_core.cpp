#include <doctest.h>

#include <random>
#include <vector>

#include "specband/core.hpp"
#include "specband/rng.hpp"

using namespace specband;

TEST_SUITE_BEGIN("core");

TEST_CASE("update_arm keeps exact (pulls, reward_sum) accounting") {
    ArmStatistics s;
    s = update_arm(s, 0.7);
    CHECK(s.pulls == 1);
    CHECK(s.mean() == doctest::Approx(0.7).epsilon(1e-15));

    s = update_arm(s, 0.3);
    CHECK(s.pulls == 2);
    CHECK(s.mean() == doctest::Approx(0.5).epsilon(1e-15));

    ArmStatistics nine{9, 4.5};
    const ArmStatistics ten = update_arm(nine, 1.0);
    CHECK(ten.pulls == 10);
    CHECK(ten.mean() == doctest::Approx(0.55).epsilon(1e-15));
    CHECK(nine.pulls == 9);  // value semantics: input untouched
}

TEST_CASE("empirical mean equals the arithmetic mean of the rewards") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> dist(-1.0, 2.0);
    const int n = 1'000'000;
    ArmStatistics s;
    long double reference_sum = 0.0L;
    for (int i = 0; i < n; ++i) {
        const double r = dist(gen);
        s = update_arm(s, r);
        reference_sum += r;
    }
    CHECK(s.pulls == n);
    const double reference_mean = static_cast<double>(reference_sum / n);
    CHECK(s.mean() == doctest::Approx(reference_mean).epsilon(1e-12));
}

TEST_CASE("mean is undefined before the first pull") {
    ArmStatistics s;
    CHECK_THROWS_AS((void)s.mean(), std::invalid_argument);
}

TEST_CASE("gaps against hand arithmetic") {
    const BanditInstance a({ArmDistribution::gaussian(0.9, 1.0), ArmDistribution::gaussian(0.6, 1.0),
                            ArmDistribution::gaussian(0.6, 1.0)});
    const auto ga = gaps(a);
    CHECK(ga[0] == 0.0);
    CHECK(ga[1] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(ga[2] == doctest::Approx(0.3).epsilon(1e-12));

    const BanditInstance tie({ArmDistribution::bernoulli(0.5), ArmDistribution::bernoulli(0.5)});
    CHECK(tie.optimal_arm() == 0);  // symmetric tie, lowest index canonical
    CHECK(gaps(tie) == std::vector<double>{0.0, 0.0});

    const BanditInstance b({ArmDistribution::bernoulli(0.1), ArmDistribution::bernoulli(0.9)});
    const auto gb = gaps(b);
    CHECK(gb[0] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(gb[1] == 0.0);
}

TEST_CASE("canonical optimal arm has the unique zero gap") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> mean_dist(0.0, 1.0);
    std::uniform_int_distribution<int> k_dist(2, 8);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ArmDistribution> arms;
        const int k = k_dist(gen);
        for (int i = 0; i < k; ++i) arms.push_back(ArmDistribution::bernoulli(mean_dist(gen)));
        const BanditInstance instance(arms);
        const auto g = gaps(instance);
        const std::size_t opt = instance.optimal_arm();
        CHECK(g[opt] == 0.0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(g[i] >= 0.0);
            if (i < opt) CHECK(g[i] > 0.0);  // lowest-index maximizer
        }
    }
}

TEST_CASE("instance validation") {
    CHECK_THROWS_AS(BanditInstance({ArmDistribution::bernoulli(0.5)}), ConfigError);
    CHECK_THROWS_AS(ArmDistribution::bernoulli(1.5), ConfigError);
    CHECK_THROWS_AS(ArmDistribution::gaussian(0.0, -1.0), ConfigError);
    CHECK(ArmDistribution::bernoulli(0.5).sub_gaussian_sigma() == 0.5);
    CHECK(ArmDistribution::gaussian(0.0, 0.7).sub_gaussian_sigma() == 0.7);
}

TEST_CASE("equal stream ids replay bit-identical sequences") {
    RandomStream a(12345, 3, StreamPurpose::environment);
    RandomStream b(12345, 3, StreamPurpose::environment);
    for (int i = 0; i < 200; ++i) {
        CHECK(a.next_uniform() == b.next_uniform());
    }
    RandomStream c(12345, 3, StreamPurpose::environment);
    RandomStream d(12345, 3, StreamPurpose::environment);
    for (int i = 0; i < 50; ++i) {
        CHECK(c.next_normal() == d.next_normal());
    }
}

TEST_CASE("distinct stream ids diverge") {
    RandomStream base(99, 0, StreamPurpose::environment);
    RandomStream other_rep(99, 1, StreamPurpose::environment);
    RandomStream other_purpose(99, 0, StreamPurpose::policy);
    RandomStream other_seed(100, 0, StreamPurpose::environment);
    int equal_rep = 0, equal_purpose = 0, equal_seed = 0;
    for (int i = 0; i < 64; ++i) {
        const double u = base.next_uniform();
        if (u == other_rep.next_uniform()) ++equal_rep;
        if (u == other_purpose.next_uniform()) ++equal_purpose;
        if (u == other_seed.next_uniform()) ++equal_seed;
    }
    CHECK(equal_rep == 0);
    CHECK(equal_purpose == 0);
    CHECK(equal_seed == 0);
}

TEST_CASE("uniforms stay in [0, 1) and indices in range") {
    RandomStream s(5, 0, StreamPurpose::analysis);
    for (int i = 0; i < 10'000; ++i) {
        const double u = s.next_uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    for (int i = 0; i < 1'000; ++i) {
        CHECK(s.next_index(7) < 7);
    }
}

TEST_SUITE_END();
