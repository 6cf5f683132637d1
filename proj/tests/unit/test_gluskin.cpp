#include "pconvex/gluskin.hpp"

#include "pconvex/combination.hpp"
#include "pconvex/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace pconvex;

TEST_CASE("sphere samples are unit and unbiased") {
    CounterRng rng(51, 0);
    double coord_mean = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const Vector v = sample_sphere(3, rng);
        CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
        coord_mean += v(0);
    }
    coord_mean /= draws;
    CHECK(std::abs(coord_mean) < 5.0 / std::sqrt(static_cast<double>(draws)));

    CounterRng rng1(52, 0);
    const Vector one = sample_sphere(1, rng1);
    CHECK(std::abs(std::abs(one(0)) - 1.0) <= 1e-15);
}

TEST_CASE("random gluskin spaces are reproducible with unit generators") {
    const RandomSpaceSpec spec{2, PExponent(0.5), 42};
    const PNormedSpace a = random_gluskin_space(spec);
    const PNormedSpace b = random_gluskin_space(spec);

    REQUIRE(a.body().generators().size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(a.body().generators().point(i).norm() - 1.0) <= 1e-12);
        CHECK(a.body().generators().point(i) == b.body().generators().point(i));
    }
    for (const Vector& g : a.body().generators().points()) {
        CHECK(gauge(g, a) <= 1.0 + 1e-9);
    }

    const PNormedSpace c = random_gluskin_space({2, PExponent(0.5), 43});
    CHECK(a.body().generators().point(2) != c.body().generators().point(2));
}

TEST_CASE("gluskin bodies sit inside the Euclidean ball") {
    // sum lambda_i <= (sum lambda_i^p)^(1/p) for p < 1, so any admissible
    // combination of unit generators has Euclidean norm <= 1.
    const PNormedSpace space = random_gluskin_space({3, PExponent(0.5), 9});
    const auto& gens = space.body().generators();
    CounterRng rng(53, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Term> terms;
        const int k = 1 + static_cast<int>(rng.next_u64() % 6);
        for (int j = 0; j < k; ++j) {
            terms.push_back({static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(gens.size())),
                             rng.uniform01() < 0.5 ? -1 : 1, 0.01 + rng.uniform01()});
        }
        PCombination comb(3, terms);
        const double w = combination_weight(comb, space.p());
        const double target = rng.uniform01();
        for (Term& t : terms) t.lambda *= std::pow(target / w, 1.0 / 0.5);
        comb = PCombination(3, terms);
        CHECK(eval_combination(comb, gens).norm() <= 1.0 + 1e-9);
    }
}

TEST_CASE("lp ball volumes from the Gamma formula") {
    CHECK(ball_volume_lp(2, PExponent(1.0)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ball_volume_lp(2, PExponent(0.5)) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(ball_volume_lp(1, PExponent(0.5)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ball_volume_lp(3, PExponent(0.5)) == doctest::Approx(64.0 / 720.0).epsilon(1e-12));
    CHECK(euclidean_ball_volume(2) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("volume_mc matches the closed form and ignores duplicates and threads") {
    std::vector<Vector> gens{Vector::Unit(2, 0), Vector::Unit(2, 1)};
    const PNormedSpace space(PBody(GeneratorSet(2, gens), PExponent(0.5)));

    const VolumeEstimate est = volume_mc(space, 200000, 7);
    CHECK(std::abs(est.mean - 2.0 / 3.0) <= 4.0 * est.std_error);
    CHECK(est.std_error > 0.0);

    const VolumeEstimate est4 = volume_mc(space, 200000, 7, 4);
    CHECK(est4.mean == est.mean);
    CHECK(est4.std_error == est.std_error);

    gens.push_back(Vector::Unit(2, 0));  // duplicate generator
    const PNormedSpace dup(PBody(GeneratorSet(2, gens), PExponent(0.5)));
    CHECK(volume_mc(dup, 50000, 7).mean == volume_mc(space, 50000, 7).mean);

    // the remaining (n, p) combinations of the volume contract
    const PNormedSpace lp3(PBody(GeneratorSet(3, {Vector::Unit(3, 0), Vector::Unit(3, 1),
                                                  Vector::Unit(3, 2)}),
                                 PExponent(0.5)));
    const VolumeEstimate e3 = volume_mc(lp3, 200000, 3);
    CHECK(std::abs(e3.mean - ball_volume_lp(3, PExponent(0.5))) <= 3.0 * e3.std_error);

    const PNormedSpace lp23(PBody(GeneratorSet(2, {Vector::Unit(2, 0), Vector::Unit(2, 1)}),
                                  PExponent(2.0 / 3.0)));
    const VolumeEstimate e23 = volume_mc(lp23, 200000, 9);
    CHECK(std::abs(e23.mean - ball_volume_lp(2, PExponent(2.0 / 3.0))) <= 3.0 * e23.std_error);

    CHECK_THROWS_AS(volume_mc(PNormedSpace(PBody(GeneratorSet(2, {Vector::Unit(2, 0) * 2.0,
                                                                  Vector::Unit(2, 1)}),
                                                 PExponent(0.5))),
                              1000, 1),
                    ValidationError);
}

TEST_CASE("volume upper bound formula and comparison against MC") {
    std::vector<Vector> gens{Vector::Unit(2, 0), Vector::Unit(2, 1)};
    const PNormedSpace lp2(PBody(GeneratorSet(2, gens), PExponent(0.5)));
    CHECK(volume_upper_bound(lp2) == doctest::Approx(28.0 / 6.0).epsilon(1e-12));

    const PNormedSpace lp1(PBody(GeneratorSet(1, {Vector::Ones(1)}), PExponent(0.5)));
    CHECK(volume_upper_bound(lp1) == doctest::Approx(4.0).epsilon(1e-12));

    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const PNormedSpace space = random_gluskin_space({2, PExponent(0.5), seed});
        const VolumeEstimate est = volume_mc(space, 50000, seed);
        const double hadamard = volume_upper_bound(space);
        const double exact = volume_upper_bound(space, true);
        CHECK(exact <= hadamard + 1e-12);
        CHECK(hadamard >= est.mean - 3.0 * est.std_error);
        CHECK(exact >= est.mean - 3.0 * est.std_error);
    }
}

TEST_CASE("lemma7 experiment in the vacuous and informative regimes") {
    const PNormedSpace space = random_gluskin_space({2, PExponent(0.5), 3});
    const LinearMap id = LinearMap::identity(2);

    // Gauges dominate the Euclidean norm on sphere points, so a large t
    // makes the event certain and the bound vacuous.
    const Lemma7Report big = lemma7_experiment(id, space, 5.0, 500, 11, 20000);
    CHECK(big.empirical == 1.0);
    CHECK(big.vacuous);
    CHECK(big.within_bound);

    const Lemma7Report small = lemma7_experiment(id, space, 0.1, 2000, 11, 50000);
    CHECK(!small.vacuous);
    CHECK(small.bound > 0.0);
    CHECK(small.empirical <= small.bound + 3.0 * (small.empirical_std_error + small.bound_std_error) + 1e-12);
    CHECK(small.within_bound);

    CHECK_THROWS_AS(lemma7_experiment(id, space, 0.1, 0, 1), ValidationError);
    CHECK_THROWS_AS(lemma7_experiment(id, space, -1.0, 10, 1), ValidationError);
}

TEST_CASE("diameter experiment emits sane rows deterministically") {
    const std::vector<ScalingRow> rows =
        diameter_experiment({2}, PExponent(0.5), 2, 300, 17, 2);
    REQUIRE(rows.size() == 2);
    for (const ScalingRow& row : rows) {
        CHECK(row.n == 2);
        CHECK(row.distance_upper >= 1.0);
        CHECK(row.reference == doctest::Approx(8.0).epsilon(1e-12));
        CHECK(row.envelope_lb_a >= 1.0);
        CHECK(row.envelope_lb_b >= 1.0);
    }

    const std::vector<ScalingRow> again =
        diameter_experiment({2}, PExponent(0.5), 2, 300, 17, 2);
    CHECK(again[0].distance_upper == rows[0].distance_upper);
    CHECK(again[1].distance_upper == rows[1].distance_upper);

    CHECK_THROWS_AS(diameter_experiment({9}, PExponent(0.5), 1, 10, 0), BudgetError);
}
