#include "pconvex/combination.hpp"

#include "pconvex/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace pconvex;

namespace {

GeneratorSet basis2_with_q() {
    Vector q(2);
    q << 0.5, 0.5;
    return GeneratorSet(2, {Vector::Unit(2, 0), Vector::Unit(2, 1), q});
}

}  // namespace

TEST_CASE("domain type invariants are enforced at construction") {
    CHECK_THROWS_AS(PExponent(0.0), ValidationError);
    CHECK_THROWS_AS(PExponent(1.5), ValidationError);
    CHECK_THROWS_AS(PExponent(-0.5), ValidationError);
    CHECK_NOTHROW(PExponent(1.0));

    CHECK_THROWS_AS(GeneratorSet(2, {Vector::Zero(2)}), ValidationError);
    CHECK_THROWS_AS(GeneratorSet(2, {}), ValidationError);
    CHECK_THROWS_AS(GeneratorSet(2, {Vector::Unit(3, 0)}), ValidationError);

    // generators must span
    CHECK_THROWS_AS(PBody(GeneratorSet(2, {Vector::Unit(2, 0), 2.0 * Vector::Unit(2, 0)}),
                          PExponent(0.5)),
                    ValidationError);

    CHECK_THROWS_AS(LinearMap(Matrix::Identity(2, 3)), ValidationError);

    // slightly negative solver output is clamped, anything worse rejected
    CHECK(PCombination(2, {{0, 1, -5e-13}}).terms()[0].lambda == 0.0);
    CHECK_THROWS_AS(PCombination(2, {{0, 1, -1e-9}}), ValidationError);
}

TEST_CASE("eval_combination examples") {
    const GeneratorSet gens = basis2_with_q();

    const PCombination single(2, {{0, 1, 0.5}});
    Vector v = eval_combination(single, gens);
    CHECK(v(0) == 0.5);
    CHECK(v(1) == 0.0);

    CHECK(eval_combination(PCombination::empty(2), gens).norm() == 0.0);

    const PCombination three(2, {{0, 1, 0.05}, {1, 1, 0.05}, {2, 1, 0.05}});
    v = eval_combination(three, gens);
    CHECK(v(0) == doctest::Approx(0.075).epsilon(1e-14));
    CHECK(v(1) == doctest::Approx(0.075).epsilon(1e-14));

    CHECK_THROWS_AS(eval_combination(PCombination(2, {{9, 1, 0.1}}), gens), ValidationError);
}

TEST_CASE("eval_combination is linear in the coefficients") {
    const GeneratorSet gens = basis2_with_q();
    CounterRng rng(21, 0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Term> terms;
        for (int j = 0; j < 5; ++j) {
            terms.push_back({static_cast<int>(rng.next_u64() % 3),
                             rng.uniform01() < 0.5 ? -1 : 1, rng.uniform01()});
        }
        const double a = 0.1 + 10.0 * rng.uniform01();
        std::vector<Term> scaled = terms;
        for (Term& t : scaled) t.lambda *= a;

        const Vector v1 = eval_combination(PCombination(2, terms), gens);
        const Vector v2 = eval_combination(PCombination(2, scaled), gens);
        CHECK((v2 - a * v1).norm() <= 1e-12 * std::max(1.0, (a * v1).norm()));
    }
}

TEST_CASE("combination_weight examples") {
    CHECK(combination_weight(PCombination(2, {{0, 1, 0.25}}), PExponent(0.5)) ==
          doctest::Approx(0.5).epsilon(1e-14));
    CHECK(combination_weight(PCombination(2, {{0, 1, 0.16}, {1, 1, 0.09}, {2, 1, 0.09}}),
                             PExponent(0.5)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(combination_weight(PCombination(2, {{0, 1, 1.0}}), PExponent(0.7)) == 1.0);
    CHECK(combination_weight(PCombination::empty(2), PExponent(0.5)) == 0.0);
}

TEST_CASE("split_to_unit_weight: single quarter coefficient splits four ways") {
    const PCombination comb(2, {{0, 1, 0.25}});
    const PCombination out = split_to_unit_weight(comb, PExponent(0.5));
    REQUIRE(out.terms().size() == 4);
    for (const Term& t : out.terms()) {
        CHECK(t.index == 0);
        // the root sits at the flat maximum of the weight curve, so the
        // split parameter only resolves to sqrt(eps)
        CHECK(t.lambda == doctest::Approx(0.0625).epsilon(1e-6));
    }
    CHECK(combination_weight(out, PExponent(0.5)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("split_to_unit_weight: weight 1 input is returned unchanged") {
    const PCombination comb(2, {{0, 1, 0.16}, {1, 1, 0.09}, {2, 1, 0.09}});
    const PCombination out = split_to_unit_weight(comb, PExponent(0.5));
    CHECK(out.terms().size() == 3);
    CHECK(out.terms()[0].lambda == 0.16);
}

TEST_CASE("split_to_unit_weight: bisection example lambda=(0.25, 0.09)") {
    const PCombination comb(2, {{0, 1, 0.25}, {1, 1, 0.09}});
    const PCombination out = split_to_unit_weight(comb, PExponent(0.5));
    REQUIRE(out.terms().size() == 3);
    CHECK(out.terms()[0].lambda == doctest::Approx(0.16).epsilon(1e-9));
    CHECK(out.terms()[1].lambda == 0.09);
    CHECK(out.terms()[2].lambda == doctest::Approx(0.09).epsilon(1e-9));
    CHECK(combination_weight(out, PExponent(0.5)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("split_to_unit_weight rejects invalid inputs") {
    CHECK_THROWS_AS(split_to_unit_weight(PCombination(2, {{0, 1, 0.8}, {1, 1, 0.8}}), PExponent(0.5)),
                    ValidationError);
    CHECK_THROWS_AS(split_to_unit_weight(PCombination(2, {{0, 1, 0.0}}), PExponent(0.5)),
                    ValidationError);
    CHECK_THROWS_AS(split_to_unit_weight(PCombination(2, {{0, 1, 0.25}}), PExponent(1.0)),
                    ValidationError);
}

TEST_CASE("split_to_unit_weight preserves value and lands on weight 1") {
    const GeneratorSet gens = basis2_with_q();
    CounterRng rng(22, 0);
    for (int trial = 0; trial < 200; ++trial) {
        // p near 1 with small coefficients needs astronomically many
        // parts (the k budget guards that), so stay in a sane regime
        const double p = 0.2 + 0.55 * rng.uniform01();
        const int k = 1 + static_cast<int>(rng.next_u64() % 4);
        std::vector<Term> terms;
        for (int j = 0; j < k; ++j) {
            terms.push_back({static_cast<int>(rng.next_u64() % 3),
                             rng.uniform01() < 0.5 ? -1 : 1, rng.uniform01()});
        }
        PCombination comb(2, terms);
        const double w = combination_weight(comb, PExponent(p));
        // Scale so the weight lands in (0, 1].
        const double target = 0.3 + 0.7 * rng.uniform01();
        const double scale = std::pow(target / w, 1.0 / p);
        for (Term& t : terms) t.lambda *= scale;
        comb = PCombination(2, terms);

        const PCombination out = split_to_unit_weight(comb, PExponent(p));
        CHECK(std::abs(combination_weight(out, PExponent(p)) - 1.0) <= 1e-12);
        const Vector before = eval_combination(comb, gens);
        const Vector after = eval_combination(out, gens);
        CHECK((before - after).norm() <= 1e-12 * std::max(1.0, before.norm()));
    }
}
