#include "pconvex/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using pconvex::CounterRng;

TEST_CASE("words are pure functions of (seed, stream, counter)") {
    CounterRng a(42, 7);
    CounterRng b(42, 7);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    CHECK(CounterRng::word(42, 7, 13) == CounterRng::word(42, 7, 13));
    CHECK(CounterRng::word(42, 7, 13) != CounterRng::word(42, 7, 14));
    CHECK(CounterRng::word(42, 7, 13) != CounterRng::word(42, 8, 13));
    CHECK(CounterRng::word(42, 7, 13) != CounterRng::word(43, 7, 13));
}

TEST_CASE("substreams do not collide with the parent or each other") {
    CounterRng parent(1, 0);
    std::set<std::uint64_t> first_words;
    first_words.insert(CounterRng(1, 0).next_u64());
    for (std::uint64_t i = 0; i < 64; ++i) {
        CounterRng child = parent.substream(i);
        first_words.insert(child.next_u64());
    }
    CHECK(first_words.size() == 65);
}

TEST_CASE("uniform01 stays in [0,1) and uniform_open01 in (0,1]") {
    CounterRng rng(3, 1);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double v = rng.uniform_open01();
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("normal draws have about the right first two moments") {
    CounterRng rng(9, 2);
    const int n = 100000;
    double mean = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        CHECK(std::isfinite(x));
        mean += x;
        sq += x * x;
    }
    mean /= n;
    sq /= n;
    CHECK(std::abs(mean) < 5.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(sq - 1.0) < 0.05);
}
