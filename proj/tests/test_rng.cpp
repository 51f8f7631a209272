#include <doctest.h>

#include <set>
#include <vector>

#include "adarefiner/rng.hpp"

using adarefiner::Rng;

TEST_CASE("same seed yields identical streams") {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    CHECK(a == b);
}

TEST_CASE("different seeds diverge") {
    Rng a(1);
    Rng b(2);
    int equal = 0;
    for (int i = 0; i < 100; ++i) {
        equal += a.next_u64() == b.next_u64() ? 1 : 0;
    }
    CHECK(equal < 5);
}

TEST_CASE("below stays within bound and covers it") {
    Rng rng(7);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const auto v = rng.below(17);
        CHECK(v < 17);
        seen.insert(v);
    }
    CHECK(seen.size() == 17);
}

TEST_CASE("uniform lies in [0, 1)") {
    Rng rng(9);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("normal produces both signs with sane spread") {
    Rng rng(11);
    double sum = 0.0;
    double sum_sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sum_sq += x * x;
    }
    CHECK(std::abs(sum / n) < 0.05);
    CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("shuffle is a permutation and seed-stable") {
    std::vector<int> v(50);
    for (int i = 0; i < 50; ++i) {
        v[i] = i;
    }
    auto w = v;
    Rng a(13);
    Rng b(13);
    a.shuffle(v);
    b.shuffle(w);
    CHECK(v == w);
    std::set<int> elements(v.begin(), v.end());
    CHECK(elements.size() == 50);
}

TEST_CASE("forked streams are independent of the parent continuation") {
    Rng parent(21);
    Rng child(parent.fork_seed());
    const auto child_first = child.next_u64();
    const auto parent_next = parent.next_u64();
    CHECK(child_first != parent_next);
}
