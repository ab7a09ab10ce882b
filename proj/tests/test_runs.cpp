#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tmlab/runs.hpp"
#include "tmlab/word.hpp"

using namespace tmlab;

namespace {

std::vector<Letter> from_text(const std::string& text) {
    std::vector<Letter> v;
    for (char c : text) v.push_back(c - 'a');
    return v;
}

}  // namespace

TEST_CASE("best repetition on small words, both scanners") {
    struct Case {
        std::string text;
        Position start;
        std::int64_t length;
        std::int64_t period;
    };
    const std::vector<Case> cases{
        {"aabaabaa", 0, 8, 3},  // exponent 8/3
        {"abaaba", 2, 2, 1},    // ties broken toward the smaller period
        {"aaaa", 0, 4, 1},
        {"ababab", 0, 6, 2},
        {"abaab", 2, 2, 1},
    };
    for (const Case& c : cases) {
        const std::vector<Letter> s = from_text(c.text);
        const Repetition expected{c.start, c.length, c.period};
        const auto naive = best_repetition_naive(s);
        REQUIRE(naive.has_value());
        CHECK(*naive == expected);
        const auto fast = best_repetition(s, ScanAlgorithm::Auto);
        REQUIRE(fast.has_value());
        CHECK(*fast == expected);
    }
}

TEST_CASE("no repetition in short or square-free words") {
    CHECK_FALSE(best_repetition(from_text("a")).has_value());
    CHECK_FALSE(best_repetition(from_text("ab")).has_value());
    CHECK_FALSE(best_repetition(from_text("abc")).has_value());
    // abac has no square but aba is a 3/2 power of period 2.
    const auto r = best_repetition(from_text("abac"));
    REQUIRE(r.has_value());
    CHECK(r->exponent() == Rational(3, 2));
    CHECK(r->period == 2);
    CHECK(r->start == 0);
}

TEST_CASE("fast scanner agrees with the exhaustive one on random words") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 3000; ++t) {
        std::uniform_int_distribution<int> len_dist(1, 60);
        std::uniform_int_distribution<int> sigma_dist(1, 4);
        const int len = len_dist(rng);
        const int alpha = sigma_dist(rng);
        std::uniform_int_distribution<int> letter_dist(0, alpha - 1);
        std::vector<Letter> s;
        s.reserve(len);
        for (int i = 0; i < len; ++i) s.push_back(letter_dist(rng));

        const auto naive = best_repetition_naive(s);
        const auto combined = best_repetition(s, ScanAlgorithm::Auto);
        if (naive.has_value() != combined.has_value()) {
            FAIL("presence mismatch on a word of length " << len);
        }
        if (naive) CHECK(*naive == *combined);
    }
}

TEST_CASE("fast scanner agrees with the exhaustive one on word prefixes") {
    const std::vector<std::pair<TMParams, Position>> cases{
        {TMParams(2, 2, 0), 3000}, {TMParams(5, 3, 1), 2000}, {TMParams(3, 4, 0), 2000},
        {TMParams(6, 4, 0), 3000}, {TMParams(4, 2, 0), 1500}, {TMParams(3, 2, 0), 1000},
        {TMParams(2, 3, 0), 2500},
    };
    for (const auto& [params, horizon] : cases) {
        const LazyWord word(params);
        const FiniteWord p = word.prefix(horizon);
        const std::vector<Letter>& s = p.letters();
        const auto naive = best_repetition_naive(s);
        const auto fast = best_repetition(s, ScanAlgorithm::Fast);
        REQUIRE(naive.has_value());
        REQUIRE(fast.has_value());
        CHECK(*naive == *fast);
    }
}

TEST_CASE("repetition ordering prefers exponent, then period, then start") {
    CHECK(better(Repetition{5, 9, 3}, Repetition{0, 4, 2}));   // 3 > 2
    CHECK(better(Repetition{5, 4, 2}, Repetition{0, 8, 4}));   // equal exponent, smaller period
    CHECK(better(Repetition{1, 4, 2}, Repetition{5, 4, 2}));   // equal otherwise, smaller start
    CHECK_FALSE(better(Repetition{0, 4, 2}, Repetition{0, 4, 2}));
}
