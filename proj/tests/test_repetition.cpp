#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tmlab/repetition.hpp"

using namespace tmlab;

namespace {

FiniteWord from_text(const std::string& text) {
    std::vector<Letter> v;
    for (char c : text) v.push_back(c - 'a');
    return FiniteWord(std::move(v));
}

}  // namespace

TEST_CASE("rational powers expand exactly") {
    CHECK(rational_power(from_text("abbacc"), Rational(5, 2)) ==
          from_text("abbaccabbaccabb"));
    CHECK(rational_power(from_text("aba"), Rational::integer(2)) == from_text("abaaba"));
    CHECK(rational_power(FiniteWord::from_digits("012"), Rational(10, 3)) ==
          FiniteWord::from_digits("0120120120"));
    CHECK_THROWS_AS(rational_power(from_text("ab"), Rational(5, 3)), std::invalid_argument);
    CHECK_THROWS_AS(rational_power(FiniteWord(), Rational::integer(2)), std::invalid_argument);
    CHECK_THROWS_AS(rational_power(from_text("ab"), Rational::infinity()), std::invalid_argument);
}

TEST_CASE("rational power round trip: the expansion supports its exponent") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> len_dist(1, 8);
    std::uniform_int_distribution<int> letter_dist(0, 2);
    for (int t = 0; t < 500; ++t) {
        const int len = len_dist(rng);
        std::vector<Letter> v;
        for (int i = 0; i < len; ++i) v.push_back(letter_dist(rng));
        const FiniteWord w(std::move(v));
        std::uniform_int_distribution<int> total_dist(len, 6 * len);
        const std::int64_t total = total_dist(rng);
        const Rational r(total, len);
        const FiniteWord power = rational_power(w, r);
        REQUIRE(power.size() == total);
        // The period-|w| match run from position 0 covers the whole power.
        for (std::int64_t x = 0; x + len < total; ++x) CHECK(power[x] == power[x + len]);
    }
}

TEST_CASE("closed-form critical exponent") {
    CHECK(critical_exponent_closed_form(TMParams(5, 3, 0)) == Rational(10, 3));
    CHECK(critical_exponent_closed_form(TMParams(3, 2, 0)).is_infinite());
    CHECK(critical_exponent_closed_form(TMParams(2, 5, 0)) == Rational::integer(2));
    CHECK(critical_exponent_closed_form(TMParams(4, 2, 0)) == Rational::integer(4));
    CHECK(critical_exponent_closed_form(TMParams(6, 4, 0)) == Rational(3, 1));
    CHECK(critical_exponent_closed_form(TMParams(2, 1, 0)).is_infinite());
    CHECK(critical_exponent_closed_form(TMParams(7, 4, 0)) == Rational(7, 2));
}

TEST_CASE("index of single letters in the two-letter word") {
    const LazyWord word(TMParams(2, 2, 0));
    const IndexResult a = index_of_factor(word, FiniteWord::from_digits("0"), 10000);
    CHECK(a.exponent == Rational::integer(2));
    CHECK(a.witness == 5);
    CHECK_FALSE(a.truncated);
    const IndexResult b = index_of_factor(word, FiniteWord::from_digits("1"), 10000);
    CHECK(b.exponent == Rational::integer(2));
    CHECK(b.witness == 1);
    CHECK_FALSE(b.truncated);
}

TEST_CASE("index of the critical factor in the base-5 word") {
    const LazyWord word(TMParams(5, 3, 1));
    const IndexResult r = index_of_factor(word, FiniteWord::from_digits("012"), 1000);
    CHECK(r.exponent == Rational(10, 3));
    CHECK(r.witness == 120);
    CHECK_FALSE(r.truncated);
}

TEST_CASE("index on a periodic word is horizon-capped and flagged") {
    const LazyWord word(TMParams(3, 2, 0));
    const IndexResult r = index_of_factor(word, FiniteWord::from_digits("01"), 100);
    CHECK(r.exponent == Rational::integer(50));
    CHECK(r.witness == 0);
    CHECK(r.truncated);
}

TEST_CASE("index throws when the factor is absent") {
    const LazyWord word(TMParams(2, 2, 0));
    CHECK_THROWS_AS(index_of_factor(word, FiniteWord::from_digits("000"), 10000),
                    factor_not_found);
    CHECK_THROWS_AS(index_of_factor(word, FiniteWord(), 100), std::invalid_argument);
}

TEST_CASE("maximal exponent reports match the closed forms") {
    {
        const LazyWord word(TMParams(5, 3, 1));
        const CriticalExponentReport r = max_exponent_in_prefix(word, 200);
        CHECK(r.empirical_max == Rational(10, 3));
        CHECK(r.critical_factor.size() == 3);
        CHECK(r.witness == 120);
        CHECK(r.empirical_max == r.closed_form);
        CHECK_FALSE(r.truncated);
    }
    {
        const LazyWord word(TMParams(2, 2, 0));
        const CriticalExponentReport r = max_exponent_in_prefix(word, 1000);
        CHECK(r.empirical_max == Rational::integer(2));
        CHECK(r.critical_factor == FiniteWord::from_digits("1"));
        CHECK(r.witness == 1);
    }
    {
        const LazyWord word(TMParams(4, 2, 0));
        const CriticalExponentReport r = max_exponent_in_prefix(word, 10000);
        CHECK(r.empirical_max == Rational::integer(4));
        CHECK(r.critical_factor.size() == 2);
        CHECK(r.witness == 12);
    }
    {
        const LazyWord word(TMParams(6, 4, 0));
        const CriticalExponentReport r = max_exponent_in_prefix(word, 20000);
        CHECK(r.empirical_max == Rational::integer(3));
        CHECK(r.critical_factor.size() == 4);
        CHECK(r.witness == 1290);
    }
}

TEST_CASE("empirical maximum is monotone in the horizon and bounded by the closed form") {
    const LazyWord word(TMParams(5, 3, 1));
    const Rational closed = critical_exponent_closed_form(word.params());
    Rational last = Rational::integer(0);
    for (Position horizon : {50, 100, 150, 200, 400, 800}) {
        const CriticalExponentReport r = max_exponent_in_prefix(word, horizon);
        CHECK(r.empirical_max >= last);
        CHECK(r.empirical_max <= closed);
        last = r.empirical_max;
    }
}

TEST_CASE("factor indices never exceed the critical exponent") {
    std::mt19937_64 rng(11);
    for (const TMParams& params : {TMParams(5, 3, 0), TMParams(2, 2, 0), TMParams(3, 4, 0)}) {
        const LazyWord word(params);
        const Rational closed = critical_exponent_closed_form(params);
        const FiniteWord s = word.prefix(3000);
        std::uniform_int_distribution<Position> pos_dist(0, 2500);
        std::uniform_int_distribution<std::int64_t> len_dist(1, 12);
        for (int t = 0; t < 60; ++t) {
            const Position pos = pos_dist(rng);
            const std::int64_t len = len_dist(rng);
            const IndexResult r = index_of_factor(word, s.sub(pos, len), 3000);
            CHECK(r.exponent <= closed);
        }
    }
}

TEST_CASE("long factors of length coprime to the base have index at most 2") {
    std::mt19937_64 rng(13);
    for (const TMParams& params : {TMParams(5, 3, 0), TMParams(4, 2, 0)}) {
        const LazyWord word(params);
        const FiniteWord s = word.prefix(4000);
        std::uniform_int_distribution<Position> pos_dist(0, 3000);
        for (int t = 0; t < 40; ++t) {
            std::int64_t len = params.base + 1 + (t % (3 * params.base));
            if (len % params.base == 0) ++len;
            const IndexResult r = index_of_factor(word, s.sub(pos_dist(rng), len), 4000);
            CHECK(r.exponent <= Rational::integer(2));
        }
    }
}

TEST_CASE("overlap detection on known words") {
    {
        const LazyWord word(TMParams(5, 3, 1));
        const auto hit = find_overlap(word, 200);
        REQUIRE(hit.has_value());
        CHECK(hit->position == 120);
        CHECK(hit->factor.size() == 7);  // period 3 overlap
    }
    {
        const LazyWord word(TMParams(2, 2, 0));
        CHECK_FALSE(find_overlap(word, 10000).has_value());
    }
    {
        const LazyWord word(TMParams(3, 5, 0));
        CHECK_FALSE(find_overlap(word, 10000).has_value());
    }
    {
        const LazyWord word(TMParams(3, 2, 0));
        const auto hit = find_overlap(word, 100);
        REQUIRE(hit.has_value());
        CHECK(hit->position == 0);
        CHECK(hit->factor.size() == 5);
    }
    {
        const LazyWord word(TMParams(4, 2, 0));
        const auto hit = find_overlap(word, 100);
        REQUIRE(hit.has_value());
        CHECK(hit->position == 12);
        CHECK(hit->factor.size() == 5);
    }
}

TEST_CASE("overlap factors really overlap") {
    const LazyWord word(TMParams(5, 3, 1));
    const auto hit = find_overlap(word, 200);
    REQUIRE(hit.has_value());
    const FiniteWord& f = hit->factor;
    const std::int64_t q = (f.size() - 1) / 2;
    for (std::int64_t x = 0; x + q < f.size(); ++x) CHECK(f[x] == f[x + q]);
}

TEST_CASE("square scan on the two-letter word") {
    const LazyWord word(TMParams(2, 2, 0));
    CHECK(find_squares(word, 10, 1) == std::vector<Position>{1, 5, 7});
    CHECK(find_squares(word, 30, 3) == std::vector<Position>{11, 15});
}

TEST_CASE("square scan is empty for inadmissible lengths") {
    const LazyWord word(TMParams(3, 4, 0));
    CHECK(find_squares(word, 2000, 1).empty());  // gcd(2,4) does not divide 1
    CHECK_FALSE(find_squares(word, 2000, 2).empty());
}
