#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <thread>

#include "tmlab/word.hpp"

using namespace tmlab;

TEST_CASE("digit_sum basics") {
    CHECK(digit_sum(0, 5) == 0);
    CHECK(digit_sum(95, 10) == 14);
    CHECK(digit_sum(125, 5) == 1);
    CHECK(digit_sum(7, 2) == 3);
    CHECK_THROWS_AS(digit_sum(3, 1), std::invalid_argument);
    CHECK_THROWS_AS(digit_sum(-1, 2), std::invalid_argument);
}

TEST_CASE("digit_sum recurrence over base multiples") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::int64_t> n_dist(0, 1000000);
    std::uniform_int_distribution<std::int64_t> b_dist(2, 50);
    for (int t = 0; t < 2000; ++t) {
        const std::int64_t b = b_dist(rng);
        const std::int64_t n = n_dist(rng);
        std::uniform_int_distribution<std::int64_t> d_dist(0, b - 1);
        const std::int64_t d = d_dist(rng);
        CHECK(digit_sum(n * b + d, b) == digit_sum(n, b) + d);
    }
}

TEST_CASE("TMParams validation") {
    CHECK_NOTHROW(TMParams(2, 1, 0));
    CHECK_THROWS_AS(TMParams(1, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(TMParams(2, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(TMParams(2, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(TMParams(2, 2, -1), std::invalid_argument);
}

TEST_CASE("cyclic permutation advances modulo m") {
    const CyclicPermutation sigma{3};
    CHECK(sigma.apply(0) == 1);
    CHECK(sigma.apply(2) == 0);
    CHECK(sigma.advance(1, 7) == 2);
    CHECK(sigma.advance(1, 0) == 1);
}

TEST_CASE("letter_at matches the classical two-letter word") {
    const TMParams params(2, 2, 0);
    const FiniteWord expected = FiniteWord::from_digits("0110100110010110");
    for (std::int64_t i = 0; i < expected.size(); ++i)
        CHECK(letter_at(params, i) == expected[i]);
}

TEST_CASE("letter_at for base 5 over three letters") {
    const TMParams params(5, 3, 1);
    const std::vector<Letter> expected{1, 2, 0, 1, 2, 2, 0, 1, 2, 0,
                                       0, 1, 2, 0, 1, 1, 2, 0, 1, 2};
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(letter_at(params, static_cast<Position>(i)) == expected[i]);
}

TEST_CASE("letter_at on a one-letter alphabet is constant") {
    const TMParams params(7, 1, 0);
    for (Position n : {0, 1, 5, 100, 12345})
        CHECK(letter_at(params, n) == 0);
}

TEST_CASE("prefix_by_morphism reproduces known prefixes") {
    CHECK(prefix_by_morphism(TMParams(2, 2, 0), 8) == FiniteWord::from_digits("01101001"));
    CHECK(prefix_by_morphism(TMParams(5, 3, 0), 5) == FiniteWord::from_digits("01201"));
    CHECK(prefix_by_morphism(TMParams(3, 2, 0), 0) == FiniteWord());
}

TEST_CASE("construction equivalence on sampled parameters") {
    const std::vector<TMParams> grid{TMParams(2, 2, 0), TMParams(5, 3, 1), TMParams(3, 4, 2),
                                     TMParams(6, 4, 0), TMParams(2, 1, 0), TMParams(7, 3, 1)};
    for (const TMParams& params : grid) {
        const std::int64_t n = 20000;
        const FiniteWord w = prefix_by_morphism(params, n);
        for (std::int64_t i = 0; i < n; ++i) {
            if (w[i] != letter_at(params, i)) {
                FAIL("mismatch at position " << i << " for b=" << params.base
                                             << " m=" << params.alphabet_size);
            }
        }
        SUCCEED();
    }
}

TEST_CASE("applying the substitution to a prefix yields the longer prefix") {
    for (const TMParams& params : {TMParams(2, 2, 0), TMParams(5, 3, 1), TMParams(3, 4, 0)}) {
        for (std::int64_t n : {1, 7, 64, 333}) {
            const FiniteWord shorter = prefix_by_morphism(params, n);
            const FiniteWord image = apply_morphism(params, shorter);
            CHECK(image == prefix_by_morphism(params, n * params.base));
        }
    }
}

TEST_CASE("blocks are substitution images and sigma-cyclic") {
    CHECK(block(TMParams(5, 3, 1), 0) == FiniteWord::from_digits("12012"));
    CHECK(block(TMParams(2, 2, 0), 1) == FiniteWord::from_digits("10"));

    std::mt19937_64 rng(2);
    std::uniform_int_distribution<std::int64_t> k_dist(0, 5000);
    for (const TMParams& params : {TMParams(2, 2, 0), TMParams(5, 3, 1), TMParams(4, 6, 3)}) {
        for (int t = 0; t < 50; ++t) {
            const std::int64_t k = k_dist(rng);
            const FiniteWord blk = block(params, k);
            CHECK(blk.size() == params.base);
            CHECK(blk[0] == letter_at(params, k));
            CHECK(is_sigma_cyclic(blk, params.sigma()));
            CHECK(blk == morphism_image(params, letter_at(params, k)));
        }
    }
}

TEST_CASE("is_sigma_cyclic on explicit words") {
    const CyclicPermutation sigma{3};
    CHECK(is_sigma_cyclic(FiniteWord::from_digits("012"), sigma));
    CHECK_FALSE(is_sigma_cyclic(FiniteWord::from_digits("010"), sigma));
    CHECK(is_sigma_cyclic(FiniteWord(), sigma));
    CHECK(is_sigma_cyclic(FiniteWord::from_digits("2"), sigma));
    CHECK(is_sigma_cyclic(FiniteWord::from_digits("20120"), sigma));
}

TEST_CASE("periodicity criterion and period words") {
    const Periodicity p32 = is_periodic(TMParams(3, 2, 0));
    REQUIRE(p32.periodic);
    CHECK(p32.period == FiniteWord::from_digits("01"));

    CHECK_FALSE(is_periodic(TMParams(2, 2, 0)).periodic);

    const Periodicity p73 = is_periodic(TMParams(7, 3, 0));
    REQUIRE(p73.periodic);
    CHECK(p73.period == FiniteWord::from_digits("012"));

    // The period really repeats.
    const LazyWord t32(TMParams(3, 2, 0));
    const FiniteWord s32 = t32.prefix(60);
    for (Position i = 0; i < 60; ++i) CHECK(s32[i] == p32.period[i % 2]);

    const LazyWord t73(TMParams(7, 3, 0));
    const FiniteWord s73 = t73.prefix(60);
    for (Position i = 0; i < 60; ++i) CHECK(s73[i] == p73.period[i % 3]);

    const Periodicity p21 = is_periodic(TMParams(2, 1, 0));
    REQUIRE(p21.periodic);
    CHECK(p21.period == FiniteWord::from_digits("0"));
}

TEST_CASE("LazyWord agrees with the direct formula and with itself") {
    const LazyWord word(TMParams(5, 3, 1));
    const FiniteWord s = word.prefix(2000);
    for (Position i = 0; i < 2000; ++i) {
        CHECK(s[i] == letter_at(word.params(), i));
        CHECK(word.letter(i) == s[i]);
    }
    // Reading beyond the cache uses the formula.
    CHECK(word.letter(1000000) == letter_at(word.params(), 1000000));
}

TEST_CASE("LazyWord is safe under concurrent access") {
    const LazyWord word(TMParams(2, 3, 0));
    std::vector<std::thread> threads;
    std::vector<int> failures(4, 0);
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&word, &failures, t] {
            for (Position i = 0; i < 3000; ++i)
                if (word.letter(i) != letter_at(word.params(), i)) ++failures[t];
            word.prefix(1500 + 100 * t);
        });
    }
    for (auto& th : threads) th.join();
    for (int f : failures) CHECK(f == 0);
}

TEST_CASE("FiniteWord utilities") {
    const FiniteWord w = FiniteWord::from_digits("0123");
    CHECK(w.size() == 4);
    CHECK(w.sub(1, 2) == FiniteWord::from_digits("12"));
    CHECK_THROWS_AS(w.sub(3, 2), std::out_of_range);
    CHECK(w.str() == "0123");
    CHECK(concat(w.sub(0, 2), w.sub(2, 2)) == w);
    const FiniteWord wide(std::vector<Letter>{3, 11, 0});
    CHECK(wide.str() == "3 11 0");
}
