#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tmlab/rational.hpp"
#include "tmlab/word.hpp"

namespace tmlab {

// A fractional power inside a finite word: the factor [start, start+length)
// has the given period, so its exponent is length/period. The period stored
// is the one the scanner matched on; the best candidate returned by the
// scanners always carries the primitive period of its repetition.
struct Repetition {
    Position start = 0;
    std::int64_t length = 0;
    std::int64_t period = 1;

    Rational exponent() const { return Rational(length, period); }

    friend bool operator==(const Repetition&, const Repetition&) = default;
};

// Strictly better under the reporting order: larger exponent, then smaller
// period, then smaller start. Exponents compare exactly via cross
// multiplication.
inline bool better(const Repetition& a, const Repetition& b) {
    const __int128 lhs = static_cast<__int128>(a.length) * b.period;
    const __int128 rhs = static_cast<__int128>(b.length) * a.period;
    if (lhs != rhs) return lhs > rhs;
    if (a.period != b.period) return a.period < b.period;
    return a.start < b.start;
}

namespace detail {

inline void consider(std::optional<Repetition>& best, const Repetition& cand) {
    if (!best || better(cand, *best)) best = cand;
}

// Z array: z[i] = length of the longest common prefix of s and s[i..).
inline std::vector<std::int32_t> z_function(const std::vector<Letter>& s) {
    const std::int64_t n = static_cast<std::int64_t>(s.size());
    std::vector<std::int32_t> z(static_cast<std::size_t>(n), 0);
    if (n == 0) return z;
    z[0] = static_cast<std::int32_t>(n);
    std::int64_t l = 0, r = 0;
    for (std::int64_t i = 1; i < n; ++i) {
        std::int64_t zi = 0;
        if (i < r) zi = std::min<std::int64_t>(r - i, z[static_cast<std::size_t>(i - l)]);
        while (i + zi < n && s[static_cast<std::size_t>(zi)] == s[static_cast<std::size_t>(i + zi)])
            ++zi;
        z[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(zi);
        if (i + zi > r) { l = i; r = i + zi; }
    }
    return z;
}

// Report every repetition of exponent >= 2 that crosses the cut between
// positions c-1 and c of [lo, hi), at its full extent within [lo, hi).
// Each such repetition with period p has a whole period copy on at least
// one side of the cut; both anchorings are enumerated.
//
// t1 = s[c..hi) ++ {-1} ++ s[lo..hi) answers, via its Z array, the longest
// match of s[c..hi) against any suffix of the interval. t2 is the same
// construction on the reversed interval and answers longest common suffixes
// of interval prefixes.
inline void collect_crossing(const std::vector<Letter>& s, Position lo, Position hi,
                             std::optional<Repetition>& best) {
    const std::int64_t n = hi - lo;
    const Position c = lo + n / 2;
    const std::int64_t nl = c - lo;
    const std::int64_t nr = hi - c;
    if (nl == 0 || nr == 0) return;

    std::vector<Letter> t1;
    t1.reserve(static_cast<std::size_t>(nr + 1 + n));
    for (Position i = c; i < hi; ++i) t1.push_back(s[static_cast<std::size_t>(i)]);
    t1.push_back(-1);
    for (Position i = lo; i < hi; ++i) t1.push_back(s[static_cast<std::size_t>(i)]);
    const std::vector<std::int32_t> z1 = z_function(t1);

    std::vector<Letter> t2;
    t2.reserve(static_cast<std::size_t>(nl + 1 + n));
    for (Position i = c - 1; i >= lo; --i) t2.push_back(s[static_cast<std::size_t>(i)]);
    t2.push_back(-1);
    for (Position i = hi - 1; i >= lo; --i) t2.push_back(s[static_cast<std::size_t>(i)]);
    const std::vector<std::int32_t> z2 = z_function(t2);

    // lcp of s[c..hi) with s[x..hi), for lo <= x <= hi
    const auto forward = [&](Position x) -> std::int64_t {
        if (x >= hi) return 0;
        return z1[static_cast<std::size_t>(nr + 1 + (x - lo))];
    };
    // longest common suffix of s[lo..c) and s[lo..x), for lo <= x <= hi
    const auto backward = [&](Position x) -> std::int64_t {
        if (x <= lo) return 0;
        return z2[static_cast<std::size_t>(nl + 1 + (hi - x))];
    };

    // Period copy s[c..c+p) on the right of the cut.
    for (std::int64_t p = 1; p <= nr; ++p) {
        const std::int64_t f = (p < nr) ? forward(c + p) : 0;
        const std::int64_t bk = backward(c + p);
        if (bk + f >= p)
            consider(best, Repetition{c - bk, bk + p + f, p});
    }

    // Period copy s[c-p..c) on the left of the cut.
    for (std::int64_t p = 1; p <= nl; ++p) {
        const std::int64_t f = forward(c - p);
        const std::int64_t bk = (p < nl) ? backward(c - p) : 0;
        if (f + bk >= p)
            consider(best, Repetition{c - p - bk, bk + p + f, p});
    }
}

inline void scan_interval(const std::vector<Letter>& s, Position lo, Position hi,
                          std::optional<Repetition>& best) {
    if (hi - lo < 2) return;
    const Position c = lo + (hi - lo) / 2;
    scan_interval(s, lo, c, best);
    scan_interval(s, c, hi, best);
    collect_crossing(s, lo, hi, best);
}

}  // namespace detail

// Best repetition of exponent >= 2, by divide and conquer over common
// extensions; O(n log n). Every maximal repetition is examined at full
// extent in the smallest interval of the recursion that contains it, so
// the maximum (and its tie-breaks) agree with the exhaustive scan whenever
// a square exists at all.
inline std::optional<Repetition> best_repetition_fast(const std::vector<Letter>& s) {
    std::optional<Repetition> best;
    detail::scan_interval(s, 0, static_cast<Position>(s.size()), best);
    return best;
}

// Exhaustive reference scan: for every period, sweep the match runs and
// report each maximal one with exponent > 1. O(n^2).
inline std::optional<Repetition> best_repetition_naive(const std::vector<Letter>& s) {
    const std::int64_t n = static_cast<std::int64_t>(s.size());
    std::optional<Repetition> best;
    for (std::int64_t p = 1; p < n; ++p) {
        std::int64_t run = 0;
        for (std::int64_t x = 0; x + p < n; ++x) {
            if (s[static_cast<std::size_t>(x)] == s[static_cast<std::size_t>(x + p)]) {
                ++run;
            } else if (run > 0) {
                detail::consider(best, Repetition{x - run, run + p, p});
                run = 0;
            }
        }
        if (run > 0) detail::consider(best, Repetition{n - p - run, run + p, p});
    }
    return best;
}

enum class ScanAlgorithm { Auto, Naive, Fast };

// Best repetition with exponent > 1 under the requested algorithm. Auto
// uses the fast path and falls back to the exhaustive scan when no square
// exists (the fast path only detects exponent >= 2).
inline std::optional<Repetition> best_repetition(const std::vector<Letter>& s,
                                                 ScanAlgorithm algo = ScanAlgorithm::Auto) {
    switch (algo) {
        case ScanAlgorithm::Naive:
            return best_repetition_naive(s);
        case ScanAlgorithm::Fast:
            return best_repetition_fast(s);
        case ScanAlgorithm::Auto:
        default: {
            std::optional<Repetition> fast = best_repetition_fast(s);
            if (fast) return fast;
            return best_repetition_naive(s);
        }
    }
}

}  // namespace tmlab
