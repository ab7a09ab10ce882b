#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tmlab/rational.hpp"
#include "tmlab/word.hpp"

namespace tmlab {

// Ascending positive solutions s of s*x ≡ g (mod y), as an arithmetic
// progression; empty exactly when gcd(x,y) does not divide g.
struct BezoutProgression {
    bool empty = true;
    std::int64_t first = 0;
    std::int64_t step = 0;
};

namespace detail {

inline std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
    if (b == 0) { x = 1; y = 0; return a; }
    std::int64_t x1, y1;
    const std::int64_t g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t mod) {
    if (mod == 1) return 0;
    std::int64_t x, y;
    const std::int64_t g = ext_gcd(((a % mod) + mod) % mod, mod, x, y);
    if (g != 1) throw std::logic_error("mod_inverse: arguments are not coprime");
    return ((x % mod) + mod) % mod;
}

}  // namespace detail

inline BezoutProgression bezout_progression(std::int64_t g, std::int64_t x, std::int64_t y) {
    if (g < 1 || x < 1 || y < 1)
        throw std::invalid_argument("bezout_progression: arguments must be positive");
    const std::int64_t d = std::gcd(x, y);
    if (g % d != 0) return BezoutProgression{};
    const std::int64_t yr = y / d;
    const std::int64_t xr = (x / d) % yr;  // coprime to yr, nonzero whenever yr > 1
    const std::int64_t gr = (g / d) % yr;
    const std::int64_t r =
        (yr == 1) ? 0
                  : static_cast<std::int64_t>(static_cast<__int128>(gr) *
                                              detail::mod_inverse(xr, yr) % yr);
    BezoutProgression p;
    p.empty = false;
    p.first = (r == 0) ? yr : r;
    p.step = yr;
    return p;
}

// All members up to and including cap.
inline std::vector<std::int64_t> bezout_set_up_to(std::int64_t g, std::int64_t x, std::int64_t y,
                                                  std::int64_t cap) {
    const BezoutProgression p = bezout_progression(g, x, y);
    std::vector<std::int64_t> out;
    if (p.empty) return out;
    for (std::int64_t s = p.first; s <= cap; s += p.step) out.push_back(s);
    return out;
}

// The first `count` members.
inline std::vector<std::int64_t> bezout_set_first(std::int64_t g, std::int64_t x, std::int64_t y,
                                                  std::int64_t count) {
    const BezoutProgression p = bezout_progression(g, x, y);
    std::vector<std::int64_t> out;
    if (p.empty) return out;
    std::int64_t s = p.first;
    for (std::int64_t i = 0; i < count; ++i, s = checked_add(s, p.step)) out.push_back(s);
    return out;
}

enum class SetKind { Overlap, Square, SquareSpecial, Union };

// Sorted, duplicate-free positions below `bound`, defined by one of the
// closed-form rules. base_length is the length of the unscaled critical
// factor (0 for aggregated unions); scale = base^scale_exp multiplies every
// unscaled position.
struct OccurrenceSet {
    SetKind kind = SetKind::Overlap;
    std::int64_t base = 2;
    std::int64_t alphabet_size = 1;
    std::int64_t base_length = 0;
    std::int64_t scale_exp = 0;
    std::int64_t scale = 1;
    Position bound = 0;
    std::vector<Position> positions;
};

namespace detail {

// Values k * base^q - offset below bound, over q in the progression and
// k >= 1 with base not dividing k. Each q-stream stops at its minimal
// element (k = 1); streams are merged by sorting. Arithmetic overflow of a
// candidate proves it exceeds the bound, so the stream just ends there.
inline std::vector<Position> positions_from_progression(std::int64_t base, std::int64_t offset,
                                                        const BezoutProgression& prog,
                                                        Position bound) {
    std::vector<Position> out;
    if (prog.empty || bound <= 0) return out;

    std::int64_t power = 1;
    bool overflow = false;
    for (std::int64_t e = 0; e < prog.first; ++e)
        if (__builtin_mul_overflow(power, base, &power)) { overflow = true; break; }

    for (std::int64_t q = prog.first; !overflow; q += prog.step) {
        if (power - offset >= bound) break;
        for (std::int64_t k = 1;; ++k) {
            if (k % base == 0) continue;
            std::int64_t value;
            if (__builtin_mul_overflow(k, power, &value)) break;
            value -= offset;
            if (value >= bound) break;
            out.push_back(value);
        }
        for (std::int64_t e = 0; e < prog.step; ++e)
            if (__builtin_mul_overflow(power, base, &power)) { overflow = true; break; }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

// Positions k*b^q - b of the maximal 2b/m-powers, overlap case (b > m).
inline OccurrenceSet overlap_occurrences(const TMParams& params, Position bound) {
    if (params.periodic())
        throw std::invalid_argument(
            "overlap_occurrences: the word is periodic; occurrence enumeration needs aperiodic parameters");
    if (params.base <= params.alphabet_size)
        throw std::invalid_argument(
            "overlap_occurrences: parameters are in the square case (b <= m); use square_occurrences");
    OccurrenceSet set;
    set.kind = SetKind::Overlap;
    set.base = params.base;
    set.alphabet_size = params.alphabet_size;
    set.base_length = params.alphabet_size;
    set.bound = bound;
    const BezoutProgression prog =
        bezout_progression(params.alphabet_size, params.base - 1, params.alphabet_size);
    set.positions = detail::positions_from_progression(params.base, params.base, prog, bound);
    return set;
}

// Positions k*b^q - N of the squares of length-N factors, square case
// (b <= m). Empty exactly when gcd(b-1, m) does not divide N.
inline OccurrenceSet square_occurrences(const TMParams& params, std::int64_t N, Position bound) {
    if (params.base > params.alphabet_size)
        throw std::invalid_argument(
            "square_occurrences: parameters are in the overlap case (b > m); use overlap_occurrences");
    if (N < 1) throw std::invalid_argument("square_occurrences: factor length must be >= 1");
    if (N >= params.base)
        throw std::invalid_argument(
            "square_occurrences: critical square factors are shorter than the base; the only longer "
            "case is b = m = 2 with length 3, covered by special_square_occurrences");
    OccurrenceSet set;
    set.kind = SetKind::Square;
    set.base = params.base;
    set.alphabet_size = params.alphabet_size;
    set.base_length = N;
    set.bound = bound;
    const BezoutProgression prog = bezout_progression(N, params.base - 1, params.alphabet_size);
    set.positions = detail::positions_from_progression(params.base, N, prog, bound);
    return set;
}

// Positions of the length-6 squares special to b = m = 2: the union of
// 8s+3 and 8s+7 over the positions s of the single-letter squares.
inline OccurrenceSet special_square_occurrences(Position bound) {
    const TMParams params(2, 2, 0);
    OccurrenceSet set;
    set.kind = SetKind::SquareSpecial;
    set.base = 2;
    set.alphabet_size = 2;
    set.base_length = 3;
    set.bound = bound;
    if (bound > 3) {
        const OccurrenceSet ones = square_occurrences(params, 1, bound / 8 + 1);
        for (Position s : ones.positions) {
            const Position a = checked_add(checked_mul(8, s), 3);
            if (a < bound) set.positions.push_back(a);
            const Position b = checked_add(checked_mul(8, s), 7);
            if (b < bound) set.positions.push_back(b);
        }
        std::sort(set.positions.begin(), set.positions.end());
        set.positions.erase(std::unique(set.positions.begin(), set.positions.end()),
                            set.positions.end());
    }
    return set;
}

namespace detail {

inline void validate_critical_query(const TMParams& params, std::int64_t N, std::int64_t i) {
    if (params.periodic())
        throw std::invalid_argument(
            "critical_occurrences: the word is periodic (m divides b-1); its critical exponent is "
            "infinite and occurrence enumeration is undefined");
    if (N < 1) throw std::invalid_argument("critical_occurrences: factor length must be >= 1");
    if (N % params.base == 0)
        throw std::invalid_argument(
            "critical_occurrences: base factor length divisible by b is not admissible; scaled "
            "lengths are expressed through the scale exponent");
    if (i < 0) throw std::invalid_argument("critical_occurrences: scale exponent must be >= 0");
}

inline OccurrenceSet scale_set(OccurrenceSet inner, std::int64_t base, std::int64_t i,
                               Position bound) {
    const std::int64_t scale = checked_pow(base, i);
    std::vector<Position> scaled;
    scaled.reserve(inner.positions.size());
    for (Position p : inner.positions) {
        const Position v = checked_mul(p, scale);
        if (v < bound) scaled.push_back(v);
    }
    inner.scale_exp = i;
    inner.scale = scale;
    inner.bound = bound;
    inner.positions = std::move(scaled);
    return inner;
}

inline Position unscaled_bound(Position bound, std::int64_t scale) {
    if (bound <= 0) return 0;
    return (bound - 1) / scale + 1;
}

}  // namespace detail

// Positions of the critical powers whose factor has length N * b^i: the
// overlap-case set scaled by b^i when b > m (N must equal m), the
// square-case set scaled by b^i when b <= m, and for b = m = 2 the
// components at base lengths 1 and 3.
inline OccurrenceSet critical_occurrences(const TMParams& params, std::int64_t N, std::int64_t i,
                                          Position bound) {
    detail::validate_critical_query(params, N, i);
    const std::int64_t scale = checked_pow(params.base, i);
    const Position inner_bound = detail::unscaled_bound(bound, scale);

    OccurrenceSet inner;
    if (params.base > params.alphabet_size) {
        if (N != params.alphabet_size)
            throw std::invalid_argument(
                "critical_occurrences: in the overlap case the only admissible base factor length "
                "is the alphabet size m");
        inner = overlap_occurrences(params, inner_bound);
    } else if (params.base == 2 && params.alphabet_size == 2) {
        if (N == 1)
            inner = square_occurrences(params, 1, inner_bound);
        else if (N == 3)
            inner = special_square_occurrences(inner_bound);
        else
            throw std::invalid_argument(
                "critical_occurrences: for b = m = 2 the admissible base factor lengths are 1 and 3");
    } else {
        inner = square_occurrences(params, N, inner_bound);
    }
    return detail::scale_set(std::move(inner), params.base, i, bound);
}

// Aggregate over every admissible base factor length: all positions at
// which some critical power with scale b^i occurs.
inline OccurrenceSet critical_occurrences_all(const TMParams& params, std::int64_t i,
                                              Position bound) {
    if (params.periodic())
        throw std::invalid_argument(
            "critical_occurrences_all: the word is periodic; occurrence enumeration is undefined");
    if (i < 0) throw std::invalid_argument("critical_occurrences_all: scale exponent must be >= 0");

    OccurrenceSet set;
    set.kind = SetKind::Union;
    set.base = params.base;
    set.alphabet_size = params.alphabet_size;
    set.base_length = 0;
    set.bound = bound;
    set.scale_exp = i;
    set.scale = checked_pow(params.base, i);

    std::vector<Position> all;
    if (params.base > params.alphabet_size) {
        all = critical_occurrences(params, params.alphabet_size, i, bound).positions;
    } else {
        for (std::int64_t N = 1; N < params.base; ++N) {
            const auto part = critical_occurrences(params, N, i, bound).positions;
            all.insert(all.end(), part.begin(), part.end());
        }
        if (params.base == 2 && params.alphabet_size == 2) {
            const auto part = critical_occurrences(params, 3, i, bound).positions;
            all.insert(all.end(), part.begin(), part.end());
        }
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    set.positions = std::move(all);
    return set;
}

// Brute-force oracle: positions p < bound where the maximal period-`period`
// repetition starting at p has exponent exactly e (so the factor there is
// precisely the e-power, not part of a longer one). The scan window extends
// past the bound far enough that no qualifying run is ever clipped.
inline std::vector<Position> power_occurrences(const LazyWord& word, std::int64_t period,
                                               const Rational& e, Position bound) {
    if (period < 1) throw std::invalid_argument("power_occurrences: period must be >= 1");
    if (e.is_infinite()) throw std::invalid_argument("power_occurrences: exponent must be finite");
    const std::int64_t total = checked_mul(e.num(), period);
    if (total % e.den() != 0)
        throw std::invalid_argument("power_occurrences: exponent times period is not an integer");
    const std::int64_t len = total / e.den();
    if (len <= period)
        throw std::invalid_argument("power_occurrences: exponent must exceed 1");

    std::vector<Position> out;
    if (bound <= 0) return out;
    const Position scan = checked_add(checked_add(bound, len), period);
    const FiniteWord s = word.prefix(scan);

    std::vector<char> match(static_cast<std::size_t>(scan), 0);
    for (Position x = 0; x + period < scan; ++x)
        match[static_cast<std::size_t>(x)] = (s[x] == s[x + period]) ? 1 : 0;
    std::vector<std::int64_t> count(static_cast<std::size_t>(scan) + 1, 0);
    for (Position x = scan - 1; x >= 0; --x)
        count[static_cast<std::size_t>(x)] =
            match[static_cast<std::size_t>(x)] ? count[static_cast<std::size_t>(x + 1)] + 1 : 0;

    for (Position p = 0; p < bound; ++p) {
        const bool starts_run = (p == 0) || !match[static_cast<std::size_t>(p - 1)];
        if (starts_run && period + count[static_cast<std::size_t>(p)] == len) out.push_back(p);
    }
    return out;
}

// The two digit sums of k*b^q and k*b^q - N differ by exactly q(b-1) - N
// whenever b does not divide k and 1 <= N < b. Exposed as a checkable
// predicate; it must hold on every valid input.
inline bool digit_sum_identity_check(std::int64_t b, std::int64_t k, std::int64_t q,
                                     std::int64_t N) {
    if (b < 2) throw std::invalid_argument("digit_sum_identity_check: base must be >= 2");
    if (k < 1 || k % b == 0)
        throw std::invalid_argument("digit_sum_identity_check: k must be positive and not divisible by b");
    if (q < 1) throw std::invalid_argument("digit_sum_identity_check: q must be >= 1");
    if (N < 1 || N >= b)
        throw std::invalid_argument("digit_sum_identity_check: N must satisfy 1 <= N < b");
    const std::int64_t kbq = checked_mul(k, checked_pow(b, q));
    const std::int64_t lhs = digit_sum(kbq - N, b) - digit_sum(kbq, b);
    const std::int64_t rhs = checked_sub(checked_mul(q, b - 1), N);
    return lhs == rhs;
}

// Square case: does some critical square of factor length ell exist?
// For ell < b this is the divisibility gcd(b-1, m) | ell; the only longer
// admissible length is 3, for b = m = 2.
inline bool critical_length_exists(const TMParams& params, std::int64_t ell) {
    if (params.base > params.alphabet_size)
        throw std::invalid_argument(
            "critical_length_exists: parameters are in the overlap case (b > m)");
    if (ell < 1) throw std::invalid_argument("critical_length_exists: length must be >= 1");
    if (ell % params.base == 0)
        throw std::invalid_argument(
            "critical_length_exists: length divisible by the base is not admissible");
    if (ell < params.base) return ell % std::gcd(params.base - 1, params.alphabet_size) == 0;
    return params.base == 2 && params.alphabet_size == 2 && ell == 3;
}

// Block-aligned at both ends.
inline bool is_synchronized(const TMParams& params, Position i, std::int64_t ell) {
    if (i < 0 || ell < 0)
        throw std::invalid_argument("is_synchronized: position and length must be non-negative");
    return i % params.base == 0 && (i + ell) % params.base == 0;
}

}  // namespace tmlab
