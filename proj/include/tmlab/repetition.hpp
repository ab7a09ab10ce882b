#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tmlab/rational.hpp"
#include "tmlab/runs.hpp"
#include "tmlab/word.hpp"

namespace tmlab {

class factor_not_found : public std::runtime_error {
public:
    explicit factor_not_found(const std::string& what) : std::runtime_error(what) {}
};

// w repeated floor(r) times followed by the prefix of w of length
// (r - floor(r)) * |w|. The total length r * |w| must be an integer.
inline FiniteWord rational_power(const FiniteWord& w, const Rational& r) {
    if (r.is_infinite()) throw std::invalid_argument("rational_power: exponent must be finite");
    if (w.empty()) throw std::invalid_argument("rational_power: word must be non-empty");
    if (r.num() < 0) throw std::invalid_argument("rational_power: exponent must be non-negative");
    const std::int64_t total = checked_mul(r.num(), w.size());
    if (total % r.den() != 0)
        throw std::invalid_argument("rational_power: exponent times length is not an integer");
    const std::int64_t n = total / r.den();
    std::vector<Letter> v;
    v.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) v.push_back(w[i % w.size()]);
    return FiniteWord(std::move(v));
}

struct IndexResult {
    FiniteWord factor;
    Rational exponent;
    Position witness = 0;   // leftmost occurrence realizing the exponent
    Position horizon = 0;
    bool truncated = false; // the realizing power was cut off by the horizon
};

// Largest exponent e such that factor^e occurs with the whole power inside
// the prefix of the given length, with the leftmost witness. The exponent
// has denominator dividing |factor|. Throws factor_not_found when the
// factor does not occur at all.
inline IndexResult index_of_factor(const LazyWord& word, const FiniteWord& w, Position horizon) {
    const std::int64_t ell = w.size();
    if (ell < 1) throw std::invalid_argument("index_of_factor: factor must be non-empty");
    if (horizon < ell) throw factor_not_found("index_of_factor: factor does not fit in the horizon");
    const FiniteWord s = word.prefix(horizon);

    std::optional<Position> best_pos;
    std::int64_t best_len = 0;
    for (Position p = 0; p + ell <= horizon; ++p) {
        bool hit = true;
        for (std::int64_t d = 0; d < ell; ++d)
            if (s[p + d] != w[d]) { hit = false; break; }
        if (!hit) continue;
        std::int64_t len = ell;
        while (p + len < horizon && s[p + len] == s[p + len - ell]) ++len;
        if (!best_pos || len > best_len) {
            best_pos = p;
            best_len = len;
        }
    }
    if (!best_pos) throw factor_not_found("index_of_factor: factor does not occur in the prefix");

    IndexResult r;
    r.factor = w;
    r.exponent = Rational(best_len, ell);
    r.witness = *best_pos;
    r.horizon = horizon;
    r.truncated = (*best_pos + best_len == horizon);
    return r;
}

// Closed-form critical exponent: infinite when m | (b-1), 2b/m when the word
// is aperiodic with b > m, and 2 when b <= m.
inline Rational critical_exponent_closed_form(const TMParams& params) {
    if (params.periodic()) return Rational::infinity();
    if (params.base > params.alphabet_size)
        return Rational(2 * params.base, params.alphabet_size);
    return Rational::integer(2);
}

struct CriticalExponentReport {
    Rational closed_form;
    Rational empirical_max;   // over the scanned prefix; 1 when no repetition exists
    FiniteWord critical_factor;
    Position witness = -1;
    Position horizon = 0;
    bool truncated = false;   // the best repetition reaches the end of the prefix
};

// Maximum exponent of any fractional power (exponent > 1) fully contained in
// the prefix, with the shortest realizing factor (the primitive period word)
// and its leftmost witness. Ties prefer smaller period, then smaller start.
inline CriticalExponentReport max_exponent_in_prefix(const LazyWord& word, Position horizon,
                                                     ScanAlgorithm algo = ScanAlgorithm::Auto) {
    if (horizon < 2) throw std::invalid_argument("max_exponent_in_prefix: horizon must be >= 2");
    const FiniteWord s = word.prefix(horizon);

    CriticalExponentReport report;
    report.closed_form = critical_exponent_closed_form(word.params());
    report.horizon = horizon;

    const std::optional<Repetition> best = best_repetition(s.letters(), algo);
    if (!best) {
        report.empirical_max = Rational::integer(1);
        return report;
    }
    report.empirical_max = best->exponent();
    report.critical_factor = s.sub(best->start, best->period);
    report.witness = best->start;
    report.truncated = (best->start + best->length == horizon);
    return report;
}

struct OverlapHit {
    Position position = 0;
    FiniteWord factor;  // shortest overlap at that position: a u a u a
};

// Leftmost factor of the form a u a u a (period q, length 2q+1) in the
// prefix, or absence. Ties at the same position prefer the shortest factor.
inline std::optional<OverlapHit> find_overlap(const LazyWord& word, Position horizon) {
    if (horizon < 3) throw std::invalid_argument("find_overlap: horizon must be >= 3");
    const FiniteWord s = word.prefix(horizon);

    std::optional<Position> best_pos;
    std::int64_t best_period = 0;
    for (std::int64_t q = 1; 2 * q + 1 <= horizon; ++q) {
        // Leftmost run of q+1 consecutive matches at distance q; scanning
        // further than the current best start cannot improve the result.
        const Position cap = best_pos ? *best_pos + q + 1 : horizon;
        std::int64_t run = 0;
        for (Position x = 0; x + q < horizon && x < cap; ++x) {
            run = (s[x] == s[x + q]) ? run + 1 : 0;
            if (run >= q + 1) {
                const Position p = x - q;
                if (!best_pos || p < *best_pos) {
                    best_pos = p;
                    best_period = q;
                }
                break;
            }
        }
    }
    if (!best_pos) return std::nullopt;
    OverlapHit hit;
    hit.position = *best_pos;
    hit.factor = s.sub(*best_pos, 2 * best_period + 1);
    return hit;
}

// Sorted positions p < horizon - 2*ell with s[p..p+ell) == s[p+ell..p+2ell).
inline std::vector<Position> find_squares(const LazyWord& word, Position horizon, std::int64_t ell) {
    if (ell < 1) throw std::invalid_argument("find_squares: factor length must be >= 1");
    std::vector<Position> out;
    if (horizon <= 2 * ell) return out;
    const FiniteWord s = word.prefix(horizon);

    // run[x] counts matches s[x] == s[x+ell] extending to the right of x.
    std::vector<std::int64_t> run(static_cast<std::size_t>(horizon), 0);
    for (Position x = horizon - ell - 1; x >= 0; --x)
        run[static_cast<std::size_t>(x)] =
            (s[x] == s[x + ell]) ? run[static_cast<std::size_t>(x + 1)] + 1 : 0;
    for (Position p = 0; p < horizon - 2 * ell; ++p)
        if (run[static_cast<std::size_t>(p)] >= ell) out.push_back(p);
    return out;
}

}  // namespace tmlab
