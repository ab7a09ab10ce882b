#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmlab/checked.hpp"

namespace tmlab {

using Letter = std::int32_t;
using Position = std::int64_t;

// Sum of the base-b digits of n.
inline std::int64_t digit_sum(std::int64_t n, std::int64_t b) {
    if (b < 2) throw std::invalid_argument("digit_sum: base must be >= 2");
    if (n < 0) throw std::invalid_argument("digit_sum: argument must be non-negative");
    std::int64_t s = 0;
    while (n > 0) {
        s += n % b;
        n /= b;
    }
    return s;
}

// The canonical m-cycle i -> (i+1) mod m. Arbitrary cyclic permutations and
// display alphabets reduce to this one by renaming letters at I/O boundaries.
struct CyclicPermutation {
    std::int64_t modulus;

    Letter apply(Letter a) const {
        return static_cast<Letter>((static_cast<std::int64_t>(a) + 1) % modulus);
    }

    Letter advance(Letter a, std::int64_t steps) const {
        std::int64_t r = (static_cast<std::int64_t>(a) + steps % modulus) % modulus;
        if (r < 0) r += modulus;
        return static_cast<Letter>(r);
    }

    friend bool operator==(const CyclicPermutation&, const CyclicPermutation&) = default;
};

// Parameters of one generalized Thue-Morse word: block length b, alphabet
// size m, and the initial letter.
struct TMParams {
    std::int64_t base;
    std::int64_t alphabet_size;
    Letter start;

    TMParams(std::int64_t b, std::int64_t m, Letter start_letter = 0)
        : base(b), alphabet_size(m), start(start_letter) {
        if (b < 2) throw std::invalid_argument("TMParams: base must be >= 2");
        if (m < 1) throw std::invalid_argument("TMParams: alphabet size must be >= 1");
        if (b > 1000000000 || m > 1000000000)
            throw std::invalid_argument("TMParams: base and alphabet size must be <= 10^9");
        if (start_letter < 0 || start_letter >= m)
            throw std::invalid_argument("TMParams: start letter out of range");
    }

    CyclicPermutation sigma() const { return CyclicPermutation{alphabet_size}; }

    // The word is (purely) periodic exactly when m divides b-1.
    bool periodic() const { return (base - 1) % alphabet_size == 0; }

    friend bool operator==(const TMParams&, const TMParams&) = default;
};

// Letter at position n, by the digit-sum formula.
inline Letter letter_at(const TMParams& params, Position n) {
    if (n < 0) throw std::invalid_argument("letter_at: position must be non-negative");
    return params.sigma().advance(params.start, digit_sum(n, params.base));
}

class FiniteWord {
public:
    FiniteWord() = default;
    explicit FiniteWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    // Convenience for tests: one decimal digit per letter.
    static FiniteWord from_digits(const std::string& digits) {
        std::vector<Letter> v;
        v.reserve(digits.size());
        for (char c : digits) {
            if (c < '0' || c > '9')
                throw std::invalid_argument("FiniteWord::from_digits: not a digit");
            v.push_back(c - '0');
        }
        return FiniteWord(std::move(v));
    }

    std::int64_t size() const { return static_cast<std::int64_t>(letters_.size()); }
    bool empty() const { return letters_.empty(); }

    Letter operator[](std::int64_t i) const { return letters_[static_cast<std::size_t>(i)]; }

    const std::vector<Letter>& letters() const { return letters_; }

    void push_back(Letter a) { letters_.push_back(a); }

    FiniteWord sub(std::int64_t pos, std::int64_t len) const {
        if (pos < 0 || len < 0 || pos + len > size())
            throw std::out_of_range("FiniteWord::sub: range out of bounds");
        return FiniteWord(std::vector<Letter>(letters_.begin() + pos, letters_.begin() + pos + len));
    }

    // Digits when every letter is below 10, space-separated values otherwise.
    std::string str() const {
        bool small = true;
        for (Letter a : letters_)
            if (a > 9) { small = false; break; }
        std::ostringstream os;
        for (std::size_t i = 0; i < letters_.size(); ++i) {
            if (!small && i > 0) os << ' ';
            os << letters_[i];
        }
        return os.str();
    }

    friend bool operator==(const FiniteWord&, const FiniteWord&) = default;

private:
    std::vector<Letter> letters_;
};

inline FiniteWord concat(const FiniteWord& a, const FiniteWord& b) {
    std::vector<Letter> v = a.letters();
    v.insert(v.end(), b.letters().begin(), b.letters().end());
    return FiniteWord(std::move(v));
}

// True when each letter is sigma of the previous one. Empty and one-letter
// words qualify.
inline bool is_sigma_cyclic(const FiniteWord& w, const CyclicPermutation& sigma) {
    for (std::int64_t i = 1; i < w.size(); ++i)
        if (w[i] != sigma.apply(w[i - 1])) return false;
    return true;
}

// Image of one letter under the block substitution: the b letters
// sigma^0(a), sigma^1(a), ..., sigma^{b-1}(a).
inline FiniteWord morphism_image(const TMParams& params, Letter a) {
    std::vector<Letter> v;
    v.reserve(static_cast<std::size_t>(params.base));
    const CyclicPermutation sigma = params.sigma();
    Letter cur = a;
    for (std::int64_t i = 0; i < params.base; ++i) {
        v.push_back(cur);
        cur = sigma.apply(cur);
    }
    return FiniteWord(std::move(v));
}

inline FiniteWord apply_morphism(const TMParams& params, const FiniteWord& w) {
    std::vector<Letter> v;
    v.reserve(static_cast<std::size_t>(checked_mul(w.size(), params.base)));
    const CyclicPermutation sigma = params.sigma();
    for (std::int64_t i = 0; i < w.size(); ++i) {
        Letter cur = w[i];
        for (std::int64_t j = 0; j < params.base; ++j) {
            v.push_back(cur);
            cur = sigma.apply(cur);
        }
    }
    return FiniteWord(std::move(v));
}

// Length-n prefix obtained by iterating the substitution from the start
// letter until the image is long enough, then truncating. Intermediate
// images are clipped at n letters, which cannot change the prefix: the
// first n letters of an image depend only on the first n letters of the
// preimage.
inline FiniteWord prefix_by_morphism(const TMParams& params, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("prefix_by_morphism: length must be non-negative");
    const std::size_t target = static_cast<std::size_t>(n);
    std::vector<Letter> cur{params.start};
    const CyclicPermutation sigma = params.sigma();
    while (cur.size() < target) {
        std::vector<Letter> next;
        next.reserve(target);
        for (Letter a : cur) {
            Letter x = a;
            for (std::int64_t j = 0; j < params.base && next.size() < target; ++j) {
                next.push_back(x);
                x = sigma.apply(x);
            }
            if (next.size() >= target) break;
        }
        cur = std::move(next);
    }
    cur.resize(target);
    return FiniteWord(std::move(cur));
}

// Letters at positions [k*b, (k+1)*b); equals the substitution image of the
// letter at position k.
inline FiniteWord block(const TMParams& params, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("block: index must be non-negative");
    return morphism_image(params, letter_at(params, k));
}

struct Periodicity {
    bool periodic = false;
    FiniteWord period;  // sigma^0(start) ... sigma^{m-1}(start) when periodic
};

inline Periodicity is_periodic(const TMParams& params) {
    Periodicity r;
    r.periodic = params.periodic();
    if (r.periodic) {
        std::vector<Letter> v;
        v.reserve(static_cast<std::size_t>(params.alphabet_size));
        const CyclicPermutation sigma = params.sigma();
        Letter cur = params.start;
        for (std::int64_t i = 0; i < params.alphabet_size; ++i) {
            v.push_back(cur);
            cur = sigma.apply(cur);
        }
        r.period = FiniteWord(std::move(v));
    }
    return r;
}

// The infinite word, addressable by position. Single letters use the
// digit-sum formula; prefixes are materialized by the recurrence
// t[n] = t[n/b] when b | n, t[n] = sigma(t[n-1]) otherwise, and cached.
// The cache is guarded so concurrent readers always observe pure results.
class LazyWord {
public:
    explicit LazyWord(TMParams params) : params_(std::move(params)) {}

    LazyWord(const LazyWord&) = delete;
    LazyWord& operator=(const LazyWord&) = delete;

    const TMParams& params() const { return params_; }

    Letter letter(Position n) const {
        if (n < 0) throw std::invalid_argument("LazyWord::letter: position must be non-negative");
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (n < static_cast<Position>(cache_.size()))
                return cache_[static_cast<std::size_t>(n)];
        }
        return letter_at(params_, n);
    }

    FiniteWord prefix(Position n) const {
        if (n < 0) throw std::invalid_argument("LazyWord::prefix: length must be non-negative");
        std::lock_guard<std::mutex> lock(mu_);
        extend_locked(n);
        return FiniteWord(std::vector<Letter>(cache_.begin(), cache_.begin() + n));
    }

private:
    void extend_locked(Position n) const {
        const std::int64_t b = params_.base;
        const CyclicPermutation sigma = params_.sigma();
        if (cache_.empty() && n > 0) cache_.push_back(params_.start);
        for (Position i = static_cast<Position>(cache_.size()); i < n; ++i) {
            if (i % b == 0)
                cache_.push_back(cache_[static_cast<std::size_t>(i / b)]);
            else
                cache_.push_back(sigma.apply(cache_[static_cast<std::size_t>(i - 1)]));
        }
    }

    TMParams params_;
    mutable std::mutex mu_;
    mutable std::vector<Letter> cache_;
};

}  // namespace tmlab
