#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace tmlab {

// Arithmetic that refuses to wrap. All positions, periods and bounds in this
// library are std::int64_t; anything that could plausibly overflow goes
// through these helpers and surfaces as overflow_error instead of UB.

class overflow_error : public std::runtime_error {
public:
    explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw overflow_error("int64 overflow in addition");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw overflow_error("int64 overflow in subtraction");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw overflow_error("int64 overflow in multiplication");
    return r;
}

// a^e with overflow detection; e >= 0.
inline std::int64_t checked_pow(std::int64_t a, std::int64_t e) {
    if (e < 0) throw std::invalid_argument("checked_pow: negative exponent");
    std::int64_t r = 1;
    while (e > 0) {
        if (e & 1) r = checked_mul(r, a);
        e >>= 1;
        if (e > 0) a = checked_mul(a, a);
    }
    return r;
}

}  // namespace tmlab
