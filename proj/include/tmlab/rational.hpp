#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "tmlab/checked.hpp"

namespace tmlab {

// Exact rational with a distinguished infinity. Finite values are kept
// reduced with den > 0; infinity compares greater than every finite value.
// Comparisons cross-multiply in 128 bits, so no intermediate overflow.
class Rational {
public:
    Rational() : num_(0), den_(1), infinite_(false) {}

    Rational(std::int64_t num, std::int64_t den) : infinite_(false) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { num = checked_sub(0, num); den = checked_sub(0, den); }
        const std::int64_t g = std::gcd(num, den);
        num_ = g ? num / g : 0;
        den_ = g ? den / g : 1;
    }

    static Rational integer(std::int64_t n) { return Rational(n, 1); }

    static Rational infinity() {
        Rational r;
        r.infinite_ = true;
        return r;
    }

    bool is_infinite() const { return infinite_; }
    std::int64_t num() const { require_finite(); return num_; }
    std::int64_t den() const { require_finite(); return den_; }

    bool is_integer() const { return !infinite_ && den_ == 1; }

    double to_double() const {
        if (infinite_) return std::numeric_limits<double>::infinity();
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    friend bool operator<(const Rational& a, const Rational& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return static_cast<__int128>(a.num_) * b.den_ <
               static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational operator+(const Rational& o) const {
        if (infinite_ || o.infinite_) return infinity();
        return Rational(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                        checked_mul(den_, o.den_));
    }

    Rational operator*(const Rational& o) const {
        if (infinite_ || o.infinite_) return infinity();
        return Rational(checked_mul(num_, o.num_), checked_mul(den_, o.den_));
    }

    // "p/q" when the reduced denominator is not 1, "p" when it is, "inf" for
    // the infinite value. parse() accepts exactly these shapes.
    std::string str() const {
        if (infinite_) return "inf";
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    static Rational parse(const std::string& text) {
        if (text == "inf") return infinity();
        const auto slash = text.find('/');
        try {
            if (slash == std::string::npos)
                return integer(std::stoll(text));
            return Rational(std::stoll(text.substr(0, slash)),
                            std::stoll(text.substr(slash + 1)));
        } catch (const std::exception&) {
            throw std::invalid_argument("Rational: cannot parse \"" + text + "\"");
        }
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }

private:
    void require_finite() const {
        if (infinite_) throw std::domain_error("Rational: infinite value has no numerator/denominator");
    }

    std::int64_t num_;
    std::int64_t den_;
    bool infinite_;
};

}  // namespace tmlab
