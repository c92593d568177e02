#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "rotorwalk/int128.hpp"

namespace rotorwalk {

/// Exact fraction num/den with den > 0 and gcd(num, den) == 1. Arithmetic is
/// carried in 128 bits and throws std::overflow_error if the reduced result
/// does not fit in 64 bits.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    static Rational reduce(int128 num, int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::string to_string(const Rational& q);

}  // namespace rotorwalk
