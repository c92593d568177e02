#include "rotorwalk/int128.hpp"
#include "rotorwalk/rational.hpp"

#include <limits>
#include <stdexcept>

namespace rotorwalk {

namespace {

int128 gcd128(int128 a, int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits(int128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) { *this = reduce(num, den); }

Rational Rational::reduce(int128 num, int128 den) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (!fits(num) || !fits(den)) {
        throw std::overflow_error("rational overflow");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

Rational Rational::operator-() const { return reduce(-static_cast<int128>(num_), den_); }

Rational operator+(const Rational& a, const Rational& b) {
    return Rational::reduce(static_cast<int128>(a.num_) * b.den_ + static_cast<int128>(b.num_) * a.den_,
                            static_cast<int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    return Rational::reduce(static_cast<int128>(a.num_) * b.num_, static_cast<int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    return Rational::reduce(static_cast<int128>(a.num_) * b.den_, static_cast<int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int128 lhs = static_cast<int128>(a.num_) * b.den_;
    const int128 rhs = static_cast<int128>(b.num_) * a.den_;
    return lhs <=> rhs;
}

std::string to_string(const Rational& q) {
    if (q.den() == 1) {
        return std::to_string(q.num());
    }
    return std::to_string(q.num()) + "/" + std::to_string(q.den());
}

}  // namespace rotorwalk

#include "rotorwalk/calculus.hpp"

namespace rotorwalk {

Rational ScalarField::operator()(const Point& x) const {
    const auto it = values_.find(x);
    return it == values_.end() ? Rational() : it->second;
}

void ScalarField::set(const Point& x, Rational value) {
    if (x.dim() != dim_) {
        throw std::invalid_argument("scalar field point has wrong dimension");
    }
    values_[x] = value;
}

Rational EdgeField::operator()(const Point& x, Direction dir) const {
    const Point base = dir.sign() > 0 ? x : x + dir;
    const auto it = values_.find(base);
    if (it == values_.end()) {
        return {};
    }
    const auto jt = it->second.find(dir.axis());
    if (jt == it->second.end()) {
        return {};
    }
    return dir.sign() > 0 ? jt->second : -jt->second;
}

void EdgeField::set(const Point& x, Direction dir, Rational value) {
    if (x.dim() != dim_ || dir.axis() >= dim_) {
        throw std::invalid_argument("edge field edge has wrong dimension");
    }
    if (dir.sign() > 0) {
        values_[x][dir.axis()] = value;
    } else {
        values_[x + dir][dir.axis()] = -value;
    }
}

}  // namespace rotorwalk
