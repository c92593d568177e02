#pragma once

#include <unordered_map>

#include "rotorwalk/point.hpp"
#include "rotorwalk/rational.hpp"

namespace rotorwalk {

/// Sparse function Z^d -> Q, zero off its support.
class ScalarField {
public:
    explicit ScalarField(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    Rational operator()(const Point& x) const;
    void set(const Point& x, Rational value);

private:
    int dim_;
    std::unordered_map<Point, Rational, PointHash> values_;
};

/// Sparse antisymmetric function on directed nearest-neighbour edges,
/// stored once per undirected edge (x, x + e_i).
class EdgeField {
public:
    explicit EdgeField(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    /// Value on the directed edge (x, x + dir).
    Rational operator()(const Point& x, Direction dir) const;
    void set(const Point& x, Direction dir, Rational value);

private:
    int dim_;
    std::unordered_map<Point, std::unordered_map<int, Rational>, PointHash> values_;
};

/// Discrete calculus with the 1/(2d) normalisation:
///   grad f(x, x+dir) = f(x+dir) - f(x)
///   div k(x)         = (1/2d) sum_dir k(x, x+dir)
///   lap f(x)         = div(grad f)(x) = (1/2d) sum_y f(y) - f(x)
/// The templates accept any callable f(Point) / k(Point, Direction) whose
/// result converts to Rational.
template <class F>
Rational gradient_of(F&& f, const Point& x, Direction dir) {
    return Rational(f(x + dir)) - Rational(f(x));
}

template <class K>
Rational divergence_of(K&& k, const Point& x) {
    Rational sum;
    for (int i = 0; i < 2 * x.dim(); ++i) {
        sum += Rational(k(x, Direction::from_index(i)));
    }
    return sum / Rational(2 * x.dim());
}

template <class F>
Rational laplacian_of(F&& f, const Point& x) {
    return divergence_of([&](const Point& y, Direction d) { return gradient_of(f, y, d); }, x);
}

inline Rational gradient(const ScalarField& f, const Point& x, Direction dir) { return gradient_of(f, x, dir); }
inline Rational divergence(const EdgeField& k, const Point& x) { return divergence_of(k, x); }
inline Rational laplacian(const ScalarField& f, const Point& x) { return laplacian_of(f, x); }

}  // namespace rotorwalk
