#pragma once

// Truncated power series in one variable and the fractional-index operator
// phi_r : A(H) -> A'(H) H + r A(H).

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cusp/errors.hpp"

namespace cusp {

using Rational = boost::multiprecision::cpp_rational;

// Coefficients c[0..K] of sum_k c[k] H^k, exact up to order K.
template <typename T>
class Series {
public:
    Series() : c_(1, T(0)) {}
    explicit Series(std::size_t order) : c_(order + 1, T(0)) {}
    Series(std::initializer_list<T> coeffs) : c_(coeffs) {
        if (c_.empty()) c_.push_back(T(0));
    }
    explicit Series(std::vector<T> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(T(0));
    }

    static Series constant(const T& v, std::size_t order) {
        Series s(order);
        s.c_[0] = v;
        return s;
    }
    static Series identity(std::size_t order) {
        Series s(order);
        if (order >= 1) s.c_[1] = T(1);
        return s;
    }

    std::size_t order() const { return c_.size() - 1; }
    const std::vector<T>& coeffs() const { return c_; }
    T& operator[](std::size_t k) { return c_.at(k); }
    const T& operator[](std::size_t k) const { return c_.at(k); }
    T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }

    Series truncated(std::size_t order) const {
        Series s(order);
        for (std::size_t k = 0; k <= order && k < c_.size(); ++k) s.c_[k] = c_[k];
        return s;
    }

    template <typename U>
    U evaluate(const U& h) const {
        U acc(0);
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * h + U(c_[k]);
        return acc;
    }

    Series derivative() const {
        Series d(order());
        for (std::size_t k = 1; k < c_.size(); ++k) d.c_[k - 1] = T(static_cast<long>(k)) * c_[k];
        return d;
    }

    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    friend Series operator+(const Series& a, const Series& b) {
        Series r(std::min(a.order(), b.order()));
        for (std::size_t k = 0; k <= r.order(); ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend Series operator-(const Series& a, const Series& b) {
        Series r(std::min(a.order(), b.order()));
        for (std::size_t k = 0; k <= r.order(); ++k) r.c_[k] = a.c_[k] - b.c_[k];
        return r;
    }
    friend Series operator-(const Series& a) {
        Series r(a.order());
        for (std::size_t k = 0; k <= r.order(); ++k) r.c_[k] = -a.c_[k];
        return r;
    }
    friend Series operator*(const Series& a, const Series& b) {
        Series r(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i <= r.order(); ++i)
            for (std::size_t j = 0; i + j <= r.order(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        return r;
    }
    friend Series operator*(const T& s, const Series& a) {
        Series r(a);
        for (auto& v : r.c_) v = s * v;
        return r;
    }
    friend Series operator*(const Series& a, const T& s) { return s * a; }
    friend bool operator==(const Series& a, const Series& b) { return a.c_ == b.c_; }

private:
    std::vector<T> c_;
};

using TruncatedSeries = Series<double>;
using RationalSeries = Series<Rational>;

enum class SeriesOp { add, sub, mul };

template <typename T>
Series<T> series_arith(const Series<T>& lhs, const Series<T>& rhs, SeriesOp op) {
    switch (op) {
        case SeriesOp::add: return lhs + rhs;
        case SeriesOp::sub: return lhs - rhs;
        case SeriesOp::mul: return lhs * rhs;
    }
    return lhs;
}

// Coefficient k of the result is (k + r) A_k.
template <typename T>
Series<T> phi_r_apply(const Series<T>& a, const T& r) {
    Series<T> out(a.order());
    for (std::size_t k = 0; k <= a.order(); ++k) out[k] = (T(static_cast<long>(k)) + r) * a[k];
    return out;
}

bool is_integral(const Rational& r);
bool is_integral(double r);

// Inverse of phi_r; r must not be an integer.
template <typename T>
Series<T> phi_r_invert(const Series<T>& a, const T& r) {
    if (is_integral(r)) throw InputError("phi_r_invert: r is an integer, operator is not bijective");
    Series<T> out(a.order());
    for (std::size_t k = 0; k <= a.order(); ++k) out[k] = a[k] / (T(static_cast<long>(k)) + r);
    return out;
}

TruncatedSeries to_double(const RationalSeries& s);
RationalSeries to_rational(const TruncatedSeries& s);

// Composition outer(inner(H)); inner(0) must vanish.
TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner);
// Compositional inverse of s with s(0)=0, s'(0)!=0.
TruncatedSeries revert(const TruncatedSeries& s);
TruncatedSeries reciprocal(const TruncatedSeries& s);
TruncatedSeries exp(const TruncatedSeries& s);
TruncatedSeries log(const TruncatedSeries& s);
// s^p for real p; requires s(0) > 0.
TruncatedSeries pow(const TruncatedSeries& s, double p);

// Drops trailing zeros (keeps at least one coefficient) for compact output.
std::vector<double> trimmed(const TruncatedSeries& s, double eps = 0.0);

// a(H) H^{-1/6} + b(H) H^{1/6} + c(H).
struct PuiseuxTriple {
    TruncatedSeries a, b, c;

    double evaluate(double h) const;
};

}  // namespace cusp
