#include "cusp/series.hpp"

#include <cmath>

namespace cusp {

bool is_integral(const Rational& r) { return denominator(r) == 1; }

bool is_integral(double r) { return std::isfinite(r) && r == std::round(r); }

TruncatedSeries to_double(const RationalSeries& s) {
    TruncatedSeries out(s.order());
    for (std::size_t k = 0; k <= s.order(); ++k) out[k] = s[k].convert_to<double>();
    return out;
}

RationalSeries to_rational(const TruncatedSeries& s) {
    RationalSeries out(s.order());
    for (std::size_t k = 0; k <= s.order(); ++k) out[k] = Rational(s[k]);
    return out;
}

TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
    if (std::abs(inner[0]) > 1e-14) throw InputError("compose: inner series must vanish at 0");
    const std::size_t order = std::min(outer.order(), inner.order());
    TruncatedSeries x = inner.truncated(order);
    x[0] = 0.0;
    TruncatedSeries acc = TruncatedSeries::constant(outer[order], order);
    for (std::size_t k = order; k-- > 0;) {
        acc = acc * x;
        acc[0] += outer[k];
    }
    return acc;
}

TruncatedSeries revert(const TruncatedSeries& s) {
    const std::size_t order = s.order();
    if (std::abs(s[0]) > 1e-14) throw InputError("revert: series must vanish at 0");
    if (order == 0) return TruncatedSeries(0);
    if (s[1] == 0.0) throw InputError("revert: linear coefficient vanishes");
    TruncatedSeries t(order);
    t[1] = 1.0 / s[1];
    for (std::size_t n = 2; n <= order; ++n) {
        const double residual = compose(s, t)[n];
        t[n] = -residual / s[1];
    }
    return t;
}

TruncatedSeries reciprocal(const TruncatedSeries& s) {
    if (s[0] == 0.0) throw InputError("reciprocal: constant term vanishes");
    TruncatedSeries r(s.order());
    r[0] = 1.0 / s[0];
    for (std::size_t n = 1; n <= s.order(); ++n) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k) acc += s[k] * r[n - k];
        r[n] = -acc / s[0];
    }
    return r;
}

TruncatedSeries exp(const TruncatedSeries& s) {
    TruncatedSeries e(s.order());
    e[0] = std::exp(s[0]);
    for (std::size_t n = 1; n <= s.order(); ++n) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k) acc += static_cast<double>(k) * s[k] * e[n - k];
        e[n] = acc / static_cast<double>(n);
    }
    return e;
}

TruncatedSeries log(const TruncatedSeries& s) {
    if (s[0] <= 0.0) throw InputError("log: constant term must be positive");
    TruncatedSeries l(s.order());
    l[0] = std::log(s[0]);
    for (std::size_t n = 1; n <= s.order(); ++n) {
        double acc = static_cast<double>(n) * s[n];
        for (std::size_t k = 1; k < n; ++k) acc -= static_cast<double>(k) * l[k] * s[n - k];
        l[n] = acc / (static_cast<double>(n) * s[0]);
    }
    return l;
}

TruncatedSeries pow(const TruncatedSeries& s, double p) {
    if (s[0] <= 0.0) throw InputError("pow: constant term must be positive");
    return exp(p * log(s));
}

std::vector<double> trimmed(const TruncatedSeries& s, double eps) {
    std::vector<double> v = s.coeffs();
    while (v.size() > 1 && std::abs(v.back()) <= eps) v.pop_back();
    for (double& x : v)
        if (std::abs(x) <= eps) x = 0.0;
    return v;
}

double PuiseuxTriple::evaluate(double h) const {
    return a.evaluate(h) * std::pow(h, -1.0 / 6.0) + b.evaluate(h) * std::pow(h, 1.0 / 6.0) + c.evaluate(h);
}

}  // namespace cusp
