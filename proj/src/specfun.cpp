#include "cusp/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "cusp/errors.hpp"

namespace cusp {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::round(x); }

double lanczos(double x) {
    // Valid for x >= 1/2.
    const double z = x - 1.0;
    double sum = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (z + static_cast<double>(i));
    const double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

double power_series(double p, double q, double r, double z) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < 200000; ++n) {
        term *= (p + n) * (q + n) / ((r + n) * (n + 1.0)) * z;
        sum += term;
        if (term == 0.0 || std::abs(term) < 1e-17 * std::abs(sum)) return sum;
    }
    throw ComputationError("hyp2f1: power series did not converge");
}

}  // namespace

double gamma(double x) {
    if (is_nonpositive_integer(x)) throw InputError("gamma: pole at non-positive integer " + std::to_string(x));
    if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos(1.0 - x));
    return lanczos(x);
}

double rgamma(double x) { return is_nonpositive_integer(x) ? 0.0 : 1.0 / gamma(x); }

double hyp2f1(double p, double q, double r, double z) {
    if (is_nonpositive_integer(r)) throw InputError("hyp2f1: r is a non-positive integer");
    if (!std::isfinite(z) || z >= 1.0) throw InputError("hyp2f1: argument outside the supported region z < 1");
    if (z == 0.0 || p == 0.0 || q == 0.0) return 1.0;
    if (is_nonpositive_integer(p) || is_nonpositive_integer(q)) return power_series(p, q, r, z);
    if (z >= -0.5) return power_series(p, q, r, z);
    if (z >= -1.0) {
        const double w = z / (z - 1.0);
        return std::pow(1.0 - z, -q) * power_series(r - p, q, r, w);
    }
    const double d = q - p;
    if (d == std::round(d)) throw InputError("hyp2f1: connection formula needs non-integral q - p");
    const double c1 = gamma(r) * gamma(q - p) * rgamma(r - p) * rgamma(q);
    const double c2 = gamma(r) * gamma(p - q) * rgamma(r - q) * rgamma(p);
    const double w = 1.0 / z;
    double value = 0.0;
    if (c1 != 0.0) value += c1 * std::pow(-z, -p) * hyp2f1(p, p - r + 1.0, p - q + 1.0, w);
    if (c2 != 0.0) value += c2 * std::pow(-z, -q) * hyp2f1(q, q - r + 1.0, q - p + 1.0, w);
    return value;
}

PuiseuxConstants constants() {
    const double s = std::sqrt(std::numbers::pi) / 3.0;
    return {s * gamma(1.0 / 6.0) / gamma(2.0 / 3.0), s * gamma(-1.0 / 6.0) / gamma(1.0 / 3.0)};
}

double reference_Jj(double H, int j) {
    if (!(H > 0.0)) throw InputError("reference_Jj: H must be positive");
    if (j != 0 && j != 1) throw InputError("reference_Jj: j must be 0 or 1");
    return 2.0 / 3.0 * std::pow(H, (j - 2) / 3.0) * hyp2f1((2.0 - j) / 3.0, 0.5, 1.5, -1.0 / H);
}

}  // namespace cusp
