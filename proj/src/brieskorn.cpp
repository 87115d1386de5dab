#include "cusp/brieskorn.hpp"

#include <array>
#include <map>

namespace cusp {
namespace {

// Key (m, a, b) for H^m x^a y^b; ordered so the last entry has the largest x, then y power.
struct Key {
    int a, b, m;
    auto operator<=>(const Key&) const = default;
};

}  // namespace

BrieskornPair reduce(const Polynomial& f, std::size_t order) {
    std::map<Key, Rational> work;
    const Polynomial g = f.at_lambda(0.0);
    for (const auto& [e, c] : g.terms()) work[{e[0], e[1], 0}] += Rational(c);

    BrieskornPair out{RationalSeries(order), RationalSeries(order)};
    while (!work.empty()) {
        auto it = std::prev(work.end());
        const Key k = it->first;
        const Rational c = it->second;
        work.erase(it);
        if (c == 0) continue;
        if (k.a >= 2) {
            work[{k.a - 2, k.b + 3, k.m}] += c;
            work[{k.a - 2, k.b, k.m + 1}] -= c;
        } else if (k.a == 1) {
            continue;
        } else if (k.b >= 2) {
            if (k.b == 2) continue;
            work[{0, k.b - 3, k.m + 1}] += c * Rational(2 * (k.b - 2), 2 * k.b - 1);
        } else if (static_cast<std::size_t>(k.m) <= order) {
            (k.b == 0 ? out.alpha : out.beta)[static_cast<std::size_t>(k.m)] += c;
        }
    }
    return out;
}

BrieskornPair reduce(const Density& f, std::size_t order) { return reduce(f.poly, order); }

std::vector<BrieskornPair> reduce_batch(const std::vector<Density>& densities, std::size_t order) {
    std::vector<BrieskornPair> out;
    out.reserve(densities.size());
    for (const auto& d : densities) out.push_back(reduce(d, order));
    return out;
}

}  // namespace cusp
