#include "cusp/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "cusp/errors.hpp"

namespace cusp {

Polynomial Polynomial::constant(double c) { return monomial(c, 0, 0, 0); }

Polynomial Polynomial::monomial(double c, int i, int j, int k) {
    Polynomial p;
    p.add_term(c, {i, j, k});
    return p;
}

Polynomial Polynomial::variable(int index) {
    Exponent e{0, 0, 0};
    e.at(static_cast<std::size_t>(index)) = 1;
    Polynomial p;
    p.add_term(1.0, e);
    return p;
}

void Polynomial::add_term(double c, const Exponent& e) {
    if (e[0] < 0 || e[1] < 0 || e[2] < 0) throw InputError("polynomial exponents must be non-negative");
    if (c == 0.0) return;
    double& slot = terms_[e];
    slot += c;
    if (slot == 0.0) terms_.erase(e);
}

void Polynomial::prune() {
    std::erase_if(terms_, [](const auto& kv) { return kv.second == 0.0; });
}

int Polynomial::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
}

int Polynomial::degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(var)]);
    return d;
}

double Polynomial::coeff(int i, int j, int k) const {
    auto it = terms_.find({i, j, k});
    return it == terms_.end() ? 0.0 : it->second;
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial out;
    const auto v = static_cast<std::size_t>(var);
    for (const auto& [e, c] : terms_) {
        if (e[v] == 0) continue;
        Exponent n = e;
        n[v] -= 1;
        out.add_term(c * e[v], n);
    }
    return out;
}

Polynomial Polynomial::antiderivative(int var) const {
    Polynomial out;
    const auto v = static_cast<std::size_t>(var);
    for (const auto& [e, c] : terms_) {
        Exponent n = e;
        n[v] += 1;
        out.add_term(c / n[v], n);
    }
    return out;
}

Polynomial Polynomial::at_lambda(double lambda) const {
    Polynomial out;
    for (const auto& [e, c] : terms_) {
        double m = c;
        for (int p = 0; p < e[2]; ++p) m *= lambda;
        out.add_term(m, {e[0], e[1], 0});
    }
    return out;
}

Polynomial Polynomial::scaled(int var, double scale) const {
    Polynomial out;
    const auto v = static_cast<std::size_t>(var);
    for (const auto& [e, c] : terms_) {
        double m = c;
        for (int p = 0; p < e[v]; ++p) m *= scale;
        out.add_term(m, e);
    }
    return out;
}

Polynomial Polynomial::pow(int n) const {
    Polynomial r = constant(1.0);
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

Polynomial Polynomial::compose(const std::array<Polynomial, 3>& q) const {
    Polynomial out;
    for (const auto& [e, c] : terms_) out = out + c * (q[0].pow(e[0]) * q[1].pow(e[1]) * q[2].pow(e[2]));
    return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(c, e);
    return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(ca * cb, {ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]});
    r.prune();
    return r;
}

Polynomial operator*(double s, const Polynomial& a) {
    Polynomial r;
    for (const auto& [e, c] : a.terms_) r.add_term(s * c, e);
    return r;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    static const char* names[3] = {"x", "y", "l"};
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c;
        for (std::size_t v = 0; v < 3; ++v) {
            if (e[v] == 0) continue;
            os << '*' << names[v];
            if (e[v] > 1) os << '^' << e[v];
        }
    }
    return os.str();
}

}  // namespace cusp
