#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

namespace cusp {

// Sparse polynomial in up to three variables (x, y, lambda) with real coefficients.
class Polynomial {
public:
    using Exponent = std::array<int, 3>;

    Polynomial() = default;
    static Polynomial constant(double c);
    static Polynomial monomial(double c, int i, int j, int k = 0);
    static Polynomial variable(int index);

    void add_term(double c, const Exponent& e);
    const std::map<Exponent, double>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int total_degree() const;
    int degree_in(int var) const;
    double coeff(int i, int j, int k = 0) const;

    template <typename T>
    T operator()(const T& x, const T& y, const T& l = T(0)) const {
        T acc(0);
        for (const auto& [e, c] : terms_) {
            T m(c);
            for (int p = 0; p < e[0]; ++p) m *= x;
            for (int p = 0; p < e[1]; ++p) m *= y;
            for (int p = 0; p < e[2]; ++p) m *= l;
            acc += m;
        }
        return acc;
    }

    Polynomial derivative(int var) const;
    // Antiderivative in var with zero constant of integration at var = 0.
    Polynomial antiderivative(int var) const;
    // Sets lambda to a fixed value.
    Polynomial at_lambda(double lambda) const;
    // Substitutes var -> scale * var.
    Polynomial scaled(int var, double scale) const;

    // Substitutes (x, y, lambda) -> (q[0], q[1], q[2]).
    Polynomial compose(const std::array<Polynomial, 3>& q) const;
    Polynomial pow(int n) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(double s, const Polynomial& a);

    std::string to_string() const;

private:
    void prune();
    std::map<Exponent, double> terms_;
};

}  // namespace cusp
