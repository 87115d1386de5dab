#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cusp/polynomial.hpp"
#include "cusp/series.hpp"

namespace cusp {

// Reduced symplectic density f(x, y, lambda); the form is f dx^dy.
struct Density {
    Polynomial poly;

    Density() = default;
    explicit Density(Polynomial p) : poly(std::move(p)) {}
    static Density constant(double c) { return Density(Polynomial::constant(c)); }

    template <typename T>
    T operator()(const T& x, const T& y, const T& l = T(0)) const {
        return poly(x, y, l);
    }
    double at_origin() const { return poly.coeff(0, 0, 0); }
    int max_degree() const { return poly.total_degree(); }
};

enum class ModelKind { CuspLocal, CuspCompact, OneDof, Node };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

enum class Stratum { narrow, wide, outside };

std::string to_string(Stratum s);
Stratum stratum_from_string(const std::string& name);

struct FibrationModel {
    ModelKind kind = ModelKind::CuspLocal;
    Density density = Density::constant(1.0);
    double x0 = 1.0;             // sections N1 = {x = x0}, N2 = {x = -x0}
    double domain_radius = 1.0;  // admissible base region |(H, lambda)| < radius
    int mu_shift = 0;            // representative I_mu + k I of the wide action

    static FibrationModel make(ModelKind kind, Density density);

    // H(x, y, lambda) as a polynomial.
    Polynomial hamiltonian() const;
    bool has_parameter() const { return kind == ModelKind::CuspLocal || kind == ModelKind::CuspCompact; }

    // H = x^2 + W(y, lambda) for the cusp kinds.
    double potential(double y, double lambda) const;
    double potential_dy(double y, double lambda) const;
    double potential_dyy(double y, double lambda) const;
    // Sorted real critical points of W(., lambda).
    std::vector<double> critical_points(double lambda) const;
};

// Real roots of a y^3 + b y^2 + c y + d, sorted, Newton-polished.
std::vector<double> real_cubic_roots(double a, double b, double c, double d);

struct BranchValues {
    double ell;   // elliptic critical value (local minimum of W)
    double hyp;   // hyperbolic critical value (local maximum of W)
    double y_ell;
    double y_hyp;
};

class BifurcationDiagram {
public:
    BifurcationDiagram(const FibrationModel& model, std::pair<double, double> lambda_range, int n);

    std::pair<double, double> cusp_point() const { return {0.0, 0.0}; }
    const std::vector<std::pair<double, double>>& elliptic() const { return ell_; }
    const std::vector<std::pair<double, double>>& hyperbolic() const { return hyp_; }
    // Critical values of the cusp germ; empty when lambda lies past the cusp.
    std::optional<BranchValues> branches(double lambda) const;
    // Critical values of W(., lambda) that belong to neither branch (e.g. the
    // auxiliary minimum of the compact model).
    std::vector<double> auxiliary_values(double lambda) const;

    bool in_domain(double H, double lambda) const;
    bool in_swallowtail(double H, double lambda) const;
    bool on_elliptic(double H, double lambda, double tol = 1e-12) const;
    bool on_hyperbolic(double H, double lambda, double tol = 1e-12) const;
    bool on_sigma(double H, double lambda, double tol = 1e-12) const;
    Stratum classify(double H, double lambda, double tol = 1e-12) const;

private:
    bool is_germ_point(double y) const;

    FibrationModel model_;
    std::vector<std::pair<double, double>> ell_, hyp_;
};

BifurcationDiagram bifurcation_diagram(const FibrationModel& model, std::pair<double, double> lambda_range, int n);

// Base change bringing (H - a(F))^2 = -(4/27) b(F)^3 to H^2 = -(4/27) F^3.
struct BaseTransform {
    double f0 = 0.0;
    double eta = 1.0;
    TruncatedSeries a;
    TruncatedSeries c;  // b(lambda) / (lambda - f0)

    std::pair<double, double> apply(double H, double F) const;
};

BaseTransform canonicalize_base(const TruncatedSeries& a, const TruncatedSeries& b);

enum class ParabolicVerdict { parabolic, fails_i, fails_ii, fails_iii, rank0, regular };

std::string to_string(ParabolicVerdict v);

struct ParabolicReport {
    ParabolicVerdict verdict = ParabolicVerdict::regular;
    double k = 0.0;
    int rank_restricted = 0;
    double v3 = 0.0;
    int rank_full = 0;
};

ParabolicReport is_parabolic(const Polynomial& H, const Polynomial& F, const std::array<double, 3>& point,
                             double threshold = 1e-9);

// New integrals H~(H, F), F~(H, F); variables (x, y) of each polynomial stand for (H, F).
struct BaseMap {
    Polynomial H;
    Polynomial F;

    std::pair<double, double> operator()(double h, double f) const { return {H(h, f), F(h, f)}; }
    double jacobian_det(double h, double f) const;
    static BaseMap identity();
};

std::pair<ParabolicReport, ParabolicReport> base_change_parabolic_test(const Polynomial& H, const Polynomial& F,
                                                                       const std::array<double, 3>& point,
                                                                       const BaseMap& phi, double threshold = 1e-9);

// Carries a density of the parametric model at lambda = 0 to the one-DOF model
// H = y^3 - x^2 via (x, y) -> (x, -y).
Polynomial one_dof_density(const Density& f);

}  // namespace cusp
