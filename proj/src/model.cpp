#include "cusp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "cusp/errors.hpp"

namespace cusp {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::CuspLocal: return "cusp_local";
        case ModelKind::CuspCompact: return "cusp_compact";
        case ModelKind::OneDof: return "one_dof";
        case ModelKind::Node: return "node";
    }
    return "unknown";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "cusp_local" || name == "CuspLocal") return ModelKind::CuspLocal;
    if (name == "cusp_compact" || name == "CuspCompact") return ModelKind::CuspCompact;
    if (name == "one_dof" || name == "OneDof") return ModelKind::OneDof;
    if (name == "node" || name == "Node") return ModelKind::Node;
    throw InputError("unknown model kind '" + name + "'");
}

std::string to_string(Stratum s) {
    switch (s) {
        case Stratum::narrow: return "narrow";
        case Stratum::wide: return "wide";
        case Stratum::outside: return "outside";
    }
    return "outside";
}

Stratum stratum_from_string(const std::string& name) {
    if (name == "narrow") return Stratum::narrow;
    if (name == "wide") return Stratum::wide;
    if (name == "outside") return Stratum::outside;
    throw InputError("unknown stratum '" + name + "'");
}

FibrationModel FibrationModel::make(ModelKind kind, Density density) {
    FibrationModel m;
    m.kind = kind;
    m.density = std::move(density);
    if (kind == ModelKind::CuspCompact) {
        m.x0 = 0.05;
        m.domain_radius = 0.1;
    }
    return m;
}

Polynomial FibrationModel::hamiltonian() const {
    using P = Polynomial;
    switch (kind) {
        case ModelKind::CuspLocal: return P::monomial(1, 2, 0) + P::monomial(1, 0, 3) + P::monomial(1, 0, 1, 1);
        case ModelKind::CuspCompact:
            return P::monomial(1, 2, 0) + P::monomial(1, 0, 4) + P::monomial(1, 0, 3) + P::monomial(1, 0, 1, 1);
        case ModelKind::OneDof: return P::monomial(1, 0, 3) - P::monomial(1, 2, 0);
        case ModelKind::Node: return P::monomial(1, 1, 1);
    }
    return {};
}

double FibrationModel::potential(double y, double lambda) const {
    const double y3 = y * y * y;
    if (kind == ModelKind::CuspCompact) return y3 * y + y3 + lambda * y;
    return y3 + lambda * y;
}

double FibrationModel::potential_dy(double y, double lambda) const {
    if (kind == ModelKind::CuspCompact) return 4 * y * y * y + 3 * y * y + lambda;
    return 3 * y * y + lambda;
}

double FibrationModel::potential_dyy(double y, double /*lambda*/) const {
    if (kind == ModelKind::CuspCompact) return 12 * y * y + 6 * y;
    return 6 * y;
}

std::vector<double> FibrationModel::critical_points(double lambda) const {
    if (kind == ModelKind::CuspCompact) return real_cubic_roots(4.0, 3.0, 0.0, lambda);
    if (kind != ModelKind::CuspLocal) throw InputError("critical points are defined for the cusp models only");
    if (lambda > 0) return {};
    if (lambda == 0) return {0.0};
    const double s = std::sqrt(-lambda / 3.0);
    return {-s, s};
}

std::vector<double> real_cubic_roots(double a, double b, double c, double d) {
    if (a == 0.0) throw InputError("real_cubic_roots: leading coefficient vanishes");
    const double B = b / a, C = c / a, D = d / a;
    // Depressed cubic t^3 + p t + q with y = t - B/3.
    const double p = C - B * B / 3.0;
    const double q = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    std::vector<double> roots;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        roots.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s) - B / 3.0);
    } else if (p == 0.0) {
        roots.push_back(-B / 3.0);
    } else {
        const double r = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) roots.push_back(r * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - B / 3.0);
    }
    for (double& y : roots) {
        for (int it = 0; it < 3; ++it) {
            const double f = ((y + B) * y + C) * y + D;
            const double df = (3.0 * y + 2.0 * B) * y + C;
            if (df == 0.0) break;
            y -= f / df;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

BifurcationDiagram::BifurcationDiagram(const FibrationModel& model, std::pair<double, double> lambda_range, int n)
    : model_(model) {
    if (!model.has_parameter()) throw InputError("bifurcation diagram requires a cusp model");
    if (n < 2) throw InputError("bifurcation diagram needs at least two samples");
    for (int i = 0; i < n; ++i) {
        const double lambda = lambda_range.first + (lambda_range.second - lambda_range.first) * i / (n - 1);
        if (auto b = branches(lambda)) {
            ell_.emplace_back(b->ell, lambda);
            hyp_.emplace_back(b->hyp, lambda);
        }
    }
}

bool BifurcationDiagram::is_germ_point(double y) const {
    // The compact model has one extra critical point near y = -3/4.
    return model_.kind != ModelKind::CuspCompact || std::abs(y) < 0.375;
}

std::optional<BranchValues> BifurcationDiagram::branches(double lambda) const {
    std::vector<double> germ;
    for (double y : model_.critical_points(lambda))
        if (is_germ_point(y)) germ.push_back(y);
    if (germ.size() != 2 || germ[0] == germ[1]) return std::nullopt;
    BranchValues b{};
    for (double y : germ) {
        if (model_.potential_dyy(y, lambda) > 0) {
            b.y_ell = y;
            b.ell = model_.potential(y, lambda);
        } else {
            b.y_hyp = y;
            b.hyp = model_.potential(y, lambda);
        }
    }
    return b;
}

std::vector<double> BifurcationDiagram::auxiliary_values(double lambda) const {
    std::vector<double> out;
    for (double y : model_.critical_points(lambda))
        if (!is_germ_point(y)) out.push_back(model_.potential(y, lambda));
    return out;
}

bool BifurcationDiagram::in_domain(double H, double lambda) const {
    return std::hypot(H, lambda) < model_.domain_radius;
}

bool BifurcationDiagram::in_swallowtail(double H, double lambda) const {
    const auto b = branches(lambda);
    return b && b->ell < H && H < b->hyp;
}

bool BifurcationDiagram::on_elliptic(double H, double lambda, double tol) const {
    const auto b = branches(lambda);
    return b && std::abs(H - b->ell) <= tol * std::max(1.0, std::abs(H));
}

bool BifurcationDiagram::on_hyperbolic(double H, double lambda, double tol) const {
    const auto b = branches(lambda);
    return b && std::abs(H - b->hyp) <= tol * std::max(1.0, std::abs(H));
}

bool BifurcationDiagram::on_sigma(double H, double lambda, double tol) const {
    if (std::abs(H) <= tol && std::abs(lambda) <= tol) return true;
    if (on_elliptic(H, lambda, tol) || on_hyperbolic(H, lambda, tol)) return true;
    for (double v : auxiliary_values(lambda))
        if (std::abs(H - v) <= tol * std::max(1.0, std::abs(H))) return true;
    return false;
}

Stratum BifurcationDiagram::classify(double H, double lambda, double tol) const {
    if (!in_domain(H, lambda) || on_sigma(H, lambda, tol)) return Stratum::outside;
    return in_swallowtail(H, lambda) ? Stratum::narrow : Stratum::wide;
}

BifurcationDiagram bifurcation_diagram(const FibrationModel& model, std::pair<double, double> lambda_range, int n) {
    return BifurcationDiagram(model, lambda_range, n);
}

std::pair<double, double> BaseTransform::apply(double H, double F) const {
    const double scale = std::pow(std::abs(c.evaluate(F)), 1.5);
    return {(H - a.evaluate(F)) / scale, eta * (F - f0)};
}

BaseTransform canonicalize_base(const TruncatedSeries& a, const TruncatedSeries& b) {
    const TruncatedSeries db = b.derivative();
    double scale = 0.0;
    for (double v : b.coeffs()) scale = std::max(scale, std::abs(v));
    if (scale == 0.0 || b.order() == 0) throw InputError("canonicalize_base: b has no simple root");
    double f0 = 0.0;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
        const double d = db.evaluate(f0);
        if (d == 0.0) break;
        const double step = b.evaluate(f0) / d;
        f0 -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(f0))) {
            converged = true;
            break;
        }
    }
    if (!converged || std::abs(b.evaluate(f0)) > 1e-12 * scale)
        throw InputError("canonicalize_base: no simple root of b found");
    if (std::abs(db.evaluate(f0)) <= 1e-12 * scale)
        throw InputError("canonicalize_base: b'(f0) = 0, the point is not parabolic");

    const std::size_t K = b.order();
    TruncatedSeries c(K - 1);
    c[K - 1] = b[K];
    for (std::size_t k = K - 1; k >= 1; --k) c[k - 1] = b[k] + f0 * c[k];

    BaseTransform t;
    t.f0 = f0;
    t.a = a;
    t.c = c;
    t.eta = c.evaluate(f0) > 0 ? 1.0 : -1.0;
    return t;
}

std::string to_string(ParabolicVerdict v) {
    switch (v) {
        case ParabolicVerdict::parabolic: return "parabolic";
        case ParabolicVerdict::fails_i: return "fails(i)";
        case ParabolicVerdict::fails_ii: return "fails(ii)";
        case ParabolicVerdict::fails_iii: return "fails(iii)";
        case ParabolicVerdict::rank0: return "rank0";
        case ParabolicVerdict::regular: return "regular";
    }
    return "regular";
}

namespace {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

Vec3 gradient(const Polynomial& p, const std::array<double, 3>& pt) {
    Vec3 g;
    for (int i = 0; i < 3; ++i) g(i) = p.derivative(i)(pt[0], pt[1], pt[2]);
    return g;
}

Mat3 hessian(const Polynomial& p, const std::array<double, 3>& pt) {
    Mat3 h;
    for (int i = 0; i < 3; ++i) {
        const Polynomial di = p.derivative(i);
        for (int j = 0; j < 3; ++j) h(i, j) = di.derivative(j)(pt[0], pt[1], pt[2]);
    }
    return h;
}

double third_differential(const Polynomial& p, const std::array<double, 3>& pt, const Vec3& v) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Polynomial di = p.derivative(i);
        for (int j = 0; j < 3; ++j) {
            const Polynomial dij = di.derivative(j);
            for (int k = 0; k < 3; ++k) acc += dij.derivative(k)(pt[0], pt[1], pt[2]) * v(i) * v(j) * v(k);
        }
    }
    return acc;
}

template <typename Matrix>
int numeric_rank(const Matrix& m, double threshold) {
    const Eigen::MatrixXd dense = m;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > threshold * s(0)) ++r;
    return r;
}

}  // namespace

ParabolicReport is_parabolic(const Polynomial& H, const Polynomial& F, const std::array<double, 3>& point,
                             double threshold) {
    const Vec3 dF = gradient(F, point);
    const Vec3 dH = gradient(H, point);
    if (dF.norm() == 0.0) throw InputError("is_parabolic: dF vanishes at the point");

    ParabolicReport rep;
    rep.k = dH.dot(dF) / dF.squaredNorm();
    if ((dH - rep.k * dF).norm() > threshold * std::max(1.0, dH.norm())) {
        rep.verdict = ParabolicVerdict::regular;
        return rep;
    }
    const Polynomial L = H - rep.k * F;
    const Mat3 hessL = hessian(L, point);
    const Mat3 hessF = hessian(F, point);

    // Orthonormal basis of ker dF from the full QR of dF.
    const Eigen::MatrixXd grad = dF;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(grad);
    const Eigen::MatrixXd Q = qr.householderQ();
    const Eigen::Matrix<double, 3, 2> B = Q.rightCols(2);
    const Eigen::Matrix2d restricted = B.transpose() * hessL * B;

    rep.rank_restricted = numeric_rank(restricted, threshold);
    rep.rank_full = numeric_rank(hessL, threshold);
    if (rep.rank_restricted == 0) {
        rep.verdict = ParabolicVerdict::rank0;
        return rep;
    }
    if (rep.rank_restricted == 2) {
        rep.verdict = ParabolicVerdict::fails_i;
        return rep;
    }
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(restricted, Eigen::ComputeFullV);
    const Vec3 v = B * svd.matrixV().col(1);
    const Vec3 w = -(v.dot(hessF * v) / dF.squaredNorm()) * dF;
    rep.v3 = third_differential(L, point, v) + 3.0 * v.dot(hessL * w);
    const double scale = std::max(1.0, svd.singularValues()(0));
    if (std::abs(rep.v3) <= threshold * scale) {
        rep.verdict = ParabolicVerdict::fails_ii;
        return rep;
    }
    rep.verdict = rep.rank_full == 3 ? ParabolicVerdict::parabolic : ParabolicVerdict::fails_iii;
    return rep;
}

double BaseMap::jacobian_det(double h, double f) const {
    return H.derivative(0)(h, f) * F.derivative(1)(h, f) - H.derivative(1)(h, f) * F.derivative(0)(h, f);
}

BaseMap BaseMap::identity() { return {Polynomial::variable(0), Polynomial::variable(1)}; }

std::pair<ParabolicReport, ParabolicReport> base_change_parabolic_test(const Polynomial& H, const Polynomial& F,
                                                                       const std::array<double, 3>& point,
                                                                       const BaseMap& phi, double threshold) {
    const double h0 = H(point[0], point[1], point[2]);
    const double f0 = F(point[0], point[1], point[2]);
    if (std::abs(phi.jacobian_det(h0, f0)) <= 1e-12) throw InputError("base change is degenerate at the point");
    const std::array<Polynomial, 3> subst{H, F, Polynomial::constant(0.0)};
    const Polynomial Hn = phi.H.compose(subst);
    const Polynomial Fn = phi.F.compose(subst);
    if (gradient(Fn, point).norm() <= 1e-12) throw InputError("base change: new F has vanishing differential");
    return {is_parabolic(H, F, point, threshold), is_parabolic(Hn, Fn, point, threshold)};
}

Polynomial one_dof_density(const Density& f) { return f.poly.at_lambda(0.0).scaled(1, -1.0); }

}  // namespace cusp
