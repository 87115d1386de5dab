#pragma once

namespace cusp {

// Gamma function (Lanczos approximation with reflection). Rejects poles.
double gamma(double x);
// 1/Gamma(x), zero at the poles.
double rgamma(double x);

// Gauss hypergeometric 2F1(p, q; r; z) for real z < 1. Arguments below -1 are
// mapped through the z -> 1/z connection formula, arguments in [-1, -1/2) through
// the Pfaff transformation.
double hyp2f1(double p, double q, double r, double z);

struct PuiseuxConstants {
    double C0;
    double C1;
};

// C0 = sqrt(pi)/3 Gamma(1/6)/Gamma(2/3), C1 = sqrt(pi)/3 Gamma(-1/6)/Gamma(1/3).
PuiseuxConstants constants();

// (2/3) int_0^1 (H + x^2)^{(j-2)/3} dx in closed form, j in {0, 1}, H > 0.
double reference_Jj(double H, int j);

}  // namespace cusp
