#include "vonroos/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace vonroos {

namespace {

using cplx = std::complex<double>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double require_positive(double v, const char* what) {
    if (!(v > 0.0)) {
        throw std::domain_error(std::string(what) + " must be positive");
    }
    return v;
}

}  // namespace

double ho_level(double omega, double l_abs, int n) {
    require_positive(omega, "ho_level: omega");
    return omega * (2.0 * n + l_abs + 1.0);
}

double coulomb_kz(double coupling, double l_abs, int n, SpectrumConvention conv) {
    require_positive(coupling, "coulomb_kz: coupling");
    const double offset = (conv == SpectrumConvention::AsPublished) ? 1.0 : 0.5;
    return coupling / (n + l_abs + offset);
}

double case1_j0_target(const QuantumNumbers& qn) {
    const double d = 2.0 * qn.n_z - 2.0 * qn.n_rho + 0.5;
    return 0.5 * (double(qn.m) * double(qn.m) + 3.0 - d * d);
}

std::string ConstraintReport::reason() const {
    if (!ell_admissible) return "ell_radicand_negative";
    if (!f_admissible) return "f_plus_quarter_negative";
    if (!sign_compatible) return "sign_incompatible";
    return "";
}

ConstraintReport constraint_residual(CaseId case_id, const AmbiguityParameters& params,
                                     double j, const QuantumNumbers& qn,
                                     const CaseCouplings& couplings, ResidualMode mode,
                                     SpectrumConvention conv) {
    ConstraintReport rep;
    rep.case_id = case_id;
    rep.j = j;
    rep.qn = qn;
    rep.alpha = params.alpha();
    rep.beta = params.beta();
    rep.gamma = params.gamma();
    rep.zeta_value = zeta(params);
    rep.f_value = barrier_f(params, j);

    const double zb = rep.zeta_value - params.beta();
    const double m_sq = double(qn.m) * double(qn.m);
    const double offset = (conv == SpectrumConvention::AsPublished) ? 1.0 : 0.5;
    const bool published = (mode == ResidualMode::PublishedFormula);

    // Inner radicand of the case bracket; evaluated through complex arithmetic
    // so a mildly inadmissible point still yields the real value the squared
    // equation defines (the flags record the inadmissibility regardless).
    double radicand = 0.0;
    cplx bracket;
    switch (case_id) {
        case CaseId::Case1: {
            radicand = m_sq + 3.0 - 2.0 * zb;
            const cplx s = std::sqrt(cplx(radicand));
            bracket = 2.0 * (qn.n_rho - qn.n_z) + s;
            break;
        }
        case CaseId::Case2: {
            const double abs_atilde =
                std::sqrt(require_positive(couplings.atilde_sq, "Case 2: atilde^2"));
            require_positive(couplings.A_tilde, "Case 2: A");
            radicand = m_sq + 0.75 - zb / 2.0;
            const cplx s = std::sqrt(cplx(radicand));
            if (published) {
                const cplx den = qn.n_rho + 1.0 + s;
                bracket = couplings.A_tilde * couplings.A_tilde / abs_atilde / (den * den) -
                          (2.0 * qn.n_z + 1.0);
            } else {
                const cplx kappa = couplings.A_tilde / (double(qn.n_rho) + s + offset);
                bracket = kappa * kappa / abs_atilde - (2.0 * qn.n_z + 1.0);
            }
            break;
        }
        case CaseId::Case3: {
            const double abs_a = std::sqrt(require_positive(couplings.a_sq, "Case 3: a^2"));
            require_positive(couplings.B_tilde, "Case 3: B");
            if (published) {
                radicand = m_sq + 0.75 - zb / 2.0;
                const cplx s = std::sqrt(cplx(radicand));
                bracket = (couplings.B_tilde / abs_a) / std::sqrt(2.0 * qn.n_rho + 1.0 + s) -
                          (qn.n_z + 1.0);
            } else {
                radicand = m_sq + 3.0 - 2.0 * zb;
                const cplx s = std::sqrt(cplx(radicand));
                const cplx kappa = std::sqrt(abs_a * (2.0 * qn.n_rho + 1.0 + s));
                bracket = couplings.B_tilde / kappa - double(qn.n_z) - offset;
            }
            break;
        }
        case CaseId::Case4: {
            require_positive(couplings.A_tilde, "Case 4: A");
            require_positive(couplings.B_tilde, "Case 4: B");
            radicand = m_sq + 0.75 - zb / 2.0;
            const cplx s = std::sqrt(cplx(radicand));
            const double ratio = couplings.B_tilde / couplings.A_tilde;
            if (published) {
                bracket = ratio * (qn.n_rho + 1.0 + s) - (qn.n_z + 1.0);
            } else {
                bracket = ratio * (double(qn.n_rho) + s + offset) - (double(qn.n_z) + offset);
            }
            break;
        }
    }

    const cplx lhs_c = -0.25 + bracket * bracket;
    const cplx residual_c = lhs_c - rep.f_value;

    rep.rhs = rep.f_value;
    const double imag_scale = std::max(1.0, std::abs(residual_c));
    if (std::abs(residual_c.imag()) <= 1e-12 * imag_scale) {
        rep.lhs = lhs_c.real();
        rep.residual = residual_c.real();
    } else {
        rep.lhs = kNaN;
        rep.residual = kNaN;
    }

    rep.ell_admissible = radicand >= 0.0;
    rep.f_admissible = rep.f_value + 0.25 >= 0.0;
    rep.sign_compatible =
        std::abs(bracket.imag()) <= 1e-12 * std::max(1.0, std::abs(bracket)) &&
        bracket.real() >= 0.0;
    return rep;
}

Family Family::alpha_equals_gamma() {
    Family f;
    f.kind = Kind::AlphaEqualsGamma;
    return f;
}

Family Family::fixed_beta(double beta) {
    Family f;
    f.kind = Kind::FixedBeta;
    f.beta = beta;
    return f;
}

AmbiguityParameters Family::at(double alpha) const {
    if (kind == Kind::AlphaEqualsGamma) {
        return AmbiguityParameters::relaxed(alpha, -1.0 - 2.0 * alpha, alpha);
    }
    return AmbiguityParameters::relaxed(alpha, beta, -1.0 - alpha - beta);
}

std::string Family::name() const {
    if (kind == Kind::AlphaEqualsGamma) return "alpha-eq-gamma";
    return "fixed-beta=" + std::to_string(beta);
}

namespace {

// Classic Brent root refinement on a bracketing interval [a, b], f(a) f(b) < 0.
template <typename F>
double brent_root(F&& f, double a, double b, double fa, double fb) {
    const double eps = std::numeric_limits<double>::epsilon();
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 1e-300;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    return b;
}

// Golden-section minimizer of |f| for tangent roots (zero touched without a
// sign change).
template <typename F>
double golden_min_abs(F&& f, double a, double b) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = std::abs(f(x1));
    double f2 = std::abs(f(x2));
    for (int iter = 0; iter < 120 && (b - a) > 1e-14 * (1.0 + std::abs(a) + std::abs(b));
         ++iter) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = std::abs(f(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = std::abs(f(x2));
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::vector<FamilyRoot> solve_family(CaseId case_id, const Family& family, double j,
                                     const QuantumNumbers& qn, const CaseCouplings& couplings,
                                     double lo, double hi, double tolerance,
                                     ResidualMode mode, SpectrumConvention conv) {
    if (!(lo < hi)) throw std::invalid_argument("solve_family: invalid bracket (lo >= hi)");
    if (!(tolerance > 0.0)) throw std::invalid_argument("solve_family: tolerance must be > 0");

    const auto report_at = [&](double alpha) {
        return constraint_residual(case_id, family.at(alpha), j, qn, couplings, mode, conv);
    };
    const auto f = [&](double alpha) { return report_at(alpha).residual; };
    // Inner radicand of the case bracket, used to split scan intervals at
    // admissibility boundaries.
    const auto radicand = [&](double alpha) {
        const AmbiguityParameters p = family.at(alpha);
        const double zb = zeta(p) - p.beta();
        const double m_sq = double(qn.m) * double(qn.m);
        const bool ups_half = (case_id == CaseId::Case1) ||
                              (case_id == CaseId::Case3 && mode == ResidualMode::RederivedMatching);
        return ups_half ? (m_sq + 3.0 - 2.0 * zb) : (m_sq + 0.75 - zb / 2.0);
    };

    constexpr int kSteps = 1024;
    std::vector<double> xs;
    xs.reserve(kSteps + 8);
    for (int i = 0; i <= kSteps; ++i) {
        xs.push_back(lo + (hi - lo) * double(i) / kSteps);
    }
    // Insert radicand zeros as breakpoints.
    for (int i = 0; i < kSteps; ++i) {
        double a = xs[i], b = xs[i + 1];
        double ra = radicand(a), rb = radicand(b);
        if ((ra < 0.0) == (rb < 0.0)) continue;
        for (int it = 0; it < 100 && (b - a) > 1e-15 * (1.0 + std::abs(a)); ++it) {
            const double mid = 0.5 * (a + b);
            if ((radicand(mid) < 0.0) == (ra < 0.0)) {
                a = mid;
                ra = radicand(a);
            } else {
                b = mid;
            }
        }
        xs.push_back(0.5 * (a + b));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<double> fs(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) fs[i] = f(xs[i]);

    std::vector<double> roots;
    // Sign-change brackets -> Brent.
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        const double fa = fs[i], fb = fs[i + 1];
        if (std::isnan(fa) || std::isnan(fb)) continue;
        if (fa == 0.0) {
            roots.push_back(xs[i]);
            continue;
        }
        if (fa * fb < 0.0) {
            roots.push_back(brent_root(f, xs[i], xs[i + 1], fa, fb));
        }
    }
    if (!fs.empty() && fs.back() == 0.0) roots.push_back(xs.back());

    // Tangent zeros: local minima of |f| with no sign change around them.
    for (size_t i = 1; i + 1 < xs.size(); ++i) {
        const double fa = fs[i - 1], fm = fs[i], fb = fs[i + 1];
        if (std::isnan(fa) || std::isnan(fm) || std::isnan(fb)) continue;
        if (fa * fm < 0.0 || fm * fb < 0.0) continue;  // already handled by Brent
        if (std::abs(fm) <= std::abs(fa) && std::abs(fm) <= std::abs(fb)) {
            const double x = golden_min_abs(f, xs[i - 1], xs[i + 1]);
            if (std::abs(f(x)) < tolerance) roots.push_back(x);
        }
    }

    std::sort(roots.begin(), roots.end());
    // Merge clusters well below the scanner's resolution, keeping the best
    // representative (double roots at plateaus are reported once).
    const double cluster = 1e-6 * (hi - lo);
    std::vector<FamilyRoot> out;
    for (double r : roots) {
        ConstraintReport rep = report_at(r);
        if (!(std::abs(rep.residual) < tolerance)) continue;
        if (!out.empty() && std::abs(r - out.back().alpha) <= cluster) {
            if (std::abs(rep.residual) < std::abs(out.back().report.residual)) {
                out.back() = FamilyRoot{r, rep};
            }
            continue;
        }
        out.push_back(FamilyRoot{r, rep});
    }
    return out;
}

std::vector<ConstraintReport> scan(CaseId case_id, const AmbiguityParameters& params,
                                   double j, const ScanRange& range,
                                   const CaseCouplings& couplings, ResidualMode mode,
                                   SpectrumConvention conv) {
    std::vector<ConstraintReport> out;
    for (int n_rho = 0; n_rho <= range.n_rho_max; ++n_rho) {
        for (int n_z = 0; n_z <= range.n_z_max; ++n_z) {
            for (int m = 0; m <= range.m_max; ++m) {
                out.push_back(constraint_residual(case_id, params, j,
                                                  QuantumNumbers(n_rho, n_z, m), couplings,
                                                  mode, conv));
            }
        }
    }
    return out;
}

}  // namespace vonroos
