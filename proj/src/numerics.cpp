#include "vonroos/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vonroos {

const Tolerances& tolerances() {
    static const Tolerances t;
    return t;
}

Grid1D Grid1D::with_points(double x_max, int n_points) {
    if (!(x_max > 0.0)) throw std::invalid_argument("Grid1D: x_max must be positive");
    if (n_points < 200) throw std::invalid_argument("Grid1D: n_points must be >= 200");
    Grid1D g;
    g.x_max = x_max;
    g.n_points = n_points;
    g.h = x_max / (n_points + 1);
    return g;
}

Grid1D Grid1D::with_spacing(double x_max, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("Grid1D: h must be positive");
    const int n = int(std::lround(x_max / h)) - 1;
    return with_points(x_max, n);
}

Grid1D Grid1D::refined() const { return with_points(x_max, 2 * n_points + 1); }

Grid1D default_grid(const EffectiveProblem& problem, int count, double h) {
    const double l = problem.l_abs() ? *problem.l_abs() : 0.0;
    double x_max = 0.0;
    switch (problem.kind) {
        case PotentialKind::HarmonicOscillator: {
            if (!(problem.coupling > 0.0)) {
                throw std::invalid_argument("default_grid: HO coupling must be positive");
            }
            const double omega = 2.0 * std::sqrt(problem.coupling);
            x_max = 6.0 * std::sqrt((2.0 * count + l + 1.0) / omega);
            break;
        }
        case PotentialKind::Coulomb:
            if (!(problem.coupling > 0.0)) {
                throw std::invalid_argument("default_grid: Coulomb coupling must be positive");
            }
            x_max = 40.0 * (count + l + 1.0) / problem.coupling;
            break;
        case PotentialKind::None:
            throw std::invalid_argument("default_grid: free problem has no length scale");
    }
    return Grid1D::with_spacing(x_max, h);
}

namespace {

// Number of eigenvalues of the shifted tridiagonal matrix below x,
// by the Sturm sequence of leading principal minors.
int sturm_count_below(const std::vector<double>& diag, double e_sq, double x) {
    int count = 0;
    double q = 1.0;
    for (size_t i = 0; i < diag.size(); ++i) {
        q = diag[i] - x - (i > 0 ? e_sq / q : 0.0);
        if (q < 0.0) ++count;
        if (q == 0.0) q = 1e-30;
    }
    return count;
}

// One solve of (T - lambda I) x = rhs for the symmetric tridiagonal matrix
// with constant off-diagonal e, by Gaussian elimination with partial pivoting
// (fill-in limited to a second superdiagonal).
void solve_shifted(const std::vector<double>& diag, double e, double lambda,
                   std::vector<double>& x) {
    const int n = int(diag.size());
    std::vector<double> ud(n), u1(n, 0.0), u2(n, 0.0);
    double p = diag[0] - lambda;
    double q = (n > 1) ? e : 0.0;
    double r = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        double ai = e;
        double bi = diag[i + 1] - lambda;
        double ci = (i + 2 < n) ? e : 0.0;
        if (std::abs(ai) > std::abs(p)) {
            std::swap(p, ai);
            std::swap(q, bi);
            std::swap(r, ci);
            std::swap(x[i], x[i + 1]);
        }
        if (p == 0.0) p = 1e-300;
        const double m = ai / p;
        ud[i] = p;
        u1[i] = q;
        u2[i] = r;
        p = bi - m * q;
        q = ci - m * r;
        r = 0.0;
        x[i + 1] -= m * x[i];
    }
    ud[n - 1] = (p == 0.0) ? 1e-300 : p;

    x[n - 1] /= ud[n - 1];
    if (n >= 2) x[n - 2] = (x[n - 2] - u1[n - 2] * x[n - 1]) / ud[n - 2];
    for (int i = n - 3; i >= 0; --i) {
        x[i] = (x[i] - u1[i] * x[i + 1] - u2[i] * x[i + 2]) / ud[i];
    }
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

EigenResult eigen_solve(const EffectiveProblem& problem, int count, const Grid1D& grid) {
    if (count < 1) throw std::invalid_argument("eigen_solve: count must be >= 1");
    if (count > grid.n_points / 8) {
        throw std::invalid_argument(
            "eigen_solve: grid too coarse for the requested mode count");
    }

    const int n = grid.n_points;
    const double h = grid.h;
    const double inv_h2 = 1.0 / (h * h);
    const double e = -inv_h2;
    const double e_sq = inv_h2 * inv_h2;

    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) {
        const double x = grid.x(i);
        diag[i] = 2.0 * inv_h2 + problem.barrier_coefficient / (x * x) + problem.potential(x);
    }

    double glo = diag[0], ghi = diag[0];
    for (double d : diag) {
        glo = std::min(glo, d - 2.0 * inv_h2);
        ghi = std::max(ghi, d + 2.0 * inv_h2);
    }

    const Tolerances& tol = tolerances();
    EigenResult result;
    result.grid = grid;
    for (int k = 0; k < count; ++k) {
        double lo = glo, hi = ghi;
        for (int it = 0; it < 160; ++it) {
            const double width_tol =
                tol.eigen_bisection_abs + 8.0 * std::numeric_limits<double>::epsilon() *
                                              std::max(std::abs(lo), std::abs(hi));
            if (hi - lo <= width_tol) break;
            const double mid = 0.5 * (lo + hi);
            if (sturm_count_below(diag, e_sq, mid) >= k + 1) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        result.eigenvalues.push_back(0.5 * (lo + hi));
    }

    const double matrix_scale = std::max(std::abs(glo), std::abs(ghi));
    for (int k = 0; k < count; ++k) {
        const double lambda = result.eigenvalues[k];
        std::vector<double> v(n, 1.0 / std::sqrt(double(n)));
        bool converged = false;
        for (int iter = 0; iter < 8; ++iter) {
            solve_shifted(diag, e, lambda, v);
            // Re-orthogonalize against close-lying converged modes.
            for (int kk = 0; kk < k; ++kk) {
                if (std::abs(result.eigenvalues[kk] - lambda) <
                    tol.eigen_close_rel * matrix_scale) {
                    const std::vector<double>& w = result.eigenfunctions[kk];
                    double dot = 0.0;
                    for (int i = 0; i < n; ++i) dot += v[i] * w[i];
                    dot *= h;  // w carries unit trapezoid norm
                    for (int i = 0; i < n; ++i) v[i] -= dot * w[i];
                }
            }
            const double nv = norm2(v);
            if (nv == 0.0) continue;
            for (double& x : v) x /= nv;
            if (iter >= 1) {
                // Residual check ||T v - lambda v||_inf against the matrix scale.
                double res = 0.0;
                for (int i = 0; i < n; ++i) {
                    double tv = diag[i] * v[i];
                    if (i > 0) tv += e * v[i - 1];
                    if (i + 1 < n) tv += e * v[i + 1];
                    res = std::max(res, std::abs(tv - lambda * v[i]));
                }
                if (res <= tol.eigen_residual_rel * matrix_scale) {
                    converged = true;
                    break;
                }
            }
        }
        if (!converged) {
            throw std::runtime_error("eigen_solve: inverse iteration failed to converge");
        }
        // Unit trapezoid norm and a deterministic sign.
        const double scale = 1.0 / std::sqrt(h);
        int imax = 0;
        for (int i = 0; i < n; ++i) {
            if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
        }
        const double sign = (v[imax] < 0.0) ? -1.0 : 1.0;
        for (double& x : v) x *= sign * scale;
        result.eigenfunctions.push_back(std::move(v));
    }
    return result;
}

double laguerre(int n, double a, double x) {
    if (n < 0) throw std::invalid_argument("laguerre: n must be >= 0");
    if (n == 0) return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + a - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + a - x) * l - (k + a) * lm1) / (k + 1.0);
        lm1 = l;
        l = next;
    }
    return l;
}

double norm_check(const std::vector<double>& u, const Grid1D& grid) {
    if (int(u.size()) != grid.n_points) {
        throw std::invalid_argument("norm_check: sample count does not match grid");
    }
    double s = 0.0;
    for (double x : u) s += x * x;
    return s * grid.h;
}

std::function<double(double)> ho_radial_profile(int n, double l_abs, double w) {
    if (n < 0) throw std::invalid_argument("ho_radial_profile: n must be >= 0");
    return [n, l_abs, w](double x) {
        return std::pow(x, l_abs + 0.5) * std::exp(-w * x * x / 4.0) *
               laguerre(n, l_abs, w * x * x / 2.0);
    };
}

std::function<double(double)> coulomb_radial_profile(int n, double l_abs, double kappa) {
    if (n < 0) throw std::invalid_argument("coulomb_radial_profile: n must be >= 0");
    const double l = l_abs - 0.5;
    return [n, l, kappa](double x) {
        return std::pow(x, l + 1.0) * std::exp(-kappa * x) *
               laguerre(n, 2.0 * l + 1.0, 2.0 * kappa * x);
    };
}

std::function<double(double)> analytic_eigenfunction(PotentialKind kind, int n,
                                                     double l_abs, double coupling) {
    if (!(coupling > 0.0)) {
        throw std::invalid_argument("analytic_eigenfunction: coupling must be positive");
    }
    switch (kind) {
        case PotentialKind::HarmonicOscillator:
            return ho_radial_profile(n, l_abs, coupling);
        case PotentialKind::Coulomb:
            return coulomb_radial_profile(
                n, l_abs, coulomb_kz(coupling, l_abs, n, SpectrumConvention::OracleCalibrated));
        case PotentialKind::None:
            break;
    }
    throw std::invalid_argument("analytic_eigenfunction: unsupported potential kind");
}

std::vector<double> sample_on_grid(const std::function<double(double)>& fn,
                                   const Grid1D& grid) {
    std::vector<double> out(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) out[i] = fn(grid.x(i));
    return out;
}

std::vector<double> normalized_samples(const std::function<double(double)>& fn,
                                       const Grid1D& grid) {
    std::vector<double> u = sample_on_grid(fn, grid);
    const double nrm = std::sqrt(norm_check(u, grid));
    if (!(nrm > 0.0)) throw std::runtime_error("normalized_samples: zero norm");
    for (double& x : u) x /= nrm;
    return u;
}

WavefunctionAssembly assemble_case_state(CaseId case_id, const AmbiguityParameters& params,
                                         double j, const QuantumNumbers& qn,
                                         const CaseCouplings& couplings, double b) {
    // Only the oracle-calibrated kappa produces genuine eigenfunctions.
    constexpr SpectrumConvention conv = SpectrumConvention::OracleCalibrated;
    const AssembledPotential pot = make_case_potential(case_id, couplings, b, j);

    const double zb = zeta(params) - params.beta();
    const auto ell = effective_ell(pot.pdm.upsilon, qn.m, zb);
    if (!ell) {
        throw std::domain_error("assemble_case_state: effective ell radicand is negative");
    }
    const BarrierStrength bs = script_l(barrier_f(params, j));
    if (!bs.admissible()) {
        throw std::domain_error("assemble_case_state: F + 1/4 is negative");
    }
    const double big_l = *bs.script_l_abs;

    ModeSolution radial, axial;
    switch (case_id) {
        case CaseId::Case1: {
            if (!(couplings.a_sq > 0.0) || !(couplings.atilde_sq > 0.0)) {
                throw std::domain_error("assemble_case_state: Case 1 needs a^2, atilde^2 > 0");
            }
            const double omega_r = std::sqrt(couplings.a_sq);
            radial.u = ho_radial_profile(qn.n_rho, *ell, omega_r);
            radial.eigenvalue = ho_level(omega_r, *ell, qn.n_rho);
            // Formal branch: the axial factor solves the same confining
            // oscillator at the negative frequency -sqrt(atilde^2), giving the
            // negative eigenvalue the radial side demands. It grows like
            // exp(+|atilde| z^2/4); the zero-energy Case 1 state is formal.
            const double w_z = -std::sqrt(couplings.atilde_sq);
            axial.u = ho_radial_profile(qn.n_z, big_l, w_z);
            axial.eigenvalue = w_z * (2.0 * qn.n_z + big_l + 1.0);
            break;
        }
        case CaseId::Case2: {
            if (!(couplings.atilde_sq > 0.0)) {
                throw std::domain_error("assemble_case_state: Case 2 needs atilde^2 > 0");
            }
            const double kappa_r = coulomb_kz(couplings.A_tilde, *ell, qn.n_rho, conv);
            radial.u = coulomb_radial_profile(qn.n_rho, *ell, kappa_r);
            radial.eigenvalue = -kappa_r * kappa_r;
            const double omega_z = std::sqrt(couplings.atilde_sq);
            axial.u = ho_radial_profile(qn.n_z, big_l, omega_z);
            axial.eigenvalue = ho_level(omega_z, big_l, qn.n_z);
            break;
        }
        case CaseId::Case3: {
            if (!(couplings.a_sq > 0.0)) {
                throw std::domain_error("assemble_case_state: Case 3 needs a^2 > 0");
            }
            const double omega_r = std::sqrt(couplings.a_sq);
            radial.u = ho_radial_profile(qn.n_rho, *ell, omega_r);
            radial.eigenvalue = ho_level(omega_r, *ell, qn.n_rho);
            const double kappa_z = coulomb_kz(couplings.B_tilde, big_l, qn.n_z, conv);
            axial.u = coulomb_radial_profile(qn.n_z, big_l, kappa_z);
            axial.eigenvalue = -kappa_z * kappa_z;
            break;
        }
        case CaseId::Case4: {
            // Radial demands k_z^2 = +kappa_rho^2, axial k_z^2 = -kappa_z^2:
            // no real matched constant exists; assemble_wavefunction reports it.
            const double kappa_r = coulomb_kz(couplings.A_tilde, *ell, qn.n_rho, conv);
            radial.u = coulomb_radial_profile(qn.n_rho, *ell, kappa_r);
            radial.eigenvalue = -kappa_r * kappa_r;
            const double kappa_z = coulomb_kz(couplings.B_tilde, big_l, qn.n_z, conv);
            axial.u = coulomb_radial_profile(qn.n_z, big_l, kappa_z);
            axial.eigenvalue = -kappa_z * kappa_z;
            break;
        }
    }
    return assemble_wavefunction(pot, params, qn, radial, axial);
}

namespace {

// Row/column caches for powers of the separable mass
// M^p = (b/2)^p z^(j p) rho^((2 upsilon + 1) p).
struct MassPower {
    std::vector<double> rho_part;  // indexed by full node 0..Nr+1
    std::vector<double> z_part;    // indexed by full node 0..Nz+1

    double at(int i, int k) const { return rho_part[i] * z_part[k]; }
};

MassPower mass_power(const PdmSpec& pdm, double expo, int nr, double hr, int nz, double hz,
                     bool half_rho, bool half_z) {
    MassPower mp;
    const double scale = std::pow(pdm.b / 2.0, expo);
    const double er = (2.0 * pdm.upsilon + 1.0) * expo;
    const double ez = pdm.j * expo;
    mp.rho_part.resize(nr + 2);
    mp.z_part.resize(nz + 2);
    for (int i = 0; i <= nr + 1; ++i) {
        const double rho = (half_rho ? (i + 0.5) : double(i)) * hr;
        mp.rho_part[i] = (rho > 0.0) ? scale * std::pow(rho, er) : 0.0;
    }
    for (int k = 0; k <= nz + 1; ++k) {
        const double z = (half_z ? (k + 0.5) : double(k)) * hz;
        mp.z_part[k] = (z > 0.0) ? std::pow(z, ez) : 0.0;
    }
    return mp;
}

}  // namespace

ResidualField2D von_roos_residual_field(const PdmSpec& pdm,
                                        const AmbiguityParameters& params,
                                        const AssembledPotential& potential,
                                        const WavefunctionAssembly& psi,
                                        const Grid1D& grid_rho, const Grid1D& grid_z) {
    const int nr = grid_rho.n_points;
    const int nz = grid_z.n_points;
    const double hr = grid_rho.h;
    const double hz = grid_z.h;
    const int wr = nr + 2;  // full-node row width including both walls
    const int wz = nz + 2;

    const auto idx = [wz](int i, int k) { return size_t(i) * wz + k; };

    // psi on all full nodes; the walls carry the Dirichlet zeros, the far
    // edges carry true samples (no artificial truncation).
    std::vector<double> psv(size_t(wr) * wz, 0.0);
    for (int i = 1; i <= nr + 1; ++i) {
        for (int k = 1; k <= nz + 1; ++k) {
            psv[idx(i, k)] = psi.profile(i * hr, k * hz);
        }
    }

    const double alpha = params.alpha();
    const double beta = params.beta();
    const double gamma = params.gamma();

    const MassPower mpa = mass_power(pdm, alpha, nr, hr, nz, hz, false, false);
    const MassPower mpg = mass_power(pdm, gamma, nr, hr, nz, hz, false, false);
    const MassPower mps = mass_power(pdm, alpha + beta + gamma, nr, hr, nz, hz, false, false);
    const MassPower mpb_rho = mass_power(pdm, beta, nr, hr, nz, hz, true, false);
    const MassPower mpb_z = mass_power(pdm, beta, nr, hr, nz, hz, false, true);

    // g = M^inner psi on full nodes (zero on the walls by the Dirichlet limit).
    std::vector<double> ga(size_t(wr) * wz, 0.0), gg(size_t(wr) * wz, 0.0);
    for (int i = 1; i <= nr + 1; ++i) {
        for (int k = 1; k <= nz + 1; ++k) {
            const double p = psv[idx(i, k)];
            ga[idx(i, k)] = mpa.at(i, k) * p;
            gg[idx(i, k)] = mpg.at(i, k) * p;
        }
    }

    const double m_sq = double(psi.m) * double(psi.m);

    ResidualField2D field;
    field.grid_rho = grid_rho;
    field.grid_z = grid_z;
    field.values.assign(size_t(nr) * nz, 0.0);

    for (int i = 1; i <= nr; ++i) {
        const double rho = i * hr;
        const double rho_ph = rho + 0.5 * hr;
        const double rho_mh = rho - 0.5 * hr;
        for (int k = 1; k <= nz; ++k) {
            const double z = k * hz;
            const double p = psv[idx(i, k)];

            double ordered[2];
            const std::vector<double>* gs[2] = {&ga, &gg};
            const MassPower* outer[2] = {&mpg, &mpa};
            for (int t = 0; t < 2; ++t) {
                const std::vector<double>& g = *gs[t];
                const double g_c = g[idx(i, k)];
                const double flux_rho =
                    (rho_ph * mpb_rho.at(i, k) * (g[idx(i + 1, k)] - g_c) -
                     rho_mh * mpb_rho.at(i - 1, k) * (g_c - g[idx(i - 1, k)])) /
                    (hr * hr * rho);
                const double flux_z =
                    (mpb_z.at(i, k) * (g[idx(i, k + 1)] - g_c) -
                     mpb_z.at(i, k - 1) * (g_c - g[idx(i, k - 1)])) /
                    (hz * hz);
                ordered[t] = outer[t]->at(i, k) * (flux_rho + flux_z);
            }

            double h_psi = -0.25 * (ordered[0] + ordered[1]) + potential.at(rho, z) * p;
            if (m_sq != 0.0) {
                h_psi += m_sq / (2.0 * rho * rho) * mps.at(i, k) * p;
            }
            field.values[size_t(i - 1) * nz + (k - 1)] = h_psi;
        }
    }
    return field;
}

namespace {

ResidualReport2D norms_from_field(const ResidualField2D& field,
                                  const WavefunctionAssembly& psi) {
    const int nr = field.grid_rho.n_points;
    const int nz = field.grid_z.n_points;
    const double hr = field.grid_rho.h;
    const double hz = field.grid_z.h;

    // Two-node layer at every edge excluded from the norms.
    double res_sq = 0.0, wf_sq = 0.0;
    for (int i = 2; i < nr - 2; ++i) {
        for (int k = 2; k < nz - 2; ++k) {
            const double r = field.at(i, k);
            const double p = psi.profile((i + 1) * hr, (k + 1) * hz);
            res_sq += r * r;
            wf_sq += p * p;
        }
    }
    ResidualReport2D rep;
    rep.h_rho = hr;
    rep.h_z = hz;
    rep.residual_norm = std::sqrt(res_sq * hr * hz);
    rep.wavefunction_norm = std::sqrt(wf_sq * hr * hz);
    return rep;
}

}  // namespace

ResidualReport2D von_roos_residual(const PdmSpec& pdm, const AmbiguityParameters& params,
                                   const AssembledPotential& potential,
                                   const WavefunctionAssembly& psi, const Grid1D& grid_rho,
                                   const Grid1D& grid_z) {
    return norms_from_field(von_roos_residual_field(pdm, params, potential, psi, grid_rho, grid_z),
                            psi);
}

std::pair<ResidualReport2D, ResidualReport2D> von_roos_residual_refined(
    const PdmSpec& pdm, const AmbiguityParameters& params,
    const AssembledPotential& potential, const WavefunctionAssembly& psi,
    const Grid1D& grid_rho, const Grid1D& grid_z) {
    ResidualReport2D coarse =
        von_roos_residual(pdm, params, potential, psi, grid_rho, grid_z);
    ResidualReport2D fine = von_roos_residual(pdm, params, potential, psi,
                                              grid_rho.refined(), grid_z.refined());
    fine.convergence_order = std::log2(coarse.residual_norm / fine.residual_norm);
    return {coarse, fine};
}

}  // namespace vonroos
