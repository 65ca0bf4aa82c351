// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its own tolerances; nothing is calibrated at
// run time.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vonroos/ambiguity.hpp"
#include "vonroos/cli.hpp"
#include "vonroos/numerics.hpp"
#include "vonroos/separation.hpp"
#include "vonroos/spectra.hpp"

using namespace vonroos;

namespace {

int g_failures = 0;

class Criterion {
public:
    explicit Criterion(int number, std::string title)
        : number_(number), title_(std::move(title)),
          start_(std::chrono::steady_clock::now()) {}

    void require(bool ok, const std::string& detail) {
        if (!ok) {
            failed_details_.push_back(detail);
        }
    }

    ~Criterion() {
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start_)
                                 .count();
        if (failed_details_.empty()) {
            std::printf("[PASS] criterion %d: %s (%lld ms)\n", number_, title_.c_str(),
                        static_cast<long long>(elapsed));
        } else {
            ++g_failures;
            std::printf("[FAIL] criterion %d: %s (%lld ms)\n", number_, title_.c_str(),
                        static_cast<long long>(elapsed));
            for (const auto& d : failed_details_) {
                std::printf("       %s\n", d.c_str());
            }
        }
        std::fflush(stdout);
    }

private:
    int number_;
    std::string title_;
    std::vector<std::string> failed_details_;
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void criterion_1() {
    Criterion c(1, "Case 1, j = 0 ground constraint singles out the MM set");
    const QuantumNumbers qn(0, 0, 0);
    const CaseCouplings couplings;
    for (const NamedSet& s : named_sets()) {
        const auto rep = constraint_residual(CaseId::Case1, s.params, 0.0, qn, couplings);
        if (s.id == NamedSetId::MustafaMazharimousavi) {
            c.require(std::abs(rep.residual) < 1e-12,
                      "MM residual " + fmt(rep.residual) + " not < 1e-12");
        } else {
            c.require(std::abs(rep.residual) > 0.1,
                      std::string(s.short_name) + " residual " + fmt(rep.residual) +
                          " not > 0.1");
        }
    }
    // Cross-check through the CLI surface.
    std::ostringstream out, err;
    const int code = run({"constraint", "residual", "--case", "1", "--j", "0", "--nrho",
                          "0", "--nz", "0", "--m", "0", "--set", "mm", "--format", "json"},
                         out, err);
    c.require(code == 0, "CLI exit code " + std::to_string(code));
    c.require(out.str().find("\"residual\":0") != std::string::npos,
              "CLI json missing residual 0: " + out.str());
}

void criterion_2() {
    Criterion c(2, "alpha = gamma family over [-1, 0] has exactly the two hand-derived roots");
    const auto roots = solve_family(CaseId::Case1, Family::alpha_equals_gamma(), 0.0,
                                    QuantumNumbers(0, 0, 0), CaseCouplings{}, -1.0, 0.0,
                                    1e-12);
    c.require(roots.size() == 2, "expected 2 roots, got " + std::to_string(roots.size()));
    if (roots.size() == 2) {
        c.require(std::abs(roots[0].alpha - (-0.75)) < 1e-9,
                  "first root " + fmt(roots[0].alpha) + " != -3/4");
        c.require(std::abs(roots[1].alpha - (-0.25)) < 1e-9,
                  "second root " + fmt(roots[1].alpha) + " != -1/4");
        for (const auto& r : roots) {
            c.require(std::abs(r.report.residual) < 1e-12,
                      "root residual " + fmt(r.report.residual) + " not < 1e-12");
        }
    }
}

void criterion_3() {
    Criterion c(3, "eigensolver reproduces the analytic oscillator ladders to 1e-3");
    const double expected[2][3] = {{3.0, 7.0, 11.0}, {5.0, 9.0, 13.0}};
    const double barriers[2] = {0.0, 2.0};
    for (int b = 0; b < 2; ++b) {
        EffectiveProblem prob;
        prob.kind = PotentialKind::HarmonicOscillator;
        prob.coupling = 1.0;  // omega = 2
        prob.barrier_coefficient = barriers[b];
        const auto res = eigen_solve(prob, 3, default_grid(prob, 3));
        for (int n = 0; n < 3; ++n) {
            c.require(std::abs(res.eigenvalues[n] - expected[b][n]) < 1e-3,
                      "C = " + fmt(barriers[b]) + ", level " + std::to_string(n) + ": " +
                          fmt(res.eigenvalues[n]) + " vs " + fmt(expected[b][n]));
        }
    }
}

void criterion_4() {
    Criterion c(4, "Coulomb ground energy matches the oracle convention and rejects the published one");
    EffectiveProblem prob;
    prob.kind = PotentialKind::Coulomb;
    prob.coupling = 1.0;
    prob.barrier_coefficient = 0.0;
    const auto res = eigen_solve(prob, 1, Grid1D::with_spacing(60.0, 2e-3));
    const double e_num = res.eigenvalues[0];

    const double k_oracle = coulomb_kz(1.0, 0.5, 0, SpectrumConvention::OracleCalibrated);
    const double e_oracle = -k_oracle * k_oracle;
    const double k_pub = coulomb_kz(1.0, 0.5, 0, SpectrumConvention::AsPublished);
    const double e_pub = -k_pub * k_pub;

    c.require(std::abs(e_num - (-1.0)) < 1e-3,
              "numeric ground energy " + fmt(e_num) + " not within 1e-3 of -1");
    c.require(std::abs(e_num - e_oracle) < 1e-3,
              "oracle convention misses: " + fmt(e_num) + " vs " + fmt(e_oracle));
    c.require(std::abs(e_num - e_pub) > 0.5,
              "published convention unexpectedly close: " + fmt(e_num) + " vs " +
                  fmt(e_pub) + " (gap must exceed 0.5)");
    std::printf("       [info] numeric %.6f, oracle convention %.6f, published %.6f\n",
                e_num, e_oracle, e_pub);
}

void criterion_5() {
    Criterion c(5, "2D operator residual: order-2 convergence when the constraint holds, >= 10x blowup when broken");
    const auto mm = named_set(NamedSetId::MustafaMazharimousavi);
    const QuantumNumbers qn(0, 0, 0);
    const CaseCouplings couplings;
    const auto pot = make_case_potential(CaseId::Case1, couplings, 2.0, 0.0);
    const auto psi = assemble_case_state(CaseId::Case1, mm, 0.0, qn, couplings, 2.0);

    const Grid1D grho = Grid1D::with_spacing(4.0, 0.01);
    const Grid1D gz = Grid1D::with_spacing(4.0, 0.01);
    const auto [coarse, fine] = von_roos_residual_refined(pot.pdm, mm, pot, psi, grho, gz);

    c.require(fine.convergence_order.has_value(), "no convergence order reported");
    if (fine.convergence_order) {
        c.require(*fine.convergence_order > 1.7 && *fine.convergence_order < 2.3,
                  "convergence order " + fmt(*fine.convergence_order) + " outside 2 +- 0.3");
    }

    const auto perturbed = AmbiguityParameters(-0.25, -0.4, -0.35);
    const auto broken = von_roos_residual(pot.pdm, perturbed, pot, psi, grho, gz);
    c.require(broken.residual_norm >= 10.0 * coarse.residual_norm,
              "perturbed residual " + fmt(broken.residual_norm) + " not >= 10x satisfied " +
                  fmt(coarse.residual_norm));
    std::printf(
        "       [info] residual %.3e (h=%.3g) -> %.3e (h=%.3g), order %.3f; perturbed %.3e\n",
        coarse.residual_norm, coarse.h_rho, fine.residual_norm, fine.h_rho,
        fine.convergence_order ? *fine.convergence_order : 0.0, broken.residual_norm);
}

void criterion_6() {
    Criterion c(6, "algebraic invariants suite");
    std::mt19937 rng(20260809);
    std::uniform_real_distribution<double> pdist(-1.5, 0.5);
    std::uniform_real_distribution<double> jdist(-2.0, 2.0);

    // zeta and residual symmetry under alpha <-> gamma; F(., 0) = 0.
    for (int i = 0; i < 300; ++i) {
        const double a = pdist(rng), b = pdist(rng), g = pdist(rng);
        const auto p = AmbiguityParameters::relaxed(a, b, g);
        const auto q = AmbiguityParameters::relaxed(g, b, a);
        c.require(zeta(p) == zeta(q), "zeta swap symmetry broken");
        c.require(barrier_f(p, 0.0) == 0.0, "F(params, 0) != 0");
        const double j = jdist(rng);
        const QuantumNumbers qn(i % 3, (i / 3) % 3, i % 2);
        for (const CaseId case_id :
             {CaseId::Case1, CaseId::Case2, CaseId::Case3, CaseId::Case4}) {
            const auto r1 = constraint_residual(case_id, p, j, qn, CaseCouplings{});
            const auto r2 = constraint_residual(case_id, q, j, qn, CaseCouplings{});
            const bool same = (std::isnan(r1.residual) && std::isnan(r2.residual)) ||
                              r1.residual == r2.residual;
            c.require(same, "residual swap symmetry broken");
        }
    }

    // |L|^2 - F = 1/4 for admissible F.
    std::uniform_real_distribution<double> fdist(-0.25, 30.0);
    for (int i = 0; i < 300; ++i) {
        const double f = fdist(rng);
        const auto bs = script_l(f);
        c.require(bs.admissible(), "script_l inadmissible on admissible radicand");
        if (bs.admissible()) {
            const double l = *bs.script_l_abs;
            c.require(std::abs(l * l - f - 0.25) < 1e-14 * std::max(1.0, std::abs(f)),
                      "|L|^2 - F != 1/4");
        }
    }

    // effective_ell degeneracy at upsilon = -1/2.
    std::uniform_real_distribution<double> zdist(-30.0, 30.0);
    for (int m = -5; m <= 5; ++m) {
        for (int i = 0; i < 30; ++i) {
            const auto ell = effective_ell(-0.5, m, zdist(rng));
            c.require(ell.has_value() && *ell == double(std::abs(m)),
                      "effective_ell(-1/2, m) != |m|");
        }
    }

    // Case 4 coupling-ratio invariance.
    std::uniform_real_distribution<double> cdist(0.2, 5.0);
    const auto bdd = named_set(NamedSetId::BenDanielDuke);
    for (int i = 0; i < 200; ++i) {
        CaseCouplings c1;
        c1.A_tilde = cdist(rng);
        c1.B_tilde = cdist(rng);
        CaseCouplings c2 = c1;
        const double scale = cdist(rng);
        c2.A_tilde *= scale;
        c2.B_tilde *= scale;
        const QuantumNumbers qn(i % 2, i % 3, (i / 3) % 2);
        const auto r1 = constraint_residual(CaseId::Case4, bdd, 0.7, qn, c1);
        const auto r2 = constraint_residual(CaseId::Case4, bdd, 0.7, qn, c2);
        c.require(std::abs(r1.residual - r2.residual) <=
                      1e-12 * std::max(1.0, std::abs(r1.residual)),
                  "Case 4 residual not a function of B/A alone");
    }

    // Case 1 residual depends on n_rho - n_z only.
    const auto mm = named_set(NamedSetId::MustafaMazharimousavi);
    for (int d = -2; d <= 2; ++d) {
        const QuantumNumbers base(std::max(0, d), std::max(0, -d), 1);
        const auto r0 = constraint_residual(CaseId::Case1, mm, 0.8, base, CaseCouplings{});
        for (int t = 1; t <= 3; ++t) {
            const QuantumNumbers shifted(base.n_rho + t, base.n_z + t, 1);
            const auto rt =
                constraint_residual(CaseId::Case1, mm, 0.8, shifted, CaseCouplings{});
            c.require(r0.residual == rt.residual,
                      "Case 1 residual not a function of n_rho - n_z alone");
        }
    }

    // Closed-form potentials equal the quotient assembly at 1e6 random points.
    std::uniform_real_distribution<double> coord(1e-3, 10.0);
    int bad_points = 0;
    for (const CaseId case_id :
         {CaseId::Case1, CaseId::Case2, CaseId::Case3, CaseId::Case4}) {
        const CaseCouplings cc{cdist(rng), cdist(rng), cdist(rng), cdist(rng)};
        const double b = cdist(rng);
        const double j = jdist(rng);
        const auto pot = make_case_potential(case_id, cc, b, j);
        const double upsilon = pot.pdm.upsilon;
        for (int i = 0; i < 250000; ++i) {
            const double rho = coord(rng);
            const double z = coord(rng);
            const double weight = b * std::pow(z, j) * std::pow(rho, 2.0 * upsilon + 1.0);
            const double quotient =
                (pot.radial_component(rho) + pot.axial_component(z)) / weight;
            const double closed = pot.at(rho, z);
            // Relative to the assembled term magnitude (the sum may cancel).
            const double scale = std::max(
                {1e-300, std::abs(closed), std::abs(quotient),
                 (std::abs(pot.radial_component(rho)) + std::abs(pot.axial_component(z))) /
                     weight});
            if (std::abs(closed - quotient) / scale >= 1e-12) ++bad_points;
        }
    }
    c.require(bad_points == 0,
              std::to_string(bad_points) + " of 1e6 points exceed 1e-12 relative error");
}

void criterion_7() {
    Criterion c(7, "scan commands are byte-deterministic across invocations");
    const std::vector<std::string> argv = {
        "constraint", "scan", "--case", "1",  "--set",    "mm", "--j", "0.5",
        "--nrho-max", "3",    "--nz-max", "3", "--m-max",  "3",  "--format", "csv"};
    std::ostringstream out1, err1, out2, err2;
    const int c1 = run(argv, out1, err1);
    const int c2 = run(argv, out2, err2);
    c.require(c1 == 0 && c2 == 0, "scan exit codes " + std::to_string(c1) + "/" +
                                      std::to_string(c2));
    c.require(out1.str() == out2.str(), "scan outputs differ between invocations");
    c.require(!out1.str().empty(), "scan output empty");

    const std::vector<std::string> argv_json = {
        "constraint", "scan", "--case", "4", "--set", "bdd", "--nrho-max", "2",
        "--nz-max",   "2",    "--m-max", "1", "--format", "json"};
    std::ostringstream o1, o2, e1, e2;
    run(argv_json, o1, e1);
    run(argv_json, o2, e2);
    c.require(o1.str() == o2.str(), "json scan outputs differ between invocations");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    if (g_failures == 0) {
        std::printf("acceptance: all 7 criteria passed\n");
    } else {
        std::printf("acceptance: %d criteria FAILED\n", g_failures);
    }
    return g_failures;
}
