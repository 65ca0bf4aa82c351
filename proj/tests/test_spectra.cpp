#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "vonroos/spectra.hpp"

using namespace vonroos;

namespace {

const CaseCouplings kDefaults{};

ConstraintReport case1_report(const AmbiguityParameters& p, const QuantumNumbers& qn,
                              double j = 0.0) {
    return constraint_residual(CaseId::Case1, p, j, qn, kDefaults);
}

}  // namespace

TEST_CASE("ho_level ladder") {
    CHECK(ho_level(2.0, 0.5, 0) == 3.0);
    CHECK(ho_level(2.0, 1.5, 0) == 5.0);
    for (int n = 0; n < 6; ++n) {
        CHECK(ho_level(1.0, 0.5, n + 1) - ho_level(1.0, 0.5, n) == 2.0);
    }
    CHECK_THROWS_AS(ho_level(0.0, 0.5, 0), std::domain_error);
}

TEST_CASE("coulomb_kz conventions") {
    // Published denominator n + |L| + 1.
    CHECK(coulomb_kz(1.0, 0.5, 0, SpectrumConvention::AsPublished) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    // Oracle-calibrated denominator n + |L| + 1/2; the closed form u = z e^{-z}
    // solves the barrier-free problem with k = 1, E = -1.
    CHECK(coulomb_kz(1.0, 0.5, 0, SpectrumConvention::OracleCalibrated) == 1.0);

    for (int n = 0; n < 5; ++n) {
        CHECK(coulomb_kz(1.0, 0.5, n + 1, SpectrumConvention::AsPublished) <
              coulomb_kz(1.0, 0.5, n, SpectrumConvention::AsPublished));
        CHECK(coulomb_kz(1.0, 0.5, n + 1, SpectrumConvention::OracleCalibrated) <
              coulomb_kz(1.0, 0.5, n, SpectrumConvention::OracleCalibrated));
    }
    CHECK_THROWS_AS(coulomb_kz(-1.0, 0.5, 0, SpectrumConvention::AsPublished),
                    std::domain_error);
}

TEST_CASE("case1_j0_target worked values") {
    CHECK(case1_j0_target(QuantumNumbers(0, 0, 0)) == 1.375);   // 11/8
    CHECK(case1_j0_target(QuantumNumbers(0, 0, 1)) == 1.875);   // 15/8
    CHECK(case1_j0_target(QuantumNumbers(0, 0, -1)) == 1.875);
    // Equal pairs depend only on n_z - n_rho.
    CHECK(case1_j0_target(QuantumNumbers(3, 3, 0)) == 1.375);
    CHECK(case1_j0_target(QuantumNumbers(7, 7, 0)) == 1.375);
}

TEST_CASE("Case 1 residuals at the named sets (j = 0, ground tuple)") {
    const QuantumNumbers qn(0, 0, 0);

    const auto mm = case1_report(named_set(NamedSetId::MustafaMazharimousavi), qn);
    CHECK(mm.residual == 0.0);
    CHECK(mm.admissible());
    CHECK(mm.rhs == 0.0);  // F vanishes at j = 0

    const auto bdd = case1_report(named_set(NamedSetId::BenDanielDuke), qn);
    CHECK(bdd.residual == 0.75);
    CHECK(bdd.admissible());

    const auto zk = case1_report(named_set(NamedSetId::ZhuKroemer), qn);
    CHECK(zk.residual == -0.25);

    const auto lk = case1_report(named_set(NamedSetId::LiKuhn), qn);
    CHECK(lk.residual == -0.25);

    // GW has a negative ell radicand; the squared bracket is still real at
    // n_rho = n_z, so the value is reported with the inadmissibility flagged.
    const auto gw = case1_report(named_set(NamedSetId::GoraWilliams), qn);
    CHECK(gw.residual == -1.25);
    CHECK_FALSE(gw.ell_admissible);
    CHECK_FALSE(gw.admissible());
    CHECK(gw.reason() == "ell_radicand_negative");
}

TEST_CASE("Case 1: second root of the alpha = gamma family") {
    // zeta - beta = -2 alpha^2 - 2 alpha + 1 along the family; both roots of
    // -2 alpha^2 - 2 alpha + 1 = 11/8 satisfy the ground constraint.
    const auto second = AmbiguityParameters(-0.75, 0.5, -0.75);
    const auto rep = case1_report(second, QuantumNumbers(0, 0, 0));
    CHECK(rep.residual == 0.0);
    CHECK(rep.admissible());
}

TEST_CASE("Case 4 residual: BDD with equal Coulomb couplings is a zero") {
    const auto bdd = named_set(NamedSetId::BenDanielDuke);
    CaseCouplings c;
    c.A_tilde = 1.0;
    c.B_tilde = 1.0;
    const auto rep =
        constraint_residual(CaseId::Case4, bdd, 0.0, QuantumNumbers(0, 0, 0), c);
    CHECK(rep.residual == 0.0);
    CHECK(rep.admissible());
}

TEST_CASE("alpha <-> gamma swap leaves every case residual unchanged") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> dist(-1.2, 0.4);
    std::uniform_real_distribution<double> jdist(-1.5, 1.5);
    for (int i = 0; i < 200; ++i) {
        const double a = dist(rng), b = dist(rng), g = dist(rng);
        const double j = jdist(rng);
        const QuantumNumbers qn(i % 3, (i / 3) % 3, i % 4);
        for (const CaseId c : {CaseId::Case1, CaseId::Case2, CaseId::Case3, CaseId::Case4}) {
            for (const ResidualMode mode :
                 {ResidualMode::PublishedFormula, ResidualMode::RederivedMatching}) {
                const auto r1 = constraint_residual(
                    c, AmbiguityParameters::relaxed(a, b, g), j, qn, kDefaults, mode);
                const auto r2 = constraint_residual(
                    c, AmbiguityParameters::relaxed(g, b, a), j, qn, kDefaults, mode);
                if (std::isnan(r1.residual)) {
                    CHECK(std::isnan(r2.residual));
                } else {
                    CHECK(r1.residual == r2.residual);
                }
            }
        }
    }
}

TEST_CASE("Case 1 residual depends on (n_rho, n_z) only through the difference") {
    const auto mm = named_set(NamedSetId::MustafaMazharimousavi);
    for (int d = -2; d <= 2; ++d) {
        for (int t = 0; t <= 3; ++t) {
            const int n_rho = std::max(0, d) + t;
            const int n_z = std::max(0, -d) + t;
            const auto base = case1_report(mm, QuantumNumbers(std::max(0, d), std::max(0, -d), 1), 0.7);
            const auto shifted = case1_report(mm, QuantumNumbers(n_rho, n_z, 1), 0.7);
            CHECK(base.residual == shifted.residual);
        }
    }
}

TEST_CASE("Case 4 residual depends on the Coulomb couplings only through B/A") {
    const auto bdd = named_set(NamedSetId::BenDanielDuke);
    std::mt19937 rng(808);
    std::uniform_real_distribution<double> dist(0.3, 4.0);
    for (int i = 0; i < 100; ++i) {
        CaseCouplings c1;
        c1.A_tilde = dist(rng);
        c1.B_tilde = dist(rng);
        const double scale = dist(rng);
        CaseCouplings c2;
        c2.A_tilde = scale * c1.A_tilde;
        c2.B_tilde = scale * c1.B_tilde;
        const QuantumNumbers qn(i % 3, (i / 2) % 3, i % 2);
        const auto r1 = constraint_residual(CaseId::Case4, bdd, 0.5, qn, c1);
        const auto r2 = constraint_residual(CaseId::Case4, bdd, 0.5, qn, c2);
        CHECK(r1.residual == doctest::Approx(r2.residual).epsilon(1e-12));
    }
}

TEST_CASE("Case 1, j = 0: the closed-form target characterizes the zeros for n_rho = n_z") {
    // With n_rho = n_z the bracket reduces to the bare square root, so the
    // residual is exactly linear in zeta - beta: residual = 2 (target - zb).
    const Family fam = Family::alpha_equals_gamma();
    for (const int m : {0, 1, 2}) {
        for (const int n : {0, 1, 3}) {
            const QuantumNumbers qn(n, n, m);
            const double target = case1_j0_target(qn);
            for (int i = 0; i <= 400; ++i) {
                const double alpha = -2.0 + 4.0 * i / 400.0;
                const auto p = fam.at(alpha);
                const auto rep = case1_report(p, qn);
                if (!rep.ell_admissible) continue;
                const double zb = zeta(p) - p.beta();
                CHECK(rep.residual ==
                      doctest::Approx(2.0 * (target - zb))
                          .epsilon(1e-13)
                          .scale(std::max(1.0, std::abs(rep.residual))));
            }
        }
    }
}

TEST_CASE("Case 1, j = 0: target implies a zero for n_z >= n_rho, never for n_rho > n_z") {
    const Family fam = Family::alpha_equals_gamma();

    // n_z > n_rho: solving the family for zeta - beta = target lands on a zero
    // (the closed form encodes the positive square-root branch).
    for (const auto& qn : {QuantumNumbers(0, 1, 2), QuantumNumbers(1, 2, 2)}) {
        const double t = case1_j0_target(qn);
        // zeta - beta = -2 alpha^2 - 2 alpha + 1 along alpha = gamma.
        const double disc = 0.25 * (3.0 - 2.0 * t);
        REQUIRE(disc >= 0.0);
        const double alpha = -0.5 + std::sqrt(disc);
        const auto rep = case1_report(fam.at(alpha), qn);
        CHECK(std::abs(rep.residual) < 1e-12);
    }

    // n_rho > n_z: the bracket exceeds 2(n_rho - n_z) everywhere, so the
    // squared equation cannot come down to 1/4 and no zeros exist.
    for (const auto& qn : {QuantumNumbers(1, 0, 0), QuantumNumbers(3, 1, 2)}) {
        for (int i = 0; i <= 400; ++i) {
            const auto rep = case1_report(fam.at(-2.0 + 4.0 * i / 400.0), qn);
            if (!rep.ell_admissible) continue;
            CHECK(rep.residual > 1.0);
        }
    }
}

TEST_CASE("published mode and rederived mode agree for Cases 2 and 4 at the published convention") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 0.2);
    for (int i = 0; i < 200; ++i) {
        const auto p = AmbiguityParameters::relaxed(dist(rng), dist(rng), dist(rng));
        const QuantumNumbers qn(i % 3, (i / 3) % 2, i % 2);
        for (const CaseId c : {CaseId::Case2, CaseId::Case4}) {
            const auto pub = constraint_residual(c, p, 0.8, qn, kDefaults,
                                                 ResidualMode::PublishedFormula,
                                                 SpectrumConvention::AsPublished);
            const auto red = constraint_residual(c, p, 0.8, qn, kDefaults,
                                                 ResidualMode::RederivedMatching,
                                                 SpectrumConvention::AsPublished);
            if (std::isnan(pub.residual)) {
                CHECK(std::isnan(red.residual));
            } else {
                CHECK(pub.residual == doctest::Approx(red.residual).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("Case 3 published formula differs from the rederived matching") {
    // The published Case 3 equation carries the upsilon = -1 radicand and an
    // unrooted 1/|a| prefactor; the rederived route uses the upsilon = 1/2
    // radicand and sqrt(|a|). They genuinely disagree.
    const auto mm = named_set(NamedSetId::MustafaMazharimousavi);
    const auto pub = constraint_residual(CaseId::Case3, mm, 0.0, QuantumNumbers(0, 0, 0),
                                         kDefaults, ResidualMode::PublishedFormula);
    const auto red = constraint_residual(CaseId::Case3, mm, 0.0, QuantumNumbers(0, 0, 0),
                                         kDefaults, ResidualMode::RederivedMatching,
                                         SpectrumConvention::OracleCalibrated);
    CHECK(std::abs(pub.residual - red.residual) > 1e-3);
}

TEST_CASE("solve_family: Case 1 ground family reproduces the hand-solved quadratic") {
    const auto roots =
        solve_family(CaseId::Case1, Family::alpha_equals_gamma(), 0.0,
                     QuantumNumbers(0, 0, 0), kDefaults, -1.0, 0.0, 1e-12);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].alpha == doctest::Approx(-0.75).epsilon(1e-9));
    CHECK(roots[1].alpha == doctest::Approx(-0.25).epsilon(1e-9));
    for (const auto& r : roots) {
        CHECK(std::abs(r.report.residual) < 1e-12);
        // Family parameterization keeps the von Roos constraint.
        CHECK(r.report.alpha + r.report.beta + r.report.gamma ==
              doctest::Approx(-1.0).epsilon(1e-14));
    }
}

TEST_CASE("solve_family: no sign change means no roots") {
    const auto roots =
        solve_family(CaseId::Case1, Family::alpha_equals_gamma(), 0.0,
                     QuantumNumbers(0, 0, 0), kDefaults, 10.0, 11.0, 1e-12);
    CHECK(roots.empty());
}

TEST_CASE("solve_family: tangent zero of the Case 4 fixed-beta family is found once") {
    // Along beta = -1 (gamma = -alpha) with A = B the Case 4 residual is
    // -alpha^2: a double root at alpha = 0 with no sign change.
    CaseCouplings c;
    const auto roots = solve_family(CaseId::Case4, Family::fixed_beta(-1.0), 0.0,
                                    QuantumNumbers(0, 0, 0), c, -0.5, 0.5, 1e-12);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].alpha == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("solve_family rejects invalid brackets") {
    CHECK_THROWS_AS(solve_family(CaseId::Case1, Family::alpha_equals_gamma(), 0.0,
                                 QuantumNumbers(0, 0, 0), kDefaults, 1.0, -1.0, 1e-12),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_family(CaseId::Case1, Family::alpha_equals_gamma(), 0.0,
                                 QuantumNumbers(0, 0, 0), kDefaults, -1.0, 0.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("scan: row order, count and the MM zero set") {
    const auto mm = named_set(NamedSetId::MustafaMazharimousavi);
    const auto rows = scan(CaseId::Case1, mm, 0.0, ScanRange{1, 1, 1}, kDefaults);
    REQUIRE(rows.size() == 8);

    // Lexicographic in (n_rho, n_z, m).
    size_t idx = 0;
    for (int n_rho = 0; n_rho <= 1; ++n_rho) {
        for (int n_z = 0; n_z <= 1; ++n_z) {
            for (int m = 0; m <= 1; ++m) {
                CHECK(rows[idx].qn.n_rho == n_rho);
                CHECK(rows[idx].qn.n_z == n_z);
                CHECK(rows[idx].qn.m == m);
                ++idx;
            }
        }
    }

    // The ground constraint is blind to equal (n_rho, n_z) shifts, so both
    // (0,0,0) and (1,1,0) land on the MM zero; every other tuple misses it.
    int zero_rows = 0;
    for (const auto& r : rows) {
        if (std::abs(r.residual) < 1e-12) {
            ++zero_rows;
            CHECK(r.qn.n_rho == r.qn.n_z);
            CHECK(r.qn.m == 0);
        }
    }
    CHECK(zero_rows == 2);

    // Negative maxima give the empty Cartesian product.
    CHECK(scan(CaseId::Case1, mm, 0.0, ScanRange{-1, 0, 0}, kDefaults).empty());
    CHECK(scan(CaseId::Case1, mm, 0.0, ScanRange{2, 3, -1}, kDefaults).empty());
}

TEST_CASE("report reason strings") {
    const auto gw = case1_report(named_set(NamedSetId::GoraWilliams), QuantumNumbers(0, 0, 0));
    CHECK(gw.reason() == "ell_radicand_negative");
    const auto mm = case1_report(named_set(NamedSetId::MustafaMazharimousavi),
                                 QuantumNumbers(0, 0, 0));
    CHECK(mm.reason().empty());
}
