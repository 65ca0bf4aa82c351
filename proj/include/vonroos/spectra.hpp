#pragma once

#include <string>
#include <vector>

#include "vonroos/ambiguity.hpp"
#include "vonroos/separation.hpp"

namespace vonroos {

// Which Coulomb level formula to use. AsPublished keeps the case equations
// verbatim, k = coupling/(n + |L| + 1); OracleCalibrated uses the denominator
// the numerical eigensolver reproduces, k = coupling/(n + |L| + 1/2).
enum class SpectrumConvention { AsPublished, OracleCalibrated };

// How a constraint residual is evaluated. PublishedFormula reproduces the
// case equations verbatim; RederivedMatching re-equates the two analytic
// k_z expressions from the radial/axial problems under the chosen convention.
enum class ResidualMode { PublishedFormula, RederivedMatching };

/// Half-line oscillator-with-barrier level, E = omega (2n + |L| + 1), omega > 0.
/// The positive level is returned; the owning problem's kz_sign applies signs.
double ho_level(double omega, double l_abs, int n);

/// Coulomb separation constant k (> 0); bound-state energy is -k^2.
double coulomb_kz(double coupling, double l_abs, int n, SpectrumConvention conv);

/// Case 1, j = 0: the zeta - beta value required by qn,
/// (1/2) [ m^2 + 3 - (2 n_z - 2 n_rho + 1/2)^2 ].
double case1_j0_target(const QuantumNumbers& qn);

// Residual of one auxiliary quantization constraint, lhs - rhs with
// lhs = -1/4 + bracket^2 and rhs = F(alpha, beta, gamma, j). Admissibility
// flags are computed, never assumed; an inadmissible point still reports
// whatever real value the algebra yields (NaN when genuinely complex).
struct ConstraintReport {
    CaseId case_id = CaseId::Case1;
    double j = 0.0;
    QuantumNumbers qn{0, 0, 0};
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double zeta_value = 0.0;
    double f_value = 0.0;  // F(alpha, beta, gamma, j)
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    bool ell_admissible = true;    // radial radicand >= 0
    bool f_admissible = true;      // F + 1/4 >= 0
    bool sign_compatible = true;   // matched |L| candidate >= 0

    bool admissible() const { return ell_admissible && f_admissible && sign_compatible; }
    std::string reason() const;   // "" when admissible
};

ConstraintReport constraint_residual(CaseId case_id, const AmbiguityParameters& params,
                                     double j, const QuantumNumbers& qn,
                                     const CaseCouplings& couplings,
                                     ResidualMode mode = ResidualMode::PublishedFormula,
                                     SpectrumConvention conv = SpectrumConvention::AsPublished);

// One-parameter families over which the constraint is solved. Both keep the
// von Roos constraint by construction: alpha = gamma with beta = -1 - 2 alpha,
// or beta fixed with gamma = -1 - alpha - beta.
struct Family {
    enum class Kind { AlphaEqualsGamma, FixedBeta };
    Kind kind = Kind::AlphaEqualsGamma;
    double beta = -1.0;  // used by FixedBeta only

    static Family alpha_equals_gamma();
    static Family fixed_beta(double beta);

    AmbiguityParameters at(double alpha) const;
    std::string name() const;
};

struct FamilyRoot {
    double alpha = 0.0;
    ConstraintReport report;
};

/// All roots of the constraint residual along the family inside [lo, hi],
/// each refined to |residual| < tolerance. Sign-change scanning (1024 steps)
/// with Brent refinement; admissibility boundaries split the scan intervals;
/// tangent (non-sign-changing) zeros are picked up from scan minima.
std::vector<FamilyRoot> solve_family(CaseId case_id, const Family& family, double j,
                                     const QuantumNumbers& qn, const CaseCouplings& couplings,
                                     double lo, double hi, double tolerance,
                                     ResidualMode mode = ResidualMode::PublishedFormula,
                                     SpectrumConvention conv = SpectrumConvention::AsPublished);

// Inclusive quantum-number ranges 0..max (negative max = empty range).
struct ScanRange {
    int n_rho_max = 0;
    int n_z_max = 0;
    int m_max = 0;
};

/// One report per tuple, lexicographic in (n_rho, n_z, m).
std::vector<ConstraintReport> scan(CaseId case_id, const AmbiguityParameters& params,
                                   double j, const ScanRange& range,
                                   const CaseCouplings& couplings,
                                   ResidualMode mode = ResidualMode::PublishedFormula,
                                   SpectrumConvention conv = SpectrumConvention::AsPublished);

}  // namespace vonroos
