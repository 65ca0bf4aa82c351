#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>

#include "vonroos/ambiguity.hpp"

namespace vonroos {

// Power-law position-dependent mass M(rho, phi, z) = b z^j rho^(2 upsilon + 1) / 2
// on the open quadrant rho > 0, z > 0 (units m0 = hbar = 1).
struct PdmSpec {
    double b = 2.0;       // mass scale, > 0
    double j = 0.0;       // axial exponent
    double upsilon = 0.5; // radial exponent

    PdmSpec() = default;
    PdmSpec(double b_, double j_, double upsilon_);

    /// b z^j rho^(2 upsilon + 1) / 2; throws std::domain_error off the open quadrant.
    double mass_at(double rho, double z) const;
};

struct QuantumNumbers {
    int n_rho = 0;  // radial node count, >= 0
    int n_z = 0;    // axial node count, >= 0
    int m = 0;      // magnetic quantum number, any integer

    QuantumNumbers(int n_rho_, int n_z_, int m_);
};

// Component-potential couplings. HO couplings are stored squared (a^2, atilde^2)
// and may be formally negative in Case 1 branch discussions; the Coulomb
// couplings A, B are strictly positive for bound states.
struct CaseCouplings {
    double a_sq = 4.0;
    double atilde_sq = 4.0;
    double A_tilde = 1.0;
    double B_tilde = 1.0;
};

enum class CaseId { Case1 = 1, Case2 = 2, Case3 = 3, Case4 = 4 };

enum class PotentialKind { HarmonicOscillator, Coulomb, None };

CaseId parse_case(int n);  // 1..4, throws std::invalid_argument otherwise

/// Radial exponent fixed by the case catalog: +1/2 for Cases 1/3, -1 for 2/4.
double case_upsilon(CaseId c);

// One half-line 1D Schroedinger problem, -u'' + C/x^2 u + V(x) u = E u on
// (0, inf), Dirichlet at both ends. kz_sign records the separation-constant
// convention: E = kz_sign * k_z^2 (-1 for the radial problem, +1 for the axial).
struct EffectiveProblem {
    double barrier_coefficient = 0.0;  // C
    PotentialKind kind = PotentialKind::None;
    double coupling = 0.0;             // HO: a^2/4 (V = coupling x^2); Coulomb: A (V = -2A/x)
    int kz_sign = -1;

    double potential(double x) const;

    /// sqrt(C + 1/4) when the radicand is nonnegative.
    std::optional<double> l_abs() const;
};

// The four solvable (upsilon, potential pair) combinations and their closed-form
// interaction potentials V(rho, z) = [Vt(rho) + Vt(z)] / (b z^j rho^(2 upsilon + 1)).
struct AssembledPotential {
    CaseId case_id = CaseId::Case1;
    CaseCouplings couplings;
    PdmSpec pdm;

    /// \tilde V(rho) of the case (HO a^2 rho^2/4 or Coulomb -2A/rho).
    double radial_component(double rho) const;
    /// \tilde V(z) of the case (HO atilde^2 z^2/4 or Coulomb -2B/z).
    double axial_component(double z) const;

    /// Case closed form; equals the quotient [Vt(rho)+Vt(z)]/(b z^j rho^(2u+1))
    /// to machine precision. Throws std::domain_error off the open quadrant.
    double at(double rho, double z) const;
};

AssembledPotential make_case_potential(CaseId c, const CaseCouplings& couplings,
                                       double b, double j);

/// Effective radial barrier index |l~| of the separated radial equation:
/// sqrt(upsilon(upsilon+1) + m^2 + 1/4 - (2 upsilon + 1)^2 (zeta - beta - 1)/2).
/// Empty for a negative radicand (fall-to-center regime).
std::optional<double> effective_ell(double upsilon, int m, double zeta_minus_beta);

/// Radial problem of the case: barrier l~^2 - 1/4, eigenvalue -k_z^2.
std::optional<EffectiveProblem> radial_problem(const AssembledPotential& pot,
                                               const AmbiguityParameters& params,
                                               int m);

/// Axial problem of the case: barrier F(alpha,beta,gamma,j), eigenvalue +k_z^2.
/// Empty when F + 1/4 < 0.
std::optional<EffectiveProblem> axial_problem(const AssembledPotential& pot,
                                              const AmbiguityParameters& params);

struct SeparationMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Relative tolerance for matching the two separation constants in assembly.
inline constexpr double kSeparationMatchTol = 1e-9;

// One solved 1D part: the reduced profile u(x) and its eigenvalue in the
// owning problem's convention (E_rho = -k_z^2, E_z = +k_z^2).
struct ModeSolution {
    std::function<double(double)> u;
    double eigenvalue = 0.0;
};

// Psi(rho, phi, z) = rho^upsilon U(rho) e^{i m phi}/sqrt(2 pi) z^{j/2} Zt(z),
// identically zero outside the open upper-half quadrant (impenetrable wall).
struct WavefunctionAssembly {
    PdmSpec pdm;
    int m = 0;
    std::function<double(double)> radial_u;
    std::function<double(double)> axial_zt;
    double kz_sq = 0.0;  // shared separation constant

    /// Real 2D profile rho^upsilon U(rho) z^{j/2} Zt(z) / sqrt(2 pi); 0 off-quadrant.
    double profile(double rho, double z) const;

    std::complex<double> value(double rho, double phi, double z) const;
};

/// Combines solved parts into the full state. Throws SeparationMismatch when
/// the two separation constants (-E_rho vs +E_z) disagree beyond tolerance.
WavefunctionAssembly assemble_wavefunction(const AssembledPotential& pot,
                                           const AmbiguityParameters& params,
                                           const QuantumNumbers& qn,
                                           const ModeSolution& radial,
                                           const ModeSolution& axial);

}  // namespace vonroos
