#include "vonroos/separation.hpp"

#include <cmath>
#include <numbers>

namespace vonroos {

PdmSpec::PdmSpec(double b_, double j_, double upsilon_) : b(b_), j(j_), upsilon(upsilon_) {
    if (!(b > 0.0)) {
        throw std::invalid_argument("PdmSpec: mass scale b must be positive");
    }
}

double PdmSpec::mass_at(double rho, double z) const {
    if (!(rho > 0.0) || !(z > 0.0)) {
        throw std::domain_error("mass_at: requires rho > 0 and z > 0");
    }
    return b * std::pow(z, j) * std::pow(rho, 2.0 * upsilon + 1.0) / 2.0;
}

QuantumNumbers::QuantumNumbers(int n_rho_, int n_z_, int m_)
    : n_rho(n_rho_), n_z(n_z_), m(m_) {
    if (n_rho < 0 || n_z < 0) {
        throw std::invalid_argument("QuantumNumbers: n_rho and n_z must be >= 0");
    }
}

CaseId parse_case(int n) {
    if (n < 1 || n > 4) {
        throw std::invalid_argument("case must be 1, 2, 3 or 4");
    }
    return static_cast<CaseId>(n);
}

double case_upsilon(CaseId c) {
    switch (c) {
        case CaseId::Case1:
        case CaseId::Case3:
            return 0.5;
        case CaseId::Case2:
        case CaseId::Case4:
            return -1.0;
    }
    throw std::invalid_argument("case_upsilon: bad case id");
}

double EffectiveProblem::potential(double x) const {
    switch (kind) {
        case PotentialKind::HarmonicOscillator:
            return coupling * x * x;
        case PotentialKind::Coulomb:
            return -2.0 * coupling / x;
        case PotentialKind::None:
            return 0.0;
    }
    return 0.0;
}

std::optional<double> EffectiveProblem::l_abs() const {
    const double radicand = barrier_coefficient + 0.25;
    if (radicand < 0.0) return std::nullopt;
    return std::sqrt(radicand);
}

namespace {

bool radial_is_ho(CaseId c) { return c == CaseId::Case1 || c == CaseId::Case3; }
bool axial_is_ho(CaseId c) { return c == CaseId::Case1 || c == CaseId::Case2; }

}  // namespace

double AssembledPotential::radial_component(double rho) const {
    if (radial_is_ho(case_id)) {
        return couplings.a_sq * rho * rho / 4.0;
    }
    return -2.0 * couplings.A_tilde / rho;
}

double AssembledPotential::axial_component(double z) const {
    if (axial_is_ho(case_id)) {
        return couplings.atilde_sq * z * z / 4.0;
    }
    return -2.0 * couplings.B_tilde / z;
}

double AssembledPotential::at(double rho, double z) const {
    if (!(rho > 0.0) || !(z > 0.0)) {
        throw std::domain_error("AssembledPotential::at: requires rho > 0 and z > 0");
    }
    const double b = pdm.b;
    const double j = pdm.j;
    const CaseCouplings& c = couplings;
    switch (case_id) {
        case CaseId::Case1:
            return c.a_sq / (4.0 * b * std::pow(z, j)) +
                   c.atilde_sq / (4.0 * b * rho * rho * std::pow(z, j - 2.0));
        case CaseId::Case2:
            return -2.0 * c.A_tilde / (b * std::pow(z, j)) +
                   c.atilde_sq * rho / (4.0 * b * std::pow(z, j - 2.0));
        case CaseId::Case3:
            return c.a_sq / (4.0 * b * std::pow(z, j)) -
                   2.0 * c.B_tilde / (b * rho * rho * std::pow(z, j + 1.0));
        case CaseId::Case4:
            return -2.0 * c.A_tilde / (b * std::pow(z, j)) -
                   2.0 * c.B_tilde * rho / (b * std::pow(z, j + 1.0));
    }
    throw std::invalid_argument("AssembledPotential::at: bad case id");
}

AssembledPotential make_case_potential(CaseId c, const CaseCouplings& couplings,
                                       double b, double j) {
    if (!radial_is_ho(c) && !(couplings.A_tilde > 0.0)) {
        throw std::invalid_argument("make_case_potential: A must be > 0 for Coulomb cases");
    }
    if (!axial_is_ho(c) && !(couplings.B_tilde > 0.0)) {
        throw std::invalid_argument("make_case_potential: B must be > 0 for Coulomb cases");
    }
    return AssembledPotential{c, couplings, PdmSpec(b, j, case_upsilon(c))};
}

std::optional<double> effective_ell(double upsilon, int m, double zeta_minus_beta) {
    const double two_up1 = 2.0 * upsilon + 1.0;
    const double radicand = upsilon * (upsilon + 1.0) + double(m) * double(m) + 0.25 -
                            two_up1 * two_up1 * (zeta_minus_beta - 1.0) / 2.0;
    if (radicand < 0.0) return std::nullopt;
    return std::sqrt(radicand);
}

std::optional<EffectiveProblem> radial_problem(const AssembledPotential& pot,
                                               const AmbiguityParameters& params,
                                               int m) {
    const double zb = zeta(params) - params.beta();
    const auto ell = effective_ell(pot.pdm.upsilon, m, zb);
    if (!ell) return std::nullopt;

    EffectiveProblem p;
    p.barrier_coefficient = (*ell) * (*ell) - 0.25;
    p.kz_sign = -1;
    if (radial_is_ho(pot.case_id)) {
        p.kind = PotentialKind::HarmonicOscillator;
        p.coupling = pot.couplings.a_sq / 4.0;
    } else {
        p.kind = PotentialKind::Coulomb;
        p.coupling = pot.couplings.A_tilde;
    }
    return p;
}

std::optional<EffectiveProblem> axial_problem(const AssembledPotential& pot,
                                              const AmbiguityParameters& params) {
    const BarrierStrength bs = script_l(barrier_f(params, pot.pdm.j));
    if (!bs.admissible()) return std::nullopt;

    EffectiveProblem p;
    p.barrier_coefficient = bs.f_value;
    p.kz_sign = +1;
    if (axial_is_ho(pot.case_id)) {
        p.kind = PotentialKind::HarmonicOscillator;
        p.coupling = pot.couplings.atilde_sq / 4.0;
    } else {
        p.kind = PotentialKind::Coulomb;
        p.coupling = pot.couplings.B_tilde;
    }
    return p;
}

double WavefunctionAssembly::profile(double rho, double z) const {
    if (!(rho > 0.0) || !(z > 0.0)) return 0.0;
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    return std::pow(rho, pdm.upsilon) * radial_u(rho) *
           std::pow(z, pdm.j / 2.0) * axial_zt(z) * inv_sqrt_2pi;
}

std::complex<double> WavefunctionAssembly::value(double rho, double phi, double z) const {
    const double p = profile(rho, z);
    if (p == 0.0) return {0.0, 0.0};
    return p * std::polar(1.0, double(m) * phi);
}

WavefunctionAssembly assemble_wavefunction(const AssembledPotential& pot,
                                           const AmbiguityParameters& params,
                                           const QuantumNumbers& qn,
                                           const ModeSolution& radial,
                                           const ModeSolution& axial) {
    (void)params;
    // Radial convention E_rho = -k_z^2, axial E_z = +k_z^2: the two parts must
    // agree on the shared constant.
    const double kz_sq_radial = -radial.eigenvalue;
    const double kz_sq_axial = axial.eigenvalue;
    const double scale =
        std::max({1.0, std::abs(kz_sq_radial), std::abs(kz_sq_axial)});
    if (std::abs(kz_sq_radial - kz_sq_axial) > kSeparationMatchTol * scale) {
        throw SeparationMismatch(
            "assemble_wavefunction: separation constants disagree (-E_rho = " +
            std::to_string(kz_sq_radial) + ", +E_z = " + std::to_string(kz_sq_axial) + ")");
    }

    WavefunctionAssembly psi;
    psi.pdm = pot.pdm;
    psi.m = qn.m;
    psi.radial_u = radial.u;
    psi.axial_zt = axial.u;
    psi.kz_sq = kz_sq_radial;
    return psi;
}

}  // namespace vonroos
