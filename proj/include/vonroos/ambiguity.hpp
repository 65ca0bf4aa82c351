#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace vonroos {

/// Tolerance used when checking the von Roos constraint alpha + beta + gamma = -1.
inline constexpr double kVonRoosTol = 1e-12;

// Ordering-ambiguity exponents (alpha, beta, gamma) of the position-dependent-mass
// kinetic operator. The physically admissible triples satisfy
// alpha + beta + gamma = -1; the primary constructor enforces that, the relaxed
// factory accepts anything and marks the triple non-canonical so parameter
// sweeps can still carry it around.
class AmbiguityParameters {
public:
    AmbiguityParameters(double alpha, double beta, double gamma);

    static AmbiguityParameters relaxed(double alpha, double beta, double gamma);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }

    /// True when alpha + beta + gamma = -1 within kVonRoosTol.
    bool canonical() const { return canonical_; }

private:
    AmbiguityParameters(double alpha, double beta, double gamma, bool canonical);

    double alpha_;
    double beta_;
    double gamma_;
    bool canonical_;
};

/// zeta = alpha(alpha-1) + gamma(gamma-1) - beta(beta+1).
/// Symmetric under alpha <-> gamma; enters every effective barrier.
double zeta(const AmbiguityParameters& params);

/// Effective inverse-square coupling generated in the axial equation by the
/// mass factor z^j:  F = -j [ j (2 zeta - 3)/4 - (j - 1) beta / 2 ].
/// Vanishes identically at j = 0.
double barrier_f(const AmbiguityParameters& params, double j);

// Outcome of F = L^2 - 1/4. |L| exists only when F + 1/4 >= 0; otherwise the
// value marks the fall-to-center regime and is reported, not thrown, so grid
// sweeps can record it per point.
struct BarrierStrength {
    double f_value = 0.0;
    std::optional<double> script_l_abs;

    bool admissible() const { return script_l_abs.has_value(); }
};

BarrierStrength script_l(double f_value);

enum class NamedSetId {
    BenDanielDuke,
    ZhuKroemer,
    MustafaMazharimousavi,
    GoraWilliams,
    LiKuhn,
};

struct NamedSet {
    NamedSetId id;
    std::string_view short_name;  // CLI token: bdd, zk, mm, gw, lk
    std::string_view label;
    AmbiguityParameters params;
};

/// The five catalog entries, in fixed order (bdd, zk, mm, gw, lk).
const std::array<NamedSet, 5>& named_sets();

/// Exact triple for one catalog entry.
AmbiguityParameters named_set(NamedSetId id);

/// Parses a CLI token ("mm", "bdd", ...); empty optional for unknown names.
std::optional<NamedSetId> parse_set_name(std::string_view token);

std::string_view set_short_name(NamedSetId id);
std::string_view set_label(NamedSetId id);

}  // namespace vonroos
