#include "vonroos/ambiguity.hpp"

#include <cmath>
#include <stdexcept>

namespace vonroos {

AmbiguityParameters::AmbiguityParameters(double alpha, double beta, double gamma)
    : AmbiguityParameters(alpha, beta, gamma, true) {
    if (std::abs(alpha + beta + gamma + 1.0) > kVonRoosTol) {
        throw std::invalid_argument(
            "AmbiguityParameters: alpha + beta + gamma must equal -1 "
            "(use AmbiguityParameters::relaxed for exploratory triples)");
    }
}

AmbiguityParameters::AmbiguityParameters(double alpha, double beta, double gamma,
                                         bool canonical)
    : alpha_(alpha), beta_(beta), gamma_(gamma), canonical_(canonical) {}

AmbiguityParameters AmbiguityParameters::relaxed(double alpha, double beta,
                                                 double gamma) {
    const bool ok = std::abs(alpha + beta + gamma + 1.0) <= kVonRoosTol;
    return AmbiguityParameters(alpha, beta, gamma, ok);
}

double zeta(const AmbiguityParameters& p) {
    return p.alpha() * (p.alpha() - 1.0) + p.gamma() * (p.gamma() - 1.0) -
           p.beta() * (p.beta() + 1.0);
}

double barrier_f(const AmbiguityParameters& p, double j) {
    const double z = zeta(p);
    return -j * (j * (2.0 * z - 3.0) / 4.0 - (j - 1.0) * p.beta() / 2.0);
}

BarrierStrength script_l(double f_value) {
    BarrierStrength out;
    out.f_value = f_value;
    const double radicand = f_value + 0.25;
    if (radicand >= 0.0) {
        out.script_l_abs = std::sqrt(radicand);
    }
    return out;
}

const std::array<NamedSet, 5>& named_sets() {
    static const std::array<NamedSet, 5> catalog = {{
        {NamedSetId::BenDanielDuke, "bdd", "BenDaniel-Duke",
         AmbiguityParameters(0.0, -1.0, 0.0)},
        {NamedSetId::ZhuKroemer, "zk", "Zhu-Kroemer",
         AmbiguityParameters(-0.5, 0.0, -0.5)},
        {NamedSetId::MustafaMazharimousavi, "mm", "Mustafa-Mazharimousavi",
         AmbiguityParameters(-0.25, -0.5, -0.25)},
        {NamedSetId::GoraWilliams, "gw", "Gora-Williams",
         AmbiguityParameters(-1.0, 0.0, 0.0)},
        {NamedSetId::LiKuhn, "lk", "Li-Kuhn",
         AmbiguityParameters(0.0, -0.5, -0.5)},
    }};
    return catalog;
}

namespace {

const NamedSet& find_set(NamedSetId id) {
    for (const NamedSet& s : named_sets()) {
        if (s.id == id) return s;
    }
    throw std::invalid_argument("named_set: unknown catalog entry");
}

}  // namespace

AmbiguityParameters named_set(NamedSetId id) { return find_set(id).params; }

std::optional<NamedSetId> parse_set_name(std::string_view token) {
    for (const NamedSet& s : named_sets()) {
        if (token == s.short_name) return s.id;
    }
    return std::nullopt;
}

std::string_view set_short_name(NamedSetId id) { return find_set(id).short_name; }

std::string_view set_label(NamedSetId id) { return find_set(id).label; }

}  // namespace vonroos
