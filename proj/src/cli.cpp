#include "vonroos/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "vonroos/ambiguity.hpp"
#include "vonroos/numerics.hpp"
#include "vonroos/separation.hpp"
#include "vonroos/spectra.hpp"
#include "vonroos/table.hpp"

namespace vonroos {

namespace {

constexpr const char* kScanColumns[] = {"case", "j",     "n_rho", "n_z",  "m",
                                        "alpha", "beta",  "gamma", "zeta", "F",
                                        "lhs",   "rhs",   "residual", "admissible"};

std::vector<std::string> scan_columns() {
    return {std::begin(kScanColumns), std::end(kScanColumns)};
}

std::vector<Cell> report_cells(const ConstraintReport& r) {
    return {
        Cell{static_cast<long long>(r.case_id)},
        Cell{r.j},
        Cell{static_cast<long long>(r.qn.n_rho)},
        Cell{static_cast<long long>(r.qn.n_z)},
        Cell{static_cast<long long>(r.qn.m)},
        Cell{r.alpha},
        Cell{r.beta},
        Cell{r.gamma},
        Cell{r.zeta_value},
        Cell{r.f_value},
        Cell{r.lhs},
        Cell{r.rhs},
        Cell{r.residual},
        Cell{r.admissible()},
    };
}

struct OutputOpts {
    std::string format = "csv";
    std::string path;
};

void add_output_flags(CLI::App* cmd, OutputOpts& oo) {
    cmd->add_option("--format", oo.format, "Output format: csv, json or pretty")
        ->check(CLI::IsMember({"csv", "json", "pretty"}))
        ->capture_default_str();
    cmd->add_option("--out", oo.path, "Write data to FILE instead of stdout");
}

OutputFormat to_format(const std::string& f) {
    if (f == "json") return OutputFormat::Json;
    if (f == "pretty") return OutputFormat::Pretty;
    return OutputFormat::Csv;
}

int emit(const Table& t, const OutputOpts& oo, bool single_object, std::ostream& out,
         std::ostream& err) {
    if (!oo.path.empty()) {
        std::ofstream f(oo.path, std::ios::binary);
        if (!f) {
            err << "error: cannot open output file " << oo.path << "\n";
            return 1;
        }
        write_table(t, to_format(oo.format), single_object, f);
        return 0;
    }
    write_table(t, to_format(oo.format), single_object, out);
    return 0;
}

// Parameter selection shared by the constraint-style commands:
// either --set NAME or the explicit --alpha/--beta/--gamma triple.
struct ParamsOpts {
    std::string set_name;
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    CLI::Option* alpha_opt = nullptr;
    CLI::Option* beta_opt = nullptr;
    CLI::Option* gamma_opt = nullptr;
};

void add_params_flags(CLI::App* cmd, ParamsOpts& po) {
    auto* set_opt = cmd->add_option("--set", po.set_name,
                                    "Named parameter set: bdd, zk, mm, gw or lk");
    po.alpha_opt = cmd->add_option("--alpha", po.alpha, "Ambiguity exponent alpha");
    po.beta_opt = cmd->add_option("--beta", po.beta, "Ambiguity exponent beta");
    po.gamma_opt = cmd->add_option("--gamma", po.gamma, "Ambiguity exponent gamma");
    set_opt->excludes(po.alpha_opt)->excludes(po.beta_opt)->excludes(po.gamma_opt);
}

AmbiguityParameters resolve_params(const ParamsOpts& po) {
    if (!po.set_name.empty()) {
        const auto id = parse_set_name(po.set_name);
        if (!id) {
            throw CLI::ValidationError("--set", "unknown set name '" + po.set_name +
                                                    "' (expected bdd, zk, mm, gw or lk)");
        }
        return named_set(*id);
    }
    if (po.alpha_opt->count() == 0 || po.beta_opt->count() == 0 ||
        po.gamma_opt->count() == 0) {
        throw CLI::ValidationError(
            "parameters", "pass --set NAME or all of --alpha, --beta, --gamma");
    }
    return AmbiguityParameters::relaxed(po.alpha, po.beta, po.gamma);
}

struct CouplingOpts {
    double a_sq = 4.0;
    double atilde_sq = 4.0;
    double A = 1.0;
    double B = 1.0;
    double b = 2.0;
};

void add_coupling_flags(CLI::App* cmd, CouplingOpts& co) {
    cmd->add_option("--a2", co.a_sq, "Radial oscillator coupling a^2")
        ->capture_default_str();
    cmd->add_option("--atilde2", co.atilde_sq, "Axial oscillator coupling atilde^2")
        ->capture_default_str();
    cmd->add_option("--A", co.A, "Radial Coulomb coupling A")->capture_default_str();
    cmd->add_option("--B", co.B, "Axial Coulomb coupling B")->capture_default_str();
    cmd->add_option("--b", co.b, "Mass scale b of M = b z^j rho^(2u+1)/2")
        ->capture_default_str();
}

CaseCouplings to_couplings(const CouplingOpts& co) {
    return CaseCouplings{co.a_sq, co.atilde_sq, co.A, co.B};
}

struct ModeOpts {
    std::string mode = "published";
    std::string convention = "published";
};

void add_mode_flags(CLI::App* cmd, ModeOpts& mo, bool with_mode = true) {
    if (with_mode) {
        cmd->add_option("--mode", mo.mode, "Residual mode: published or rederived")
            ->check(CLI::IsMember({"published", "rederived"}))
            ->capture_default_str();
    }
    cmd->add_option("--convention", mo.convention,
                    "Coulomb level convention: published or oracle")
        ->check(CLI::IsMember({"published", "oracle"}))
        ->capture_default_str();
}

ResidualMode to_mode(const ModeOpts& mo) {
    return mo.mode == "rederived" ? ResidualMode::RederivedMatching
                                  : ResidualMode::PublishedFormula;
}

SpectrumConvention to_convention(const ModeOpts& mo) {
    return mo.convention == "oracle" ? SpectrumConvention::OracleCalibrated
                                     : SpectrumConvention::AsPublished;
}

Family parse_family(const std::string& s) {
    if (s == "alpha-eq-gamma") return Family::alpha_equals_gamma();
    const std::string prefix = "fixed-beta=";
    if (s.rfind(prefix, 0) == 0) {
        return Family::fixed_beta(std::stod(s.substr(prefix.size())));
    }
    throw CLI::ValidationError("--family",
                               "expected alpha-eq-gamma or fixed-beta=<beta>");
}

// Sample positions i*h, i = 1.., up to x_max (inclusive within rounding).
std::vector<double> emission_axis(double x_max, double h) {
    if (!(h > 0.0) || !(x_max > h)) {
        throw CLI::ValidationError("--grid-h", "need 0 < h < x_max");
    }
    std::vector<double> xs;
    for (int i = 1; i * h <= x_max * (1.0 + 1e-12); ++i) xs.push_back(i * h);
    return xs;
}

const CLI::App* deepest_parsed(const CLI::App* app) {
    const auto subs = app->get_subcommands();
    return subs.empty() ? app : deepest_parsed(subs.front());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{
        "Zero-energy separability toolkit for the von Roos position-dependent-mass "
        "Hamiltonian in azimuthally symmetric cylindrical coordinates"};
    app.name("pdmcyl");
    app.require_subcommand(1);

    int rc = 0;

    // ---- zeta ----------------------------------------------------------
    struct {
        double alpha = 0.0, beta = 0.0, gamma = 0.0, j = 0.0;
        OutputOpts oo;
    } zo;
    auto* c_zeta = app.add_subcommand(
        "zeta", "Ambiguity algebra: zeta, F(j) and |L| for one triple");
    c_zeta->add_option("--alpha", zo.alpha, "alpha")->required();
    c_zeta->add_option("--beta", zo.beta, "beta")->required();
    c_zeta->add_option("--gamma", zo.gamma, "gamma")->required();
    c_zeta->add_option("--j", zo.j, "Axial mass exponent j")->capture_default_str();
    add_output_flags(c_zeta, zo.oo);
    c_zeta->callback([&] {
        const auto p = AmbiguityParameters::relaxed(zo.alpha, zo.beta, zo.gamma);
        const double f = barrier_f(p, zo.j);
        const BarrierStrength bs = script_l(f);
        Table t;
        t.columns = {"alpha", "beta", "gamma", "j",          "zeta",
                     "F",     "l_abs", "admissible", "reason"};
        t.add_row({Cell{p.alpha()}, Cell{p.beta()}, Cell{p.gamma()}, Cell{zo.j},
                   Cell{zeta(p)}, Cell{f},
                   bs.admissible() ? Cell{*bs.script_l_abs} : Cell{std::monostate{}},
                   Cell{bs.admissible()},
                   Cell{std::string(bs.admissible() ? "" : "f_plus_quarter_negative")}});
        rc = emit(t, zo.oo, true, out, err);
        if (rc == 0 && !bs.admissible()) rc = 1;
    });

    // ---- sets ----------------------------------------------------------
    auto* c_sets = app.add_subcommand("sets", "Named ambiguity-parameter catalog");
    c_sets->require_subcommand(1);

    struct {
        OutputOpts oo;
    } slo;
    auto* c_sets_list = c_sets->add_subcommand("list", "List the five catalog sets");
    add_output_flags(c_sets_list, slo.oo);
    c_sets_list->callback([&] {
        Table t;
        t.columns = {"set", "alpha", "beta", "gamma", "zeta"};
        for (const NamedSet& s : named_sets()) {
            t.add_row({Cell{std::string(s.short_name)}, Cell{s.params.alpha()},
                       Cell{s.params.beta()}, Cell{s.params.gamma()},
                       Cell{zeta(s.params)}});
        }
        rc = emit(t, slo.oo, false, out, err);
    });

    struct {
        int case_n = 1;
        double j = 0.0;
        int n_rho = 0, n_z = 0, m = 0;
        CouplingOpts co;
        ModeOpts mo;
        OutputOpts oo;
    } sco;
    auto* c_sets_check = c_sets->add_subcommand(
        "check", "Constraint residual of every catalog set at one (case, j, qn)");
    c_sets_check->add_option("--case", sco.case_n, "Case number 1..4")->required();
    c_sets_check->add_option("--j", sco.j, "Axial mass exponent j")->capture_default_str();
    c_sets_check->add_option("--nrho", sco.n_rho, "n_rho")->capture_default_str();
    c_sets_check->add_option("--nz", sco.n_z, "n_z")->capture_default_str();
    c_sets_check->add_option("--m", sco.m, "m")->capture_default_str();
    add_coupling_flags(c_sets_check, sco.co);
    add_mode_flags(c_sets_check, sco.mo);
    add_output_flags(c_sets_check, sco.oo);
    c_sets_check->callback([&] {
        Table t;
        t.columns = scan_columns();
        t.columns.insert(t.columns.begin(), "set");
        for (const NamedSet& s : named_sets()) {
            const auto rep = constraint_residual(
                parse_case(sco.case_n), s.params, sco.j,
                QuantumNumbers(sco.n_rho, sco.n_z, sco.m), to_couplings(sco.co),
                to_mode(sco.mo), to_convention(sco.mo));
            auto cells = report_cells(rep);
            cells.insert(cells.begin(), Cell{std::string(s.short_name)});
            t.add_row(std::move(cells));
        }
        rc = emit(t, sco.oo, false, out, err);
    });

    // ---- constraint ----------------------------------------------------
    auto* c_con = app.add_subcommand("constraint",
                                     "Auxiliary quantization constraints on (alpha, beta, gamma)");
    c_con->require_subcommand(1);

    struct {
        int case_n = 1;
        double j = 0.0;
        int n_rho = 0, n_z = 0, m = 0;
        ParamsOpts po;
        CouplingOpts co;
        ModeOpts mo;
        OutputOpts oo;
    } cro;
    auto* c_res = c_con->add_subcommand("residual",
                                        "Residual of one constraint at one point");
    c_res->add_option("--case", cro.case_n, "Case number 1..4")->required();
    c_res->add_option("--j", cro.j, "Axial mass exponent j")->capture_default_str();
    c_res->add_option("--nrho", cro.n_rho, "n_rho")->capture_default_str();
    c_res->add_option("--nz", cro.n_z, "n_z")->capture_default_str();
    c_res->add_option("--m", cro.m, "m")->capture_default_str();
    add_params_flags(c_res, cro.po);
    add_coupling_flags(c_res, cro.co);
    add_mode_flags(c_res, cro.mo);
    add_output_flags(c_res, cro.oo);
    c_res->callback([&] {
        const auto rep = constraint_residual(
            parse_case(cro.case_n), resolve_params(cro.po), cro.j,
            QuantumNumbers(cro.n_rho, cro.n_z, cro.m), to_couplings(cro.co),
            to_mode(cro.mo), to_convention(cro.mo));
        Table t;
        t.columns = scan_columns();
        t.columns.push_back("reason");
        auto cells = report_cells(rep);
        cells.push_back(Cell{rep.reason()});
        t.add_row(std::move(cells));
        rc = emit(t, cro.oo, true, out, err);
        if (rc == 0 && !rep.admissible()) rc = 1;
    });

    struct {
        int case_n = 1;
        double j = 0.0;
        int n_rho = 0, n_z = 0, m = 0;
        std::string family = "alpha-eq-gamma";
        std::vector<double> bracket;
        double tol = 1e-12;
        CouplingOpts co;
        ModeOpts mo;
        OutputOpts oo;
    } cso;
    auto* c_solve = c_con->add_subcommand(
        "solve", "Roots of the constraint along a one-parameter family");
    c_solve->add_option("--case", cso.case_n, "Case number 1..4")->required();
    c_solve->add_option("--family", cso.family,
                        "alpha-eq-gamma or fixed-beta=<beta>")
        ->capture_default_str();
    c_solve->add_option("--bracket", cso.bracket, "Search interval LO HI for alpha")
        ->expected(2)
        ->required();
    c_solve->add_option("--tol", cso.tol, "Residual tolerance")->capture_default_str();
    c_solve->add_option("--j", cso.j, "Axial mass exponent j")->capture_default_str();
    c_solve->add_option("--nrho", cso.n_rho, "n_rho")->capture_default_str();
    c_solve->add_option("--nz", cso.n_z, "n_z")->capture_default_str();
    c_solve->add_option("--m", cso.m, "m")->capture_default_str();
    add_coupling_flags(c_solve, cso.co);
    add_mode_flags(c_solve, cso.mo);
    add_output_flags(c_solve, cso.oo);
    c_solve->callback([&] {
        const Family fam = parse_family(cso.family);
        const auto roots = solve_family(
            parse_case(cso.case_n), fam, cso.j, QuantumNumbers(cso.n_rho, cso.n_z, cso.m),
            to_couplings(cso.co), cso.bracket[0], cso.bracket[1], cso.tol,
            to_mode(cso.mo), to_convention(cso.mo));
        Table t;
        t.columns = scan_columns();
        t.columns.insert(t.columns.begin(), "family");
        for (const FamilyRoot& root : roots) {
            auto cells = report_cells(root.report);
            cells.insert(cells.begin(), Cell{fam.name()});
            t.add_row(std::move(cells));
        }
        rc = emit(t, cso.oo, false, out, err);
    });

    struct {
        int case_n = 1;
        double j = 0.0;
        int n_rho_max = 0, n_z_max = 0, m_max = 0;
        ParamsOpts po;
        CouplingOpts co;
        ModeOpts mo;
        OutputOpts oo;
    } cgo;
    auto* c_scan = c_con->add_subcommand(
        "scan", "Residual table over quantum-number ranges 0..max");
    c_scan->add_option("--case", cgo.case_n, "Case number 1..4")->required();
    c_scan->add_option("--j", cgo.j, "Axial mass exponent j")->capture_default_str();
    c_scan->add_option("--nrho-max", cgo.n_rho_max, "Upper n_rho (inclusive)")
        ->capture_default_str();
    c_scan->add_option("--nz-max", cgo.n_z_max, "Upper n_z (inclusive)")
        ->capture_default_str();
    c_scan->add_option("--m-max", cgo.m_max, "Upper |m| (inclusive)")
        ->capture_default_str();
    add_params_flags(c_scan, cgo.po);
    add_coupling_flags(c_scan, cgo.co);
    add_mode_flags(c_scan, cgo.mo);
    add_output_flags(c_scan, cgo.oo);
    c_scan->callback([&] {
        const auto reports =
            scan(parse_case(cgo.case_n), resolve_params(cgo.po), cgo.j,
                 ScanRange{cgo.n_rho_max, cgo.n_z_max, cgo.m_max}, to_couplings(cgo.co),
                 to_mode(cgo.mo), to_convention(cgo.mo));
        Table t;
        t.columns = scan_columns();
        for (const auto& rep : reports) t.add_row(report_cells(rep));
        rc = emit(t, cgo.oo, false, out, err);
    });

    // ---- spectrum ------------------------------------------------------
    auto* c_spec = app.add_subcommand("spectrum",
                                      "Analytic and numerically solved half-line levels");
    c_spec->require_subcommand(1);

    struct SpectrumOpts {
        std::string potential;
        double l_abs = 0.5;
        double coupling = 1.0;
        int levels = 3;
        double grid_h = 2e-3;
        double x_max = 0.0;  // 0 = default domain rule
        ModeOpts mo;
        OutputOpts oo;
    };
    const auto add_spectrum_flags = [](CLI::App* cmd, SpectrumOpts& so, bool numeric) {
        cmd->add_option("--potential", so.potential, "ho or coulomb")
            ->check(CLI::IsMember({"ho", "coulomb"}))
            ->required();
        cmd->add_option("--l-abs", so.l_abs, "Barrier index |L| (C = L^2 - 1/4)")
            ->capture_default_str();
        cmd->add_option("--coupling", so.coupling,
                        "HO frequency omega, or Coulomb strength")
            ->capture_default_str();
        cmd->add_option("--levels", so.levels, "Number of levels")->capture_default_str();
        add_mode_flags(cmd, so.mo, false);
        if (numeric) {
            cmd->add_option("--grid-h", so.grid_h, "Grid spacing")->capture_default_str();
            cmd->add_option("--x-max", so.x_max, "Domain size (0 = default rule)")
                ->capture_default_str();
        }
    };
    const auto spectrum_problem = [](const SpectrumOpts& so) {
        EffectiveProblem p;
        p.barrier_coefficient = so.l_abs * so.l_abs - 0.25;
        if (so.potential == "ho") {
            p.kind = PotentialKind::HarmonicOscillator;
            p.coupling = so.coupling * so.coupling / 4.0;
        } else {
            p.kind = PotentialKind::Coulomb;
            p.coupling = so.coupling;
        }
        return p;
    };
    const auto analytic_energy = [](const SpectrumOpts& so, int n, SpectrumConvention conv) {
        if (so.potential == "ho") return ho_level(so.coupling, so.l_abs, n);
        const double k = coulomb_kz(so.coupling, so.l_abs, n, conv);
        return -k * k;
    };

    SpectrumOpts sao;
    auto* c_spec_a = c_spec->add_subcommand("analytic", "Closed-form level table");
    add_spectrum_flags(c_spec_a, sao, false);
    add_output_flags(c_spec_a, sao.oo);
    c_spec_a->callback([&] {
        Table t;
        t.columns = {"potential", "convention", "n", "l_abs", "coupling", "k", "energy"};
        for (int n = 0; n < sao.levels; ++n) {
            Cell k_cell{std::monostate{}};
            if (sao.potential == "coulomb") {
                k_cell = Cell{coulomb_kz(sao.coupling, sao.l_abs, n, to_convention(sao.mo))};
            }
            t.add_row({Cell{sao.potential}, Cell{sao.mo.convention},
                       Cell{static_cast<long long>(n)}, Cell{sao.l_abs},
                       Cell{sao.coupling}, k_cell,
                       Cell{analytic_energy(sao, n, to_convention(sao.mo))}});
        }
        rc = emit(t, sao.oo, false, out, err);
    });

    SpectrumOpts sno;
    auto* c_spec_n = c_spec->add_subcommand(
        "numeric", "Eigensolver levels with analytic-vs-numeric deltas");
    add_spectrum_flags(c_spec_n, sno, true);
    add_output_flags(c_spec_n, sno.oo);
    c_spec_n->callback([&] {
        const EffectiveProblem prob = spectrum_problem(sno);
        const Grid1D grid = (sno.x_max > 0.0)
                                ? Grid1D::with_spacing(sno.x_max, sno.grid_h)
                                : default_grid(prob, sno.levels, sno.grid_h);
        const EigenResult er = eigen_solve(prob, sno.levels, grid);
        Table t;
        t.columns = {"potential", "convention", "n",      "l_abs",
                     "coupling",  "analytic",   "numeric", "delta"};
        for (int n = 0; n < sno.levels; ++n) {
            const double ana = analytic_energy(sno, n, to_convention(sno.mo));
            const double num = er.eigenvalues[n];
            t.add_row({Cell{sno.potential}, Cell{sno.mo.convention},
                       Cell{static_cast<long long>(n)}, Cell{sno.l_abs},
                       Cell{sno.coupling}, Cell{ana}, Cell{num}, Cell{num - ana}});
        }
        rc = emit(t, sno.oo, false, out, err);
    });

    // ---- vonroos -------------------------------------------------------
    auto* c_vr = app.add_subcommand(
        "vonroos", "Direct 2D operator checks of the assembled zero-energy states");
    c_vr->require_subcommand(1);

    struct {
        int case_n = 1;
        double j = 0.0;
        std::vector<int> qn{0, 0, 0};
        double grid_h = 0.01;
        double rho_max = 4.0, z_max = 4.0;
        bool refine = false;
        double perturb_beta = 0.0;
        CLI::Option* perturb_opt = nullptr;
        std::string field_out;
        ParamsOpts po;
        CouplingOpts co;
        OutputOpts oo;
    } vro;
    auto* c_vr_res = c_vr->add_subcommand(
        "residual", "Discrete L2 norm of H psi at E = 0 (order-2 finite differences)");
    c_vr_res->add_option("--case", vro.case_n, "Case number 1..4")->required();
    c_vr_res->add_option("--j", vro.j, "Axial mass exponent j")->capture_default_str();
    c_vr_res->add_option("--qn", vro.qn, "Quantum numbers n_rho n_z m")
        ->expected(3)
        ->capture_default_str();
    c_vr_res->add_option("--grid-h", vro.grid_h, "Base grid spacing")->capture_default_str();
    c_vr_res->add_option("--rho-max", vro.rho_max, "Radial box size")->capture_default_str();
    c_vr_res->add_option("--z-max", vro.z_max, "Axial box size")->capture_default_str();
    c_vr_res->add_flag("--refine", vro.refine,
                       "Also run at h/2 and report the convergence order");
    vro.perturb_opt = c_vr_res->add_option(
        "--perturb-beta", vro.perturb_beta,
        "Apply the operator with beta overridden (gamma adjusted to keep the "
        "von Roos constraint); the state stays assembled from the base set");
    c_vr_res->add_option("--field-out", vro.field_out,
                         "Write the residual field (rho,z,residual CSV) to FILE");
    add_params_flags(c_vr_res, vro.po);
    add_coupling_flags(c_vr_res, vro.co);
    add_output_flags(c_vr_res, vro.oo);
    c_vr_res->callback([&] {
        const CaseId case_id = parse_case(vro.case_n);
        const AmbiguityParameters base = resolve_params(vro.po);
        const CaseCouplings couplings = to_couplings(vro.co);
        const QuantumNumbers qn(vro.qn[0], vro.qn[1], vro.qn[2]);

        const AssembledPotential pot =
            make_case_potential(case_id, couplings, vro.co.b, vro.j);
        const WavefunctionAssembly psi =
            assemble_case_state(case_id, base, vro.j, qn, couplings, vro.co.b);

        AmbiguityParameters op_params = base;
        if (vro.perturb_opt->count() > 0) {
            op_params = AmbiguityParameters::relaxed(
                base.alpha(), vro.perturb_beta,
                -1.0 - base.alpha() - vro.perturb_beta);
        }

        const Grid1D grho = Grid1D::with_spacing(vro.rho_max, vro.grid_h);
        const Grid1D gz = Grid1D::with_spacing(vro.z_max, vro.grid_h);

        Table t;
        t.columns = {"case",  "j",     "n_rho", "n_z",   "m",
                     "alpha", "beta",  "gamma", "h_rho", "h_z",
                     "residual_norm", "wavefunction_norm", "convergence_order"};
        const auto add_report = [&](const ResidualReport2D& rep) {
            t.add_row({Cell{static_cast<long long>(case_id)}, Cell{vro.j},
                       Cell{static_cast<long long>(qn.n_rho)},
                       Cell{static_cast<long long>(qn.n_z)},
                       Cell{static_cast<long long>(qn.m)}, Cell{op_params.alpha()},
                       Cell{op_params.beta()}, Cell{op_params.gamma()}, Cell{rep.h_rho},
                       Cell{rep.h_z}, Cell{rep.residual_norm}, Cell{rep.wavefunction_norm},
                       rep.convergence_order ? Cell{*rep.convergence_order}
                                             : Cell{std::monostate{}}});
        };
        if (vro.refine) {
            const auto pair =
                von_roos_residual_refined(pot.pdm, op_params, pot, psi, grho, gz);
            add_report(pair.first);
            add_report(pair.second);
        } else {
            add_report(von_roos_residual(pot.pdm, op_params, pot, psi, grho, gz));
        }
        rc = emit(t, vro.oo, !vro.refine, out, err);

        if (rc == 0 && !vro.field_out.empty()) {
            const ResidualField2D field =
                von_roos_residual_field(pot.pdm, op_params, pot, psi, grho, gz);
            Table ft;
            ft.columns = {"rho", "z", "residual"};
            for (int i = 0; i < field.grid_rho.n_points; ++i) {
                for (int k = 0; k < field.grid_z.n_points; ++k) {
                    ft.add_row({Cell{field.grid_rho.x(i)}, Cell{field.grid_z.x(k)},
                                Cell{field.at(i, k)}});
                }
            }
            std::ofstream f(vro.field_out, std::ios::binary);
            if (!f) {
                err << "error: cannot open output file " << vro.field_out << "\n";
                rc = 1;
                return;
            }
            write_csv(ft, f);
        }
    });

    // ---- wavefunction --------------------------------------------------
    auto* c_wf = app.add_subcommand("wavefunction", "Sample analytic eigenfunctions");
    c_wf->require_subcommand(1);

    struct {
        std::string potential;
        int n = 0;
        double l_abs = 0.5;
        double coupling = 2.0;
        double grid_h = 2e-3;
        double x_max = 0.0;
        OutputOpts oo;
    } wfo;
    auto* c_wf_emit = c_wf->add_subcommand(
        "emit", "1D half-line eigenfunction samples (x, u), unit trapezoid norm");
    c_wf_emit->add_option("--potential", wfo.potential, "ho or coulomb")
        ->check(CLI::IsMember({"ho", "coulomb"}))
        ->required();
    c_wf_emit->add_option("--n", wfo.n, "Node count n")->capture_default_str();
    c_wf_emit->add_option("--l-abs", wfo.l_abs, "Barrier index |L|")->capture_default_str();
    c_wf_emit->add_option("--coupling", wfo.coupling,
                          "HO frequency omega, or Coulomb strength")
        ->capture_default_str();
    c_wf_emit->add_option("--grid-h", wfo.grid_h, "Sample spacing")->capture_default_str();
    c_wf_emit->add_option("--x-max", wfo.x_max, "Domain size (0 = default rule)")
        ->capture_default_str();
    add_output_flags(c_wf_emit, wfo.oo);
    c_wf_emit->callback([&] {
        const PotentialKind kind = (wfo.potential == "ho")
                                       ? PotentialKind::HarmonicOscillator
                                       : PotentialKind::Coulomb;
        double x_max = wfo.x_max;
        if (!(x_max > 0.0)) {
            EffectiveProblem p;
            p.kind = kind;
            p.barrier_coefficient = wfo.l_abs * wfo.l_abs - 0.25;
            p.coupling = (kind == PotentialKind::HarmonicOscillator)
                             ? wfo.coupling * wfo.coupling / 4.0
                             : wfo.coupling;
            x_max = default_grid(p, wfo.n + 1, wfo.grid_h).x_max;
        }
        const auto fn = analytic_eigenfunction(kind, wfo.n, wfo.l_abs, wfo.coupling);
        const std::vector<double> xs = emission_axis(x_max, wfo.grid_h);
        std::vector<double> u(xs.size());
        double nrm = 0.0;
        for (size_t i = 0; i < xs.size(); ++i) {
            u[i] = fn(xs[i]);
            nrm += u[i] * u[i];
        }
        nrm = std::sqrt(nrm * wfo.grid_h);
        Table t;
        t.columns = {"x", "u"};
        for (size_t i = 0; i < xs.size(); ++i) {
            t.add_row({Cell{xs[i]}, Cell{u[i] / nrm}});
        }
        rc = emit(t, wfo.oo, false, out, err);
    });

    struct {
        int case_n = 1;
        double j = 0.0;
        std::vector<int> qn{0, 0, 0};
        double grid_h = 0.05;
        double rho_max = 4.0, z_max = 4.0;
        ParamsOpts po;
        CouplingOpts co;
        OutputOpts oo;
    } w2o;
    auto* c_wf2 = c_wf->add_subcommand(
        "emit2d", "Assembled zero-energy profile samples (rho, z, value) at phi = 0");
    c_wf2->add_option("--case", w2o.case_n, "Case number 1..4")->required();
    c_wf2->add_option("--j", w2o.j, "Axial mass exponent j")->capture_default_str();
    c_wf2->add_option("--qn", w2o.qn, "Quantum numbers n_rho n_z m")
        ->expected(3)
        ->capture_default_str();
    c_wf2->add_option("--grid-h", w2o.grid_h, "Sample spacing")->capture_default_str();
    c_wf2->add_option("--rho-max", w2o.rho_max, "Radial box size")->capture_default_str();
    c_wf2->add_option("--z-max", w2o.z_max, "Axial box size")->capture_default_str();
    add_params_flags(c_wf2, w2o.po);
    add_coupling_flags(c_wf2, w2o.co);
    add_output_flags(c_wf2, w2o.oo);
    c_wf2->callback([&] {
        const WavefunctionAssembly psi = assemble_case_state(
            parse_case(w2o.case_n), resolve_params(w2o.po), w2o.j,
            QuantumNumbers(w2o.qn[0], w2o.qn[1], w2o.qn[2]), to_couplings(w2o.co),
            w2o.co.b);
        Table t;
        t.columns = {"rho", "z", "value"};
        for (double rho : emission_axis(w2o.rho_max, w2o.grid_h)) {
            for (double z : emission_axis(w2o.z_max, w2o.grid_h)) {
                t.add_row({Cell{rho}, Cell{z}, Cell{psi.profile(rho, z)}});
            }
        }
        rc = emit(t, w2o.oo, false, out, err);
    });

    // ---- potential -----------------------------------------------------
    auto* c_pot = app.add_subcommand("potential", "Assembled interaction potentials");
    c_pot->require_subcommand(1);

    struct {
        int case_n = 1;
        double j = 0.0;
        double grid_h = 0.05;
        double rho_max = 4.0, z_max = 4.0;
        CouplingOpts co;
        OutputOpts oo;
    } peo;
    auto* c_pot_emit = c_pot->add_subcommand(
        "emit", "Case closed-form V(rho, z) samples (rho, z, value)");
    c_pot_emit->add_option("--case", peo.case_n, "Case number 1..4")->required();
    c_pot_emit->add_option("--j", peo.j, "Axial mass exponent j")->capture_default_str();
    c_pot_emit->add_option("--grid-h", peo.grid_h, "Sample spacing")->capture_default_str();
    c_pot_emit->add_option("--rho-max", peo.rho_max, "Radial box size")->capture_default_str();
    c_pot_emit->add_option("--z-max", peo.z_max, "Axial box size")->capture_default_str();
    add_coupling_flags(c_pot_emit, peo.co);
    add_output_flags(c_pot_emit, peo.oo);
    c_pot_emit->callback([&] {
        const AssembledPotential pot =
            make_case_potential(parse_case(peo.case_n), to_couplings(peo.co), peo.co.b, peo.j);
        Table t;
        t.columns = {"rho", "z", "value"};
        for (double rho : emission_axis(peo.rho_max, peo.grid_h)) {
            for (double z : emission_axis(peo.z_max, peo.grid_h)) {
                t.add_row({Cell{rho}, Cell{z}, Cell{pot.at(rho, z)}});
            }
        }
        rc = emit(t, peo.oo, false, out, err);
    });

    // ---- parse and dispatch --------------------------------------------
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << deepest_parsed(&app)->help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n\n";
        err << deepest_parsed(&app)->help();
        return 2;
    } catch (const SeparationMismatch& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

}  // namespace vonroos
