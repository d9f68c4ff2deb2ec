#include "lamelab/experiments.hpp"

#include <fftw3.h>

#include <Eigen/Core>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "lamelab/catalog.hpp"
#include "lamelab/config.hpp"
#include "lamelab/helmholtz.hpp"
#include "lamelab/inequalities.hpp"
#include "lamelab/lame.hpp"
#include "lamelab/multiplier.hpp"
#include "lamelab/parallel.hpp"
#include "lamelab/resolvent.hpp"
#include "lamelab/spectral.hpp"

namespace lamelab {
namespace {

namespace fs = std::filesystem;

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class Table {
public:
    explicit Table(std::string header) : text_(std::move(header) + "\n") {}
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) text_ += (i ? "," : "") + cells[i];
        text_ += "\n";
    }
    const std::string& str() const { return text_; }

private:
    std::string text_;
};

struct Outputs {
    std::map<std::string, std::string> files;
    std::vector<std::pair<std::string, std::string>> summary;
};

double ratio_or_zero(double a, double b) { return b > 0.0 ? a / b : 0.0; }

VectorField config_field(const ExperimentConfig& c, const Grid& g) {
    if (c.field == "random") return random_bandlimited_field(g, c.seed, true);
    return sample_catalog_field(c.field, c.field_params, g);
}

std::string profile_dat(const Grid& g, const std::vector<std::pair<std::string, const VectorField*>>& cols) {
    // Values along axis 0 through the node next to the origin.
    std::string out = "# x";
    for (const auto& [name, f] : cols) out += " |" + name + "|";
    out += "\n";
    const int n = g.points();
    const int d = g.dim();
    std::size_t stride = 1;
    for (int a = 1; a < d; ++a) stride *= static_cast<std::size_t>(n);
    std::size_t offset = 0;
    for (int a = 1; a < d; ++a) offset = offset * static_cast<std::size_t>(n) + static_cast<std::size_t>(n / 2);
    for (int j = 0; j < n; ++j) {
        const std::size_t i = static_cast<std::size_t>(j) * stride + offset;
        out += num(g.coordinate(j));
        for (const auto& [name, f] : cols) {
            double m = 0.0;
            for (const auto& c : f->components()) m += std::norm(c[i]);
            out += " " + num(std::sqrt(m));
        }
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------

Outputs run_decompose(const ExperimentConfig& c) {
    const Grid g = make_grid(c.d, c.n, c.L);
    const VectorField u = config_field(c, g);
    const Decomposition dec = decompose(u);
    const double nu = l2_norm(u);
    const double nS = l2_norm(dec.u_S);
    const double nP = l2_norm(dec.u_P);
    const double gu = std::sqrt(gradient_norm_sq(u));

    double h1 = 0.0;
    {
        const auto jS = jacobian(dec.u_S);
        const auto jP = jacobian(dec.u_P);
        cplx s = 0.0;
        for (int j = 0; j < c.d; ++j) s += inner_l2(jS[static_cast<std::size_t>(j)], jP[static_cast<std::size_t>(j)]);
        h1 = ratio_or_zero(std::abs(s), std::sqrt(gradient_norm_sq(dec.u_S) * gradient_norm_sq(dec.u_P)));
    }

    Table t("quantity,value");
    t.row({"norm_u", num(nu)});
    t.row({"norm_u_S", num(nS)});
    t.row({"norm_u_P", num(nP)});
    t.row({"reconstruction_residual", num(ratio_or_zero(l2_norm(u - dec.u_S - dec.u_P), nu))});
    t.row({"divergence_residual", num(ratio_or_zero(l2_norm(divergence(dec.u_S)), gu))});
    t.row({"potential_residual", num(ratio_or_zero(l2_norm(dec.u_P - gradient(dec.phi)), nP))});
    t.row({"l2_orthogonality", num(ratio_or_zero(std::abs(inner_l2(dec.u_S, dec.u_P)), nS * nP))});
    t.row({"h1_orthogonality", num(h1)});

    Outputs out;
    out.files["decompose.csv"] = t.str();
    out.files["decompose.dat"] = profile_dat(g, {{"u", &u}, {"u_S", &dec.u_S}, {"u_P", &dec.u_P}});
    return out;
}

Outputs run_operator_check(const ExperimentConfig& c) {
    const Grid g = make_grid(c.d, c.n, c.L);
    const LameParams p{c.mu, c.lambda};
    const CoefficientCheck flags = check_coefficients(p);
    Table t("check,value");
    t.row({"positivity", flags.positivity ? "1" : "0"});
    t.row({"ellipticity", flags.ellipticity ? "1" : "0"});
    Outputs out;
    if (!flags.ellipticity) {
        out.files["operator_check.csv"] = t.str();
        out.summary.emplace_back("note", "coefficients not elliptic; operator checks skipped");
        return out;
    }
    const VectorField u = config_field(c, g);
    const VectorField v = random_bandlimited_field(g, c.seed + 1, true);
    const Potential V = make_potential(c.potential, c.potential_params, g);

    const VectorField Au = apply_lame(u, p);
    const VectorField Hu = apply_lame_helmholtz(u, p);
    const double q = quadratic_form(u, p);
    const double form = inner_l2(Au, u).real();
    const VectorField Av = apply_lame(v, p);
    const cplx sym = inner_l2(Au, v) - inner_l2(u, Av);
    const VectorField Pu = apply_perturbed(u, p, V);

    t.row({"lame_vs_helmholtz", num(ratio_or_zero(l2_norm(Au - Hu), l2_norm(Au)))});
    t.row({"quadratic_form", num(q)});
    t.row({"form_identity", num(ratio_or_zero(std::abs(q - form), std::abs(q)))});
    t.row({"symmetry", num(ratio_or_zero(std::abs(sym), l2_norm(Au) * l2_norm(v)))});
    t.row({"perturbed_minus_free", num(l2_norm(Pu - Hu))});
    out.files["operator_check.csv"] = t.str();
    out.files["operator_check.dat"] = profile_dat(g, {{"u", &u}, {"Au", &Au}, {"(A+V)u", &Pu}});
    return out;
}

Outputs run_identities(const ExperimentConfig& c) {
    const Grid g = make_grid(c.d, c.n, c.L);
    const LameParams p{c.mu, c.lambda};
    require_elliptic(p);
    const cplx k(c.k_re, c.k_im);
    const double sgn2 = k.imag() < 0.0 ? -1.0 : 1.0;

    Table t("identity,weight,component,c,k_re,k_im,lhs,rhs,residual");
    std::string dat = "# identity term value\n";
    auto emit = [&](const IdentityReport& r, const std::string& weight, const std::string& comp, double speed) {
        t.row({r.identity, weight, comp, num(speed), num(k.real()), num(k.imag()), num(r.lhs.real()), num(r.rhs.real()),
               num(r.residual)});
    };

    struct Part {
        std::string name;
        VectorField u;
        double c;
    };
    std::vector<Part> parts;
    if (c.d >= 2) parts.push_back({"S", solenoidal_bump(g, c.sigma), p.speed_S()});
    parts.push_back({"P", potential_bump(g, c.sigma), p.speed_P()});

    const std::vector<std::pair<std::string, RadialWeight>> first_weights{
        {"quadratic", quadratic_weight()},
        {"constant", constant_weight(1.0)},
        {"linear", linear_weight(1.0)},
        {"gaussian", gaussian_weight(c.L / 4.0)}};

    for (const auto& part : parts) {
        const VectorField f = manufacture_component(part.u, part.c, k);
        for (const auto& [name, w] : first_weights) emit(identity_first(part.u, f, part.c, k, w), name, part.name, part.c);
        emit(identity_second(part.u, f, part.c, k, constant_weight(sgn2)), "constant", part.name, part.c);
        emit(identity_second(part.u, f, part.c, k, linear_weight(2.0 * sgn2 / std::sqrt(part.c))), "linear", part.name,
             part.c);
        emit(identity_third(part.u, f, part.c, k, quadratic_weight()), "quadratic", part.name, part.c);
        emit(identity_third(part.u, f, part.c, k, gaussian_weight(c.L / 4.0)), "gaussian", part.name, part.c);
        if (k.real() >= 0.0) emit(identity_twisted_gradient(part.u, part.c, k), "none", part.name, part.c);
        if (k.real() > 0.0 && std::abs(k.imag()) <= k.real()) {
            const IdentityReport fund = identity_fund(part.u, f, part.c, k);
            const IdentityReport comb = fund_from_components(part.u, f, part.c, k);
            emit(fund, "fund", part.name, part.c);
            IdentityReport consistency;
            consistency.identity = "fund_consistency";
            consistency.lhs = fund.lhs;
            consistency.rhs = comb.lhs;
            consistency.residual = std::abs(fund.lhs - comb.lhs) + std::abs(fund.rhs - comb.rhs);
            emit(consistency, "fund", part.name, part.c);
            for (const auto& [name, value] : fund.terms)
                dat += "fund_" + part.name + " " + name.substr(0, name.find(' ')) + " " + num(value.real()) + "\n";
        }
    }

    VectorField u = parts.back().u;
    if (parts.size() == 2) u = parts[0].u + parts[1].u;
    const ManufacturedPair m = manufacture_f(u, p, k);
    for (int sign : {1, -1}) emit(identity_energy(m.u, m.f, p, k, sign), "none", "full", p.mu);

    Outputs out;
    out.files["identities.csv"] = t.str();
    out.files["identities.dat"] = dat;
    return out;
}

Outputs run_constants(const ExperimentConfig& c) {
    const Grid g = make_grid(c.d, c.n, c.L);
    const LameParams p{c.mu, c.lambda};
    require_elliptic(p);
    const VectorField field = config_field(c, g);
    int comp = 0;
    for (int a = 0; a < c.d; ++a)
        if (field[a].max_abs() > field[comp].max_abs()) comp = a;
    const ScalarField psi = field[comp];
    const Potential V = make_potential(c.potential, c.potential_params, g);
    const std::string dims = num(c.d);
    const std::string ns = num(c.n);
    const std::string Ls = num(c.L);

    Table t("name,value,d,n,L,notes");
    std::string dat = "# name value\n";
    auto emit = [&](const std::string& name, double value, const std::string& notes) {
        t.row({name, num(value), dims, ns, Ls, notes});
        dat += name + " " + num(value) + "\n";
    };

    const std::string psi_note = "psi=" + c.field + " component " + std::to_string(comp + 1);
    if (c.d >= 3)
        emit("hardy_classical", hardy_quotient(psi, false), psi_note + "; sharp " + num(hardy_constant(c.d, false)));
    else
        emit("hardy_classical", std::nan(""), "needs d >= 3");
    if (c.d >= 2)
        emit("hardy_weighted", hardy_quotient(psi, true), psi_note + "; sharp " + num(hardy_constant(c.d, true)));
    else
        emit("hardy_weighted", std::nan(""), "needs d >= 2");

    LanczosOptions lo;
    lo.seed = c.seed;
    const ConstantEstimate lam = estimate_lambda(V, lo);
    emit("lambda_hat", lam.value, "V=" + c.potential + "; generalized_eig; products " + std::to_string(lam.iterations));

    double a_hat = 0.0;
    std::string a_note = "V=" + c.potential + "; sup over psi and the lambda maximizer";
    if (!V.is_zero()) {
        a_hat = smallness_a_quotient(V, psi);
        const auto& mx = std::get<ScalarField>(*lam.maximizer);
        if (mx.max_abs() > 0.0) a_hat = std::max(a_hat, smallness_a_quotient(V, mx));
    }
    emit("a_hat", a_hat, a_note);

    const ConstantEstimate C = estimate_regularity_constant(g, c.regularity_s, c.trials, c.seed);
    emit("C_hat", C.value, "family_sup; s=" + num(c.regularity_s) + "; trials " + std::to_string(c.trials));

    const double C_used = c.C_margin > 0.0 ? c.C_margin : 2.0 * C.value;
    if (c.d >= 3) {
        const double lhs = lambda_condition_lhs(lam.value, p, c.d, C_used);
        emit("lambda_condition_lhs", lhs,
             "C=" + num(C_used) + (c.C_margin > 0.0 ? " (configured)" : " (2 C_hat)") +
                 (lhs < 1.0 ? "; satisfied" : "; violated"));
    } else {
        emit("lambda_condition_lhs", std::nan(""), "needs d >= 3");
    }

    Outputs out;
    out.files["constants.csv"] = t.str();
    out.files["constants.dat"] = dat;
    return out;
}

Outputs run_spectrum(const ExperimentConfig& c) {
    const LameParams p{c.mu, c.lambda};
    require_elliptic(p);
    const Grid g1 = make_grid(c.d, c.n, c.L);
    const Grid g2 = make_grid(c.d, 2 * c.n, 2.0 * c.L);
    const Potential V1 = make_potential(c.potential, c.potential_params, g1);
    const Potential V2 = make_potential(c.potential, c.potential_params, g2);

    SpectralOptions so;
    so.dense_limit = static_cast<std::size_t>(c.dense_limit);
    so.residual_tol = c.residual_tol;
    so.arnoldi.seed = c.seed;
    so.inner.max_iter = c.max_iter;
    const cplx shift(c.shift_re, c.shift_im);
    const SpectralReport a = compute_spectrum(assemble(g1, p, V1), c.n_eigs, shift, so);
    const SpectralReport b = compute_spectrum(assemble(g2, p, V2), c.n_eigs, shift, so);
    const SpectralReport cls = classify_point_spectrum(a, b, {c.drift_tol, c.drift_floor, c.localization_min});

    Table t("eig_re,eig_im,localization,drift,candidate");
    for (std::size_t i = 0; i < cls.eigenvalues.size(); ++i)
        t.row({num(cls.eigenvalues[i].real()), num(cls.eigenvalues[i].imag()), num(cls.localization[i]),
               num(cls.drift[i]), cls.candidate[i] ? "1" : "0"});

    std::string dat = "# L eig_re eig_im localization\n";
    for (const auto* r : {&a, &b})
        for (std::size_t i = 0; i < r->eigenvalues.size(); ++i)
            dat += num(r->L) + " " + num(r->eigenvalues[i].real()) + " " + num(r->eigenvalues[i].imag()) + " " +
                   num(r->localization[i]) + "\n";

    Outputs out;
    out.files["spectrum.csv"] = t.str();
    out.files["spectrum.dat"] = dat;
    out.summary.emplace_back("method_L", a.method);
    out.summary.emplace_back("method_2L", b.method);
    out.summary.emplace_back("candidates", std::to_string(cls.candidates.size()));
    return out;
}

Outputs run_sweep(const ExperimentConfig& c) {
    const Grid g = make_grid(c.d, c.n, c.L);
    const LameParams p{c.mu, c.lambda};
    require_elliptic(p);
    const Potential V = make_potential(c.potential, c.potential_params, g);
    const VectorField f = config_field(c, g);
    const auto ks = k_rectangle(c.k_re_min, c.k_re_max, c.k_re_points, c.k_im_min, c.k_im_max, c.k_im_points);
    ResolventOptions ro;
    ro.eta = c.eta;
    ro.residual_tol = c.residual_tol;
    ro.gmres.tol = c.tol;
    ro.gmres.max_iter = c.max_iter;
    const ResolventSweepResult r = sweep(g, p, V, f, ks, ro);

    Table t("k_re,k_im,ratio,skipped");
    std::string dat = "# k_re k_im ratio grad_ratio\n";
    for (const auto& pt : r.points) {
        t.row({num(pt.k.real()), num(pt.k.imag()), num(pt.ratio), pt.skipped ? "1" : "0"});
        if (!pt.skipped)
            dat += num(pt.k.real()) + " " + num(pt.k.imag()) + " " + num(pt.ratio) + " " + num(pt.grad_ratio) + "\n";
    }
    Outputs out;
    out.files["sweep.csv"] = t.str();
    out.files["sweep.dat"] = dat;
    out.summary.emplace_back("sup_ratio", num(r.sup_ratio));
    out.summary.emplace_back("worst_k", num(r.worst_k.real()) + "," + num(r.worst_k.imag()));
    return out;
}

const std::map<std::string, std::function<Outputs(const ExperimentConfig&)>>& subcommands() {
    static const std::map<std::string, std::function<Outputs(const ExperimentConfig&)>> m{
        {"decompose", run_decompose},   {"operator-check", run_operator_check},
        {"identities", run_identities}, {"constants", run_constants},
        {"spectrum", run_spectrum},     {"resolvent-sweep", run_sweep}};
    return m;
}

void check_writable(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    require(!ec && fs::is_directory(dir), "cannot create output directory '" + dir + "'");
    const fs::path probe = fs::path(dir) / ".write_probe";
    {
        std::ofstream o(probe);
        require(static_cast<bool>(o), "output directory '" + dir + "' is not writable");
    }
    fs::remove(probe, ec);
}

std::string manifest(const std::string& sub, const ExperimentConfig& c, const Outputs& out) {
    std::ostringstream m;
    m << "lamelab " << kVersion << "\n";
    m << "subcommand=" << sub << "\n";
    m << "seed=" << c.seed << "\n";
    m << "threads=" << c.threads << "\n";
    m << "fftw=" << fftw_version << "\n";
    m << "eigen=" << EIGEN_WORLD_VERSION << "." << EIGEN_MAJOR_VERSION << "." << EIGEN_MINOR_VERSION << "\n";
    m << "compiler=" << __VERSION__ << "\n";
    m << "\n[config]\n" << c.echo();
    m << "\n[outputs]\n";
    for (const auto& [name, text] : out.files) m << name << "\n";
    if (!out.summary.empty()) {
        m << "\n[summary]\n";
        for (const auto& [k, v] : out.summary) m << k << "=" << v << "\n";
    }
    return m.str();
}

}  // namespace

int run(const std::string& subcommand, const std::string& config_path, const std::string& out_dir,
        const RunOverrides& overrides) {
    try {
        const auto it = subcommands().find(subcommand);
        require(it != subcommands().end(), "unknown subcommand '" + subcommand + "'");
        ExperimentConfig cfg = load_config(config_path);
        if (overrides.seed) cfg.seed = *overrides.seed;
        if (overrides.threads) cfg.threads = *overrides.threads;
        validate_config(cfg);
        make_grid(cfg.d, cfg.n, cfg.L);
        check_writable(out_dir);
        set_thread_count(cfg.threads);

        Outputs out = it->second(cfg);
        out.files["manifest.txt"] = manifest(subcommand, cfg, out);
        for (const auto& [name, text] : out.files) {
            std::ofstream o(fs::path(out_dir) / name, std::ios::binary);
            require(static_cast<bool>(o), "cannot write '" + name + "'");
            o << text;
            require(static_cast<bool>(o), "failed writing '" + name + "'");
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::Validation ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace lamelab
