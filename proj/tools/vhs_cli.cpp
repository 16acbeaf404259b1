#include "vhs/model_io.hpp"
#include "vhs/wpgeom.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <random>

namespace {

using namespace vhs;
using nlohmann::json;

constexpr const char* kCurvatureSignNote =
    "curvature sign: R(0) = delta_ij delta_kl + delta_il delta_kj minus the degree-(2,2) "
    "potential tensor; the covariant derivative at 0 is minus the degree-(3,2) tensor "
    "(log-potential expansion convention; the opposite sign appears in some statements "
    "of the same formula)";
constexpr const char* kFdNote =
    "finite-difference oracle: central differences, step 1e-4, one Richardson level";

struct Options {
    std::string model_path;
    int order = 6;
    double tol = 1e-9;
    std::string points;
    std::uint64_t seed = 1;
    std::string format = "text";
    bool strict = false;
};

Scalar parse_scalar_token(const std::string& tok, bool rational) {
    auto slash = tok.find('/');
    if (slash != std::string::npos) {
        long long num = std::stoll(tok.substr(0, slash));
        long long den = std::stoll(tok.substr(slash + 1));
        if (den == 0) throw Error("points", "zero denominator in " + tok);
        return Scalar(Rational(num, den));
    }
    if (rational) {
        return Scalar(std::stoll(tok));
    }
    return Scalar(std::stod(tok));
}

// "a,b;c,d" -> list of points; "random:K" -> K seeded interior rational points.
std::vector<std::vector<Scalar>> parse_points(const Options& opt, int n, bool rational) {
    std::vector<std::vector<Scalar>> pts;
    if (opt.points.empty()) return pts;
    if (opt.points.rfind("random:", 0) == 0) {
        int count = std::stoi(opt.points.substr(7));
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<int> num(-4, 4);
        for (int c = 0; c < count; ++c) {
            std::vector<Scalar> p;
            for (int v = 0; v < n; ++v) p.push_back(Scalar(Rational(num(rng), 16)));
            pts.push_back(p);
        }
        return pts;
    }
    std::stringstream all(opt.points);
    std::string point_str;
    while (std::getline(all, point_str, ';')) {
        std::vector<Scalar> p;
        std::stringstream ps(point_str);
        std::string tok;
        while (std::getline(ps, tok, ',')) p.push_back(parse_scalar_token(tok, rational));
        if (static_cast<int>(p.size()) != n)
            throw Error("points", "each point needs one coordinate per variable");
        pts.push_back(p);
    }
    return pts;
}

json point_to_json(const std::vector<Scalar>& p) {
    json a = json::array();
    for (const Scalar& s : p) a.push_back(scalar_to_json(s));
    return a;
}

json tensor_to_json(const std::vector<Scalar>& t) {
    json a = json::array();
    for (const Scalar& s : t) a.push_back(scalar_to_json(s));
    return a;
}

double tensor_max(const std::vector<Scalar>& t) {
    double m = 0;
    for (const Scalar& s : t) m = std::max(m, s.abs());
    return m;
}

void run_check_hodge_riemann(const LoadedModel& m, const Options& opt, Report& rep) {
    HodgeFiltration f = HodgeFiltration::reference(m.vhs.hodge);
    rep.verdict("reference_filtration",
                to_string(check_hodge_riemann(f, m.vhs.polarization, m.vhs.hodge, opt.tol)));
}

void run_expand_family(const LoadedModel& m, const Options&, Report& rep) {
    rep.table("classic", series_to_json(classic_family(m.vhs).coeffs));
    rep.table("canonical", series_to_json(canonical_family(m.vhs).coeffs));
    rep.verdict("degree_bound",
                classic_family(m.vhs).coeffs.polynomial());
}

void run_quantum_correction(const LoadedModel& m, const Options&, Report& rep) {
    QuantumCorrection qc = quantum_correction(m.vhs);
    rep.verdict("strong_is_zero", qc.strong_is_zero);
    rep.verdict("weak_is_zero", qc.weak_is_zero);
    rep.table("strong", series_to_json(qc.strong));
    json weak = json::array();
    for (const Matrix& w : qc.weak) weak.push_back(matrix_to_json(w));
    rep.table("weak", weak);
}

void run_yukawa(const LoadedModel& m, const Options&, Report& rep) {
    YukawaCoupling y = yukawa(m.vhs);
    int n = m.vhs.num_vars;
    json full = json::array(), corr = json::array();
    double worst = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) {
                std::size_t at = idx3(n, i, j, k);
                json e{{"indices", {i + 1, j + 1, k + 1}}};
                e["series"] = series_to_json(y.full[at]);
                full.push_back(e);
                e["series"] = series_to_json(y.correction[at]);
                corr.push_back(e);
                TruncatedSeries residual = y.full[at] - y.correction[at];
                MultiIndex zero(static_cast<std::size_t>(n));
                residual.set_coeff(zero, zero, Scalar(0));
                worst = std::max(worst, residual.max_abs());
            }
    rep.table("full", full);
    rep.table("correction", corr);
    rep.residual("full_minus_correction_nonconstant", worst, 1e-12);
    rep.convention(kCurvatureSignNote);
}

void run_wp_metric(const LoadedModel& m, const Options& opt, Report& rep) {
    WPPotential pot = wp_potential(m.vhs);
    rep.table("potential", series_to_json(pot.q.truncated(opt.order)));
    rep.table("metric_series", series_to_json(wp_metric_series(pot).truncated(opt.order)));
    for (const auto& p : parse_points(opt, m.vhs.num_vars, m.rational_mode)) {
        CurvatureReport g = geometry_at(m.vhs, p, true);
        rep.table("metric_at_" + point_to_json(p).dump(), matrix_to_json(g.metric));
        rep.residual("metric_fd_at_" + point_to_json(p).dump(), g.fd_residual_metric, opt.tol);
    }
}

void run_curvature(const LoadedModel& m, const Options& opt, Report& rep) {
    std::vector<std::vector<Scalar>> pts = parse_points(opt, m.vhs.num_vars, m.rational_mode);
    if (pts.empty()) pts.push_back(std::vector<Scalar>(m.vhs.num_vars, Scalar(0)));
    for (const auto& p : pts) {
        CurvatureReport g = geometry_at(m.vhs, p, true);
        std::string tag = point_to_json(p).dump();
        rep.table("metric_at_" + tag, matrix_to_json(g.metric));
        rep.table("curvature_at_" + tag, tensor_to_json(g.curvature));
        rep.residual("curvature_fd_at_" + tag, g.fd_residual_curvature, 1e-6);
    }
    rep.convention(kCurvatureSignNote);
    rep.convention(kFdNote);
}

void run_nabla_r(const LoadedModel& m, const Options&, Report& rep) {
    std::vector<Scalar> nr, nrb;
    nabla_curvature_at_base(m.vhs, nr, nrb);
    rep.table("nabla_r", tensor_to_json(nr));
    rep.table("nabla_rbar", tensor_to_json(nrb));
    rep.verdict("vanishes", tensor_max(nr) == 0 && tensor_max(nrb) == 0 ? "pass" : "nonzero");
    rep.convention(kCurvatureSignNote);
}

void run_check_symmetric(const LoadedModel& m, const Options& opt, Report& rep) {
    std::vector<std::vector<Scalar>> pts = parse_points(opt, m.vhs.num_vars, m.rational_mode);
    rep.verdict("symmetry", to_string(symmetry_verdict(m.vhs, pts, opt.tol)));
    rep.convention(kFdNote);
}

void run_sigma(const LoadedModel& m, const Options& opt, Report& rep) {
    std::vector<std::vector<Scalar>> pts = parse_points(opt, m.vhs.num_vars, m.rational_mode);
    if (pts.empty()) pts.push_back(std::vector<Scalar>(m.vhs.num_vars, Scalar(0)));
    for (const auto& p : pts) {
        SigmaResult s = cy3_sigma(m.vhs, p);
        std::string tag = point_to_json(p).dump();
        rep.table("sigma_at_" + tag, matrix_to_json(s.sigma));
        rep.verdict("preserves_pairing_at_" + tag, s.preserves_pairing);
        rep.verdict("equals_exponential_at_" + tag, s.equals_exponential);
        rep.verdict("transversal_at_" + tag, s.transversal);
    }
}

void run_abelian_check(const LoadedModel& m, const Options& opt, Report& rep) {
    std::vector<Matrix> e;
    for (int i = 0; i < m.vhs.num_vars; ++i) e.push_back(m.vhs.e_matrix(i));
    AbelianCheck ab = abelian_check(e);
    rep.verdict("abelian", ab.abelian);
    rep.residual("max_commutator", ab.max_commutator, opt.tol);
}

void run_hk_domain(const LoadedModel& m, const Options& opt, Report& rep) {
    HKModel hk = as_hk(m);
    std::vector<std::vector<Scalar>> pts = parse_points(opt, hk.num_vars, m.rational_mode);
    if (pts.empty()) pts.push_back(std::vector<Scalar>(hk.num_vars, Scalar(0)));
    json rows = json::array();
    for (const auto& p : pts) {
        HKMembership hm = hc_membership(hk, p, opt.tol);
        rows.push_back(json{{"point", point_to_json(p)},
                            {"verdict", to_string(hm.verdict)},
                            {"positivity_squared", scalar_to_json(hm.positivity_squared)},
                            {"positivity_unsquared", scalar_to_json(hm.positivity_unsquared)}});
    }
    rep.table("membership", rows);
    rep.convention(
        "membership is decided by the bilinear-relation checks; the two positivity scalars "
        "(squared and unsquared quartic term) are reported for diagnosis only");
}

void run_hk_coincidence(const LoadedModel& m, const Options& opt, Report& rep) {
    HKModel hk = as_hk(m);
    std::vector<std::vector<Scalar>> pts = parse_points(opt, hk.num_vars, m.rational_mode);
    if (pts.empty()) pts.push_back(std::vector<Scalar>(hk.num_vars, Scalar(0)));
    for (const auto& p : pts)
        rep.residual("coincidence_at_" + point_to_json(p).dump(),
                     coordinate_coincidence(hk, p, opt.tol), opt.tol);
}

int dispatch(const std::string& command, const Options& opt) {
    LoadedModel m = load_model(opt.model_path);
    if (opt.order != 6) {
        m.vhs.order = opt.order;
        m.echo["order"] = opt.order;
    }
    m.echo["seed"] = opt.seed;
    Report rep(command, m.echo);
    if (command == "check-hodge-riemann") run_check_hodge_riemann(m, opt, rep);
    else if (command == "expand-family") run_expand_family(m, opt, rep);
    else if (command == "quantum-correction") run_quantum_correction(m, opt, rep);
    else if (command == "yukawa") run_yukawa(m, opt, rep);
    else if (command == "wp-metric") run_wp_metric(m, opt, rep);
    else if (command == "curvature") run_curvature(m, opt, rep);
    else if (command == "nabla-r") run_nabla_r(m, opt, rep);
    else if (command == "check-symmetric") run_check_symmetric(m, opt, rep);
    else if (command == "sigma") run_sigma(m, opt, rep);
    else if (command == "abelian-check") run_abelian_check(m, opt, rep);
    else if (command == "hk-domain") run_hk_domain(m, opt, rep);
    else if (command == "hk-coincidence") run_hk_coincidence(m, opt, rep);
    else throw Error("command", "unknown command " + command);

    std::cout << (opt.format == "json" ? rep.json_text() : rep.plain_text()) << "\n";
    if (opt.strict && !rep.all_passed()) return 3;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variation-of-Hodge-structure geometry toolkit"};
    app.require_subcommand(1);

    Options opt;
    const char* names[] = {"check-hodge-riemann", "expand-family", "quantum-correction",
                           "yukawa", "wp-metric", "curvature", "nabla-r", "check-symmetric",
                           "sigma", "abelian-check", "hk-domain", "hk-coincidence"};
    for (const char* name : names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("model", opt.model_path, "model file (JSON)")->required();
        sub->add_option("--order", opt.order, "truncation order");
        sub->add_option("--tol", opt.tol, "comparison tolerance");
        sub->add_option("--points", opt.points,
                        "sample points 'a,b;c,d' (tokens p/q or decimals) or 'random:K'");
        sub->add_option("--seed", opt.seed, "PRNG seed for random points");
        sub->add_option("--format", opt.format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_flag("--strict", opt.strict, "exit 3 when a verdict fails");
    }

    CLI11_PARSE(app, argc, argv);
    try {
        return dispatch(app.get_subcommands().front()->get_name(), opt);
    } catch (const vhs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
