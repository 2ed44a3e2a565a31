#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "crownlab/crown.hpp"
#include "crownlab/hardy.hpp"
#include "crownlab/io.hpp"
#include "crownlab/lie.hpp"
#include "crownlab/nets.hpp"
#include "crownlab/schober.hpp"
#include "crownlab/suite.hpp"

using namespace crownlab;

namespace
{

constexpr double pi = std::numbers::pi;

struct Common
{
    std::string config;
    std::string out;
    std::string csv;
    long long seed = -1;
};

RunConfig resolve(const Common& c)
{
    RunConfig cfg = c.config.empty() ? RunConfig{} : load_config(c.config);
    apply_env(cfg);
    if (c.seed >= 0) cfg.seed = static_cast<std::uint64_t>(c.seed);
    validate(cfg);
    return cfg;
}

int emit(json report, const Common& c, bool pass = true)
{
    json out = {{"schema_version", schema_version}};
    for (auto& [k, v] : report.items()) out[k] = v;
    const std::string text = out.dump(2) + "\n";
    if (!c.out.empty()) write_atomic(c.out, text);
    std::cout << text;
    return pass ? 0 : 1;
}

void add_common(CLI::App* app, Common& c, bool seed = false)
{
    app->add_option("--config", c.config, "TOML config file");
    app->add_option("--out", c.out, "write the JSON report here");
    if (seed) app->add_option("--seed", c.seed, "seed (overrides config and CROWNLAB_SEED)");
}

LieAlgebra<double> pick_algebra(const std::string& name, const std::string& file)
{
    if (!file.empty()) return load_algebra_json(file);
    return catalog(name).algebra;
}

LieElement<double> parse_element(const LieAlgebra<double>& g, const std::string& s)
{
    const auto v = parse_list(s);
    if (static_cast<int>(v.size()) != g.dim())
        throw Error("DimensionMismatch", "element has " + std::to_string(v.size()) + " coordinates, algebra dim " +
                                             std::to_string(g.dim()));
    return Eigen::Map<const Eigen::VectorXd>(v.data(), g.dim());
}

json spectrum_json(const Eigen::MatrixXd& A)
{
    json s = json::array();
    const Eigen::VectorXcd ev = A.eigenvalues();
    std::vector<std::pair<double, double>> vals;
    for (Eigen::Index i = 0; i < ev.size(); ++i) vals.emplace_back(ev(i).real(), ev(i).imag());
    std::sort(vals.begin(), vals.end());
    for (auto [re, im] : vals) s.push_back(to_json(cplx(std::round(re * 1e9) / 1e9, std::round(im * 1e9) / 1e9)));
    return s;
}

void write_csv(const std::string& path, const std::string& header, const std::vector<std::vector<double>>& rows)
{
    std::ostringstream ss;
    ss.precision(17);
    ss << header << "\n";
    for (const auto& r : rows)
    {
        for (size_t k = 0; k < r.size(); ++k) ss << (k ? "," : "") << r[k];
        ss << "\n";
    }
    write_atomic(path, ss.str());
}

json span_json(const KernelSpan& v)
{
    json terms = json::array();
    for (const auto& t : v.terms)
        terms.push_back({{"coeff", to_json(t.coeff)}, {"point", to_json(t.point)}, {"order", t.order}});
    return terms;
}

json probe_json(const NetProbeReport& r)
{
    return {{"gram_rank", r.gram_rank},
            {"smallest_singular_value", r.smallest_singular_value},
            {"ranks", r.ranks},
            {"projection_deficits", r.deficits},
            {"kms_max_deviation", r.kms_max_deviation},
            {"verdicts", r.verdicts}};
}

Box wedge_box(int sign)
{
    return sign > 0 ? Box{1.0, 2.0, 0.9, 1.1} : Box{-2.0, -1.0, 0.9, 1.1};
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"crownlab: Euler elements, crown domains, Hardy-space modular analysis, nets, Schober's function"};
    app.require_subcommand(1);

    // euler
    auto* euler = app.add_subcommand("euler", "Euler elements and 3-gradings");
    euler->require_subcommand(1);
    Common ec;
    std::string alg = "split_oscillator", alg_file, element;
    auto* e_check = euler->add_subcommand("check", "is the element an Euler element");
    e_check->add_option("--algebra", alg, "catalog name");
    e_check->add_option("--algebra-json", alg_file, "algebra JSON file");
    e_check->add_option("--element", element, "coordinates, comma separated")->required();
    add_common(e_check, ec);
    auto* e_class = euler->add_subcommand("classify", "split-oscillator Euler classification");
    e_class->add_option("--element", element, "coordinates in (z,q,p,h)")->required();
    add_common(e_class, ec);
    auto* e_grad = euler->add_subcommand("grading", "projectors, tau, zeta and wedge data");
    e_grad->add_option("--algebra", alg, "catalog name");
    e_grad->add_option("--algebra-json", alg_file, "algebra JSON file");
    e_grad->add_option("--element", element, "coordinates (default: the catalog h)");
    add_common(e_grad, ec);

    // crown
    auto* crown = app.add_subcommand("crown", "crown domains of Aff(C) and SL2(C)");
    crown->require_subcommand(1);
    Common cc;
    std::string domain = "xi2", bstr = "0", astr = "1", matrix;
    long samples = 10000;
    int grid = 101;
    auto* c_mem = crown->add_subcommand("membership", "domain membership of a point");
    c_mem->add_option("--domain", domain, "xi1, xi2, xiplus:r, ximinus:r, sl2c");
    c_mem->add_option("--b", bstr, "translation part, re+imi");
    c_mem->add_option("--a", astr, "dilation part, re+imi");
    c_mem->add_option("--matrix", matrix, "SL2(C) entries a,b,c,d as re+imi (sl2c only)");
    add_common(c_mem, cc);
    auto* c_cr2 = crown->add_subcommand("cr2-sweep", "sampled (Cr2) check");
    c_cr2->add_option("--domain", domain, "domain tag");
    c_cr2->add_option("--samples", samples, "number of fixed points");
    c_cr2->add_option("--grid", grid, "number of t values in (-pi/2, pi/2)");
    add_common(c_cr2, cc, true);
    auto* c_iota = crown->add_subcommand("iota-check", "Xi2 against iota preimage, and U = Pi o iota");
    c_iota->add_option("--samples", samples, "number of samples");
    add_common(c_iota, cc, true);

    // hardy
    auto* hardy = app.add_subcommand("hardy", "Hardy-space modular analysis");
    hardy->require_subcommand(1);
    Common hc;
    double y = 1.0, tmin = 1.2, tmax = 1.5707;
    int points = 64;
    std::string support = "0.5,2.0", density = "gaussian", phase = "0.7071067811865476-0.7071067811865476i";
    std::string convention = "holomorphic", xgen = "1,0";
    auto* h_fit = hardy->add_subcommand("growth-fit", "fit ||U(it)K_iy||^2 <= C (pi/2 - |t|)^-N");
    h_fit->add_option("--y", y, "kernel point iy");
    h_fit->add_option("--tmin", tmin);
    h_fit->add_option("--tmax", tmax);
    h_fit->add_option("--points", points);
    h_fit->add_option("--csv", hc.csv, "write (t, norm2) here");
    add_common(h_fit, hc);
    auto* h_kms = hardy->add_subcommand("kms", "KMS test of a Cauchy vector");
    h_kms->add_option("--support", support, "lo,hi");
    h_kms->add_option("--density", density, "gaussian or bump");
    h_kms->add_option("--phase", phase, "unimodular phase, re+imi");
    add_common(h_kms, hc);
    auto* h_beta = hardy->add_subcommand("beta-plus", "boundary value of K_iy");
    h_beta->add_option("--y", y, "kernel point iy");
    h_beta->add_option("--convention", convention, "holomorphic or rotation");
    add_common(h_beta, hc);
    auto* h_zeta = hardy->add_subcommand("zeta-equivariance", "beta+ o dU(x) against dU(zeta x) o beta+");
    h_zeta->add_option("--x", xgen, "coordinates in (x, h) of aff");
    h_zeta->add_option("--y", y, "kernel point iy");
    h_zeta->add_option("--convention", convention, "holomorphic or rotation");
    add_common(h_zeta, hc);

    // net
    auto* net = app.add_subcommand("net", "nets of real subspaces on Aff(R)_e");
    net->require_subcommand(1);
    Common nc;
    std::string region = "-0.07,0.07,0.93,1.07", ranks = "8,16,32,40,64";
    int profiles = 64, wedge = 1, regnet_samples = 64;
    auto* n_rs = net->add_subcommand("rs", "Reeh-Schlieder deficits of K_i");
    n_rs->add_option("--region", region, "b_lo,b_hi,a_lo,a_hi");
    n_rs->add_option("--ranks", ranks, "comma separated");
    n_rs->add_option("--profiles", profiles, "Laguerre boundary profiles per test function");
    add_common(n_rs, nc);
    auto* n_bw = net->add_subcommand("bw", "KMS test of elements smeared inside a wedge");
    n_bw->add_option("--wedge", wedge, "+1 or -1");
    add_common(n_bw, nc);
    auto* n_reg = net->add_subcommand("regnet", "membership in the intersection of translated wedge spaces");
    n_reg->add_option("--region", region, "b_lo,b_hi,a_lo,a_hi");
    n_reg->add_option("--wedge", wedge, "+1 or -1");
    n_reg->add_option("--samples", regnet_samples, "coset samples");
    add_common(n_reg, nc, true);

    // schober
    auto* sch = app.add_subcommand("schober", "Schober's entire function");
    sch->require_subcommand(1);
    Common sc;
    std::string suite = "all";
    auto* s_ver = sch->add_subcommand("verify", "bounds, Hardy norms and non-temperedness");
    s_ver->add_option("--suite", suite, "all, strip, abs, G, hardy, nontempered");
    s_ver->add_option("--csv", sc.csv, "write (x, y, |F|, bound) here");
    add_common(s_ver, sc, true);

    // verify-all
    auto* all = app.add_subcommand("verify-all", "run the acceptance checks");
    Common vc;
    bool timings = false;
    add_common(all, vc, true);
    all->add_flag("--timings", timings, "include runtimes (reports are then not reproducible byte for byte)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (e_check->parsed())
        {
            const auto g = pick_algebra(alg, alg_file);
            const auto x = parse_element(g, element);
            return emit({{"command", "euler check"}, {"is_euler", is_euler(g, x)}, {"spectrum", spectrum_json(ad(g, x))}}, ec);
        }
        if (e_class->parsed())
        {
            const auto g = catalog("split_oscillator").algebra;
            const auto x = parse_element(g, element);
            const bool c = classify_euler_split_oscillator(g, x);
            return emit({{"command", "euler classify"}, {"classified_euler", c}, {"is_euler", is_euler(g, x)},
                         {"h_coordinate", x(g.index("h"))}},
                        ec);
        }
        if (e_grad->parsed())
        {
            const auto g = pick_algebra(alg, alg_file);
            LieElement<double> h;
            if (!element.empty()) h = parse_element(g, element);
            else if (alg_file.empty()) h = catalog(alg).elements.at("h");
            else throw Error("InvalidArgument", "--element is required with --algebra-json");
            const auto es = euler_structure(g, h);
            const auto wd = wedge_data(g, es);
            return emit({{"command", "euler grading"},
                         {"algebra", algebra_to_json(g)},
                         {"h", std::vector<double>(h.data(), h.data() + h.size())},
                         {"spectrum", es.spectrum},
                         {"dims", {{"minus1", es.projector(-1).trace()}, {"zero", es.projector(0).trace()},
                                   {"plus1", es.projector(1).trace()}}},
                         {"P_minus1", matrix_to_json(es.projector(-1))},
                         {"P_0", matrix_to_json(es.projector(0))},
                         {"P_plus1", matrix_to_json(es.projector(1))},
                         {"tau", matrix_to_json(es.tau)},
                         {"zeta", matrix_to_json(Eigen::MatrixXcd(es.zeta))},
                         {"omega_prime_basis", matrix_to_json(wd.omega_prime_basis)},
                         {"omega_basis", matrix_to_json(wd.omega_basis)},
                         {"centralizer_basis", matrix_to_json(wd.centralizer_basis)}},
                        ec);
        }
        if (c_mem->parsed())
        {
            const DomainTag tag = parse_domain(domain);
            json r = {{"command", "crown membership"}, {"domain", domain_name(tag)}};
            if (tag.kind == DomainKind::XiSL2C)
            {
                CMat2 m;
                if (!matrix.empty())
                {
                    std::vector<cplx> e;
                    std::stringstream ss(matrix);
                    std::string item;
                    while (std::getline(ss, item, ',')) e.push_back(parse_complex(item));
                    if (e.size() != 4) throw Error("InvalidArgument", "--matrix needs four entries");
                    m << e[0], e[1], e[2], e[3];
                }
                else
                {
                    m = iota({parse_complex(bstr), parse_complex(astr)});
                    r["via"] = "iota(b, a)";
                }
                r["member"] = in_domain(tag, m);
                r["margin"] = domain_margin(tag, m);
            }
            else
            {
                const CAffine g{parse_complex(bstr), parse_complex(astr)};
                r["b"] = to_json(g.b);
                r["a"] = to_json(g.a);
                r["member"] = in_domain(tag, g);
                r["margin"] = domain_margin(tag, g);
            }
            return emit(r, cc);
        }
        if (c_cr2->parsed())
        {
            const RunConfig cfg = resolve(cc);
            std::vector<double> t(grid);
            for (int k = 0; k < grid; ++k) t[k] = -pi / 2 + pi * (k + 1) / (grid + 1);
            const Cr2Report r = cr2_sweep(parse_domain(domain), samples, t, cfg.seed);
            return emit({{"command", "crown cr2-sweep"}, {"domain", r.domain}, {"samples", r.samples},
                         {"failures", r.failures}, {"worst_margin", r.worst_margin}, {"seed", r.seed}},
                        cc, r.failures == 0);
        }
        if (c_iota->parsed())
        {
            const RunConfig cfg = resolve(cc);
            std::mt19937_64 rng(cfg.seed);
            std::uniform_real_distribution<double> u(-3.0, 3.0), up(0.01, 3.0);
            long disagree = 0;
            double intertwine = 0.0;
            const auto& grid_pts = evaluation_grid();
            for (long k = 0; k < samples; ++k)
            {
                const CAffine g{cplx(u(rng), u(rng)), cplx(up(rng), u(rng))};
                if (in_domain(DomainTag{DomainKind::Xi2}, g) != in_domain(DomainTag{DomainKind::XiSL2C}, iota(g)))
                    ++disagree;
                if (k < 1000)
                {
                    const double b = u(rng), a = up(rng);
                    const KernelSpan v = kernel(cplx(u(rng), up(rng)), cplx(u(rng), u(rng)));
                    const KernelSpan p = act_sl2(iota({b, a}), v), q = act_affine(b, a, v);
                    for (cplx z : grid_pts) intertwine = std::max(intertwine, std::abs(evaluate(p, z) - evaluate(q, z)));
                }
            }
            return emit({{"command", "crown iota-check"}, {"samples", samples}, {"seed", cfg.seed},
                         {"xi2_vs_iota_preimage_disagreements", disagree},
                         {"max_pi_iota_vs_affine_deviation", intertwine}},
                        cc, disagree == 0 && intertwine < 1e-10);
        }
        if (h_fit->parsed())
        {
            const GrowthFit fit = growth_fit(kernel(cplx(0.0, y)), linspace(tmin, tmax, points));
            if (!hc.csv.empty())
            {
                std::vector<std::vector<double>> rows;
                for (size_t k = 0; k < fit.t_samples.size(); ++k) rows.push_back({fit.t_samples[k], fit.norms2[k]});
                write_csv(hc.csv, "t,norm2", rows);
            }
            return emit({{"command", "hardy growth-fit"}, {"y", y}, {"C", fit.C}, {"N", fit.N},
                         {"residual", fit.residual}, {"t_samples", fit.t_samples}, {"norms2", fit.norms2}},
                        hc);
        }
        if (h_kms->parsed())
        {
            const auto s = parse_list(support);
            if (s.size() != 2) throw Error("InvalidArgument", "--support needs lo,hi");
            const double lo = s[0], hi = s[1], c = (lo + hi) / 2, w = (hi - lo) / 2;
            const bool gauss = density == "gaussian";
            if (!gauss && density != "bump") throw Error("InvalidArgument", "--density must be gaussian or bump");
            auto psi = [c, w, gauss](double x) {
                const double t = (x - c) / w;
                if (std::abs(t) >= 1.0) return 0.0;
                const double b = std::exp(-1.0 / (1.0 - t * t));
                return gauss ? b * std::exp(-t * t / (2 * 0.35 * 0.35)) : b;
            };
            const CauchyVector v(parse_complex(phase), psi, lo, hi);
            json r = {{"command", "hardy kms"}, {"support", {lo, hi}}, {"density", density},
                      {"phase", to_json(v.phase())}, {"endpoint_deviation", kms_endpoint_deviation(v)}};
            bool pass = false;
            try
            {
                const KmsResult k = kms_test(v);
                r["kms_deviation"] = k.deviation;
                r["strip"] = k.strip;
                pass = k.deviation < 1e-6;
            }
            catch (const Error& e)
            {
                r["kms_error"] = e.code();
            }
            r["in_V"] = pass;
            return emit(r, hc);
        }
        if (h_beta->parsed())
        {
            const auto conv = convention == "rotation" ? FlowConvention::Rotation : FlowConvention::Holomorphic;
            if (convention != "rotation" && convention != "holomorphic")
                throw Error("InvalidArgument", "--convention must be holomorphic or rotation");
            const KernelSpan v = kernel(cplx(0.0, y));
            const KernelSpan b = beta_plus(v, conv);
            const auto panel = pairing_panel();
            const auto ex = beta_plus_pairings(v, panel, conv);
            double dev = 0.0;
            for (size_t k = 0; k < panel.size(); ++k) dev = std::max(dev, std::abs(ex.values(k) - inner(panel[k], b)));
            return emit({{"command", "hardy beta-plus"}, {"y", y}, {"convention", convention},
                         {"boundary_value", span_json(b)}, {"extrapolated_vs_closed_form", dev},
                         {"extrapolation_error", ex.error}},
                        hc);
        }
        if (h_zeta->parsed())
        {
            const auto conv = convention == "rotation" ? FlowConvention::Rotation : FlowConvention::Holomorphic;
            const auto x = parse_list(xgen);
            if (x.size() != 2) throw Error("InvalidArgument", "--x needs two coordinates");
            const ZetaReport r = zeta_equivariance_check(x[0], x[1], kernel(cplx(0.0, y)), conv);
            return emit({{"command", "hardy zeta-equivariance"}, {"x", x}, {"y", y}, {"convention", convention},
                         {"max_deviation", r.max_deviation}, {"extrapolation_error", r.extrapolation_error}},
                        hc, r.max_deviation < 1e-6);
        }
        if (n_rs->parsed())
        {
            const Box b = parse_box(region);
            std::vector<int> rk;
            for (double r : parse_list(ranks)) rk.push_back(static_cast<int>(r));
            const auto rep = rs_probe(box_region(b), {}, {laguerre_family(profiles)}, {bump(b)}, {kernel(cplx(0.0, 1.0))}, rk);
            json r = probe_json(rep);
            r["command"] = "net rs";
            r["region"] = {b.b_lo, b.b_hi, b.a_lo, b.a_hi};
            return emit(r, nc);
        }
        if (n_bw->parsed())
        {
            if (wedge != 1 && wedge != -1) throw Error("InvalidArgument", "--wedge must be +1 or -1");
            const Box b = wedge_box(wedge);
            const auto elems = net_elements({bump(b), gaussian_truncated(b)}, {boundary_point(0.3), boundary_point(0.5)});
            const auto rep = bw_probe(wedge, elems);
            json r = probe_json(rep);
            r["command"] = "net bw";
            r["wedge"] = wedge;
            r["box"] = {b.b_lo, b.b_hi, b.a_lo, b.a_hi};
            return emit(r, nc, rep.verdicts.front() == "PASS");
        }
        if (n_reg->parsed())
        {
            const RunConfig cfg = resolve(nc);
            const Box b = parse_box(region);
            const OpenRegion reg = box_region(b);
            const CauchyVector v = smear(bump(b), boundary_point(0.5)).vec;
            const bool member = regnet_membership(v, reg, wedge, regnet_samples, cfg.seed);
            const bool member_i = regnet_membership(scale(cplx(0.0, 1.0), v), reg, wedge, regnet_samples, cfg.seed);
            const bool member_k = regnet_membership(kernel(cplx(0.0, 1.0)), reg, wedge, regnet_samples, cfg.seed);
            return emit({{"command", "net regnet"}, {"region", {b.b_lo, b.b_hi, b.a_lo, b.a_hi}}, {"wedge", wedge},
                         {"samples", regnet_samples}, {"seed", cfg.seed}, {"smeared_element", member},
                         {"i_times_element", member_i}, {"kernel_K_i", member_k}},
                        nc);
        }
        if (s_ver->parsed())
        {
            const RunConfig cfg = resolve(sc);
            const std::set<std::string> known = {"all", "strip", "abs", "G", "hardy", "nontempered"};
            if (!known.count(suite)) throw Error("InvalidArgument", "unknown suite " + suite);
            CriterionResult full = run_criterion(8, cfg);
            json checks = json::array();
            bool pass = true;
            for (const auto& c : full.checks)
            {
                const bool take = suite == "all" || (suite == "strip" && c.name == "strip_bound") ||
                                  (suite == "abs" && c.name == "abs_bound") ||
                                  (suite == "G" && c.name == "G_decreasing") ||
                                  (suite == "hardy" && c.name.rfind("hardy", 0) == 0) ||
                                  (suite == "nontempered" && c.name == "nontempered");
                if (!take) continue;
                checks.push_back(check_json(c));
                pass = pass && c.pass;
            }
            if (!sc.csv.empty())
            {
                std::vector<std::vector<double>> rows;
                for (double x : linspace(-20.0, 20.0, 81))
                    for (double yy : {-1.0, 0.0, 1.0, 3.0})
                    {
                        const double ax = std::abs(x);
                        rows.push_back({x, yy, std::abs(schober_F(cplx(x, yy)).value),
                                        ax > pi / 2 ? 1.0 / (ax - pi / 2) : std::numeric_limits<double>::infinity()});
                    }
                write_csv(sc.csv, "x,y,absF,bound", rows);
            }
            return emit({{"command", "schober verify"}, {"suite", suite}, {"seed", cfg.seed},
                         {"verdict", pass ? "PASS" : "FAIL"}, {"checks", checks}},
                        sc, pass);
        }
        if (all->parsed())
        {
            const RunConfig cfg = resolve(vc);
            const auto results = run_suite(cfg);
            json j = suite_json(results, cfg, timings);
            return emit(j, vc, j["verdict"] == "PASS");
        }
    }
    catch (const Error& e)
    {
        std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }
    catch (const std::exception& e)
    {
        std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }
    return 2;
}
