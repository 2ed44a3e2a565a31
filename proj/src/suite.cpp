#include "crownlab/suite.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <numbers>
#include <random>

#include "crownlab/crown.hpp"
#include "crownlab/hardy.hpp"
#include "crownlab/lie.hpp"
#include "crownlab/nets.hpp"
#include "crownlab/schober.hpp"

namespace crownlab
{

namespace
{

constexpr double pi = std::numbers::pi;

CheckResult le(std::string name, std::string anchor, double measured, double threshold, json details = json::object())
{
    return {std::move(name), std::move(anchor), measured <= threshold, measured, threshold, std::move(details)};
}

CheckResult lt(std::string name, std::string anchor, double measured, double threshold, json details = json::object())
{
    return {std::move(name), std::move(anchor), measured < threshold, measured, threshold, std::move(details)};
}

std::vector<double> open_grid(double lo, double hi, int n)
{
    std::vector<double> t(n);
    for (int k = 0; k < n; ++k) t[k] = lo + (hi - lo) * (k + 1) / (n + 1);
    return t;
}

// 1: Euler elements of the catalog and their gradings.
std::vector<CheckResult> euler_algebra(const RunConfig& cfg)
{
    std::vector<CheckResult> out;
    for (const std::string name : {"aff", "sl2", "split_oscillator", "sl3"})
    {
        const CatalogEntry e = catalog(name);
        const auto& g = e.algebra;
        const LieElement<double> h = e.elements.at("h");
        const Eigen::MatrixXd A = ad(g, h);
        const double cube = (A * A * A - A).cwiseAbs().maxCoeff();
        out.push_back(le(name + ".ad_h_cubed", "(ad h)^3 = ad h", cube, cfg.tol.algebraic));

        const Eigen::VectorXcd ev = A.eigenvalues();
        double spec = 0.0;
        json eig = json::array();
        for (Eigen::Index i = 0; i < ev.size(); ++i)
        {
            const double d = std::min({std::abs(ev(i) - 1.0), std::abs(ev(i)), std::abs(ev(i) + 1.0)});
            spec = std::max(spec, d);
            eig.push_back(std::round(ev(i).real() * 1e9) / 1e9);
        }
        out.push_back(le(name + ".spectrum", "spectrum(ad h) in {-1, 0, 1}", spec, cfg.tol.eigen, {{"eigenvalues", eig}}));

        const auto es = euler_structure(g, h);
        double grading = 0.0;
        for (int l = -1; l <= 1; ++l)
            for (int m = -1; m <= 1; ++m)
                for (int i = 0; i < g.dim(); ++i)
                    for (int j = 0; j < g.dim(); ++j)
                    {
                        const LieElement<double> u = es.projector(l).col(i), v = es.projector(m).col(j);
                        const LieElement<double> w = bracket(g, u, v);
                        const LieElement<double> r = std::abs(l + m) <= 1 ? LieElement<double>(w - es.projector(l + m) * w) : w;
                        grading = std::max(grading, r.cwiseAbs().maxCoeff());
                    }
        out.push_back(le(name + ".grading", "[g_l, g_m] in g_{l+m}", grading, cfg.tol.algebraic,
                         {{"dims", {es.projector(-1).trace(), es.projector(0).trace(), es.projector(1).trace()}}}));
    }
    return out;
}

// 2: Euler elements of the split oscillator are the hyperplanes +-h + heis.
std::vector<CheckResult> split_classification(const RunConfig& cfg)
{
    const CatalogEntry e = catalog("split_oscillator");
    const auto& g = e.algebra;
    const int ih = g.index("h");
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::uniform_int_distribution<int> pick(0, 5);
    long disagree = 0, euler = 0;
    const double special[] = {0.0, 2.0, -2.0, 0.5, -0.5};
    for (long k = 0; k < cfg.samples.classify; ++k)
    {
        LieElement<double> x(4);
        for (int i = 0; i < 4; ++i) x(i) = u(rng);
        const int kind = pick(rng);
        if (kind <= 1) x(ih) = kind == 0 ? 1.0 : -1.0;
        else if (kind == 2) x(ih) = special[static_cast<int>((u(rng) + 5.0) / 2.0) % 5];
        const bool c = classify_euler_split_oscillator(g, x);
        if (c != is_euler(g, x)) ++disagree;
        if (c) ++euler;
    }
    return {le("classify_vs_is_euler", "E(g) = (h + heis) u (-h + heis)", static_cast<double>(disagree), 0.0,
               {{"samples", cfg.samples.classify}, {"euler_samples", euler}})};
}

// 3: crown domains of Aff(C).
std::vector<CheckResult> crown(const RunConfig& cfg)
{
    std::vector<CheckResult> out;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-3.0, 3.0), up(0.0, 3.0);
    long d1 = 0, d2 = 0, in2 = 0;
    const DomainTag xi2{DomainKind::Xi2}, plus{DomainKind::XiPlus, 1.0}, minus{DomainKind::XiMinus, 1.0};
    const DomainTag sl2c{DomainKind::XiSL2C};
    for (long k = 0; k < cfg.samples.domains; ++k)
    {
        CAffine g{cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
        if (std::abs(g.a) < 1e-12) g.a = 1.0;
        const bool a = in_domain(xi2, g);
        if (a != (in_domain(plus, g) && in_domain(minus, g))) ++d1;
        // points of Xi1
        CAffine h{cplx(u(rng), u(rng)), cplx(up(rng), u(rng))};
        if (h.a.real() <= 0.0) h.a += 1.0;
        const bool b = in_domain(xi2, h);
        if (b) ++in2;
        if (b != in_domain(sl2c, iota(h))) ++d2;
    }
    out.push_back(le("xi2_eq_plus_cap_minus", "Xi2 = Xi+,1 n Xi-,1", static_cast<double>(d1), 0.0,
                     {{"samples", cfg.samples.domains}}));
    out.push_back(le("xi2_eq_iota_preimage", "Xi2 = iota^-1(Xi_SL2(C))", static_cast<double>(d2), 0.0,
                     {{"samples", cfg.samples.domains}, {"inside_xi2", in2}}));
    const auto grid = open_grid(-pi / 2, pi / 2, cfg.samples.cr2_grid);
    for (const DomainTag tag : {DomainTag{DomainKind::Xi2}, DomainTag{DomainKind::Xi1}})
    {
        const Cr2Report r = cr2_sweep(tag, cfg.samples.cr2, grid, cfg.seed);
        out.push_back(le("cr2_" + r.domain, "exp(i t h).p in Xi for |t| < pi/2", static_cast<double>(r.failures), 0.0,
                         {{"samples", r.samples}, {"grid", grid.size()}, {"worst_margin", r.worst_margin}}));
    }
    return out;
}

// 4: Hardy-space closed forms.
std::vector<CheckResult> hardy_closed_forms(const RunConfig& cfg)
{
    std::vector<CheckResult> out;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> ure(-3.0, 3.0), uim(0.2, 3.0);
    double analytic = 0.0, bridge = 0.0, bridge_values = 0.0;
    for (int k = 0; k < cfg.samples.hardy_points; ++k)
    {
        const cplx z(ure(rng), uim(rng));
        const double exact = 1.0 / (2 * z.imag());
        analytic = std::max(analytic, std::abs(inner(kernel(z), kernel(z)).real() - exact) / exact);
        // K_z is the Fourier-Laplace transform of p -> e^{-i conj(z) p}
        auto f = [z](double p) { return std::exp(cplx(0.0, -1.0) * std::conj(z) * p); };
        const auto n2 = l2_norm2(f, cfg.tol.quadrature);
        bridge = std::max(bridge, std::abs(n2.value - exact) / exact);
        const cplx w(0.5, 1.0);
        const auto fw = l2_bridge(f, w, cfg.tol.quadrature);
        bridge_values = std::max(bridge_values, std::abs(fw.value - evaluate(kernel(z), w)));
    }
    out.push_back(le("norm_analytic", "||K_z||^2 = 1/(2 Im z)", analytic, 1e-12));
    out.push_back(le("norm_l2_bridge", "||K_z||^2 = int_0^inf |e^{-i conj(z) p}|^2 dp", bridge, 1e-6,
                     {{"max_value_error", bridge_values}}));

    double flow = 0.0;
    for (double y : {0.5, 1.0, 2.0})
        for (double t : open_grid(-pi / 2, pi / 2, 63))
        {
            const double exact = 1.0 / (2 * y * std::cos(t));
            const KernelSpan w = modular_flow(cplx(0.0, t), kernel(cplx(0.0, y)));
            flow = std::max(flow, std::abs(inner(w, w).real() - exact) / exact);
        }
    out.push_back(le("flow_norm", "||U(it) K_iy||^2 = 1/(2 y cos t)", flow, 1e-10));

    for (double y : {0.5, 1.0, 2.0})
    {
        const GrowthFit fit = growth_fit(kernel(cplx(0.0, y)), linspace(1.2, 1.5707, 64));
        CheckResult c{"growth_N_y" + json(y).dump(), "||U(it) v||^2 <= C (pi/2 - |t|)^-N with N = 1",
                      fit.N >= 0.95 && fit.N <= 1.05, std::abs(fit.N - 1.0), 0.05,
                      {{"N", fit.N}, {"C", fit.C}, {"residual", fit.residual}}};
        out.push_back(c);
    }
    return out;
}

// 5: boundary map and zeta-equivariance.
std::vector<CheckResult> boundary_map(const RunConfig&)
{
    std::vector<CheckResult> out;
    const auto panel = pairing_panel();
    const cplx ph = std::exp(cplx(0.0, -pi / 4));
    double literal = 0.0, holo = 0.0, rotation = 0.0, err = 0.0, err_rot = 0.0;
    for (double y : {0.5, 1.0, 2.0})
    {
        const KernelSpan v = kernel(cplx(0.0, y));
        const auto ex = beta_plus_pairings(v, panel);
        const auto ex_rot = beta_plus_pairings(v, panel, FlowConvention::Rotation);
        err = std::max(err, ex.error);
        err_rot = std::max(err_rot, ex_rot.error);
        for (size_t k = 0; k < panel.size(); ++k)
        {
            const cplx at_plus = inner(panel[k], kernel(cplx(y, 0.0), ph));
            const cplx at_minus = inner(panel[k], kernel(cplx(-y, 0.0), ph));
            literal = std::max(literal, std::abs(ex.values(k) - at_plus));
            holo = std::max(holo, std::abs(ex.values(k) - at_minus));
            rotation = std::max(rotation, std::abs(ex_rot.values(k) - at_plus));
        }
    }
    const double tol = 1e-6;
    CheckResult lit = le("beta_plus_K_iy_eq_phase_K_y", "beta+(K_iy) = e^{-i pi/4} K_y", literal, tol,
                         {{"extrapolation_error", err}, {"continuation", "holomorphic"}});
    lit.pass = literal <= tol && err < tol;
    out.push_back(lit);
    CheckResult cor = le("beta_plus_K_iy_eq_phase_K_minus_y", "beta+(K_iy) = e^{-i pi/4} K_{-y}", holo, tol,
                         {{"extrapolation_error", err},
                          {"rotation_rule_deviation_from_K_y", rotation},
                          {"rotation_rule_extrapolation_error", err_rot}});
    cor.pass = holo <= tol && err < tol;
    out.push_back(cor);
    for (auto [name, xc, hc] : {std::tuple{"x", 1.0, 0.0}, std::tuple{"h", 0.0, 1.0}})
    {
        double dev = 0.0, e = 0.0;
        for (double y : {0.5, 1.0, 2.0})
        {
            const ZetaReport r = zeta_equivariance_check(xc, hc, kernel(cplx(0.0, y)));
            dev = std::max(dev, r.max_deviation);
            e = std::max(e, r.extrapolation_error);
        }
        CheckResult c = le(std::string("zeta_equivariance_") + name, "beta+ o dU(x) = dU(zeta x) o beta+", dev, tol,
                           {{"extrapolation_error", e}});
        c.pass = dev < tol && e < tol;
        out.push_back(c);
    }
    return out;
}

// 6: KMS phase identity and Bisognano-Wichmann orientation.
std::vector<CheckResult> kms_bw(const RunConfig& cfg)
{
    std::vector<CheckResult> out;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const cplx ph = std::exp(cplx(0.0, -pi / 4));
    double worst = 0.0;
    for (int k = 0; k < cfg.samples.cauchy_vectors; ++k)
    {
        const double lo = 0.05 + 2.0 * u(rng), len = 0.2 + 3.0 * u(rng);
        const double c = lo + len / 2, w = len / 2, sigma = 0.2 + 0.8 * u(rng);
        const bool gauss = k % 2 == 1;
        auto psi = [c, w, sigma, gauss](double x) {
            const double t = (x - c) / w;
            if (std::abs(t) >= 1.0) return 0.0;
            const double b = std::exp(-1.0 / (1.0 - t * t));
            return gauss ? b * std::exp(-t * t / (2 * sigma * sigma)) : b;
        };
        worst = std::max(worst, kms_endpoint_deviation(CauchyVector(ph, psi, lo, lo + len)));
    }
    out.push_back(le("kms_phase_identity", "U(i pi) xi = J xi", worst, 1e-8, {{"vectors", cfg.samples.cauchy_vectors}}));
    const BwOrientation o = bw_orientation();
    const double pass_dev = std::min(o.deviation_plus, o.deviation_minus);
    const double fail_dev = std::max(o.deviation_plus, o.deviation_minus);
    const double ratio = fail_dev / std::max(pass_dev, 1e-300);
    CheckResult bw{"bw_exactly_one_sign", "H(W) = V for exactly one wedge orientation",
                   o.sign != 0 && pass_dev < cfg.tol.kms && ratio > 1e3, ratio, 1e3,
                   {{"sign", o.sign}, {"deviation_plus", o.deviation_plus}, {"deviation_minus", o.deviation_minus}}};
    out.push_back(bw);
    return out;
}

std::vector<KernelSpan> panel_i()
{
    return {kernel(cplx(0.0, 1.0))};
}

// 7: Reeh-Schlieder surrogate.
std::vector<CheckResult> reeh_schlieder(const RunConfig& cfg)
{
    std::vector<CheckResult> out;
    const std::vector<int> ranks = {8, 16, 32, 40, 64};
    const double hs = 0.07;
    const Box box{-hs, hs, 1 - hs, 1 + hs};
    const double diameter = std::hypot(2 * hs, 2 * hs);
    const NetProbeReport rep = rs_probe(box_region(box), {}, {laguerre_family(64)}, {bump(box)}, panel_i(), ranks);
    const auto& d = rep.deficits[0];
    int reached = -1;
    for (size_t k = 0; k < ranks.size(); ++k)
        if (reached < 0 && d[k] < cfg.tol.deficit) reached = ranks[k];
    out.push_back(lt("deficit_K_i_by_rank_64", "H(O) total: dist(K_i, span) -> 0", d.back(), cfg.tol.deficit,
                     {{"region_diameter", diameter}, {"ranks", ranks}, {"deficits", d}, {"first_rank_below", reached},
                      {"gram_rank", rep.gram_rank}}));
    double worst_rank = 0.0;
    for (size_t k = 1; k < d.size(); ++k) worst_rank = std::max(worst_rank, d[k] - 1.05 * d[k - 1]);
    out.push_back(le("monotone_in_rank", "deficit non-increasing in rank (5% slack)", worst_rank, 0.0));

    // nested regions O1 c O2 c O3; each family adds elements of the larger region to the previous one
    std::vector<CauchyVector> fam;
    std::vector<double> full;
    json per_region = json::array();
    for (double s : {0.035, 0.07, 0.14})
    {
        const Box b{-s, s, 1 - s, 1 + s};
        const auto add = smear_family(bump(b), laguerre_family(8));
        fam.insert(fam.end(), add.begin(), add.end());
        const int n = static_cast<int>(fam.size());
        const DeficitCurve c = projection_deficits(fam, panel_i(), {n});
        full.push_back(c.deficits[0][0]);
        per_region.push_back({{"half_side", s}, {"elements", n}, {"deficit", c.deficits[0][0]}});
    }
    double worst_iso = 0.0;
    for (size_t k = 1; k < full.size(); ++k) worst_iso = std::max(worst_iso, full[k] - 1.05 * full[k - 1]);
    out.push_back(le("monotone_in_region", "O1 c O2 implies H(O1) c H(O2) (5% slack)", worst_iso, 0.0,
                     {{"regions", per_region}}));
    return out;
}

// 8: Schober's function.
std::vector<CheckResult> schober(const RunConfig& cfg)
{
    std::vector<CheckResult> out;
    const int n = static_cast<int>(cfg.samples.schober);
    auto f1 = std::async(std::launch::async, [&] { return verify_strip_bound(n, 0.05, cfg.seed); });
    auto f2 = std::async(std::launch::async, [&] { return verify_abs_bound(n, cfg.seed + 1); });
    std::vector<double> ys;
    for (int k = 0; k < n; ++k) ys.push_back(-3.0 + 13.0 * k / (n - 1.0));
    auto f3 = std::async(std::launch::async, [&] { return verify_G_decreasing(ys); });
    for (const BoundReport& r : {f1.get(), f2.get(), f3.get()})
    {
        const std::string anchor = r.name == "strip_bound"  ? "|F(x+iy)| <= 1/(|x| - pi/2)"
                                   : r.name == "abs_bound"  ? "|F(x+iy)| <= F(iy)"
                                                            : "G(y) = F(iy) decreasing";
        out.push_back(le(r.name, anchor, static_cast<double>(r.violations), 0.0,
                         {{"samples", r.samples}, {"worst_excess", r.worst_excess}, {"max_slack", r.max_slack}}));
    }
    const double f0 = schober_F(0.0).value.real();
    out.push_back(le("F0", "F(0) = int t^-t dt", std::abs(f0 - schober_F0), 1e-12, {{"value", f0}}));

    // Hardy norms of F((z + b)/a)
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::pair<cplx, cplx>> pairs;
    for (int k = 0; k < cfg.samples.hardy_pairs; ++k)
    {
        const cplx b(-1.0 + 2.0 * u(rng), -0.5 + u(rng));
        const cplx a(0.7 + 1.3 * u(rng), -0.8 + 1.6 * u(rng));
        pairs.emplace_back(b, a);
    }
    const std::vector<double> y_grid = {1e-3, 0.01, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
    std::vector<std::future<HardyNormReport>> jobs;
    for (const auto& [b, a] : pairs)
        jobs.push_back(std::async(std::launch::async, [b, a, &y_grid] { return hardy_norm_bound(b, a, y_grid); }));
    int fail = 0, fail_abs = 0, finite = 0;
    double worst_ratio = 0.0, worst_ratio_abs = 0.0;
    json rows = json::array();
    for (auto& j : jobs)
    {
        const HardyNormReport r = j.get();
        fail += !r.pass;
        fail_abs += !r.pass_abs_d;
        finite += r.finite;
        worst_ratio = std::max(worst_ratio, r.empirical_sup / r.bound);
        worst_ratio_abs = std::max(worst_ratio_abs, r.empirical_sup / r.bound_abs_d);
        rows.push_back({{"b", to_json(r.b)}, {"a", to_json(r.a)}, {"empirical_sup", r.empirical_sup},
                        {"bound", r.bound}, {"bound_abs_d", r.bound_abs_d}, {"pass", r.pass}});
    }
    out.push_back(le("hardy_norm_bound", "sup_y int |F((x+iy+b)/a)|^2 dx <= 4|a|^2/(pi c) + 2 pi |a|^2/c G((Im b - pi d)/c)^2",
                     static_cast<double>(fail), 0.0, {{"worst_ratio", worst_ratio}, {"samples", rows}}));
    out.push_back(le("hardy_norm_bound_abs_d", "same bound with |d| in place of d", static_cast<double>(fail_abs), 0.0,
                     {{"worst_ratio", worst_ratio_abs}}));
    out.push_back(le("hardy_norm_finite", "F((z+b)/a) in H^2(C+)", static_cast<double>(jobs.size() - finite), 0.0));

    const NontemperedReport nt = nontempered_demo({1.0, 10.0, 100.0}, linspace(0.0, 10.0, 101));
    int not_inc = 0;
    json onset = json::array();
    for (size_t k = 0; k < nt.p_list.size(); ++k)
    {
        not_inc += !nt.eventually_increasing[k];
        onset.push_back({{"p", nt.p_list[k]}, {"onset_x", nt.onset[k]}});
    }
    out.push_back(le("nontempered", "H(x)/e^{px} eventually increasing", static_cast<double>(not_inc), 0.0,
                     {{"onsets", onset}, {"double_exp_rate", nt.double_exp_rate}}));
    return out;
}

const char* titles[] = {"",
                        "Euler algebra",
                        "Split-oscillator Euler classification",
                        "Crown domains",
                        "Hardy closed forms",
                        "Boundary map",
                        "KMS/BW",
                        "Reeh-Schlieder surrogate",
                        "Schober suite",
                        "Determinism"};

const double limits_ms[] = {0, 1e3, 5e3, 10e3, 10e3, 10e3, 30e3, 60e3, 120e3, 0};

}  // namespace

CriterionResult run_criterion(int id, const RunConfig& cfg)
{
    if (id < 1 || id > 8) throw Error("InvalidArgument", "criterion id must be in 1..8");
    CriterionResult r;
    r.id = id;
    r.title = titles[id];
    r.runtime_limit_ms = limits_ms[id];
    const auto t0 = std::chrono::steady_clock::now();
    switch (id)
    {
        case 1: r.checks = euler_algebra(cfg); break;
        case 2: r.checks = split_classification(cfg); break;
        case 3: r.checks = crown(cfg); break;
        case 4: r.checks = hardy_closed_forms(cfg); break;
        case 5: r.checks = boundary_map(cfg); break;
        case 6: r.checks = kms_bw(cfg); break;
        case 7: r.checks = reeh_schlieder(cfg); break;
        case 8: r.checks = schober(cfg); break;
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    r.pass = true;
    for (const auto& c : r.checks) r.pass = r.pass && c.pass;
    return r;
}

std::vector<CriterionResult> run_suite(const RunConfig& cfg)
{
    std::vector<std::future<CriterionResult>> jobs;
    for (int id = 1; id <= 8; ++id) jobs.push_back(std::async(std::launch::async, run_criterion, id, cfg));
    std::vector<CriterionResult> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

json check_json(const CheckResult& c)
{
    return {{"name", c.name}, {"paper_anchor", c.anchor}, {"status", c.pass ? "PASS" : "FAIL"},
            {"measured", c.measured}, {"threshold", c.threshold}, {"details", c.details}};
}

json suite_json(const std::vector<CriterionResult>& results, const RunConfig& cfg, bool timings)
{
    json crit = json::array();
    bool all = true;
    for (const auto& r : results)
    {
        json checks = json::array();
        for (const auto& c : r.checks)
        {
            json j = check_json(c);
            if (timings) j["runtime_ms"] = r.runtime_ms;
            checks.push_back(j);
        }
        json cj = {{"id", r.id}, {"title", r.title}, {"status", r.pass ? "PASS" : "FAIL"}, {"checks", checks}};
        if (timings) cj["runtime_ms"] = r.runtime_ms;
        crit.push_back(cj);
        all = all && r.pass;
    }
    return {{"schema_version", schema_version},
            {"suite", "verify-all"},
            {"seed", cfg.seed},
            {"verdict", all ? "PASS" : "FAIL"},
            {"criteria", crit}};
}

}  // namespace crownlab
