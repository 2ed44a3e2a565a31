#include "crownlab/nets.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <unordered_map>

namespace crownlab
{

namespace
{

const cplx eta_phase = std::exp(cplx(0.0, -std::numbers::pi / 4));

double bump1(double u)
{
    return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
}

// x-range of a s y - b over the box and y in [y_lo, y_hi] (extremes sit at corners).
std::pair<double, double> support_of(const Box& box, double y_lo, double y_hi)
{
    double lo = INFINITY, hi = -INFINITY;
    for (double a : {box.a_lo, box.a_hi})
        for (double y : {y_lo, y_hi})
            for (double b : {box.b_lo, box.b_hi})
            {
                const double x = a * boundary_sign * y - b;
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
    return {lo, hi};
}

// Interval of t with t * c in (x + b_lo, x + b_hi), intersected with (lo, hi).
bool slice(double c, double x, const Box& box, double lo, double hi, double& t0, double& t1)
{
    double p = (x + box.b_lo) / c, q = (x + box.b_hi) / c;
    if (p > q) std::swap(p, q);
    t0 = std::max(p, lo);
    t1 = std::min(q, hi);
    return t1 > t0;
}

// sum over a-nodes and y-nodes of a^{-3/2} phi(a s y - x, a) w(y); `acc` receives count values.
void family_density(const TestFunction& phi, const ProfileFamily& fam, const QuadratureRule<double>& gl, double x,
                    double* acc, std::vector<double>& wbuf)
{
    const Box& box = phi.support;
    std::fill(acc, acc + fam.count, 0.0);
    const double ac = (box.a_lo + box.a_hi) / 2, ah = (box.a_hi - box.a_lo) / 2;
    for (Eigen::Index i = 0; i < gl.size(); ++i)
    {
        const double a = ac + ah * gl.nodes(i);
        double y0, y1;
        if (!slice(a * boundary_sign, x, box, fam.y_lo, fam.y_hi, y0, y1)) continue;
        const double yc = (y0 + y1) / 2, yh = (y1 - y0) / 2;
        const double wa = gl.weights(i) * ah * std::pow(a, -1.5);
        for (Eigen::Index j = 0; j < gl.size(); ++j)
        {
            const double y = yc + yh * gl.nodes(j);
            const double f = phi(a * boundary_sign * y - x, a);
            if (f == 0.0) continue;
            fam.eval(y, wbuf.data());
            const double w = wa * gl.weights(j) * yh * f;
            for (int k = 0; k < fam.count; ++k) acc[k] += w * wbuf[k];
        }
    }
}

double point_density(const TestFunction& phi, double y, const QuadratureRule<double>& gl, double x)
{
    const Box& box = phi.support;
    double a0, a1;
    if (!slice(boundary_sign * y, x, box, box.a_lo, box.a_hi, a0, a1)) return 0.0;
    const double ac = (a0 + a1) / 2, ah = (a1 - a0) / 2;
    double s = 0.0;
    for (Eigen::Index i = 0; i < gl.size(); ++i)
    {
        const double a = ac + ah * gl.nodes(i);
        s += gl.weights(i) * ah * phi(a * boundary_sign * y - x, a) * std::pow(a, -1.5);
    }
    return s;
}

ProfileFamily single(const BoundaryProfile& eta)
{
    ProfileFamily f;
    auto w = eta.weight;
    f.eval = [w](double y, double* out) { out[0] = w(y); };
    f.count = 1;
    f.y_lo = eta.y_lo;
    f.y_hi = eta.y_hi;
    return f;
}

struct FamilyCache
{
    TestFunction phi;
    ProfileFamily fam;
    QuadratureRule<double> gl;
    std::mutex mu;
    std::unordered_map<double, std::vector<double>> memo;

    double get(double x, int k)
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(x);
        if (it == memo.end())
        {
            std::vector<double> v(fam.count), buf(fam.count);
            family_density(phi, fam, gl, x, v.data(), buf);
            it = memo.emplace(x, std::move(v)).first;
        }
        return it->second[k];
    }
};

}  // namespace

Box translate(const Box& box, double b0, double a0)
{
    if (!(a0 > 0.0)) throw Error("InvalidGroupElement", "a0 must be positive");
    return {b0 + a0 * box.b_lo, b0 + a0 * box.b_hi, a0 * box.a_lo, a0 * box.a_hi};
}

OpenRegion box_region(const Box& b)
{
    if (!(b.b_hi > b.b_lo && b.a_hi > b.a_lo && b.a_lo > 0.0)) throw Error("InvalidRegion", "empty box or a_lo <= 0");
    return {false, 1, b};
}

OpenRegion wedge_region(int sign)
{
    if (sign != 1 && sign != -1) throw Error("InvalidRegion", "wedge sign must be +-1");
    return {true, sign, {}};
}

Box parse_box(const std::string& s)
{
    std::stringstream ss(s);
    std::string item;
    std::vector<double> v;
    while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
    if (v.size() != 4) throw Error("InvalidRegion", "expected b_lo,b_hi,a_lo,a_hi");
    return box_region({v[0], v[1], v[2], v[3]}).box;
}

double TestFunction::operator()(double b, double a) const
{
    const double bc = (support.b_lo + support.b_hi) / 2, bh = (support.b_hi - support.b_lo) / 2;
    const double ac = (support.a_lo + support.a_hi) / 2, ah = (support.a_hi - support.a_lo) / 2;
    const double u = (b - bc) / bh, v = (a - ac) / ah;
    const double cut = bump1(u) * bump1(v);
    if (cut == 0.0 || kind == Kind::Bump) return cut;
    return cut * std::exp(-(u * u + v * v) / (2 * width * width));
}

TestFunction bump(const Box& b)
{
    return {TestFunction::Kind::Bump, b, 0.35};
}

TestFunction gaussian_truncated(const Box& b, double width)
{
    return {TestFunction::Kind::GaussianTruncated, b, width};
}

BoundaryProfile boundary_point(double y)
{
    if (!(y > 0.0)) throw Error("InvalidArgument", "boundary parameter y must be positive");
    return {nullptr, y, y};
}

ProfileFamily laguerre_family(int count, double s, double y_max)
{
    ProfileFamily f;
    f.count = count;
    f.y_lo = 0.0;
    f.y_hi = y_max;
    f.eval = [count, s](double y, double* out) {
        const double u = 2 * s * y, e = std::exp(-s * y);
        double l0 = 1.0, l1 = 1.0 - u;
        out[0] = e;
        if (count > 1) out[1] = e * l1;
        for (int k = 1; k + 1 < count; ++k)
        {
            const double l2 = ((2 * k + 1 - u) * l1 - k * l0) / (k + 1);
            l0 = l1;
            l1 = l2;
            out[k + 1] = e * l2;
        }
    };
    return f;
}

double smeared_density(const TestFunction& phi, const BoundaryProfile& eta, double x, int nodes)
{
    const auto gl = gauss_legendre<double>(nodes);
    if (eta.is_point()) return point_density(phi, eta.y_lo, gl, x);
    const ProfileFamily f = single(eta);
    double out;
    std::vector<double> buf(1);
    family_density(phi, f, gl, x, &out, buf);
    return out;
}

NetElement smear(const TestFunction& phi, const BoundaryProfile& eta, int nodes)
{
    NetElement e;
    e.haar_nodes = nodes;
    const auto [lo, hi] = support_of(phi.support, eta.y_lo, eta.y_hi);
    const auto gl = gauss_legendre<double>(nodes);
    std::function<double(double)> psi;
    if (eta.is_point())
    {
        psi = [phi, y = eta.y_lo, gl](double x) { return point_density(phi, y, gl, x); };
    }
    else
    {
        auto cache = std::make_shared<FamilyCache>();
        cache->phi = phi;
        cache->fam = single(eta);
        cache->gl = gl;
        psi = [cache](double x) { return cache->get(x, 0); };
    }
    double diff = 0.0, ref = 0.0;
    for (int k = 1; k < 16; ++k)
    {
        const double x = lo + (hi - lo) * k / 16.0;
        const double fine = smeared_density(phi, eta, x, 2 * nodes);
        diff = std::max(diff, std::abs(psi(x) - fine));
        ref = std::max(ref, std::abs(fine));
    }
    e.quadrature_check = ref > 0.0 ? diff / ref : 0.0;
    if (e.quadrature_check > 1e-6) throw Error("QuadratureNotConverged", "smeared density changes under node doubling");
    e.vec = ref > 0.0 ? CauchyVector(eta_phase, psi, lo, hi) : zero_cauchy();
    return e;
}

std::vector<CauchyVector> smear_family(const TestFunction& phi, const ProfileFamily& fam, int nodes)
{
    auto cache = std::make_shared<FamilyCache>();
    cache->phi = phi;
    cache->fam = fam;
    cache->gl = gauss_legendre<double>(nodes);
    const auto [lo, hi] = support_of(phi.support, fam.y_lo, fam.y_hi);
    std::vector<CauchyVector> out;
    for (int k = 0; k < fam.count; ++k)
        out.emplace_back(eta_phase, [cache, k](double x) { return cache->get(x, k); }, lo, hi);
    return out;
}

std::vector<CauchyVector> net_elements(const std::vector<TestFunction>& phis, const std::vector<BoundaryProfile>& etas,
                                       const std::vector<ProfileFamily>& families)
{
    std::vector<CauchyVector> out;
    for (const auto& phi : phis)
    {
        for (const auto& eta : etas) out.push_back(smear(phi, eta).vec);
        for (const auto& fam : families)
        {
            auto v = smear_family(phi, fam);
            out.insert(out.end(), v.begin(), v.end());
        }
    }
    return out;
}

DeficitCurve projection_deficits(const std::vector<CauchyVector>& span, const std::vector<KernelSpan>& targets,
                                 const std::vector<int>& ranks, double pivot_tol)
{
    DeficitCurve out;
    out.ranks = ranks;
    const Eigen::Index n = static_cast<Eigen::Index>(span.size());
    const Eigen::Index nt = static_cast<Eigen::Index>(targets.size());
    out.deficits.assign(nt, std::vector<double>(ranks.size(), 1.0));
    const Eigen::MatrixXcd G = cauchy_gram(span);
    Eigen::MatrixXcd beta(n, nt);  // <u_j, w_t>
    Eigen::VectorXd norm2(nt);
    for (Eigen::Index t = 0; t < nt; ++t)
    {
        norm2(t) = inner(targets[t], targets[t]).real();
        for (Eigen::Index j = 0; j < n; ++j) beta(j, t) = std::conj(inner(targets[t], span[j]));
    }
    // pivot-dropping Cholesky in the given order; q holds coordinates in the orthonormalized basis
    std::vector<Eigen::Index> kept;
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(n, nt);
    Eigen::VectorXd proj2 = Eigen::VectorXd::Zero(nt);
    out.smallest_pivot = INFINITY;
    size_t next_rank = 0;
    auto record = [&](Eigen::Index used) {
        while (next_rank < ranks.size() && ranks[next_rank] <= used)
        {
            for (Eigen::Index t = 0; t < nt; ++t)
                out.deficits[t][next_rank] = norm2(t) > 0.0 ? std::sqrt(std::max(norm2(t) - proj2(t), 0.0) / norm2(t)) : 0.0;
            ++next_rank;
        }
    };
    record(0);
    for (Eigen::Index j = 0; j < n; ++j)
    {
        const Eigen::Index r = static_cast<Eigen::Index>(kept.size());
        Eigen::VectorXcd l(r);
        for (Eigen::Index i = 0; i < r; ++i)
        {
            cplx s = G(kept[i], j);
            for (Eigen::Index k = 0; k < i; ++k) s -= L(i, k) * l(k);
            l(i) = s / L(i, i);
        }
        const double d = G(j, j).real() - l.squaredNorm();
        if (G(j, j).real() > 0.0 && d > pivot_tol * G(j, j).real())
        {
            const double ljj = std::sqrt(d);
            for (Eigen::Index i = 0; i < r; ++i) L(r, i) = std::conj(l(i));
            L(r, r) = ljj;
            for (Eigen::Index t = 0; t < nt; ++t)
            {
                cplx s = beta(j, t);
                for (Eigen::Index i = 0; i < r; ++i) s -= L(r, i) * q(i, t);
                q(r, t) = s / ljj;
                proj2(t) += std::norm(q(r, t));
            }
            kept.push_back(j);
            out.smallest_pivot = std::min(out.smallest_pivot, d / G(j, j).real());
        }
        record(j + 1);
    }
    record(std::numeric_limits<Eigen::Index>::max());
    out.kept = static_cast<int>(kept.size());
    if (kept.empty()) out.smallest_pivot = 0.0;
    return out;
}

NetProbeReport rs_probe(const OpenRegion& region, const std::vector<BoundaryProfile>& etas,
                        const std::vector<ProfileFamily>& families, const std::vector<TestFunction>& phis,
                        const std::vector<KernelSpan>& panel, const std::vector<int>& ranks)
{
    if (region.is_wedge) throw Error("InvalidRegion", "rs_probe needs a bounded box");
    for (const auto& phi : phis)
    {
        const Box& s = phi.support;
        const Box& r = region.box;
        if (s.b_lo < r.b_lo || s.b_hi > r.b_hi || s.a_lo < r.a_lo || s.a_hi > r.a_hi)
            throw Error("InvalidArgument", "test function support leaves the region");
    }
    NetProbeReport rep;
    rep.ranks = ranks;
    const auto elems = net_elements(phis, etas, families);
    if (elems.empty())
    {
        rep.deficits.assign(panel.size(), std::vector<double>(ranks.size(), 1.0));
        return rep;
    }
    const auto curve = projection_deficits(elems, panel, ranks);
    rep.deficits = curve.deficits;
    rep.gram_rank = curve.kept;
    const Eigen::MatrixXcd G = cauchy_gram(elems);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
    rep.smallest_singular_value = std::max(es.eigenvalues()(0), 0.0);
    bool mono = true;
    for (const auto& d : rep.deficits)
        for (size_t k = 1; k < d.size(); ++k) mono = mono && d[k] <= 1.05 * d[k - 1];
    rep.verdicts.push_back(mono ? "monotone_in_rank: PASS" : "monotone_in_rank: FAIL");
    return rep;
}

NetProbeReport bw_probe(int wedge_sign, const std::vector<CauchyVector>& elements, double tol)
{
    if (wedge_sign != 1 && wedge_sign != -1) throw Error("InvalidArgument", "wedge sign must be +-1");
    NetProbeReport rep;
    rep.gram_rank = static_cast<int>(elements.size());
    bool pass = true;
    for (const auto& e : elements)
    {
        const KmsResult r = kms_test(e);
        rep.kms_max_deviation = std::max(rep.kms_max_deviation, r.deviation);
        pass = pass && r.deviation < tol;
    }
    rep.verdicts.push_back(pass ? "PASS" : "FAIL");
    return rep;
}

std::vector<CAffine> coset_samples(const OpenRegion& region, int wedge_sign, int samples, std::uint64_t seed)
{
    // g W_s = {(b, a) : s (b - b0) > 0} for g = (b0, a0)
    double edge;
    if (region.is_wedge)
    {
        if (region.wedge_sign != wedge_sign) throw Error("NoCosetSamples", "opposite wedge lies in no translate");
        edge = 0.0;
    }
    else
    {
        edge = wedge_sign > 0 ? region.box.b_lo : region.box.b_hi;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<CAffine> out;
    for (int k = 0; k < samples; ++k)
    {
        const double gap = (k % 2 == 0) ? 0.0 : std::pow(10.0, -6.0 + 6.0 * u(rng));
        const double a0 = std::pow(10.0, -1.0 + 2.0 * u(rng));
        out.push_back({cplx(edge - wedge_sign * gap, 0.0), cplx(a0, 0.0)});
    }
    if (out.empty()) throw Error("NoCosetSamples", "no samples requested");
    return out;
}

bool regnet_membership(const CauchyVector& v, const OpenRegion& region, int wedge_sign, int samples,
                       std::uint64_t seed, double tol)
{
    for (const auto& g : coset_samples(region, wedge_sign, samples, seed))
    {
        const CAffine gi = affine_inv(g);
        const CauchyVector w = act_affine(gi.b.real(), gi.a.real(), v);
        try
        {
            if (!(kms_test(w).deviation < tol)) return false;
        }
        catch (const Error& e)
        {
            if (e.code() == "ContinuationLeftDomain") return false;
            throw;
        }
    }
    return true;
}

bool regnet_membership(const KernelSpan& v, const OpenRegion& region, int wedge_sign, int samples,
                       std::uint64_t seed, double tol)
{
    (void)tol;
    for (const auto& g : coset_samples(region, wedge_sign, samples, seed))
    {
        const CAffine gi = affine_inv(g);
        const KernelSpan w = act_affine(gi.b.real(), gi.a.real(), v);
        if (w.empty()) continue;
        // interior kernels cannot be continued through the whole strip 0 < Im tau < pi
        try
        {
            for (double th : linspace(0.0, std::numbers::pi, 33)) modular_flow(cplx(0.0, th), w);
        }
        catch (const Error& e)
        {
            if (e.code() == "LeftDomain") return false;
            throw;
        }
    }
    return true;
}

BwOrientation bw_orientation()
{
    BwOrientation o;
    for (int s : {1, -1})
    {
        const Box box = s > 0 ? Box{1.0, 2.0, 0.9, 1.1} : Box{-2.0, -1.0, 0.9, 1.1};
        const auto elems = net_elements({bump(box), gaussian_truncated(box)},
                                        {boundary_point(0.3), boundary_point(0.5)});
        const double dev = bw_probe(s, elems).kms_max_deviation;
        (s > 0 ? o.deviation_plus : o.deviation_minus) = dev;
    }
    if (o.deviation_plus < 1e-6 && o.deviation_minus >= 1e-6) o.sign = 1;
    if (o.deviation_minus < 1e-6 && o.deviation_plus >= 1e-6) o.sign = -1;
    return o;
}

}  // namespace crownlab
