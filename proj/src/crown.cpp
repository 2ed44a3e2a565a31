#include "crownlab/crown.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace crownlab
{

CAffine affine_mul(const CAffine& g1, const CAffine& g2)
{
    return {g1.b + g1.a * g2.b, g1.a * g2.a};
}

CAffine affine_inv(const CAffine& g)
{
    if (g.a == 0.0) throw Error("InvalidGroupElement", "a = 0");
    return {-g.b / g.a, 1.0 / g.a};
}

CAffine tau_bar_aff(const CAffine& g)
{
    return {-std::conj(g.b), std::conj(g.a)};
}

DomainTag parse_domain(const std::string& s)
{
    auto radius = [&](size_t pos) {
        if (pos >= s.size()) return 1.0;
        double r = 0.0;
        try
        {
            size_t used = 0;
            r = std::stod(s.substr(pos), &used);
            if (used != s.size() - pos) r = 0.0;
        }
        catch (const std::exception&)
        {
            throw Error("InvalidDomain", s);
        }
        if (!(r > 0.0)) throw Error("InvalidDomain", "radius must be positive");
        return r;
    };
    if (s == "xi1") return {DomainKind::Xi1, 1.0};
    if (s == "xi2") return {DomainKind::Xi2, 1.0};
    if (s == "sl2c" || s == "xisl2c") return {DomainKind::XiSL2C, 1.0};
    if (s.rfind("xiplus", 0) == 0) return {DomainKind::XiPlus, radius(s.size() > 6 ? 7 : 6)};
    if (s.rfind("ximinus", 0) == 0) return {DomainKind::XiMinus, radius(s.size() > 7 ? 8 : 7)};
    throw Error("InvalidDomain", s);
}

std::string domain_name(const DomainTag& tag)
{
    switch (tag.kind)
    {
    case DomainKind::Xi1: return "xi1";
    case DomainKind::Xi2: return "xi2";
    case DomainKind::XiPlus: return "xiplus:" + std::to_string(tag.r);
    case DomainKind::XiMinus: return "ximinus:" + std::to_string(tag.r);
    case DomainKind::XiSL2C: return "sl2c";
    }
    return "?";
}

double domain_margin(const DomainTag& tag, const CAffine& g)
{
    switch (tag.kind)
    {
    case DomainKind::Xi1: return g.a.real();
    case DomainKind::Xi2: return g.a.real() - std::abs(g.b.imag());
    case DomainKind::XiPlus: return g.b.imag() / tag.r + g.a.real();
    case DomainKind::XiMinus: return -g.b.imag() / tag.r + g.a.real();
    case DomainKind::XiSL2C: break;
    }
    throw Error("GroupMismatch", "SL2(C) domain needs a matrix point");
}

bool in_domain(const DomainTag& tag, const CAffine& g)
{
    if (g.a == 0.0) throw Error("InvalidGroupElement", "a = 0");
    return domain_margin(tag, g) > 0.0;
}

double domain_margin(const DomainTag& tag, const CMat2& g)
{
    if (tag.kind != DomainKind::XiSL2C) throw Error("GroupMismatch", "affine domain needs an affine point");
    try
    {
        const cplx up = mobius(g, cplx(0, 1));
        const cplx down = mobius(g, cplx(0, -1));
        return std::min(up.imag(), -down.imag());
    }
    catch (const Error& e)
    {
        if (e.code() == "PoleHit") return -std::numeric_limits<double>::infinity();
        throw;
    }
}

bool in_domain(const DomainTag& tag, const CMat2& g)
{
    return domain_margin(tag, g) > 0.0;
}

cplx mobius(const CMat2& g, cplx z)
{
    const cplx den = g(1, 0) * z + g(1, 1);
    if (std::abs(den) < 1e-14) throw Error("PoleHit", "cz + d vanishes");
    return (g(0, 0) * z + g(0, 1)) / den;
}

CMat2 iota(const CAffine& g)
{
    if (g.a.imag() == 0.0 && g.a.real() <= 0.0) throw Error("BranchCut", "a on (-inf, 0]");
    const cplx s = std::sqrt(g.a);
    CMat2 m;
    m << s, -g.b / s, 0.0, 1.0 / s;
    return m;
}

CMat2 exp_h(cplx w)
{
    CMat2 m;
    m << std::exp(w / 2.0), 0.0, 0.0, std::exp(-w / 2.0);
    return m;
}

Cr2Report cr2_sweep(const DomainTag& tag, long samples, const std::vector<double>& t_grid,
                    std::uint64_t seed)
{
    Cr2Report rep;
    rep.domain = domain_name(tag);
    rep.samples = samples;
    rep.seed = seed;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ua(0.0, 5.0), u01(-1.0, 1.0);
    for (long s = 0; s < samples; ++s)
    {
        // fixed points of tau-bar: (i c, a) with a > 0 and c inside the domain's slice
        double a = ua(rng);
        while (a == 0.0) a = ua(rng);
        double c = 0.0;
        switch (tag.kind)
        {
        case DomainKind::Xi1: c = 5.0 * u01(rng); break;
        case DomainKind::Xi2:
        case DomainKind::XiSL2C: c = a * u01(rng); break;
        case DomainKind::XiPlus: c = -tag.r * a + 5.0 * (u01(rng) + 1.0); break;
        case DomainKind::XiMinus: c = tag.r * a - 5.0 * (u01(rng) + 1.0); break;
        }
        const CAffine p{cplx(0.0, c), cplx(a, 0.0)};
        if (tag.kind != DomainKind::XiSL2C && !in_domain(tag, p)) continue;
        bool failed = false;
        for (double t : t_grid)
        {
            double m;
            if (tag.kind == DomainKind::XiSL2C)
                m = domain_margin(tag, CMat2(exp_h(cplx(0.0, t)) * iota(p)));
            else
                m = domain_margin(tag, affine_mul(CAffine{0.0, std::exp(cplx(0.0, t))}, p));
            rep.worst_margin = std::min(rep.worst_margin, m);
            if (!(m > 0.0)) failed = true;
        }
        if (failed) ++rep.failures;
    }
    return rep;
}

bool wedge_membership_aff(const CAffine& g, int omega_sign)
{
    if (g.b.imag() != 0.0 || g.a.imag() != 0.0 || !(g.a.real() > 0.0))
        throw Error("NotRealPoint", "expected b real, a > 0");
    if (omega_sign != 1 && omega_sign != -1) throw Error("InvalidArgument", "omega_sign must be +-1");
    const double b = g.b.real();
    return omega_sign > 0 ? b > 0.0 : b < 0.0;
}

}  // namespace crownlab
