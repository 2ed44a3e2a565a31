#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "crownlab/hardy.hpp"

namespace crownlab
{

/// Open box (b_lo, b_hi) x (a_lo, a_hi) in Aff(R)_e.
struct Box
{
    double b_lo = -0.1, b_hi = 0.1, a_lo = 0.9, a_hi = 1.1;

    bool contains(double b, double a) const { return b > b_lo && b < b_hi && a > a_lo && a < a_hi; }
};

/// Image of a box under left translation by (b0, a0): again a box.
Box translate(const Box& box, double b0, double a0);

/// A box, or the wedge {sign(b) = wedge_sign}.
struct OpenRegion
{
    bool is_wedge = false;
    int wedge_sign = 1;
    Box box;
};

OpenRegion box_region(const Box& b);
OpenRegion wedge_region(int sign);
/// "b_lo,b_hi,a_lo,a_hi".
Box parse_box(const std::string& s);

/// Smooth real test function with compact support in a box.
struct TestFunction
{
    enum class Kind { Bump, GaussianTruncated };
    Kind kind = Kind::Bump;
    Box support;
    double width = 0.35;  // Gaussian width relative to the box half-sides

    double operator()(double b, double a) const;
};

TestFunction bump(const Box& b);
TestFunction gaussian_truncated(const Box& b, double width = 0.35);

/// eta = int w(y) e^{-i pi/4} K_{s y} dy over [y_lo, y_hi] (s = boundary_sign), or a single
/// boundary kernel when `weight` is empty (y_lo = y_hi = y).
struct BoundaryProfile
{
    std::function<double(double)> weight;
    double y_lo = 1.0, y_hi = 1.0;

    bool is_point() const { return !weight; }
};

BoundaryProfile boundary_point(double y);

/// Several weights on a common [y_lo, y_hi], evaluated together: eval(y, out) fills out[0..count).
struct ProfileFamily
{
    std::function<void(double, double*)> eval;
    int count = 0;
    double y_lo = 0.0, y_hi = 1.0;
};

/// Laguerre weights e^{-s y} L_k(2 s y), k < count, truncated to (0, y_max).
ProfileFamily laguerre_family(int count, double s = 1.0, double y_max = 20.0);

struct NetElement
{
    CauchyVector vec;
    int haar_nodes = 0;
    double quadrature_check = 0.0;  // relative change of psi under node doubling
};

/// u = int phi(g) U(g) eta dg with left Haar db da / a^2.
NetElement smear(const TestFunction& phi, const BoundaryProfile& eta, int nodes = 24);

/// Density of the smeared vector at x.
double smeared_density(const TestFunction& phi, const BoundaryProfile& eta, double x, int nodes);

struct NetProbeReport
{
    int gram_rank = 0;
    double smallest_singular_value = 0.0;
    std::vector<int> ranks;
    std::vector<std::vector<double>> deficits;  // [panel vector][rank index]
    double kms_max_deviation = 0.0;
    std::vector<std::string> verdicts;
};

/// Relative projection deficits ||w - P w|| / ||w|| of `targets` against nested spans of
/// the first r vectors, for each r in `ranks`. Near-dependent vectors are skipped, so the
/// spans are nested and the deficits are non-increasing in r.
struct DeficitCurve
{
    std::vector<int> ranks;
    std::vector<std::vector<double>> deficits;
    int kept = 0;
    double smallest_pivot = 0.0;
};

DeficitCurve projection_deficits(const std::vector<CauchyVector>& span, const std::vector<KernelSpan>& targets,
                                 const std::vector<int>& ranks, double pivot_tol = 1e-12);

/// Smeared vectors u_{phi, eta_k} for every weight of the family; densities share one cache.
std::vector<CauchyVector> smear_family(const TestFunction& phi, const ProfileFamily& fam, int nodes = 24);

/// Net elements {u_{phi_j, eta_k}}, phi-major; point profiles and families may be mixed.
std::vector<CauchyVector> net_elements(const std::vector<TestFunction>& phis,
                                       const std::vector<BoundaryProfile>& etas,
                                       const std::vector<ProfileFamily>& families = {});

NetProbeReport rs_probe(const OpenRegion& region, const std::vector<BoundaryProfile>& etas,
                        const std::vector<ProfileFamily>& families, const std::vector<TestFunction>& phis,
                        const std::vector<KernelSpan>& panel, const std::vector<int>& ranks);

NetProbeReport bw_probe(int wedge_sign, const std::vector<CauchyVector>& elements, double tol = 1e-6);

/// Coset elements g = (b0, a0) with region inside g W_{wedge_sign}, boundary-biased.
std::vector<CAffine> coset_samples(const OpenRegion& region, int wedge_sign, int samples, std::uint64_t seed);

bool regnet_membership(const CauchyVector& v, const OpenRegion& region, int wedge_sign, int samples = 64,
                       std::uint64_t seed = 7, double tol = 1e-6);
bool regnet_membership(const KernelSpan& v, const OpenRegion& region, int wedge_sign, int samples = 64,
                       std::uint64_t seed = 7, double tol = 1e-6);

/// Sign s for which elements smeared over boxes inside {sign(b) = s} pass the KMS test.
struct BwOrientation
{
    int sign = 0;
    double deviation_plus = 0.0, deviation_minus = 0.0;
};
BwOrientation bw_orientation();

}  // namespace crownlab
