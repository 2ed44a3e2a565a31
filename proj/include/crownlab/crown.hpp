#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "crownlab/error.hpp"

namespace crownlab
{

using cplx = std::complex<double>;
using CMat2 = Eigen::Matrix2cd;

/// Point (b, a) of Aff(C) = C x| C^x, law (b,a)(b',a') = (b + a b', a a').
struct CAffine
{
    cplx b{0.0, 0.0};
    cplx a{1.0, 0.0};
};

CAffine affine_mul(const CAffine& g1, const CAffine& g2);
CAffine affine_inv(const CAffine& g);
CAffine tau_bar_aff(const CAffine& g);

enum class DomainKind { Xi1, Xi2, XiPlus, XiMinus, XiSL2C };

struct DomainTag
{
    DomainKind kind = DomainKind::Xi2;
    double r = 1.0;
};

/// "xi1", "xi2", "xiplus:<r>", "ximinus:<r>", "sl2c".
DomainTag parse_domain(const std::string& s);
std::string domain_name(const DomainTag& tag);

bool in_domain(const DomainTag& tag, const CAffine& g);
bool in_domain(const DomainTag& tag, const CMat2& g);

/// Signed distance-like quantity whose positivity is membership (strict).
double domain_margin(const DomainTag& tag, const CAffine& g);
double domain_margin(const DomainTag& tag, const CMat2& g);

cplx mobius(const CMat2& g, cplx z);
CMat2 iota(const CAffine& g);
/// exp(w h) with h = diag(1/2, -1/2).
CMat2 exp_h(cplx w);

struct Cr2Report
{
    std::string domain;
    long samples = 0;
    long failures = 0;
    double worst_margin = 0.0;
    std::uint64_t seed = 0;
};

/// Samples fixed points p of the domain's tau-bar and checks exp(i t h).p stays inside for every t.
Cr2Report cr2_sweep(const DomainTag& tag, long samples, const std::vector<double>& t_grid,
                    std::uint64_t seed);

/// Points of W = exp(R h) exp(Omega), Omega = omega_sign * R_{>0} x: sign(b) = omega_sign.
bool wedge_membership_aff(const CAffine& g, int omega_sign);

}  // namespace crownlab
