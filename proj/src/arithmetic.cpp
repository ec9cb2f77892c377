#include "motivic/arithmetic.hpp"

#include <fmt/format.h>

namespace motivic {

namespace {
    constexpr std::int64_t kMaxQ = std::int64_t(1) << 31;

    // Smallest prime factor by trial division; q >= 2.
    std::int64_t smallest_prime_factor(std::int64_t q)
    {
        if (q % 2 == 0)
            return 2;
        for (std::int64_t d = 3; d * d <= q; d += 2)
            if (q % d == 0)
                return d;
        return q;
    }
}  // namespace

ResidueData residue_data(std::int64_t q)
{
    if (q < 3)
        throw InvalidInputError(fmt::format("residue order must be >= 3, got {}", q));
    if (q > kMaxQ)
        throw InvalidInputError(fmt::format("residue order {} exceeds the 2^31 cap", q));
    if (q % 2 == 0)
        throw InvalidInputError(fmt::format("residue order {} is even; only nondyadic fields are supported", q));

    std::int64_t p = smallest_prime_factor(q);
    int m = 0;
    std::int64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++m;
    }
    if (rest != 1)
        throw InvalidInputError(fmt::format("residue order {} is not a prime power", q));

    ResidueData rd;
    rd.q = q;
    rd.p = p;
    rd.m = m;
    rd.k = nu2(q - 1);
    rd.qmod4 = int(q % 4);
    return rd;
}

std::string SquareClass::str() const
{
    if (eps_pi == 0 && eps_u == 0)
        return "1";
    std::string s;
    if (eps_u)
        s += "u";
    if (eps_pi)
        s += "pi";
    return s;
}

SquareClassGroup square_classes(const ResidueData& rd)
{
    SquareClassGroup g;
    g.classes = {SquareClass{0, 0}, SquareClass{0, 1}, SquareClass{1, 0}, SquareClass{1, 1}};
    g.minus_one = rd.qmod4 == 3 ? SquareClass{0, 1} : SquareClass{0, 0};
    return g;
}

int tame_symbol(const ResidueData& rd, SquareClass a, SquareClass b)
{
    // (-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)}: the pi-parts cancel and the unit
    // part is (-1)^{eps_pi(a) eps_pi(b)} u^{eps_u(a) eps_pi(b) + eps_u(b) eps_pi(a)}.
    int minus_one = rd.qmod4 == 3 ? 1 : 0;
    int bit = a.eps_pi * b.eps_pi * minus_one + a.eps_u * b.eps_pi + b.eps_u * a.eps_pi;
    return bit & 1;
}

int milnor_mono_degree(int idx)
{
    switch (idx) {
    case kMilnorOne:
        return 0;
    case kMilnorPi:
    case kMilnorU:
        return 1;
    case kMilnorPiU:
        return 2;
    default:
        throw InvalidInputError(fmt::format("bad Milnor basis index {}", idx));
    }
}

std::string milnor_mono_name(int idx)
{
    switch (idx) {
    case kMilnorOne:
        return "1";
    case kMilnorPi:
        return "pi";
    case kMilnorU:
        return "u";
    case kMilnorPiU:
        return "piu";
    default:
        throw InvalidInputError(fmt::format("bad Milnor basis index {}", idx));
    }
}

std::optional<int> milnor_mono_mul(const ResidueData& rd, int a, int b)
{
    if (a > b)
        std::swap(a, b);
    if (a == kMilnorOne)
        return b;
    if (milnor_mono_degree(a) + milnor_mono_degree(b) >= 3)
        return std::nullopt;  // k^M_n = 0 for n >= 3
    // remaining products are degree 1 x degree 1
    if (a == kMilnorPi && b == kMilnorU)
        return kMilnorPiU;
    if (a == kMilnorU && b == kMilnorU)
        return std::nullopt;  // u^2 = 0 always
    // pi^2 = 0 when q = 1 mod 4, pi^2 = pi*u when q = 3 mod 4
    if (rd.qmod4 == 3)
        return kMilnorPiU;
    return std::nullopt;
}

bool MilnorClass::is_zero() const
{
    for (int c : coeffs)
        if (c)
            return false;
    return true;
}

std::string MilnorClass::str() const
{
    std::string s;
    int dim = milnor_dim(degree);
    int base = degree == 0 ? kMilnorOne : (degree == 1 ? kMilnorPi : kMilnorPiU);
    for (int i = 0; i < dim; ++i) {
        if (i < int(coeffs.size()) && coeffs[i]) {
            if (!s.empty())
                s += "+";
            s += milnor_mono_name(base + i);
        }
    }
    return s.empty() ? "0" : s;
}

int milnor_dim(int n)
{
    switch (n) {
    case 0:
        return 1;
    case 1:
        return 2;
    case 2:
        return 1;
    default:
        return 0;
    }
}

std::vector<int> milnor_basis(const ResidueData& rd, int n)
{
    (void)rd;  // dimensions are uniform in q
    if (n < 0)
        throw InvalidInputError("negative Milnor degree");
    switch (n) {
    case 0:
        return {kMilnorOne};
    case 1:
        return {kMilnorPi, kMilnorU};
    case 2:
        return {kMilnorPiU};
    default:
        return {};
    }
}

MilnorClass milnor_class_of(int mono_idx)
{
    int deg = milnor_mono_degree(mono_idx);
    MilnorClass c;
    c.degree = deg;
    c.coeffs.assign(milnor_dim(deg), 0);
    int base = deg == 0 ? kMilnorOne : (deg == 1 ? kMilnorPi : kMilnorPiU);
    c.coeffs[mono_idx - base] = 1;
    return c;
}

MilnorClass milnor_zero(int degree)
{
    MilnorClass c;
    c.degree = degree;
    c.coeffs.assign(milnor_dim(degree), 0);
    return c;
}

MilnorClass milnor_product(const ResidueData& rd, const MilnorClass& x, const MilnorClass& y)
{
    int deg = x.degree + y.degree;
    MilnorClass out = milnor_zero(deg);
    if (deg >= 3)
        return out;
    auto xb = milnor_basis(rd, x.degree);
    auto yb = milnor_basis(rd, y.degree);
    auto ob = milnor_basis(rd, deg);
    for (size_t i = 0; i < xb.size(); ++i) {
        if (i >= x.coeffs.size() || !x.coeffs[i])
            continue;
        for (size_t j = 0; j < yb.size(); ++j) {
            if (j >= y.coeffs.size() || !y.coeffs[j])
                continue;
            auto prod = milnor_mono_mul(rd, xb[i], yb[j]);
            if (!prod)
                continue;
            for (size_t l = 0; l < ob.size(); ++l)
                if (ob[l] == *prod)
                    out.coeffs[l] ^= 1;
        }
    }
    return out;
}

MilnorClass rho_class(const ResidueData& rd)
{
    MilnorClass c = milnor_zero(1);
    if (rd.qmod4 == 3)
        c.coeffs[1] = 1;  // rho = u with the canonical choice u = -1
    return c;
}

std::string HStarMonomial::str() const
{
    std::string tau;
    if (tau_exp == 1)
        tau = "tau";
    else if (tau_exp > 1)
        tau = fmt::format("tau^{}", tau_exp);
    if (milnor == kMilnorOne)
        return tau.empty() ? "1" : tau;
    std::string kappa = milnor_mono_name(milnor);
    return tau.empty() ? kappa : kappa + "*" + tau;
}

std::vector<HStarMonomial> h_star_basis(const ResidueData& rd, Bidegree d)
{
    // tau^t * kappa sits in (t, -t-j) with j = deg kappa, so t and j are
    // forced: t = m, j = -n - m.
    std::vector<HStarMonomial> out;
    int t = d.m;
    int j = -d.n - d.m;
    if (t < 0 || j < 0 || j > 2)
        return out;
    for (int idx : milnor_basis(rd, j))
        out.push_back(HStarMonomial{t, idx});
    return out;
}

std::optional<HStarMonomial> h_star_mul(const ResidueData& rd, const HStarMonomial& a, const HStarMonomial& b)
{
    auto kappa = milnor_mono_mul(rd, a.milnor, b.milnor);
    if (!kappa)
        return std::nullopt;
    return HStarMonomial{a.tau_exp + b.tau_exp, *kappa};
}

}  // namespace motivic
