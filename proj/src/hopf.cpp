#include "motivic/hopf.hpp"

#include <algorithm>
#include <bit>
#include <fmt/format.h>

namespace motivic {

std::string EnPresentation::relation_str(int i) const
{
    if (i < 0 || i > n)
        throw InvalidInputError(fmt::format("no generator tau_{} in E({})", i, n));
    if (i == n || !rd.rho_is_u())
        return fmt::format("tau_{}^2 = 0", i);
    return fmt::format("tau_{}^2 = u*tau_{}", i, i + 1);
}

EnPresentation en_presentation(const ResidueData& rd, int n)
{
    if (n < 0)
        throw InvalidInputError(fmt::format("truncation level must be >= 0, got {}", n));
    return EnPresentation{rd, n};
}

Bidegree EnMonomial::bidegree() const
{
    Bidegree d = coeff.bidegree();
    for (int i = 0; i < 32; ++i)
        if (mask & (1u << i))
            d = d + EnPresentation::tau_degree(i);
    return d;
}

std::string EnMonomial::str() const
{
    std::string bars;
    for (int i = 0; i < 32; ++i)
        if (mask & (1u << i))
            bars += fmt::format("{}t{}", bars.empty() ? "" : "*", i);
    std::string c = coeff.str();
    if (bars.empty())
        return c;
    return c == "1" ? bars : c + "*" + bars;
}

namespace {
    // tau_0-lowest lexicographic comparison of exponent bit-vectors
    std::uint32_t bitrev(std::uint32_t m)
    {
        std::uint32_t r = 0;
        for (int i = 0; i < 32; ++i)
            if (m & (1u << i))
                r |= 1u << (31 - i);
        return r;
    }
}  // namespace

bool en_monomial_less(const EnMonomial& a, const EnMonomial& b)
{
    if (a.mask != b.mask)
        return bitrev(a.mask) < bitrev(b.mask);
    return a.coeff < b.coeff;
}

bool en_monomial_eq(const EnMonomial& a, const EnMonomial& b)
{
    return a.mask == b.mask && a.coeff == b.coeff;
}

EnElement en_canonicalize(EnElement terms)
{
    std::sort(terms.begin(), terms.end(), en_monomial_less);
    EnElement out;
    size_t i = 0;
    while (i < terms.size()) {
        size_t j = i;
        while (j < terms.size() && en_monomial_eq(terms[i], terms[j]))
            ++j;
        if ((j - i) % 2)
            out.push_back(terms[i]);
        i = j;
    }
    return out;
}

EnElement en_add(const EnElement& a, const EnElement& b)
{
    EnElement sum = a;
    sum.insert(sum.end(), b.begin(), b.end());
    return en_canonicalize(sum);
}

std::optional<EnMonomial> en_mono_mul(const EnPresentation& p, const EnMonomial& a, const EnMonomial& b)
{
    auto coeff = h_star_mul(p.rd, a.coeff, b.coeff);
    if (!coeff)
        return std::nullopt;

    std::uint32_t overlap = a.mask & b.mask;
    std::uint32_t mask = a.mask ^ b.mask;
    HStarMonomial h = *coeff;
    if (overlap) {
        // each repeated tau_i contributes a factor of rho, so two repeats die
        if (std::popcount(overlap) >= 2 || !p.rd.rho_is_u())
            return std::nullopt;
        int i = std::countr_zero(overlap);
        if (i == p.n)
            return std::nullopt;  // tau_n^2 = 0
        std::uint32_t promoted = 1u << (i + 1);
        if (mask & promoted)
            return std::nullopt;  // tau_{i+1}^2 carries another rho
        mask |= promoted;
        auto kappa = milnor_mono_mul(p.rd, kMilnorU, h.milnor);  // rho = u
        if (!kappa)
            return std::nullopt;
        h.milnor = *kappa;
    }
    return EnMonomial{mask, h};
}

EnElement en_mul(const EnPresentation& p, const EnElement& a, const EnElement& b)
{
    EnElement out;
    for (const auto& x : a)
        for (const auto& y : b)
            if (auto m = en_mono_mul(p, x, y))
                out.push_back(*m);
    return en_canonicalize(out);
}

EnTensor comultiply(const EnPresentation& p, const EnMonomial& mono)
{
    if (mono.mask >> (p.n + 1))
        throw InvalidInputError(fmt::format("monomial uses tau_i beyond E({})", p.n));
    // Delta(coeff * tau^S) = sum over T <= S of (coeff * tau^T) (x) tau^{S\T}
    EnTensor out;
    std::uint32_t s = mono.mask;
    for (std::uint32_t t = s;; t = (t - 1) & s) {
        out.push_back(EnTensorTerm{EnMonomial{t, mono.coeff}, s ^ t});
        if (t == 0)
            break;
    }
    std::sort(out.begin(), out.end(), [](const EnTensorTerm& a, const EnTensorTerm& b) {
        if (a.right != b.right)
            return bitrev(a.right) < bitrev(b.right);
        return en_monomial_less(a.left, b.left);
    });
    return out;
}

std::optional<HStarMonomial> counit(const EnMonomial& mono)
{
    if (mono.mask)
        return std::nullopt;
    return mono.coeff;
}

EnElement eta_right(const EnPresentation& p, const HStarMonomial& h)
{
    // (tau + rho*tau_0)^t = tau^t + t*rho*tau^{t-1}*tau_0: the higher binomial
    // terms all carry rho^2 = 0.
    EnElement out;
    out.push_back(EnMonomial{0, h});
    if (p.rd.rho_is_u() && h.tau_exp % 2 == 1) {
        if (auto kappa = milnor_mono_mul(p.rd, kMilnorU, h.milnor))
            out.push_back(EnMonomial{1u, HStarMonomial{h.tau_exp - 1, *kappa}});
    }
    return en_canonicalize(out);
}

EnElement eta_diff(const EnPresentation& p, const HElement& h)
{
    EnElement out;
    for (const auto& mono : h) {
        EnElement r = eta_right(p, mono);
        out.insert(out.end(), r.begin(), r.end());
        out.push_back(EnMonomial{0, mono});  // eta_L term
    }
    return en_canonicalize(out);
}

int truncation_level(const Window& box)
{
    box.require_nonempty();
    int d = box.total_degree_max();
    int n = 1;
    while ((1 << (n + 1)) - 1 <= d)
        ++n;
    return n;
}

}  // namespace motivic
