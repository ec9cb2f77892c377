#pragma once

#include "motivic/arithmetic.hpp"
#include "motivic/grading.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace motivic {

// Quotient Hopf algebroid E(n) = H_*[tau_0..tau_n]/(tau_i^2 - rho*tau_{i+1}, tau_n^2)
// over H_* of the given field.  Free H_*-module of rank 2^{n+1} on the
// square-free tau-monomials; each tau_i is primitive here.
struct EnPresentation
{
    ResidueData rd;
    int n = 1;

    int rank() const { return 1 << (n + 1); }

    // |tau_i| = (2^i - 1)(1 + a) + 1 = 2^i + (2^i - 1)a
    static Bidegree tau_degree(int i) { return {1 << i, (1 << i) - 1}; }

    // tau_i^2 = rho*tau_{i+1} for i < n, tau_n^2 = 0; rho = 0 collapses all
    // squares to zero (the exterior, split form).
    std::string relation_str(int i) const;
};

EnPresentation en_presentation(const ResidueData& rd, int n);

// Square-free tau-monomial (bit i = tau_i) with H_* coefficient.
struct EnMonomial
{
    std::uint32_t mask = 0;
    HStarMonomial coeff;

    Bidegree bidegree() const;
    std::string str() const;
};

// Canonical order: tau-exponent bit-vector lexicographic with tau_0 lowest,
// then coefficient (tau-power, Milnor index).
bool en_monomial_less(const EnMonomial& a, const EnMonomial& b);
bool en_monomial_eq(const EnMonomial& a, const EnMonomial& b);

// GF(2) sum in canonical form (sorted, duplicates cancelled).
using EnElement = std::vector<EnMonomial>;
EnElement en_canonicalize(EnElement terms);
EnElement en_add(const EnElement& a, const EnElement& b);

// Product of monomials; overlapping bits reduce through tau_i^2 = rho*tau_{i+1}.
std::optional<EnMonomial> en_mono_mul(const EnPresentation& p, const EnMonomial& a, const EnMonomial& b);
EnElement en_mul(const EnPresentation& p, const EnElement& a, const EnElement& b);

// One term of a sum in E(n) (x) E(n); coefficients ride on the left factor,
// right factors are pure tau-monomials.
struct EnTensorTerm
{
    EnMonomial left;
    std::uint32_t right = 0;
};
using EnTensor = std::vector<EnTensorTerm>;

// Comultiplication: multiplicative extension of the primitive coproduct on
// the tau_i (the xi-terms die in the quotient), reduced to canonical form.
EnTensor comultiply(const EnPresentation& p, const EnMonomial& mono);

// Counit: kills every monomial with nonempty mask.
std::optional<HStarMonomial> counit(const EnMonomial& mono);

// Right unit, expanded through eta_R(tau) = tau + rho*tau_0.
using HElement = std::vector<HStarMonomial>;
EnElement eta_right(const EnPresentation& p, const HStarMonomial& h);

// eta_R(h) - eta_L(h); zero on Milnor classes and on everything when rho = 0.
EnElement eta_diff(const EnPresentation& p, const HElement& h);

// Smallest truncation level n such that no monomial involving tau_{n+1} can
// land in the box; Ext over E(n) then equals Ext over E(infinity) there.
int truncation_level(const Window& box);

}  // namespace motivic
