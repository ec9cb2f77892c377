#pragma once

#include "motivic/grading.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace motivic {

// Arithmetic seed of a nondyadic p-adic field with residue order q:
// q = p^m with p an odd prime, k = nu2(q-1), qmod4 in {1,3}.
// k >= 1 always, and k = 1 exactly when q = 3 mod 4.
struct ResidueData
{
    std::int64_t q = 0;
    std::int64_t p = 0;
    int m = 0;
    int k = 0;
    int qmod4 = 0;

    // The class rho of -1 is nonzero exactly when q = 3 mod 4; with the
    // canonical choice u = -1 it then equals the unit square class u.
    bool rho_is_u() const { return qmod4 == 3; }
};

ResidueData residue_data(std::int64_t q);

// Square class pi^eps_pi * u^eps_u; exactly four values {1, u, pi, u*pi}.
struct SquareClass
{
    int eps_pi = 0;
    int eps_u = 0;

    auto operator<=>(const SquareClass&) const = default;
    std::string str() const;
};

struct SquareClassGroup
{
    std::array<SquareClass, 4> classes;  // 1, u, pi, u*pi
    SquareClass minus_one;               // class of -1: trivial iff q = 1 mod 4
};

SquareClassGroup square_classes(const ResidueData& rd);

// Square class of the tame symbol (a,b) in the residue field: 0 = square,
// 1 = nonsquare.  Computed from (-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)} with
// v(pi) = 1, v(u) = 0.
int tame_symbol(const ResidueData& rd, SquareClass a, SquareClass b);

// Canonical basis of k^M_*(F) across all degrees: 1 | pi, u | piu.
// Indexed 0..3; degree pattern (1, 2, 1, 0, 0, ...).
enum MilnorBasis : int {
    kMilnorOne = 0,
    kMilnorPi = 1,
    kMilnorU = 2,
    kMilnorPiU = 3,
};
constexpr int kMilnorBasisSize = 4;

int milnor_mono_degree(int idx);
std::string milnor_mono_name(int idx);

// Product of two basis monomials; nullopt means zero.  The q mod 4 case
// split enters through pi*pi (0 vs piu).
std::optional<int> milnor_mono_mul(const ResidueData& rd, int a, int b);

// GF(2) class in a single Milnor degree.
struct MilnorClass
{
    int degree = 0;
    std::vector<int> coeffs;  // over milnor_basis(rd, degree), entries 0/1

    bool is_zero() const;
    std::string str() const;
};

int milnor_dim(int n);
std::vector<int> milnor_basis(const ResidueData& rd, int n);  // basis monomial indices in degree n
MilnorClass milnor_class_of(int mono_idx);
MilnorClass milnor_zero(int degree);
MilnorClass milnor_product(const ResidueData& rd, const MilnorClass& x, const MilnorClass& y);

// rho = class of -1 in k^M_1; zero class when q = 1 mod 4.
MilnorClass rho_class(const ResidueData& rd);

// Monomial tau^t * kappa of H_* = k^M_*(F)[tau]; bidegree t(1-a) - deg(kappa)*a.
struct HStarMonomial
{
    int tau_exp = 0;
    int milnor = kMilnorOne;

    Bidegree bidegree() const { return {tau_exp, -tau_exp - milnor_mono_degree(milnor)}; }
    auto operator<=>(const HStarMonomial&) const = default;
    std::string str() const;
};

// All monomials of H_* in the given bidegree, ordered by Milnor index.
std::vector<HStarMonomial> h_star_basis(const ResidueData& rd, Bidegree d);

// Product in H_*; nullopt means zero.
std::optional<HStarMonomial> h_star_mul(const ResidueData& rd, const HStarMonomial& a, const HStarMonomial& b);

}  // namespace motivic
