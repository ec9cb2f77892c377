#pragma once

#include "motivic/arithmetic.hpp"
#include "motivic/grading.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace motivic {

// Reduced cobar word [tau^{S_1}|...|tau^{S_s}] * coeff over E(n): each bar is
// a nonempty square-free tau-monomial, the H_* coefficient rides in the
// comodule slot on the right.  Tridegree (s, sum of bar degrees + |coeff|).
struct CobarWord
{
    std::vector<std::uint32_t> bars;
    HStarMonomial coeff;

    Tridegree tridegree() const;
    std::string str() const;

    auto operator<=>(const CobarWord&) const = default;
};

// Deterministic ordered basis of C^s in one motivic degree; C^0 = H_*.
std::vector<CobarWord> cobar_basis(const ResidueData& rd, int n, Tridegree td);

// Cobar differential of a basis word, in canonical GF(2) form: the subset
// splittings of each bar plus the eta_R - eta_L twist appended as a tau_0
// bar.  Every twist coefficient is rho-divisible, so no further bar
// crossings occur.
std::vector<CobarWord> cobar_differential(const ResidueData& rd, int n, const CobarWord& w);

struct ExtOptions
{
    int threads = 1;                    // worker threads over motivic columns
    bool reverse_basis = false;         // reverse enumeration order (for order-independence checks)
    std::size_t mem_budget_bytes = 0;   // 0 = uncapped
};

struct ExtEntry
{
    int dim = 0;
    std::vector<std::string> names;  // canonical cocycle representatives
};

struct ExtTable
{
    Window window;
    std::map<Tridegree, ExtEntry> entries;  // nonzero dimensions only

    int dim_at(Tridegree td) const
    {
        auto it = entries.find(td);
        return it == entries.end() ? 0 : it->second.dim;
    }
};

// Ext_{E(n)}(H_*, H_*) in the window by per-column Gaussian elimination.
// The differential preserves motivic degree, so each (m, n) column is an
// independent finite complex; s is padded by one step internally.
ExtTable ext_dimensions(const ResidueData& rd, int n, const Window& window, const ExtOptions& options = {});

}  // namespace motivic
