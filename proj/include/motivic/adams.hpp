#pragma once

#include "motivic/closed_ext.hpp"
#include "motivic/grading.hpp"
#include "motivic/sspage.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace motivic {

enum class Spectrum { BPGL, KGL, BPGL0 };

std::string spectrum_name(Spectrum s);
std::optional<Spectrum> spectrum_from_name(const std::string& name);

// Truncation level feeding the E_2-term: kgl sees v_0, v_1; BPGL<0> only
// v_0; BPGL needs every v_i that can reach the window.
int spectrum_truncation(Spectrum s, const Window& window);

// 2-complete coefficient group: free_rank copies of Z_2 plus one Z/2^e per
// torsion exponent e (kept in descending order).
struct CoefficientGroup
{
    long free_rank = 0;
    std::vector<int> torsion;

    void add_free(long count = 1) { free_rank += count; }
    void add_torsion(int exponent);
    void add(const CoefficientGroup& other);
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const CoefficientGroup&) const = default;
    std::string str() const;
};

// A differential d_page(source) = target between named E_2 monomials.
struct SeedDiff
{
    int page = 0;
    ExtMonomial source;
    ExtMonomial target;
};

// Seeds of the whole differential pattern: d_2 tau^2 = u*tau*v_0^2 when
// q = 3 mod 4 (u = rho), d_k tau = u*v_0^k when q = 1 mod 4, k = nu2(q-1).
// All three spectra share them; BPGL<0> merely has fewer v-columns to
// propagate into.
std::vector<SeedDiff> seed_differentials(const ResidueData& rd, Spectrum spec);

// d_{k+nu(s)} tau^s = u*tau^{s-1}*v_0^{k+nu(s)}; for q = 3 mod 4 the odd
// powers are filled in by the ordinary Leibniz rule from the even seed.
SeedDiff tau_power_differential(const ResidueData& rd, int s);

// Differential supported by a single E_2 basis monomial, derived from the
// tau-power family by Leibniz (v_i and Milnor classes are permanent).
std::optional<SeedDiff> monomial_differential(const ResidueData& rd, const ExtMonomial& x);

// The differential hitting x, if any; x then dies after that page.
std::optional<SeedDiff> incoming_differential(const ResidueData& rd, const ExtMonomial& x);

// Last page on which the monomial class is present; INT_MAX when permanent.
int last_page(const ResidueData& rd, const ExtMonomial& x);

// v_0-tower at one Adams bidegree: base class plus height (-1 = infinite).
struct Tower
{
    std::string base_name;
    Tridegree base;
    int height = -1;
};

struct TowerDecomposition
{
    std::map<Bidegree, std::vector<Tower>> towers;  // keyed by Adams bidegree
};

// One candidate hidden relation pi*rho*tau^{2r+1}*v_1*Q = tau^{2r+2}*v_0*Q
// and the E_infinity fate of its two sides.
struct AmbiguityReport
{
    std::string lhs;
    std::string rhs;
    bool lhs_alive = false;
    bool rhs_alive = false;
};

struct EInfinity
{
    SSPage page;  // restricted to the window; diffs = all recorded differentials
    TowerDecomposition towers;
    std::vector<std::string> gamma_mismatches;  // tridegrees where E_inf != Gamma' prediction
    std::vector<AmbiguityReport> ambiguities;
};

// Page-by-page engine over the closed-form E_2.  Pages are honest
// subquotients: classes are GF(2) vectors over the E_2 basis, each page is
// ker/im of the recorded differentials of the previous one.
class AdamsEngine
{
public:
    AdamsEngine(const ResidueData& rd, Spectrum spec, const Window& window, int r_max = 0);
    ~AdamsEngine();
    AdamsEngine(AdamsEngine&&) noexcept;
    AdamsEngine& operator=(AdamsEngine&&) noexcept;

    const ResidueData& rd() const;
    Spectrum spectrum() const;
    const Window& window() const;
    int r_max() const;
    int truncation() const;

    // Snapshot of page r (computing forward as needed); r >= 2.
    SSPage page(int r);
    // E_infinity data: final page, towers, Gamma' comparison, ambiguity fates.
    EInfinity e_infinity();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Homology step: the page after `page`.  The engine owning the spectral
// sequence must be passed along since a page alone does not know the
// differentials of the later pages.
SSPage turn_page(AdamsEngine& engine, const SSPage& page);

// Convenience wrapper: run the whole spectral sequence.
EInfinity e_infinity(const ResidueData& rd, Spectrum spec, const Window& window, int r_max = 0);

// Z/2[v_0]-towers to groups: infinite tower -> Z_2, height h -> Z/2^h.
std::map<Bidegree, CoefficientGroup> resolve_towers(const TowerDecomposition& td);

// Additive E_infinity predicted by the closed forms: Gamma'[v-generators]
// restricted to the window, as names per tridegree.
std::map<Tridegree, std::vector<std::string>> gamma_prime_prediction(const ResidueData& rd, Spectrum spec, const Window& window);

}  // namespace motivic
