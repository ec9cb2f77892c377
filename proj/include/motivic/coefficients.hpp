#pragma once

#include "motivic/adams.hpp"
#include "motivic/grading.hpp"

#include <optional>
#include <string>
#include <vector>

namespace motivic {

// Coefficient targets.  HZ2 aliases BPGL0: the 2-completion of BPGL<0> is
// the 2-complete integral motivic cohomology spectrum.
enum class SpectrumTag { BPGL, KGL, BPGL0, MGL, HZ2 };

std::string spectrum_tag_name(SpectrumTag tag);
std::optional<SpectrumTag> spectrum_tag_from_name(const std::string& name);

// Gamma, the additive backbone: Z_2 in dimension 0; Z_2 (+) Z/2^{k+nu(m+1)}
// along n = -m-1, m >= 0 (the Z_2 only at m = 0); Z/2^{k+nu(m+1)} along
// n = -m-2, m >= 0; zero elsewhere.
CoefficientGroup gamma_group(const ResidueData& rd, Bidegree d);

// Number of monomials of total weight E in the tag's polynomial generators
// (weight of v_i is 2^i - 1, of u_j is j; each generator has degree
// weight*(1+a)).
long long generator_monomial_count(SpectrumTag tag, int weight);

// Bigraded coefficient group of the 2-completed spectrum: Gamma shifted by
// the generator monomials.  Degree components are capped at +-512 so the
// monomial counts stay inside 64 bits.
CoefficientGroup coefficient_group(const ResidueData& rd, SpectrumTag tag, Bidegree d);

// One summand of the assembled group, for torsion bookkeeping.
struct KglSummand
{
    int weight = 0;        // v_1-power
    Bidegree gamma_deg;    // Gamma degree hit
    CoefficientGroup part;
};
std::vector<KglSummand> kgl_summands(const ResidueData& rd, Bidegree d);

// 2-complete algebraic K-theory in degree m + 0a: kgl coefficients modulo
// v_1-power torsion.  Torsion is detected by checking that v_1 carries each
// summand onto an equal summand one degree up; on the computed Gamma[v_1]
// structure this always holds and the quotient is the group itself.
CoefficientGroup algebraic_k_degree(const ResidueData& rd, int m);

}  // namespace motivic
