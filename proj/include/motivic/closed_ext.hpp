#pragma once

#include "motivic/arithmetic.hpp"
#include "motivic/grading.hpp"
#include "motivic/sspage.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace motivic {

// Basis monomial of the closed-form Ext_{E(n)}(H_*, H_*):
//   q = 1 mod 4:  k^M_*(F)[tau, v_0..v_n], no constraints;
//   q = 3 mod 4:  k^M_*(F)[tau^2, v_0..v_n]/(rho*v_0)  (+)  rho*tau*k^M[tau^2, v_0..v_n],
// with rho realized as the Milnor class u.  |v_i| = (1, 2^i + (2^i-1)a).
struct ExtMonomial
{
    int milnor = kMilnorOne;
    int tau = 0;
    std::vector<int> v;    // exponents of v_0..v_n
    bool rho_tau = false;  // q=3: monomial lives in the rho*tau summand (odd tau-power)
    bool ambiguous = false;  // lies in the hidden-relation ideal (pi*rho*tau*v_1 - tau^2*v_0)

    int s() const;
    Tridegree tridegree() const;
    std::string str() const;
    int v_exp(int i) const { return i < int(v.size()) ? v[i] : 0; }
};

bool ext_monomial_less(const ExtMonomial& a, const ExtMonomial& b);
bool ext_monomial_eq(const ExtMonomial& a, const ExtMonomial& b);
std::string ext_name(int milnor, int tau, const std::vector<int>& v);

// Build a monomial with its q-dependent flags computed.
ExtMonomial make_ext_monomial(const ResidueData& rd, int milnor, int tau, std::vector<int> v);

// Product of basis monomials in the closed-form algebra; nullopt means zero
// (u^2, degree >= 3, or the rho*v_0 relation in the even-tau part).
std::optional<ExtMonomial> ext_mono_mul(const ResidueData& rd, const ExtMonomial& a, const ExtMonomial& b);

// For a flagged monomial, the other side of its candidate hidden relation
// pi*rho*tau^{2r+1}*v_1*Q = tau^{2r+2}*v_0*Q.
std::optional<ExtMonomial> ambiguity_partner(const ResidueData& rd, const ExtMonomial& mono);

// Ordered basis of the closed form in one tridegree, flags attached.
// nlevel is the truncation: 1 for kgl, 0 for BPGL<0>, truncation_level(W)
// for the E(infinity) spectra.
std::vector<ExtMonomial> closed_form_basis(const ResidueData& rd, int nlevel, Tridegree td);

// Same over a whole window.
std::map<Tridegree, std::vector<ExtMonomial>> closed_form_window(const ResidueData& rd, int nlevel, const Window& window);

// The rho-Bockstein filtration spectral sequence for q = 3 mod 4: builds
// E_1 = (Ext_C (+) pi*Ext_C)[rho]/(rho^2) with Ext_C = Z/2[tau, v_0..v_n],
// runs d_1(tau) = rho*v_0 by Leibniz, and returns the E_2 page.  rho^2 = 0
// leaves no room for a d_2, so E_2 = E_infinity.
SSPage rho_bockstein_e2(const ResidueData& rd, int nlevel, const Window& window);

}  // namespace motivic
