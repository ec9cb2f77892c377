#include "motivic/coefficients.hpp"

#include <fmt/format.h>

namespace motivic {

namespace {
    constexpr int kDegreeCap = 512;

    void check_degree(Bidegree d)
    {
        if (d.m < -kDegreeCap || d.m > kDegreeCap || d.n < -kDegreeCap || d.n > kDegreeCap)
            throw InvalidInputError(fmt::format("degree {} outside the supported range (|m|,|n| <= {})", d.str(), kDegreeCap));
    }

}  // namespace

std::string spectrum_tag_name(SpectrumTag tag)
{
    switch (tag) {
    case SpectrumTag::BPGL:
        return "BPGL";
    case SpectrumTag::KGL:
        return "kgl";
    case SpectrumTag::BPGL0:
        return "BPGL0";
    case SpectrumTag::MGL:
        return "MGL";
    case SpectrumTag::HZ2:
        return "HZ2";
    }
    return "?";
}

std::optional<SpectrumTag> spectrum_tag_from_name(const std::string& name)
{
    if (name == "BPGL" || name == "bpgl")
        return SpectrumTag::BPGL;
    if (name == "kgl" || name == "KGL")
        return SpectrumTag::KGL;
    if (name == "BPGL0" || name == "bpgl0")
        return SpectrumTag::BPGL0;
    if (name == "MGL" || name == "mgl")
        return SpectrumTag::MGL;
    if (name == "HZ2" || name == "hz2")
        return SpectrumTag::HZ2;
    return std::nullopt;
}

CoefficientGroup gamma_group(const ResidueData& rd, Bidegree d)
{
    CoefficientGroup g;
    if (d.m == 0 && d.n == 0) {
        g.add_free();
        return g;
    }
    if (d.m >= 0 && d.n == -d.m - 1) {
        if (d.m == 0)
            g.add_free();  // the pi-tower
        g.add_torsion(rd.k + nu2(d.m + 1));
        return g;
    }
    if (d.m >= 0 && d.n == -d.m - 2) {
        g.add_torsion(rd.k + nu2(d.m + 1));
        return g;
    }
    return g;
}

long long generator_monomial_count(SpectrumTag tag, int weight)
{
    if (weight < 0)
        return 0;
    if (weight == 0)
        return 1;
    switch (tag) {
    case SpectrumTag::BPGL0:
    case SpectrumTag::HZ2:
        return 0;
    case SpectrumTag::KGL:
        return 1;  // v_1^weight
    case SpectrumTag::BPGL: {
        // multisets of weights 2^i - 1, i >= 1
        std::vector<long long> dp(size_t(weight) + 1, 0);
        dp[0] = 1;
        for (int c = 1; c <= weight; c = 2 * c + 1)
            for (int j = c; j <= weight; ++j)
                dp[size_t(j)] += dp[size_t(j - c)];
        return dp[size_t(weight)];
    }
    case SpectrumTag::MGL: {
        // v_i covers the weights 2^i - 1 and u_j the rest, so there is one
        // generator per positive weight and the counts are partition numbers
        std::vector<long long> dp(size_t(weight) + 1, 0);
        dp[0] = 1;
        for (int c = 1; c <= weight; ++c)
            for (int j = c; j <= weight; ++j)
                dp[size_t(j)] += dp[size_t(j - c)];
        return dp[size_t(weight)];
    }
    }
    return 0;
}

namespace {
    // weights E at which Gamma's support can meet d - E(1+a), with the
    // Gamma degree they hit
    struct WeightHit
    {
        int weight = 0;
        Bidegree gamma_deg;
    };

    std::vector<WeightHit> weight_hits(Bidegree d)
    {
        std::vector<WeightHit> hits;
        // (0,0) cell: E = m = n
        if (d.m == d.n && d.m >= 0)
            hits.push_back({d.m, {0, 0}});
        // n' = -m'-1 line: E = (m+n+1)/2
        if ((d.m + d.n + 1) % 2 == 0) {
            int e = (d.m + d.n + 1) / 2;
            if (e >= 0 && d.m - e >= 0)
                hits.push_back({e, {d.m - e, d.n - e}});
        }
        // n' = -m'-2 line: E = (m+n+2)/2
        if ((d.m + d.n + 2) % 2 == 0) {
            int e = (d.m + d.n + 2) / 2;
            if (e >= 0 && d.m - e >= 0)
                hits.push_back({e, {d.m - e, d.n - e}});
        }
        return hits;
    }
}  // namespace

CoefficientGroup coefficient_group(const ResidueData& rd, SpectrumTag tag, Bidegree d)
{
    check_degree(d);
    CoefficientGroup out;
    for (const auto& hit : weight_hits(d)) {
        long long count = generator_monomial_count(tag, hit.weight);
        if (!count)
            continue;
        CoefficientGroup part = gamma_group(rd, hit.gamma_deg);
        for (long long i = 0; i < count; ++i)
            out.add(part);
    }
    return out;
}

std::vector<KglSummand> kgl_summands(const ResidueData& rd, Bidegree d)
{
    check_degree(d);
    std::vector<KglSummand> out;
    for (const auto& hit : weight_hits(d)) {
        CoefficientGroup part = gamma_group(rd, hit.gamma_deg);
        if (!part.is_trivial())
            out.push_back(KglSummand{hit.weight, hit.gamma_deg, std::move(part)});
    }
    return out;
}

CoefficientGroup algebraic_k_degree(const ResidueData& rd, int m)
{
    if (m < 0)
        throw InvalidInputError("algebraic K-theory is only identified with kgl in degrees m >= 0");
    auto summands = kgl_summands(rd, {m, 0});
    auto above = kgl_summands(rd, {m + 1, 1});
    CoefficientGroup out;
    for (const auto& s : summands) {
        // v_1 sends the Gamma-summand at weight E onto the one at weight E+1
        // with the same Gamma degree; any summand without such a match would
        // be v_1-power torsion and get quotiented away
        bool injective = false;
        for (const auto& t : above)
            if (t.weight == s.weight + 1 && t.gamma_deg == s.gamma_deg && t.part == s.part)
                injective = true;
        if (injective)
            out.add(s.part);
    }
    return out;
}

}  // namespace motivic
