#pragma once

#include "motivic/errors.hpp"

#include <compare>
#include <fmt/format.h>

namespace motivic {

// Motivic bidegree m + n*alpha.
struct Bidegree
{
    int m = 0;
    int n = 0;

    friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.m + b.m, a.n + b.n}; }
    friend Bidegree operator-(Bidegree a, Bidegree b) { return {a.m - b.m, a.n - b.n}; }
    auto operator<=>(const Bidegree&) const = default;

    std::string str() const { return fmt::format("{}{:+}a", m, n); }
};

// (s, m + n*alpha): homological degree plus motivic degree.  The Adams
// grading of (s, m, n) is (m - s) + n*alpha.
struct Tridegree
{
    int s = 0;
    int m = 0;
    int n = 0;

    Bidegree motivic() const { return {m, n}; }
    Bidegree adams() const { return {m - s, n}; }

    friend Tridegree operator+(Tridegree a, Tridegree b) { return {a.s + b.s, a.m + b.m, a.n + b.n}; }
    friend Tridegree operator-(Tridegree a, Tridegree b) { return {a.s - b.s, a.m - b.m, a.n - b.n}; }
    auto operator<=>(const Tridegree&) const = default;

    std::string str() const { return fmt::format("({},{}{:+}a)", s, m, n); }
};

// Finite trigraded box: m in [m_lo,m_hi], n in [n_lo,n_hi], 0 <= s <= s_max.
struct Window
{
    int m_lo = 0;
    int m_hi = 0;
    int n_lo = 0;
    int n_hi = 0;
    int s_max = 0;

    bool empty() const { return m_lo > m_hi || n_lo > n_hi || s_max < 0; }
    bool contains(Bidegree d) const { return d.m >= m_lo && d.m <= m_hi && d.n >= n_lo && d.n <= n_hi; }
    bool contains(Tridegree t) const { return t.s >= 0 && t.s <= s_max && contains(t.motivic()); }

    // Largest total degree m+n reachable in the box.
    int total_degree_max() const { return m_hi + n_hi; }

    void require_nonempty() const
    {
        if (empty())
            throw InvalidInputError(fmt::format("empty window m={}:{} n={}:{} smax={}", m_lo, m_hi, n_lo, n_hi, s_max));
    }

    std::string str() const { return fmt::format("m={}:{},n={}:{},s<={}", m_lo, m_hi, n_lo, n_hi, s_max); }
};

// 2-adic valuation of a positive integer.
inline int nu2(long long x)
{
    int v = 0;
    while (x % 2 == 0) {
        x /= 2;
        ++v;
    }
    return v;
}

}  // namespace motivic
