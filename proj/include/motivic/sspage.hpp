#pragma once

#include "motivic/grading.hpp"

#include <map>
#include <string>
#include <vector>

namespace motivic {

// One recorded differential d_r between named classes.
struct RecordedDiff
{
    int r = 0;
    Tridegree src;
    std::string src_name;
    Tridegree tgt;
    std::string tgt_name;
};

// Trigraded GF(2) page with a named basis.  Serves the rho-Bockstein and
// the motivic Adams spectral sequence; `diffs` are the differentials that
// act on this page (for the top page: everything recorded so far).
struct SSPage
{
    int r = 2;
    std::map<Tridegree, std::vector<std::string>> classes;
    std::vector<RecordedDiff> diffs;

    int dim_at(Tridegree td) const
    {
        auto it = classes.find(td);
        return it == classes.end() ? 0 : int(it->second.size());
    }

    int total_dim() const
    {
        int d = 0;
        for (const auto& [td, names] : classes)
            d += int(names.size());
        return d;
    }
};

}  // namespace motivic
