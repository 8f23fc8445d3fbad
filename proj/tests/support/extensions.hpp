#pragma once

// Exhaustive elementary-extension enumeration, shared by the property and
// acceptance suites. Twist is held at zero for in-graph pairs because the
// effective band flip is twist xor splice.

#include <vector>

#include "fatsurf/mitosis.hpp"

namespace fatsurf::testing {

inline std::vector<Attachment> all_corners(const FatGraph& g) {
    std::vector<Attachment> out;
    for (int v = 0; v < g.num_vertices(); ++v) {
        int len = std::max(g.degree(v), 1);
        for (int c = 0; c < len; ++c) out.push_back(Attachment::at(v, c));
    }
    return out;
}

inline std::vector<ExtensionSpec> all_extension_specs(const FatGraph& g,
                                                      bool include_type0 = true) {
    std::vector<ExtensionSpec> out;
    std::vector<Attachment> corners = all_corners(g);
    if (include_type0) {
        for (const Attachment& a : corners) {
            for (int twist = 0; twist < 2; ++twist) {
                ExtensionSpec s;
                s.ends[0] = a;
                s.ends[1] = Attachment::fresh();
                s.twist = twist;
                out.push_back(s);
            }
        }
    }
    for (const Attachment& a : corners) {
        for (const Attachment& b : corners) {
            for (int splice = 0; splice < 2; ++splice) {
                ExtensionSpec s;
                s.ends[0] = a;
                s.ends[1] = b;
                s.splice = splice;
                out.push_back(s);
            }
        }
    }
    return out;
}

}  // namespace fatsurf::testing
