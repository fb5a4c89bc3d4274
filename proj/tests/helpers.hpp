#pragma once

// Shared test utilities: small builders, independent brute-force oracles
// (cycle search, copy saturation) kept apart from the library paths they
// cross-check.

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "incidence/fixtures.hpp"
#include "incidence/geometry.hpp"
#include "incidence/io.hpp"
#include "incidence/structure.hpp"

namespace testutil {

using namespace incidence;

inline Structure steiner_witness() { return builtin("steiner23-c6").structure; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// independent oracle: shortest simple cycle by DFS over all start vertices
inline std::optional<int> brute_girth(const Structure& m) {
    auto g = gaifman_graph(m, GaifmanFilter::Incidence);
    std::map<ElementId, std::vector<ElementId>> adj;
    for (const auto& [a, b] : g.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    int best = -1;
    std::vector<ElementId> path;
    std::set<ElementId> on_path;
    std::function<void(const ElementId&, const ElementId&)> dfs = [&](const ElementId& v,
                                                                      const ElementId& start) {
        for (const auto& w : adj[v]) {
            if (w == start && path.size() >= 3) {
                int len = static_cast<int>(path.size());
                if (best < 0 || len < best) best = len;
            }
            if (!on_path.count(w) && w > start) { // canonical: start is the least vertex
                path.push_back(w);
                on_path.insert(w);
                dfs(w, start);
                on_path.erase(w);
                path.pop_back();
            }
        }
    };
    for (const auto& v : g.vertices) {
        path = {v};
        on_path = {v};
        dfs(v, v);
    }
    if (best < 0) return std::nullopt;
    return best;
}

// independent oracle for algebraic degrees: the largest number of disjoint
// copies of (base + ext-elements) that still lies in K
inline int saturation_degree(const Structure& extended, const IdList& ext, int probe_max) {
    IdList base = id_difference(extended.element_ids(), ext);
    int best = 0;
    for (int copies = 1; copies <= probe_max + 1; ++copies) {
        Structure m(extended.kind());
        for (const auto& id : base) m.add_element(id, extended.sort_name(id));
        auto cname = [&](int c, const ElementId& id) { return "cp" + std::to_string(c) + "_" + id; };
        for (int c = 0; c < copies; ++c)
            for (const auto& id : ext) m.add_element(cname(c, id), extended.sort_name(id));
        std::set<ElementId> extset(ext.begin(), ext.end());
        auto mapped = [&](int c, const ElementId& id) {
            return extset.count(id) ? cname(c, id) : id;
        };
        for (int c = 0; c < copies; ++c) {
            for (const auto& [x, y] : extended.incidences())
                if (extset.count(x) || extset.count(y)) m.add_incidence(mapped(c, x), mapped(c, y));
            for (const auto& t : extended.tangencies())
                if (extset.count(t[0]) || extset.count(t[1]) || extset.count(t[2]))
                    m.add_tangency(mapped(c, t[0]), mapped(c, t[1]), mapped(c, t[2]));
            for (const auto& id : extended.element_ids())
                for (const auto& mate : extended.parallels(id))
                    if ((extset.count(id) || extset.count(mate)) && id < mate)
                        m.add_parallel(mapped(c, id), mapped(c, mate));
            for (const auto& [l, cls] : extended.line_classes())
                if (extset.count(l)) m.set_line_class(cname(c, l), cls);
        }
        // base-only tuples
        for (const auto& [x, y] : extended.incidences())
            if (!extset.count(x) && !extset.count(y)) m.add_incidence(x, y);
        for (const auto& t : extended.tangencies())
            if (!extset.count(t[0]) && !extset.count(t[1]) && !extset.count(t[2]))
                m.add_tangency(t[0], t[1], t[2]);
        for (const auto& id : base)
            for (const auto& mate : extended.parallels(id))
                if (!extset.count(mate) && id < mate) m.add_parallel(id, mate);
        for (const auto& [l, cls] : extended.line_classes())
            if (!extset.count(l)) m.set_line_class(l, cls);
        m.close_local_equivalences();
        if (is_valid(m) && is_open_over(m, {}).open())
            best = copies;
        else
            break;
    }
    return best;
}

} // namespace testutil
