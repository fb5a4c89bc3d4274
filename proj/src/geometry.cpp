#include "incidence/geometry.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "dense.hpp"
#include "incidence/construction.hpp"

namespace incidence {

namespace {

IdList common_incident(const Structure& m, const ElementId& a, const ElementId& b) {
    IdList out;
    const auto& na = m.incident(a);
    for (const auto& x : m.incident(b))
        if (na.count(x)) out.push_back(x);
    return out;
}

// Shortest cycle in the incidence Gaifman graph with its vertices, for
// violation reports. Same BFS sweep as girth_and_bipartite.
std::optional<std::pair<int, IdList>> shortest_cycle(const Structure& m) {
    auto g = gaifman_graph(m, GaifmanFilter::Incidence);
    std::map<ElementId, std::vector<ElementId>> adj;
    for (const auto& [a, b] : g.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    int best = -1;
    IdList best_cycle;
    for (const auto& root : g.vertices) {
        std::map<ElementId, int> dist;
        std::map<ElementId, ElementId> parent;
        dist[root] = 0;
        std::deque<ElementId> queue{root};
        while (!queue.empty()) {
            ElementId x = queue.front();
            queue.pop_front();
            for (const auto& y : adj[x]) {
                if (!dist.count(y)) {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                    continue;
                }
                if (parent.count(x) && parent[x] == y) continue;
                if (parent.count(y) && parent[y] == x) continue;
                int cand = dist[x] + dist[y] + 1;
                if (best >= 0 && cand >= best) continue;
                IdList px{x}, py{y};
                for (ElementId v = x; parent.count(v);) { v = parent[v]; px.push_back(v); }
                for (ElementId v = y; parent.count(v);) { v = parent[v]; py.push_back(v); }
                // trim the shared ancestor tail so the walk becomes a cycle
                while (px.size() >= 2 && py.size() >= 2 && px[px.size() - 1] == py[py.size() - 1] &&
                       px[px.size() - 2] == py[py.size() - 2]) {
                    px.pop_back();
                    py.pop_back();
                }
                // px and py now share exactly their last element (the apex)
                IdList cycle = px;
                for (std::size_t t = py.size() - 1; t-- > 0;) cycle.push_back(py[t]);
                best = static_cast<int>(cycle.size());
                best_cycle = cycle;
            }
        }
    }
    if (best < 0) return std::nullopt;
    return std::make_pair(best, best_cycle);
}

void validate_steiner(const Structure& m, std::vector<Violation>& out) {
    int k = m.kind().k, n = m.kind().n;
    auto blocks = m.elements_of_sort(1);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (static_cast<int>(m.incident(blocks[i]).size()) > n)
            out.push_back({"block-capacity",
                           "block '" + blocks[i] + "' carries more than n=" + std::to_string(n) +
                               " points",
                           {blocks[i]}});
        for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            auto shared = common_incident(m, blocks[i], blocks[j]);
            if (static_cast<int>(shared.size()) >= k) {
                IdList ids{blocks[i], blocks[j]};
                ids.insert(ids.end(), shared.begin(), shared.end());
                out.push_back({"unique-block", "two blocks through a k-set", ids});
            }
        }
    }
}

void validate_gon(const Structure& m, std::vector<Violation>& out) {
    int n = m.kind().gon_order();
    auto cyc = shortest_cycle(m);
    if (cyc && cyc->first < 2 * n)
        out.push_back({"girth",
                       "girth " + std::to_string(cyc->first) + " < " + std::to_string(2 * n),
                       cyc->second});
}

void validate_net(const Structure& m, std::vector<Violation>& out) {
    auto lines = m.elements_of_sort(1);
    for (const auto& l : lines)
        if (!m.line_class(l))
            out.push_back({"class-cover", "line '" + l + "' has no parallelism type", {l}});
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            auto shared = common_incident(m, lines[i], lines[j]);
            auto ci = m.line_class(lines[i]), cj = m.line_class(lines[j]);
            if (ci && cj && *ci == *cj && !shared.empty())
                out.push_back({"unique-line",
                               "lines of type P" + std::to_string(*ci) + " meet",
                               {lines[i], lines[j], shared.front()}});
            if (shared.size() >= 2)
                out.push_back({"unique-point", "two lines with two common points",
                               {lines[i], lines[j], shared[0], shared[1]}});
        }
}

void validate_affine(const Structure& m, std::vector<Violation>& out) {
    auto lines = m.elements_of_sort(1);
    for (const auto& a : lines)
        for (const auto& b : m.parallels(a))
            for (const auto& c : m.parallels(b))
                if (c != a && !m.parallel_pair(a, c))
                    out.push_back({"parallelism-transitive",
                                   "parallelism is not transitively closed", {a, b, c}});
    auto points = m.elements_of_sort(0);
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            auto shared = common_incident(m, points[i], points[j]);
            if (shared.size() >= 2)
                out.push_back({"unique-join", "two points on two common lines",
                               {points[i], points[j], shared[0], shared[1]}});
        }
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            auto shared = common_incident(m, lines[i], lines[j]);
            bool par = m.parallel_pair(lines[i], lines[j]);
            if (!par && shared.size() >= 2)
                out.push_back({"unique-meet", "two non-parallel lines with two common points",
                               {lines[i], lines[j], shared[0], shared[1]}});
            if (par && !shared.empty())
                out.push_back({"unique-parallel", "parallel lines with a common point",
                               {lines[i], lines[j], shared.front()}});
        }
}

void validate_moebius(const Structure& m, std::vector<Violation>& out) {
    for (const auto& t : m.tangencies()) {
        if (!m.incident_pair(t[2], t[0]) || !m.incident_pair(t[2], t[1]))
            out.push_back({"tangency-incidence",
                           "tangent blocks must pass through the tangency point",
                           {t[0], t[1], t[2]}});
        // tangent blocks share no second point
        for (const auto& q : common_incident(m, t[0], t[1]))
            if (q != t[2])
                out.push_back({"tangent-single-point",
                               "tangent blocks with a second common point", {t[0], t[1], q, t[2]}});
    }
    // per-point transitivity
    std::map<ElementId, std::map<ElementId, std::set<ElementId>>> at;
    for (const auto& t : m.tangencies()) {
        at[t[2]][t[0]].insert(t[1]);
        at[t[2]][t[1]].insert(t[0]);
    }
    for (const auto& [p, adjy] : at)
        for (const auto& [b, mates] : adjy)
            for (const auto& x : mates)
                for (const auto& y : adjy.at(x))
                    if (y != b && !m.tangent_at(b, y, p))
                        out.push_back({"tangency-equivalence",
                                       "tangency at '" + p + "' is not transitively closed",
                                       {b, x, y, p}});
    auto blocks = m.elements_of_sort(1);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            auto shared = common_incident(m, blocks[i], blocks[j]);
            if (shared.size() >= 3)
                out.push_back({"two-common-points", "two blocks with three common points",
                               {blocks[i], blocks[j], shared[0], shared[1], shared[2]}});
        }
}

} // namespace

std::vector<Violation> validate_t_forall(const Structure& m) {
    std::vector<Violation> out;
    switch (m.kind().cls) {
        case GeometryClass::Steiner: validate_steiner(m, out); break;
        case GeometryClass::Projective:
        case GeometryClass::Ngon: validate_gon(m, out); break;
        case GeometryClass::Net: validate_net(m, out); break;
        case GeometryClass::Affine: validate_affine(m, out); break;
        case GeometryClass::Moebius: validate_moebius(m, out); break;
        case GeometryClass::Graph: break; // irreflexive/symmetric enforced by storage
    }
    return out;
}

bool is_valid(const Structure& m) { return validate_t_forall(m).empty(); }

std::vector<HyperfreeTuple> hyperfree_tuples(const Structure& b, const IdList& a) {
    check_subset(b, a);
    detail::DenseView dv(b);
    detail::Bits base = dv.mask_of(a);
    detail::Bits candidates = dv.full_mask().and_not(base);
    detail::Bits ambient = dv.full_mask();

    std::vector<HyperfreeTuple> out;
    auto variant_of = [&](int v) {
        switch (b.kind().cls) {
            case GeometryClass::Steiner:
                return dv.sort_of[static_cast<std::size_t>(v)] == 0 ? HyperfreeVariant::PointBounded
                                                                    : HyperfreeVariant::BlockBounded;
            case GeometryClass::Net:
            case GeometryClass::Affine:
                return dv.sort_of[static_cast<std::size_t>(v)] == 0 ? HyperfreeVariant::PointBounded
                                                                    : HyperfreeVariant::LineBounded;
            case GeometryClass::Moebius:
            case GeometryClass::Graph: return HyperfreeVariant::ValencyBounded;
            default: return HyperfreeVariant::LooseEnd;
        }
    };
    for (int v = 0; v < dv.m; ++v)
        if (candidates.test(v) && dv.elem_hyperfree(v, ambient))
            out.push_back({{dv.ids[static_cast<std::size_t>(v)]}, variant_of(v)});
    if (b.kind().is_gon())
        for (const auto& arc : detail::clean_arcs(dv, ambient, candidates)) {
            IdList ids;
            for (int v : arc) ids.push_back(dv.ids[static_cast<std::size_t>(v)]);
            out.push_back({ids, HyperfreeVariant::CleanArc});
        }
    std::sort(out.begin(), out.end(), [](const HyperfreeTuple& x, const HyperfreeTuple& y) {
        return x.elements != y.elements ? x.elements < y.elements : x.variant < y.variant;
    });
    return out;
}

int valency(const Structure& b, const ElementId& c) {
    if (b.kind().cls == GeometryClass::Graph) return static_cast<int>(b.incident(c).size());
    if (b.kind().cls != GeometryClass::Moebius)
        throw Error("valency is defined for graph and moebius kinds");
    detail::DenseView dv(b);
    return dv.theta(dv.index.at(c), dv.full_mask());
}

std::string to_string(ExtensionTag tag) {
    switch (tag) {
        case ExtensionTag::Trivial: return "trivial";
        case ExtensionTag::Algebraic: return "algebraic";
        case ExtensionTag::NonAlgebraic: return "non-algebraic";
        case ExtensionTag::NotMinimal: return "not-minimal";
        case ExtensionTag::NotStrong: return "not-strong";
    }
    return "?";
}

namespace {

ExtensionClass classify_single(const Structure& b, const IdList& base, const ElementId& c) {
    const auto& kind = b.kind();
    std::set<ElementId> a(base.begin(), base.end());
    IdList inc_a;
    for (const auto& x : b.incident(c))
        if (a.count(x)) inc_a.push_back(x);
    int j = static_cast<int>(inc_a.size());

    if (trivial_over(b, base, c)) return {ExtensionTag::Trivial, 0};

    switch (kind.cls) {
        case GeometryClass::Steiner:
            if (b.sort_index(c) == 0) {
                // point on one block: the block fills up to n points
                int on_block = 0;
                for (const auto& p : b.incident(inc_a.front()))
                    if (a.count(p)) ++on_block;
                return {ExtensionTag::Algebraic, kind.n - on_block};
            }
            return j == kind.k ? ExtensionClass{ExtensionTag::Algebraic, 1}
                               : ExtensionClass{ExtensionTag::NonAlgebraic, 0};
        case GeometryClass::Net:
            if (b.sort_index(c) == 0)
                return j == 2 ? ExtensionClass{ExtensionTag::Algebraic, 1}
                              : ExtensionClass{ExtensionTag::NonAlgebraic, 0};
            return {ExtensionTag::Algebraic, 1}; // line through one point, unique per type
        case GeometryClass::Affine: {
            if (b.sort_index(c) == 0)
                return j == 2 ? ExtensionClass{ExtensionTag::Algebraic, 1}
                              : ExtensionClass{ExtensionTag::NonAlgebraic, 0};
            int pars = 0;
            for (const auto& l : b.parallels(c))
                if (a.count(l)) ++pars;
            if (j == 2 && pars == 0) return {ExtensionTag::Algebraic, 1};
            if (j == 1 && pars >= 1) return {ExtensionTag::Algebraic, 1};
            return {ExtensionTag::NonAlgebraic, 0};
        }
        case GeometryClass::Moebius: {
            if (b.sort_index(c) == 0) {
                if (j == 2) {
                    int shared_in_a = 0;
                    for (const auto& q : common_incident(b, inc_a[0], inc_a[1]))
                        if (a.count(q)) ++shared_in_a;
                    return {ExtensionTag::Algebraic, std::max(1, 2 - shared_in_a)};
                }
                return {ExtensionTag::NonAlgebraic, 0};
            }
            int pencils = 0;
            std::set<ElementId> pts;
            for (const auto& t : b.tangencies())
                if ((t[0] == c || t[1] == c) && a.count(t[0] == c ? t[1] : t[0]) && a.count(t[2]))
                    pts.insert(t[2]);
            pencils = static_cast<int>(pts.size());
            if (j == 3 && pencils == 0) return {ExtensionTag::Algebraic, 1};
            if (j == 2 && pencils == 1) return {ExtensionTag::Algebraic, 1};
            return {ExtensionTag::NonAlgebraic, 0};
        }
        case GeometryClass::Graph: return {ExtensionTag::NonAlgebraic, 0};
        case GeometryClass::Projective:
        case GeometryClass::Ngon:
            // reachable only for gon order 3 (singleton clean arc) or loose ends
            return j == 2 ? ExtensionClass{ExtensionTag::Algebraic, 1}
                          : ExtensionClass{ExtensionTag::NonAlgebraic, 0};
    }
    return {ExtensionTag::NonAlgebraic, 0};
}

} // namespace

ExtensionClass classify_one_step(const Structure& extended, const IdList& ext) {
    if (ext.empty()) throw Error("malformed ext: empty tuple");
    check_subset(extended, ext);
    IdList base = id_difference(extended.element_ids(), ext);

    detail::DenseView dv(extended);
    detail::Bits base_mask = dv.mask_of(base);
    detail::Bits ext_mask = dv.mask_of(ext);
    if (!detail::strong_over(dv, base_mask, ext_mask)) return {ExtensionTag::NotStrong, 0};

    const auto& kind = extended.kind();
    if (ext.size() == 1) {
        if (kind.is_gon() && kind.gon_order() > 3 &&
            dv.inc_count(dv.index.at(ext.front()), dv.full_mask()) > 1)
            return {ExtensionTag::NotMinimal, 0}; // strong but not a one-step pattern
        return classify_single(extended, base, ext.front());
    }
    if (kind.is_gon() && static_cast<int>(ext.size()) == kind.gon_order() - 2) {
        auto arcs = detail::clean_arcs(dv, dv.full_mask(), ext_mask);
        std::vector<int> tuple;
        for (const auto& id : ext) tuple.push_back(dv.index.at(id));
        std::vector<int> rev(tuple.rbegin(), tuple.rend());
        auto canon = std::min(tuple, rev);
        for (const auto& arc : arcs)
            if (arc == canon) return {ExtensionTag::Algebraic, 1};
    }
    return {ExtensionTag::NotMinimal, 0};
}

bool is_nondegenerate(const Structure& m) {
    const auto& kind = m.kind();
    switch (kind.cls) {
        case GeometryClass::Steiner: {
            auto blocks = m.elements_of_sort(1);
            if (blocks.size() >= 2) return true;
            auto points = m.elements_of_sort(0);
            if (static_cast<int>(points.size()) < kind.k + 1) return false;
            if (blocks.empty()) return true;
            int off = 0;
            for (const auto& p : points)
                if (!m.incident_pair(p, blocks.front())) ++off;
            return off >= 1;
        }
        case GeometryClass::Net: {
            auto points = m.elements_of_sort(0);
            auto lines = m.elements_of_sort(1);
            if (points.empty()) {
                std::set<int> classes;
                for (const auto& l : lines)
                    if (auto c = m.line_class(l)) classes.insert(*c);
                return classes.size() >= 2;
            }
            if (points.size() == 1) {
                for (const auto& l : lines)
                    if (!m.incident_pair(points.front(), l)) return true;
                return false;
            }
            return true;
        }
        case GeometryClass::Affine: {
            auto points = m.elements_of_sort(0);
            std::size_t np = points.size();
            auto collinear3 = [&](const ElementId& a, const ElementId& b, const ElementId& c) {
                for (const auto& l : m.incident(a))
                    if (m.incident_pair(b, l) && m.incident_pair(c, l)) return true;
                return false;
            };
            for (std::size_t i = 0; i < np; ++i)
                for (std::size_t j = i + 1; j < np; ++j)
                    for (std::size_t k2 = j + 1; k2 < np; ++k2)
                        for (std::size_t l = k2 + 1; l < np; ++l) {
                            if (collinear3(points[i], points[j], points[k2])) continue;
                            if (collinear3(points[i], points[j], points[l])) continue;
                            if (collinear3(points[i], points[k2], points[l])) continue;
                            if (collinear3(points[j], points[k2], points[l])) continue;
                            return true;
                        }
            return false;
        }
        case GeometryClass::Moebius: {
            for (const auto& b : m.elements_of_sort(1)) {
                if (m.incident(b).size() < 2) continue;
                for (const auto& q : m.elements_of_sort(0))
                    if (!m.incident_pair(q, b)) return true;
            }
            return false;
        }
        case GeometryClass::Graph: return static_cast<int>(m.size()) >= kind.n;
        case GeometryClass::Projective:
        case GeometryClass::Ngon: {
            // completion probe: a fixed point means F(A) is finite
            std::size_t cap = 3 * m.size() + 60;
            Structure cur = m;
            for (int stage = 0; stage < 64; ++stage) {
                auto next = free_completion(cur, 1, cap);
                if (next.truncated) return true;
                if (next.structure.size() == cur.size()) return false;
                cur = next.structure;
            }
            return true;
        }
    }
    return false;
}

} // namespace incidence
