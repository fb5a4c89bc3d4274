#include "incidence/structure.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace incidence {

namespace {

const std::set<ElementId> kEmptySet;

std::pair<ElementId, ElementId> lex_pair(const ElementId& a, const ElementId& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

} // namespace

GeometryKind GeometryKind::projective() { return {GeometryClass::Projective, 0, 3}; }

GeometryKind GeometryKind::ngon(int n) {
    if (n < 3) throw Error("ngon requires n >= 3");
    return {GeometryClass::Ngon, 0, n};
}

GeometryKind GeometryKind::steiner(int k, int n) {
    if (k < 2 || k >= n) throw Error("steiner requires 2 <= k < n");
    return {GeometryClass::Steiner, k, n};
}

GeometryKind GeometryKind::net(int k) {
    if (k < 3) throw Error("net requires k >= 3");
    return {GeometryClass::Net, k, 0};
}

GeometryKind GeometryKind::affine() { return {GeometryClass::Affine, 0, 0}; }

GeometryKind GeometryKind::moebius() { return {GeometryClass::Moebius, 0, 0}; }

GeometryKind GeometryKind::graph(int n, int multiplicity) {
    if (n < 0) throw Error("graph requires n >= 0");
    if (multiplicity < 1) throw Error("graph multiplicity must be positive");
    return {GeometryClass::Graph, 0, n, multiplicity};
}

int GeometryKind::gon_order() const {
    if (cls == GeometryClass::Projective) return 3;
    if (cls == GeometryClass::Ngon) return n;
    throw Error("gon_order: not an n-gon kind");
}

std::vector<std::string> GeometryKind::sort_names() const {
    switch (cls) {
        case GeometryClass::Steiner:
        case GeometryClass::Moebius: return {"point", "block"};
        case GeometryClass::Graph: return {"vertex"};
        default: return {"point", "line"};
    }
}

std::string GeometryKind::class_token() const {
    switch (cls) {
        case GeometryClass::Projective: return "projective";
        case GeometryClass::Ngon: return "ngon";
        case GeometryClass::Steiner: return "steiner";
        case GeometryClass::Net: return "net";
        case GeometryClass::Affine: return "affine";
        case GeometryClass::Moebius: return "moebius";
        case GeometryClass::Graph: return "graph";
    }
    return "?";
}

bool GeometryKind::operator==(const GeometryKind& o) const {
    return cls == o.cls && k == o.k && n == o.n && multiplicity == o.multiplicity;
}

GeometryKind kind_from_token(const std::string& token, std::map<std::string, int> params) {
    auto take = [&params](const std::string& key) -> std::optional<int> {
        auto it = params.find(key);
        if (it == params.end()) return std::nullopt;
        int v = it->second;
        params.erase(it);
        return v;
    };
    GeometryKind kind;
    if (token == "projective") {
        kind = GeometryKind::projective();
    } else if (token == "ngon") {
        auto n = take("n");
        if (!n) throw Error("ngon requires n=<int>");
        kind = GeometryKind::ngon(*n);
    } else if (token == "steiner") {
        auto k = take("k");
        auto n = take("n");
        if (!k || !n) throw Error("steiner requires k=<int> n=<int>");
        kind = GeometryKind::steiner(*k, *n);
    } else if (token == "net") {
        auto k = take("k");
        if (!k) throw Error("net requires k=<int>");
        kind = GeometryKind::net(*k);
    } else if (token == "affine") {
        kind = GeometryKind::affine();
    } else if (token == "moebius") {
        kind = GeometryKind::moebius();
    } else if (token == "graph") {
        auto n = take("n");
        if (!n) throw Error("graph requires n=<int>");
        kind = GeometryKind::graph(*n);
    } else {
        throw Error("unknown geometry class '" + token + "'");
    }
    if (auto m = take("m")) {
        if (*m < 1) throw Error("m must be positive");
        kind.multiplicity = *m;
    }
    if (!params.empty()) throw Error("unexpected parameter '" + params.begin()->first + "'");
    return kind;
}

void Structure::require_element(const ElementId& id) const {
    if (!has_element(id)) throw Error("unknown element id '" + id + "'");
}

void Structure::add_element(const ElementId& id, const std::string& sort) {
    if (id.empty()) throw Error("empty element id");
    if (has_element(id)) throw Error("duplicate element id '" + id + "'");
    auto names = kind_.sort_names();
    auto it = std::find(names.begin(), names.end(), sort);
    if (it == names.end())
        throw Error("sort '" + sort + "' is not a sort of kind " + kind_.class_token());
    sorts_[id] = static_cast<int>(it - names.begin());
}

void Structure::add_incidence(const ElementId& a, const ElementId& b) {
    require_element(a);
    require_element(b);
    if (a == b) throw Error("incidence needs two distinct elements");
    if (kind_.cls != GeometryClass::Graph && sorts_.at(a) == sorts_.at(b))
        throw Error("incidence needs one element of each sort: '" + a + "', '" + b + "'");
    auto key = lex_pair(a, b);
    if (kind_.cls != GeometryClass::Graph && sorts_.at(key.first) != 0) std::swap(key.first, key.second);
    inc_pairs_.insert(key);
    inc_[a].insert(b);
    inc_[b].insert(a);
}

void Structure::add_parallel(const ElementId& a, const ElementId& b) {
    if (kind_.cls != GeometryClass::Affine) throw Error("parallelism is an affine relation");
    require_element(a);
    require_element(b);
    if (a == b) throw Error("reflexive parallelism is implicit");
    if (sorts_.at(a) != 1 || sorts_.at(b) != 1) throw Error("parallelism relates lines");
    par_[a].insert(b);
    par_[b].insert(a);
}

void Structure::add_tangency(const ElementId& b0, const ElementId& b1, const ElementId& p) {
    if (kind_.cls != GeometryClass::Moebius) throw Error("tangency is a moebius relation");
    require_element(b0);
    require_element(b1);
    require_element(p);
    if (b0 == b1) throw Error("reflexive tangency is implicit");
    if (sorts_.at(b0) != 1 || sorts_.at(b1) != 1 || sorts_.at(p) != 0)
        throw Error("tangency relates two blocks at a point");
    auto pr = lex_pair(b0, b1);
    tan_.insert({pr.first, pr.second, p});
}

void Structure::set_line_class(const ElementId& line, int cls) {
    if (kind_.cls != GeometryClass::Net) throw Error("parallelism predicates are a net feature");
    require_element(line);
    if (sorts_.at(line) != 1) throw Error("parallelism predicates apply to lines");
    if (cls < 0 || cls >= kind_.k) throw Error("class index out of range");
    auto it = net_cls_.find(line);
    if (it != net_cls_.end() && it->second != cls)
        throw Error("line '" + line + "' already has a parallelism type");
    net_cls_[line] = cls;
}

void Structure::close_local_equivalences() {
    if (kind_.cls == GeometryClass::Affine) {
        // union parallel classes to transitive closure
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& [a, nbrs] : par_) {
                std::vector<ElementId> snapshot(nbrs.begin(), nbrs.end());
                for (const auto& b : snapshot)
                    for (const auto& c : par_[b])
                        if (c != a && nbrs.insert(c).second) {
                            par_[c].insert(a);
                            changed = true;
                        }
            }
        }
    } else if (kind_.cls == GeometryClass::Moebius) {
        bool changed = true;
        while (changed) {
            changed = false;
            std::map<ElementId, std::map<ElementId, std::set<ElementId>>> at; // p -> b -> mates
            for (const auto& t : tan_) {
                at[t[2]][t[0]].insert(t[1]);
                at[t[2]][t[1]].insert(t[0]);
            }
            for (auto& [p, adjacency] : at)
                for (auto& [b, mates] : adjacency)
                    for (const auto& x : mates)
                        for (const auto& y : adjacency[x])
                            if (y != b) {
                                auto pr = lex_pair(b, y);
                                if (tan_.insert({pr.first, pr.second, p}).second) changed = true;
                            }
        }
    }
}

int Structure::sort_index(const ElementId& id) const {
    require_element(id);
    return sorts_.at(id);
}

const std::string& Structure::sort_name(const ElementId& id) const {
    static const std::string kPoint = "point", kBlock = "block", kLine = "line",
                             kVertex = "vertex";
    require_element(id);
    int s = sorts_.at(id);
    switch (kind_.cls) {
        case GeometryClass::Steiner:
        case GeometryClass::Moebius: return s == 0 ? kPoint : kBlock;
        case GeometryClass::Graph: return kVertex;
        default: return s == 0 ? kPoint : kLine;
    }
}

IdList Structure::element_ids() const {
    IdList out;
    out.reserve(sorts_.size());
    for (const auto& [id, s] : sorts_) out.push_back(id);
    return out;
}

IdList Structure::elements_of_sort(int sort) const {
    IdList out;
    for (const auto& [id, s] : sorts_)
        if (s == sort) out.push_back(id);
    return out;
}

const std::set<ElementId>& Structure::incident(const ElementId& id) const {
    require_element(id);
    auto it = inc_.find(id);
    return it == inc_.end() ? kEmptySet : it->second;
}

bool Structure::incident_pair(const ElementId& a, const ElementId& b) const {
    auto it = inc_.find(a);
    return it != inc_.end() && it->second.count(b) != 0;
}

const std::set<ElementId>& Structure::parallels(const ElementId& id) const {
    require_element(id);
    auto it = par_.find(id);
    return it == par_.end() ? kEmptySet : it->second;
}

bool Structure::parallel_pair(const ElementId& a, const ElementId& b) const {
    auto it = par_.find(a);
    return it != par_.end() && it->second.count(b) != 0;
}

bool Structure::tangent_at(const ElementId& a, const ElementId& b, const ElementId& p) const {
    auto pr = lex_pair(a, b);
    return tan_.count({pr.first, pr.second, p}) != 0;
}

bool Structure::tangent(const ElementId& a, const ElementId& b) const {
    auto pr = lex_pair(a, b);
    for (const auto& t : tan_)
        if (t[0] == pr.first && t[1] == pr.second) return true;
    return false;
}

std::optional<int> Structure::line_class(const ElementId& line) const {
    auto it = net_cls_.find(line);
    if (it == net_cls_.end()) return std::nullopt;
    return it->second;
}

bool Structure::operator==(const Structure& o) const {
    return kind_ == o.kind_ && sorts_ == o.sorts_ && inc_pairs_ == o.inc_pairs_ &&
           par_ == o.par_ && tan_ == o.tan_ && net_cls_ == o.net_cls_;
}

void check_subset(const Structure& m, const IdList& members) {
    std::set<ElementId> seen;
    for (const auto& id : members) {
        if (!m.has_element(id)) throw Error("unknown element id '" + id + "'");
        if (!seen.insert(id).second) throw Error("duplicate member '" + id + "'");
    }
}

Structure induced_substructure(const Structure& m, const IdList& members) {
    check_subset(m, members);
    std::set<ElementId> keep(members.begin(), members.end());
    Structure out(m.kind());
    for (const auto& id : m.element_ids())
        if (keep.count(id)) out.add_element(id, m.sort_name(id));
    for (const auto& [a, b] : m.incidences())
        if (keep.count(a) && keep.count(b)) out.add_incidence(a, b);
    for (const auto& t : m.tangencies())
        if (keep.count(t[0]) && keep.count(t[1]) && keep.count(t[2]))
            out.add_tangency(t[0], t[1], t[2]);
    for (const auto& id : members)
        for (const auto& other : m.parallels(id))
            if (keep.count(other) && id < other) out.add_parallel(id, other);
    for (const auto& [line, cls] : m.line_classes())
        if (keep.count(line)) out.set_line_class(line, cls);
    return out;
}

GaifmanGraph gaifman_graph(const Structure& m, GaifmanFilter filter) {
    GaifmanGraph g;
    g.filter = filter;
    g.vertices = m.element_ids();
    auto add_edge = [&g](const ElementId& a, const ElementId& b) {
        if (a != b) g.edges.insert(lex_pair(a, b));
    };
    bool want_inc = filter != GaifmanFilter::Parallelism;
    bool want_par = filter != GaifmanFilter::Incidence;
    if (want_inc)
        for (const auto& [a, b] : m.incidences()) add_edge(a, b);
    if (want_par) {
        for (const auto& id : g.vertices)
            for (const auto& other : m.parallels(id)) add_edge(id, other);
        for (const auto& t : m.tangencies()) {
            add_edge(t[0], t[1]);
            if (filter == GaifmanFilter::Full) {
                add_edge(t[0], t[2]);
                add_edge(t[1], t[2]);
            }
        }
    }
    return g;
}

std::optional<int> distance(const Structure& m, const IdList& xs, const IdList& ys,
                            GaifmanFilter filter) {
    if (xs.empty() || ys.empty()) throw Error("distance requires nonempty sets");
    check_subset(m, xs);
    check_subset(m, ys);
    std::set<ElementId> target(ys.begin(), ys.end());
    for (const auto& x : xs)
        if (target.count(x)) return 0;
    auto g = gaifman_graph(m, filter);
    std::map<ElementId, std::set<ElementId>> adj;
    for (const auto& [a, b] : g.edges) {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    std::map<ElementId, int> dist;
    std::deque<ElementId> queue;
    for (const auto& x : xs) {
        dist[x] = 0;
        queue.push_back(x);
    }
    while (!queue.empty()) {
        ElementId v = queue.front();
        queue.pop_front();
        for (const auto& w : adj[v]) {
            if (dist.count(w)) continue;
            dist[w] = dist[v] + 1;
            if (target.count(w)) return dist[w];
            queue.push_back(w);
        }
    }
    return std::nullopt;
}

GirthBipartite girth_and_bipartite(const Structure& m) {
    GirthBipartite out;
    auto g = gaifman_graph(m, GaifmanFilter::Incidence);
    std::map<ElementId, std::vector<ElementId>> adj;
    for (const auto& [a, b] : g.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }

    if (m.kind().cls == GeometryClass::Graph) {
        // genuine 2-colouring
        std::map<ElementId, int> colour;
        for (const auto& v : g.vertices) {
            if (colour.count(v)) continue;
            colour[v] = 0;
            std::deque<ElementId> queue{v};
            while (!queue.empty()) {
                ElementId x = queue.front();
                queue.pop_front();
                for (const auto& y : adj[x]) {
                    if (!colour.count(y)) {
                        colour[y] = 1 - colour[x];
                        queue.push_back(y);
                    } else if (colour[y] == colour[x]) {
                        out.bipartite = false;
                    }
                }
            }
        }
    } else {
        for (const auto& [a, b] : g.edges)
            if (m.sort_index(a) == m.sort_index(b)) out.bipartite = false;
    }

    // shortest cycle via BFS from every vertex
    int best = -1;
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
                } else if (parent.count(x) == 0 || parent[x] != y) {
                    if (parent.count(y) && parent[y] == x) continue;
                    int cycle = dist[x] + dist[y] + 1;
                    if (best < 0 || cycle < best) best = cycle;
                }
            }
        }
    }
    if (best >= 0) out.girth = best;
    return out;
}

bool trivial_over(const Structure& m, const IdList& base, const ElementId& c) {
    check_subset(m, base);
    if (!m.has_element(c)) throw Error("unknown element id '" + c + "'");
    std::set<ElementId> a(base.begin(), base.end());
    auto g = gaifman_graph(m, GaifmanFilter::Full);
    for (const auto& [x, y] : g.edges) {
        if (x == c && a.count(y)) return false;
        if (y == c && a.count(x)) return false;
    }
    return true;
}

namespace {

// Backtracking search over images of ext\base in m, sort- and
// relation-exact at every step; records distinct image sets.
struct CopyCounter {
    const Structure& m;
    const Structure& ext;
    CopyCounter(const Structure& m_, const Structure& ext_) : m(m_), ext(ext_) {}
    std::vector<ElementId> fresh; // ext \ base
    std::set<ElementId> base_set;
    std::map<ElementId, ElementId> assign;
    std::set<ElementId> used;
    std::set<std::vector<ElementId>> images;
    bool stop_at_first = false;
    bool found = false;

    bool pair_consistent(const ElementId& x, const ElementId& fx, const ElementId& y,
                         const ElementId& fy) const {
        if (ext.incident_pair(x, y) != m.incident_pair(fx, fy)) return false;
        if (ext.kind().cls == GeometryClass::Affine &&
            ext.parallel_pair(x, y) != m.parallel_pair(fx, fy))
            return false;
        return true;
    }

    ElementId image_of(const ElementId& x) const {
        if (base_set.count(x)) return x;
        auto it = assign.find(x);
        return it == assign.end() ? ElementId{} : it->second;
    }

    bool tangency_consistent() const {
        if (ext.kind().cls != GeometryClass::Moebius) return true;
        // both directions, over fully assigned triples
        for (const auto& t : ext.tangencies()) {
            ElementId a = image_of(t[0]), b = image_of(t[1]), p = image_of(t[2]);
            if (a.empty() || b.empty() || p.empty()) continue;
            if (!m.tangent_at(a, b, p)) return false;
        }
        std::map<ElementId, ElementId> back; // image -> preimage
        for (const auto& [x, fx] : assign) back[fx] = x;
        for (const auto& id : base_set) back[id] = id;
        for (const auto& t : m.tangencies()) {
            auto a = back.find(t[0]), b = back.find(t[1]), p = back.find(t[2]);
            if (a == back.end() || b == back.end() || p == back.end()) continue;
            if (!ext.tangent_at(a->second, b->second, p->second)) return false;
        }
        return true;
    }

    void search(std::size_t i) {
        if (stop_at_first && found) return;
        if (i == fresh.size()) {
            if (!tangency_consistent()) return;
            std::vector<ElementId> image;
            for (const auto& x : fresh) image.push_back(assign.at(x));
            std::sort(image.begin(), image.end());
            images.insert(image);
            found = true;
            return;
        }
        const ElementId& x = fresh[i];
        for (const auto& cand : m.element_ids()) {
            if (base_set.count(cand) || used.count(cand)) continue;
            if (m.sort_index(cand) != ext.sort_index(x)) continue;
            if (ext.kind().cls == GeometryClass::Net) {
                auto cx = ext.line_class(x), cc = m.line_class(cand);
                if (cx != cc) continue;
            }
            bool ok = true;
            for (const auto& b : base_set)
                if (!pair_consistent(x, cand, b, b)) { ok = false; break; }
            if (ok)
                for (std::size_t j = 0; j < i; ++j)
                    if (!pair_consistent(x, cand, fresh[j], assign.at(fresh[j]))) { ok = false; break; }
            if (!ok) continue;
            assign[x] = cand;
            used.insert(cand);
            search(i + 1);
            used.erase(cand);
            assign.erase(x);
            if (stop_at_first && found) return;
        }
    }
};

} // namespace

long count_copies_over(const Structure& m, const IdList& base, const Structure& ext) {
    check_subset(m, base);
    if (ext.kind() != m.kind()) throw Error("count_copies_over: kind mismatch");
    for (const auto& id : base) {
        if (!ext.has_element(id)) throw Error("base not embedded in ext: missing '" + id + "'");
        if (ext.sort_index(id) != m.sort_index(id)) throw Error("base sort mismatch at '" + id + "'");
    }
    if (induced_substructure(ext, base) != induced_substructure(m, base))
        throw Error("base not embedded identically in M and ext");

    CopyCounter counter{m, ext};
    counter.base_set = std::set<ElementId>(base.begin(), base.end());
    for (const auto& id : ext.element_ids())
        if (!counter.base_set.count(id)) counter.fresh.push_back(id);
    counter.search(0);
    return static_cast<long>(counter.images.size());
}

bool isomorphic(const Structure& a, const Structure& b) {
    if (a.kind() != b.kind() || a.size() != b.size()) return false;
    CopyCounter counter{a, b};
    counter.fresh = b.element_ids();
    counter.stop_at_first = true;
    counter.search(0);
    return counter.found;
}

IdList id_union(const IdList& a, const IdList& b) {
    std::set<ElementId> s(a.begin(), a.end());
    s.insert(b.begin(), b.end());
    return IdList(s.begin(), s.end());
}

IdList id_difference(const IdList& all, const IdList& minus) {
    std::set<ElementId> drop(minus.begin(), minus.end());
    IdList out;
    for (const auto& id : all)
        if (!drop.count(id)) out.push_back(id);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace incidence
