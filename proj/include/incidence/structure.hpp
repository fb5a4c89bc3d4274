#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace incidence {

using ElementId = std::string;
using IdList = std::vector<ElementId>;

/// Operational failure (bad arguments, unknown ids, bound exceeded).
/// Mathematical "false" answers are return values, never exceptions.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class GeometryClass { Projective, Ngon, Steiner, Net, Affine, Moebius, Graph };

/// One of the seven geometry classes plus its parameters.
struct GeometryKind {
    GeometryClass cls = GeometryClass::Projective;
    int k = 0;
    int n = 0;
    int multiplicity = 3; // per-rule-instance copies for graph completions

    static GeometryKind projective();
    static GeometryKind ngon(int n);
    static GeometryKind steiner(int k, int n);
    static GeometryKind net(int k);
    static GeometryKind affine();
    static GeometryKind moebius();
    static GeometryKind graph(int n, int multiplicity = 3);

    /// n for ngon kinds; projective counts as a 3-gon.
    int gon_order() const;
    bool is_gon() const { return cls == GeometryClass::Projective || cls == GeometryClass::Ngon; }
    /// Sorts of the kind, index order is the canonical one (point first).
    std::vector<std::string> sort_names() const;
    std::string class_token() const;

    bool operator==(const GeometryKind& o) const;
    bool operator!=(const GeometryKind& o) const { return !(*this == o); }
};

GeometryKind kind_from_token(const std::string& token, std::map<std::string, int> params);

struct Violation {
    std::string axiom;
    std::string message;
    IdList ids;
};

/// A finite multi-sorted relational structure of one geometry kind.
/// Elements carry opaque string ids; all deterministic orderings are
/// lexicographic over ids. Incidence is stored symmetrically; local
/// equivalence tuples (parallelism, tangency) are stored as given and
/// checked, not closed, by validation.
class Structure {
public:
    Structure() = default;
    explicit Structure(GeometryKind kind) : kind_(kind) {}

    const GeometryKind& kind() const { return kind_; }

    void add_element(const ElementId& id, const std::string& sort);
    void add_incidence(const ElementId& a, const ElementId& b);
    void add_parallel(const ElementId& a, const ElementId& b);
    void add_tangency(const ElementId& b0, const ElementId& b1, const ElementId& p);
    void set_line_class(const ElementId& line, int cls);

    /// Transitively/symmetrically close parallelism and per-point tangency.
    /// Constructions emit closed relations; parsing does not call this.
    void close_local_equivalences();

    bool has_element(const ElementId& id) const { return sorts_.count(id) != 0; }
    std::size_t size() const { return sorts_.size(); }
    bool empty() const { return sorts_.empty(); }

    int sort_index(const ElementId& id) const;
    const std::string& sort_name(const ElementId& id) const;

    IdList element_ids() const; // lexicographically sorted
    IdList elements_of_sort(int sort) const;

    const std::set<ElementId>& incident(const ElementId& id) const;
    bool incident_pair(const ElementId& a, const ElementId& b) const;
    const std::set<std::pair<ElementId, ElementId>>& incidences() const { return inc_pairs_; }

    const std::set<ElementId>& parallels(const ElementId& id) const;
    bool parallel_pair(const ElementId& a, const ElementId& b) const;

    /// Tangency triples normalized as (min block, max block, point).
    const std::set<std::array<ElementId, 3>>& tangencies() const { return tan_; }
    bool tangent_at(const ElementId& a, const ElementId& b, const ElementId& p) const;
    bool tangent(const ElementId& a, const ElementId& b) const;

    std::optional<int> line_class(const ElementId& line) const;
    const std::map<ElementId, int>& line_classes() const { return net_cls_; }

    bool operator==(const Structure& o) const;

private:
    GeometryKind kind_;
    std::map<ElementId, int> sorts_;
    std::map<ElementId, std::set<ElementId>> inc_;
    std::set<std::pair<ElementId, ElementId>> inc_pairs_; // normalized (sort0 first / lex for graphs)
    std::map<ElementId, std::set<ElementId>> par_;
    std::set<std::array<ElementId, 3>> tan_;
    std::map<ElementId, int> net_cls_;

    void require_element(const ElementId& id) const;
};

struct GaifmanGraph {
    enum class Filter { Full, Incidence, Parallelism };
    Filter filter = Filter::Full;
    IdList vertices;
    std::set<std::pair<ElementId, ElementId>> edges; // lex-normalized pairs
};

using GaifmanFilter = GaifmanGraph::Filter;

/// Restriction of M to the given elements: keeps every tuple whose
/// arguments all lie inside; kind and net classes preserved.
Structure induced_substructure(const Structure& m, const IdList& members);

GaifmanGraph gaifman_graph(const Structure& m, GaifmanFilter filter);

/// Shortest-path distance between the sets in the filtered Gaifman graph,
/// minimized over pairs; nullopt means infinity, 0 means the sets meet.
std::optional<int> distance(const Structure& m, const IdList& xs, const IdList& ys,
                            GaifmanFilter filter = GaifmanFilter::Full);

struct GirthBipartite {
    std::optional<int> girth; // nullopt: acyclic
    bool bipartite = true;
};

/// Girth and bipartiteness of the incidence Gaifman graph.
GirthBipartite girth_and_bipartite(const Structure& m);

/// Whether (base, base+c) is a trivial extension: c has no edge into base
/// in the full Gaifman graph.
bool trivial_over(const Structure& m, const IdList& base, const ElementId& c);

/// Number of distinct embeddings of `ext` into `m` fixing the shared part
/// `base` pointwise, counted up to image-set equality.
long count_copies_over(const Structure& m, const IdList& base, const Structure& ext);

bool isomorphic(const Structure& a, const Structure& b);

/// Validate the id list against M: all present, no duplicates.
void check_subset(const Structure& m, const IdList& members);

/// set-style helpers returning lexicographically sorted id lists
IdList id_union(const IdList& a, const IdList& b);
IdList id_difference(const IdList& all, const IdList& minus);

} // namespace incidence
