#pragma once

// Internal index/bitmask view of a Structure for the peeling, oracle and
// verification loops. Element indices follow the lexicographic id order, so
// index comparisons realize every deterministic tie-break.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "incidence/structure.hpp"

namespace incidence::detail {

struct Bits {
    std::vector<std::uint64_t> w;

    explicit Bits(std::size_t nbits = 0) : w((nbits + 63) / 64, 0) {}
    void set(int i) { w[static_cast<std::size_t>(i) >> 6] |= 1ULL << (i & 63); }
    void reset(int i) { w[static_cast<std::size_t>(i) >> 6] &= ~(1ULL << (i & 63)); }
    bool test(int i) const { return (w[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1; }
    bool any() const {
        for (auto x : w)
            if (x) return true;
        return false;
    }
    bool none() const { return !any(); }
    int count() const {
        int c = 0;
        for (auto x : w) c += __builtin_popcountll(x);
        return c;
    }
    Bits operator|(const Bits& o) const {
        Bits r = *this;
        for (std::size_t i = 0; i < w.size(); ++i) r.w[i] |= o.w[i];
        return r;
    }
    Bits operator&(const Bits& o) const {
        Bits r = *this;
        for (std::size_t i = 0; i < w.size(); ++i) r.w[i] &= o.w[i];
        return r;
    }
    Bits and_not(const Bits& o) const {
        Bits r = *this;
        for (std::size_t i = 0; i < w.size(); ++i) r.w[i] &= ~o.w[i];
        return r;
    }
    bool operator==(const Bits& o) const { return w == o.w; }
    bool subset_of(const Bits& o) const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~o.w[i]) return false;
        return true;
    }
    int count_and(const Bits& o) const {
        int c = 0;
        for (std::size_t i = 0; i < w.size(); ++i) c += __builtin_popcountll(w[i] & o.w[i]);
        return c;
    }
    template <typename F>
    void for_each(F f) const {
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::uint64_t x = w[i];
            while (x) {
                int b = __builtin_ctzll(x);
                f(static_cast<int>(i * 64 + static_cast<std::size_t>(b)));
                x &= x - 1;
            }
        }
    }
};

struct DenseView {
    const Structure* s = nullptr;
    GeometryKind kind;
    int m = 0;
    std::vector<ElementId> ids; // index -> id, lex order
    std::map<ElementId, int> index;
    std::vector<int> sort_of;
    std::vector<Bits> adj; // incidence
    std::vector<Bits> par; // affine parallels
    std::vector<std::vector<std::pair<int, int>>> tan_at; // block -> (mate, point)
    std::vector<int> net_cls;

    explicit DenseView(const Structure& st) : s(&st), kind(st.kind()) {
        ids = st.element_ids();
        m = static_cast<int>(ids.size());
        for (int i = 0; i < m; ++i) index[ids[i]] = i;
        sort_of.resize(static_cast<std::size_t>(m));
        adj.assign(static_cast<std::size_t>(m), Bits(static_cast<std::size_t>(m)));
        par.assign(static_cast<std::size_t>(m), Bits(static_cast<std::size_t>(m)));
        tan_at.resize(static_cast<std::size_t>(m));
        net_cls.assign(static_cast<std::size_t>(m), -1);
        for (int i = 0; i < m; ++i) {
            sort_of[static_cast<std::size_t>(i)] = st.sort_index(ids[static_cast<std::size_t>(i)]);
            for (const auto& nb : st.incident(ids[static_cast<std::size_t>(i)]))
                adj[static_cast<std::size_t>(i)].set(index.at(nb));
            for (const auto& nb : st.parallels(ids[static_cast<std::size_t>(i)]))
                par[static_cast<std::size_t>(i)].set(index.at(nb));
            if (auto c = st.line_class(ids[static_cast<std::size_t>(i)]))
                net_cls[static_cast<std::size_t>(i)] = *c;
        }
        for (const auto& t : st.tangencies()) {
            int a = index.at(t[0]), b = index.at(t[1]), p = index.at(t[2]);
            tan_at[static_cast<std::size_t>(a)].push_back({b, p});
            tan_at[static_cast<std::size_t>(b)].push_back({a, p});
        }
        for (auto& v : tan_at) std::sort(v.begin(), v.end());
    }

    Bits mask_of(const IdList& list) const {
        Bits b(static_cast<std::size_t>(m));
        for (const auto& id : list) b.set(index.at(id));
        return b;
    }
    Bits full_mask() const {
        Bits b(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) b.set(i);
        return b;
    }
    IdList ids_of(const Bits& b) const {
        IdList out;
        b.for_each([&](int i) { out.push_back(ids[static_cast<std::size_t>(i)]); });
        return out;
    }

    int inc_count(int v, const Bits& ambient) const {
        return adj[static_cast<std::size_t>(v)].count_and(ambient);
    }

    // Moebius theta within the ambient set: incidences plus distinct
    // tangency pencils (tangency points) visible there. Points take T = 0.
    int theta(int v, const Bits& ambient) const {
        int t = inc_count(v, ambient);
        if (sort_of[static_cast<std::size_t>(v)] == 1 && kind.cls == GeometryClass::Moebius) {
            int last_point = -1;
            std::vector<int> points;
            for (const auto& [mate, p] : tan_at[static_cast<std::size_t>(v)])
                if (ambient.test(mate) && ambient.test(p)) points.push_back(p);
            std::sort(points.begin(), points.end());
            for (int p : points)
                if (p != last_point) {
                    ++t;
                    last_point = p;
                }
        }
        return t;
    }

    // Singleton hyperfree rule of the kind (loose end only for n-gons).
    bool elem_hyperfree(int v, const Bits& ambient) const {
        int deg = inc_count(v, ambient);
        int sort = sort_of[static_cast<std::size_t>(v)];
        switch (kind.cls) {
            case GeometryClass::Steiner: return sort == 0 ? deg <= 1 : deg <= kind.k;
            case GeometryClass::Net: return sort == 0 ? deg <= 2 : deg <= 1;
            case GeometryClass::Affine:
                if (sort == 0) return deg <= 2;
                if (deg <= 1) return true;
                if (deg == 2) {
                    Bits others = par[static_cast<std::size_t>(v)] & ambient;
                    others.reset(v);
                    return others.none();
                }
                return false;
            case GeometryClass::Moebius: return sort == 0 ? theta(v, ambient) <= 2 : theta(v, ambient) <= 3;
            case GeometryClass::Graph: return deg <= kind.n;
            case GeometryClass::Projective:
            case GeometryClass::Ngon: return deg <= 1; // loose end
        }
        return false;
    }
};

// Clean arcs of length gon-2 with every element in `candidates`, each
// incident to exactly two elements of `ambient`, consecutive ones incident.
// Canonical direction (lex-smaller end first), lex-sorted output.
inline std::vector<std::vector<int>> clean_arcs(const DenseView& dv, const Bits& ambient,
                                                const Bits& candidates) {
    std::vector<std::vector<int>> out;
    if (!dv.kind.is_gon()) return out;
    int len = dv.kind.gon_order() - 2;
    std::vector<int> two;
    for (int v = 0; v < dv.m; ++v)
        if (candidates.test(v) && ambient.test(v) && dv.inc_count(v, ambient) == 2) two.push_back(v);
    if (len == 1) {
        for (int v : two) out.push_back({v});
        return out;
    }
    Bits two_mask(static_cast<std::size_t>(dv.m));
    for (int v : two) two_mask.set(v);
    std::vector<int> chain;
    std::vector<char> in_chain(static_cast<std::size_t>(dv.m), 0);
    std::function<void(int)> extend = [&](int v) {
        chain.push_back(v);
        in_chain[static_cast<std::size_t>(v)] = 1;
        if (static_cast<int>(chain.size()) == len) {
            std::vector<int> rev(chain.rbegin(), chain.rend());
            out.push_back(std::min(chain, rev));
        } else {
            Bits next = dv.adj[static_cast<std::size_t>(v)] & two_mask;
            next.for_each([&](int w) {
                if (!in_chain[static_cast<std::size_t>(w)]) extend(w);
            });
        }
        in_chain[static_cast<std::size_t>(v)] = 0;
        chain.pop_back();
    };
    for (int v : two) extend(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// All hyperfree tuples with elements inside `candidates`, hyperfree w.r.t.
// `ambient`. Loose ends precede arcs for n-gon kinds; each group lex-sorted.
inline std::vector<std::vector<int>> hyperfree_tuples_dense(const DenseView& dv,
                                                            const Bits& ambient,
                                                            const Bits& candidates) {
    std::vector<std::vector<int>> out;
    for (int v = 0; v < dv.m; ++v)
        if (candidates.test(v) && dv.elem_hyperfree(v, ambient)) out.push_back({v});
    if (dv.kind.is_gon()) {
        auto arcs = clean_arcs(dv, ambient, candidates);
        out.insert(out.end(), arcs.begin(), arcs.end());
    }
    return out;
}

inline bool subset_has_hyperfree(const DenseView& dv, const Bits& base, const Bits& subset) {
    Bits ambient = base | subset;
    for (int v = 0; v < dv.m; ++v)
        if (subset.test(v) && dv.elem_hyperfree(v, ambient)) return true;
    if (dv.kind.is_gon() && !clean_arcs(dv, ambient, subset).empty()) return true;
    return false;
}

struct PeelResult {
    bool open = false;
    std::vector<std::vector<int>> removed; // removal order
    Bits stuck;                            // closed fixed point when !open

    PeelResult() : stuck(0) {}
};

// Greedy hyperfree peeling of `active` over `base`; order-independent in
// verdict and fixed point (the closed set is the unique maximal one).
inline PeelResult peel(const DenseView& dv, const Bits& base, Bits active) {
    PeelResult r;
    while (active.any()) {
        Bits ambient = base | active;
        auto tuples = hyperfree_tuples_dense(dv, ambient, active);
        if (tuples.empty()) {
            r.open = false;
            r.stuck = active;
            return r;
        }
        const auto& pick = tuples.front();
        for (int v : pick) active.reset(v);
        r.removed.push_back(pick);
    }
    r.open = true;
    return r;
}

inline bool strong_over(const DenseView& dv, const Bits& base, const Bits& ext) {
    return peel(dv, base, ext).open;
}

} // namespace incidence::detail
