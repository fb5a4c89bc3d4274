#include "incidence/openness.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "dense.hpp"

namespace incidence {

using detail::Bits;
using detail::DenseView;

IdList HFOrder::flat() const {
    IdList out;
    for (const auto& p : pieces) out.insert(out.end(), p.begin(), p.end());
    return out;
}

Certificate is_open_over(const Structure& b, const IdList& a) {
    check_subset(b, a);
    DenseView dv(b);
    Bits base = dv.mask_of(a);
    Bits active = dv.full_mask().and_not(base);

    auto res = detail::peel(dv, base, active);
    Certificate cert;
    if (res.open) {
        cert.verdict = Verdict::Open;
        for (auto it = res.removed.rbegin(); it != res.removed.rend(); ++it) {
            IdList piece;
            for (int v : *it) piece.push_back(dv.ids[static_cast<std::size_t>(v)]);
            cert.order.pieces.push_back(piece);
        }
    } else {
        cert.verdict = Verdict::Closed;
        cert.witness = dv.ids_of(res.stuck);
    }
    return cert;
}

std::optional<IdList> closed_witness_bruteforce(const Structure& b, const IdList& a,
                                                std::size_t bound) {
    check_subset(b, a);
    DenseView dv(b);
    Bits base = dv.mask_of(a);
    std::vector<int> rest;
    for (int v = 0; v < dv.m; ++v)
        if (!base.test(v)) rest.push_back(v);
    if (rest.size() > bound || rest.size() > 62)
        throw Error("closed_witness_bruteforce: size bound exceeded");

    for (std::uint64_t mask = 1; mask < (1ULL << rest.size()); ++mask) {
        Bits subset(static_cast<std::size_t>(dv.m));
        for (std::size_t i = 0; i < rest.size(); ++i)
            if (mask & (1ULL << i)) subset.set(rest[i]);
        if (!detail::subset_has_hyperfree(dv, base, subset)) return dv.ids_of(subset);
    }
    return std::nullopt;
}

VerifyResult verify_hf_order(const Structure& b, const IdList& a, const HFOrder& hf,
                             VerifyMode mode) {
    check_subset(b, a);
    DenseView dv(b);
    Bits base = dv.mask_of(a);

    // (H1): pieces partition B \ A, sizes within the kind's X_K
    std::set<ElementId> seen;
    std::size_t covered = 0;
    for (const auto& piece : hf.pieces) {
        if (piece.empty()) return {false, "empty partition piece"};
        std::size_t allowed_arc =
            b.kind().is_gon() ? static_cast<std::size_t>(b.kind().gon_order() - 2) : 1;
        if (piece.size() != 1 && piece.size() != allowed_arc)
            return {false, "piece size " + std::to_string(piece.size()) + " not in X_K"};
        for (const auto& id : piece) {
            if (!b.has_element(id)) return {false, "unknown element '" + id + "' in order"};
            if (base.test(dv.index.at(id))) return {false, "base element '" + id + "' in order"};
            if (!seen.insert(id).second) return {false, "duplicate element '" + id + "' in order"};
            ++covered;
        }
    }
    if (covered != static_cast<std::size_t>(dv.m) - static_cast<std::size_t>(base.count()))
        return {false, "order does not cover B minus A"};

    // (H2): every piece strong over the base plus (subsets of) predecessors
    std::vector<int> preds;
    for (const auto& piece : hf.pieces) {
        Bits piece_mask(static_cast<std::size_t>(dv.m));
        for (const auto& id : piece) piece_mask.set(dv.index.at(id));
        if (mode == VerifyMode::Fast) {
            Bits ctx = base;
            for (int v : preds) ctx.set(v);
            if (!detail::strong_over(dv, ctx, piece_mask))
                return {false, "piece {" + piece.front() + (piece.size() > 1 ? ",.." : "") +
                                   "} is not strong over its predecessors"};
        } else {
            if (preds.size() > 22) throw Error("verify_hf_order: exhaustive mode bound exceeded");
            for (std::uint64_t mask = 0; mask < (1ULL << preds.size()); ++mask) {
                Bits ctx = base;
                for (std::size_t i = 0; i < preds.size(); ++i)
                    if (mask & (1ULL << i)) ctx.set(preds[i]);
                if (!detail::strong_over(dv, ctx, piece_mask))
                    return {false, "piece {" + piece.front() + (piece.size() > 1 ? ",.." : "") +
                                       "} fails (H2) at a predecessor subset"};
            }
        }
        for (const auto& id : piece) preds.push_back(dv.index.at(id));
    }
    return {true, ""};
}

IdList gaifman_closure(const Structure& m, const IdList& a) {
    check_subset(m, a);
    std::set<ElementId> out(a.begin(), a.end());
    std::set<ElementId> base(a.begin(), a.end());

    for (const auto& id : a)
        for (const auto& nb : m.incident(id)) out.insert(nb);

    if (m.kind().cls == GeometryClass::Affine) {
        for (const auto& id : a) {
            if (m.sort_index(id) != 1) continue;
            ElementId least;
            for (const auto& mate : m.parallels(id))
                if (!base.count(mate) && (least.empty() || mate < least)) least = mate;
            if (!least.empty()) out.insert(least);
        }
    } else if (m.kind().cls == GeometryClass::Moebius) {
        // one representative per tangency pencil touching A
        std::map<std::pair<ElementId, ElementId>, ElementId> pick; // (block in A, point) -> rep
        for (const auto& t : m.tangencies()) {
            for (int side = 0; side < 2; ++side) {
                const ElementId& in = side == 0 ? t[0] : t[1];
                const ElementId& other = side == 0 ? t[1] : t[0];
                if (!base.count(in) || base.count(other)) continue;
                auto key = std::make_pair(in, t[2]);
                auto it = pick.find(key);
                if (it == pick.end() || other < it->second) pick[key] = other;
            }
        }
        for (const auto& [key, rep] : pick) out.insert(rep);
    }
    return IdList(out.begin(), out.end());
}

IdList hf_closure(const Structure& m, const IdList& base, const HFOrder& hf, const IdList& c) {
    check_subset(m, base);
    check_subset(m, c);
    IdList domain = hf.flat();
    std::map<ElementId, int> pos;
    std::map<ElementId, int> piece_of;
    for (std::size_t i = 0, p = 0; p < hf.pieces.size(); ++p)
        for (const auto& id : hf.pieces[p]) {
            pos[id] = static_cast<int>(i++);
            piece_of[id] = static_cast<int>(p);
        }
    for (const auto& id : base)
        if (pos.count(id)) throw Error("hf_closure: base element '" + id + "' inside the order");
    for (const auto& id : c)
        if (!pos.count(id)) throw Error("hf_closure: '" + id + "' is outside the order domain");

    auto hat = [&](const std::set<ElementId>& xs) {
        std::set<ElementId> out;
        for (const auto& id : xs)
            for (const auto& mate : hf.pieces[static_cast<std::size_t>(piece_of.at(id))])
                out.insert(mate);
        return out;
    };

    std::set<ElementId> s = hat(std::set<ElementId>(c.begin(), c.end()));
    while (true) {
        int maxpos = -1;
        for (const auto& id : s) maxpos = std::max(maxpos, pos.at(id));
        IdList down(base.begin(), base.end());
        for (const auto& id : domain)
            if (pos.at(id) <= maxpos) down.push_back(id);
        std::sort(down.begin(), down.end());
        down.erase(std::unique(down.begin(), down.end()), down.end());

        Structure ambient = induced_substructure(m, down);
        IdList g = gaifman_closure(ambient, IdList(s.begin(), s.end()));
        std::set<ElementId> next;
        for (const auto& id : g)
            if (pos.count(id)) next.insert(id);
        next = hat(next);
        if (next == s) break;
        s = next;
    }
    return IdList(s.begin(), s.end());
}

namespace {

// union of minimal closed extensions of `a` inside m (one application)
IdList icl_once(const Structure& m, const IdList& a, std::size_t bound) {
    DenseView dv(m);
    Bits base = dv.mask_of(a);
    std::vector<int> rest;
    for (int v = 0; v < dv.m; ++v)
        if (!base.test(v)) rest.push_back(v);
    if (rest.size() > bound || rest.size() > 62) throw Error("intrinsic_closure: bound exceeded");

    Bits acc(static_cast<std::size_t>(dv.m));
    for (std::uint64_t mask = 1; mask < (1ULL << rest.size()); ++mask) {
        Bits cand(static_cast<std::size_t>(dv.m));
        for (std::size_t i = 0; i < rest.size(); ++i)
            if (mask & (1ULL << i)) cand.set(rest[i]);
        if (detail::strong_over(dv, base, cand)) continue;
        bool minimal = true;
        for (std::size_t i = 0; i < rest.size() && minimal; ++i) {
            if (!(mask & (1ULL << i))) continue;
            Bits sub = cand;
            sub.reset(rest[i]);
            if (!detail::strong_over(dv, base, sub)) minimal = false;
        }
        if (minimal) acc = acc | cand;
    }
    IdList out(a.begin(), a.end());
    acc.for_each([&](int v) { out.push_back(dv.ids[static_cast<std::size_t>(v)]); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

IntrinsicClosure intrinsic_closure(const Structure& m, const IdList& a, std::size_t bound) {
    check_subset(m, a);
    IntrinsicClosure out;
    out.one_shot = icl_once(m, a, bound);
    IdList cur = out.one_shot;
    while (true) {
        IdList next = icl_once(m, cur, bound);
        if (next == cur) break;
        cur = next;
    }
    out.fixed_point = cur;
    return out;
}

} // namespace incidence
