#include "incidence/construction.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "dense.hpp"
#include "incidence/geometry.hpp"

namespace incidence {

namespace {

void require_same_shared(const Structure& b, const Structure& c, const IdList& shared) {
    if (b.kind() != c.kind()) throw Error("free_amalgam: kind mismatch");
    check_subset(b, shared);
    check_subset(c, shared);
    std::set<ElementId> a(shared.begin(), shared.end());
    for (const auto& id : shared)
        if (b.sort_index(id) != c.sort_index(id))
            throw Error("free_amalgam: sort mismatch at '" + id + "'");
    for (const auto& id : c.element_ids())
        if (!a.count(id) && b.has_element(id))
            throw Error("free_amalgam: id collision outside A at '" + id + "'");
    if (induced_substructure(b, shared) != induced_substructure(c, shared))
        throw Error("free_amalgam: A is not embedded identically in both sides");
}

} // namespace

Structure free_amalgam(const AmalgamSpec& spec) {
    require_same_shared(spec.b, spec.c, spec.shared);
    std::set<ElementId> a(spec.shared.begin(), spec.shared.end());

    Structure out(spec.b.kind());
    for (const auto& id : spec.b.element_ids()) out.add_element(id, spec.b.sort_name(id));
    for (const auto& id : spec.c.element_ids())
        if (!a.count(id)) out.add_element(id, spec.c.sort_name(id));

    for (const auto& [x, y] : spec.b.incidences()) out.add_incidence(x, y);
    for (const auto& [x, y] : spec.c.incidences())
        if (!out.incident_pair(x, y)) out.add_incidence(x, y);

    for (const auto& [line, cls] : spec.b.line_classes()) out.set_line_class(line, cls);
    for (const auto& [line, cls] : spec.c.line_classes()) out.set_line_class(line, cls);

    if (out.kind().cls == GeometryClass::Affine) {
        auto copy_pars = [&out](const Structure& side) {
            for (const auto& id : side.element_ids())
                for (const auto& mate : side.parallels(id))
                    if (id < mate && !out.parallel_pair(id, mate)) out.add_parallel(id, mate);
        };
        copy_pars(spec.b);
        copy_pars(spec.c);
        // clause (iii): one step through a shared line
        for (const auto& mid : spec.shared) {
            if (out.sort_index(mid) != 1) continue;
            for (const auto& x : spec.b.parallels(mid))
                for (const auto& y : spec.c.parallels(mid))
                    if (x != y && !out.parallel_pair(x, y)) out.add_parallel(x, y);
        }
    } else if (out.kind().cls == GeometryClass::Moebius) {
        for (const auto& t : spec.b.tangencies()) out.add_tangency(t[0], t[1], t[2]);
        for (const auto& t : spec.c.tangencies())
            if (!out.tangent_at(t[0], t[1], t[2])) out.add_tangency(t[0], t[1], t[2]);
        for (const auto& mid : spec.shared) {
            if (out.sort_index(mid) != 1) continue;
            for (const auto& p : spec.shared) {
                if (out.sort_index(p) != 0) continue;
                IdList bs, cs;
                for (const auto& x : spec.b.element_ids())
                    if (out.sort_index(x) == 1 && x != mid && spec.b.has_element(x) &&
                        spec.b.tangent_at(mid, x, p))
                        bs.push_back(x);
                for (const auto& x : spec.c.element_ids())
                    if (out.sort_index(x) == 1 && x != mid && spec.c.has_element(x) &&
                        spec.c.tangent_at(mid, x, p))
                        cs.push_back(x);
                for (const auto& x : bs)
                    for (const auto& y : cs)
                        if (x != y && !out.tangent_at(x, y, p)) out.add_tangency(x, y, p);
            }
        }
    }
    return out;
}

namespace {

// Deterministic fresh-name helper for completion stages.
struct Namer {
    const Structure* s;
    ElementId fresh(const std::string& rule, int stage, int instance, int sub, bool multi) {
        std::string name = rule + std::to_string(stage) + "_" + std::to_string(instance + 1);
        if (multi) name += "_" + std::to_string(sub + 1);
        while (s->has_element(name)) name += "x";
        return name;
    }
};

// one rule instance: sorted key for deterministic order, application thunk
struct Instance {
    std::vector<ElementId> key;
    std::function<void()> apply;
    bool operator<(const Instance& o) const { return key < o.key; }
};

struct StageContext {
    Structure& cur;
    CompletionStage& out;
    std::size_t cap;
    int stage;
    bool& done;

    bool add(const ElementId& id, const std::string& sort, const std::string& rule,
             const IdList& parents) {
        if (cur.size() >= cap) {
            out.truncated = true;
            done = true;
            return false;
        }
        cur.add_element(id, sort);
        out.provenance[id] = Provenance{stage, rule, parents};
        out.added_per_stage.back()++;
        return true;
    }
};

template <typename F>
void combinations(const IdList& pool, int choose, F f) {
    std::vector<int> idx(static_cast<std::size_t>(choose));
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == choose) {
            IdList combo;
            for (int i : idx) combo.push_back(pool[static_cast<std::size_t>(i)]);
            f(combo);
            return;
        }
        for (int i = start; i < static_cast<int>(pool.size()); ++i) {
            idx[static_cast<std::size_t>(depth)] = i;
            rec(i + 1, depth + 1);
        }
    };
    if (choose == 0) {
        f(IdList{});
        return;
    }
    rec(0, 0);
}

std::vector<Instance> steiner_block_stage(const Structure& snap, StageContext& ctx) {
    std::vector<Instance> out;
    int k = snap.kind().k;
    auto points = snap.elements_of_sort(0);
    combinations(points, k, [&](const IdList& combo) {
        // skip k-sets already joined by a block
        for (const auto& bl : snap.incident(combo.front())) {
            bool all = true;
            for (const auto& p : combo)
                if (!snap.incident_pair(p, bl)) { all = false; break; }
            if (all) return;
        }
        out.push_back({combo, {}});
    });
    int i = 0;
    for (auto& inst : out) {
        int my = i++;
        IdList combo = inst.key;
        inst.apply = [&ctx, combo, my]() {
            Namer nm{&ctx.cur};
            ElementId id = nm.fresh("block", ctx.stage, my, 0, false);
            if (!ctx.add(id, "block", "block", combo)) return;
            for (const auto& p : combo) ctx.cur.add_incidence(p, id);
        };
    }
    return out;
}

std::vector<Instance> steiner_point_stage(const Structure& snap, StageContext& ctx) {
    std::vector<Instance> out;
    int n = snap.kind().n;
    int i = 0;
    for (const auto& bl : snap.elements_of_sort(1)) {
        int deficit = n - static_cast<int>(snap.incident(bl).size());
        if (deficit <= 0) continue;
        int my = i++;
        out.push_back({{bl}, [&ctx, bl, deficit, my]() {
                           Namer nm{&ctx.cur};
                           for (int j = 0; j < deficit; ++j) {
                               ElementId id = nm.fresh("point", ctx.stage, my, j, true);
                               if (!ctx.add(id, "point", "point", {bl})) return;
                               ctx.cur.add_incidence(id, bl);
                           }
                       }});
    }
    return out;
}

std::vector<Instance> gon_arc_stage(const Structure& snap, StageContext& ctx) {
    std::vector<Instance> out;
    int n = snap.kind().gon_order();
    auto ids = snap.element_ids();
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            auto d = distance(snap, {ids[i]}, {ids[j]}, GaifmanFilter::Incidence);
            bool fire = false;
            if (d && *d == n + 1) fire = true;
            if (!d) {
                bool same = snap.sort_index(ids[i]) == snap.sort_index(ids[j]);
                fire = (n % 2 == 1) ? same : !same;
            }
            if (fire) out.push_back({{ids[i], ids[j]}, {}});
        }
    int c = 0;
    for (auto& inst : out) {
        int my = c++;
        ElementId a = inst.key[0], b = inst.key[1];
        inst.apply = [&ctx, a, b, my, n]() {
            Namer nm{&ctx.cur};
            ElementId prev = a;
            int sort_prev = ctx.cur.sort_index(a);
            for (int j = 0; j < n - 2; ++j) {
                ElementId id = nm.fresh("arc", ctx.stage, my, j, true);
                int sort = 1 - sort_prev;
                if (!ctx.add(id, sort == 0 ? "point" : "line", "arc", {a, b})) return;
                ctx.cur.add_incidence(prev, id);
                prev = id;
                sort_prev = sort;
            }
            ctx.cur.add_incidence(prev, b);
        };
    }
    return out;
}

std::vector<Instance> net_point_stage(const Structure& snap, StageContext& ctx) {
    std::vector<Instance> out;
    auto lines = snap.elements_of_sort(1);
    int c = 0;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            auto ci = snap.line_class(lines[i]), cj = snap.line_class(lines[j]);
            if (!ci || !cj || *ci == *cj) continue;
            bool meet = false;
            for (const auto& p : snap.incident(lines[i]))
                if (snap.incident_pair(p, lines[j])) { meet = true; break; }
            if (meet) continue;
            ElementId a = lines[i], b = lines[j];
            int my = c++;
            out.push_back({{a, b}, [&ctx, a, b, my]() {
                               Namer nm{&ctx.cur};
                               ElementId id = nm.fresh("point", ctx.stage, my, 0, false);
                               if (!ctx.add(id, "point", "point", {a, b})) return;
                               ctx.cur.add_incidence(id, a);
                               ctx.cur.add_incidence(id, b);
                           }});
        }
    return out;
}

std::vector<Instance> net_line_stage(const Structure& snap, StageContext& ctx) {
    std::vector<Instance> out;
    int k = snap.kind().k;
    int c = 0;
    for (const auto& p : snap.elements_of_sort(0)) {
        std::set<int> present;
        for (const auto& l : snap.incident(p))
            if (auto cl = snap.line_class(l)) present.insert(*cl);
        for (int cls = 0; cls < k; ++cls) {
            if (present.count(cls)) continue;
            int my = c++;
            out.push_back({{p, "P" + std::to_string(cls)}, [&ctx, p, cls, my]() {
                               Namer nm{&ctx.cur};
                               ElementId id = nm.fresh("line", ctx.stage, my, 0, false);
                               if (!ctx.add(id, "line", "line", {p})) return;
                               ctx.cur.add_incidence(p, id);
                               ctx.cur.set_line_class(id, cls);
                           }});
        }
    }
    return out;
}

std::vector<Instance> affine_join_stage(const Structure& snap, StageContext& ctx) {
    std::vector<Instance> out;
    auto points = snap.elements_of_sort(0);
    int c = 0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            bool joined = false;
            for (const auto& l : snap.incident(points[i]))
                if (snap.incident_pair(points[j], l)) { joined = true; break; }
            if (joined) continue;
            ElementId a = points[i], b = points[j];
            int my = c++;
            out.push_back({{a, b}, [&ctx, a, b, my]() {
                               Namer nm{&ctx.cur};
                               ElementId id = nm.fresh("join", ctx.stage, my, 0, false);
                               if (!ctx.add(id, "line", "join", {a, b})) return;
                               ctx.cur.add_incidence(a, id);
                               ctx.cur.add_incidence(b, id);
                           }});
        }
    return out;
}

std::vector<Instance> affine_meet_stage(const Structure& snap, StageContext& ctx) {
    std::vector<Instance> out;
    auto lines = snap.elements_of_sort(1);
    int c = 0;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            if (snap.parallel_pair(lines[i], lines[j])) continue;
            bool meet = false;
            for (const auto& p : snap.incident(lines[i]))
                if (snap.incident_pair(p, lines[j])) { meet = true; break; }
            if (meet) continue;
            ElementId a = lines[i], b = lines[j];
            int my = c++;
            out.push_back({{a, b}, [&ctx, a, b, my]() {
                               Namer nm{&ctx.cur};
                               ElementId id = nm.fresh("meet", ctx.stage, my, 0, false);
                               if (!ctx.add(id, "point", "meet", {a, b})) return;
                               ctx.cur.add_incidence(id, a);
                               ctx.cur.add_incidence(id, b);
                           }});
        }
    return out;
}

std::vector<Instance> affine_parallel_stage(const Structure& snap, StageContext& ctx) {
    std::vector<Instance> out;
    // one representative per parallelism class: the lexicographically least
    std::set<ElementId> reps;
    for (const auto& l : snap.elements_of_sort(1)) {
        ElementId least = l;
        for (const auto& mate : snap.parallels(l)) least = std::min(least, mate);
        reps.insert(least);
    }
    int c = 0;
    for (const auto& rep : reps) {
        std::set<ElementId> cls{rep};
        for (const auto& mate : snap.parallels(rep)) cls.insert(mate);
        for (const auto& p : snap.elements_of_sort(0)) {
            bool covered = false;
            for (const auto& l : cls)
                if (snap.incident_pair(p, l)) { covered = true; break; }
            if (covered) continue;
            IdList cls_list(cls.begin(), cls.end());
            int my = c++;
            out.push_back({{rep, p}, [&ctx, rep, p, cls_list, my]() {
                               Namer nm{&ctx.cur};
                               ElementId id = nm.fresh("parallel", ctx.stage, my, 0, false);
                               if (!ctx.add(id, "line", "parallel", {rep, p})) return;
                               ctx.cur.add_incidence(p, id);
                               for (const auto& l : cls_list)
                                   if (ctx.cur.has_element(l)) ctx.cur.add_parallel(id, l);
                           }});
        }
    }
    return out;
}

std::vector<Instance> moebius_block_stage(const Structure& snap, StageContext& ctx) {
    std::vector<Instance> out;
    auto points = snap.elements_of_sort(0);
    int c = 0;
    combinations(points, 3, [&](const IdList& combo) {
        for (const auto& bl : snap.incident(combo.front())) {
            bool all = true;
            for (const auto& p : combo)
                if (!snap.incident_pair(p, bl)) { all = false; break; }
            if (all) return;
        }
        out.push_back({combo, {}});
    });
    for (auto& inst : out) {
        int my = c++;
        IdList combo = inst.key;
        inst.apply = [&ctx, combo, my]() {
            Namer nm{&ctx.cur};
            ElementId id = nm.fresh("block", ctx.stage, my, 0, false);
            if (!ctx.add(id, "block", "block", combo)) return;
            for (const auto& p : combo) ctx.cur.add_incidence(p, id);
        };
    }
    return out;
}

std::vector<Instance> moebius_touch_stage(const Structure& snap, StageContext& ctx) {
    std::vector<Instance> out;
    int c = 0;
    for (const auto& p : snap.elements_of_sort(0)) {
        // tangency pencils at p: classes of blocks through p under rho(.,.,p)
        std::map<ElementId, ElementId> rep; // block -> pencil representative
        IdList through;
        for (const auto& bl : snap.incident(p))
            if (snap.sort_index(bl) == 1) through.push_back(bl);
        for (const auto& bl : through) rep[bl] = bl;
        for (const auto& x : through)
            for (const auto& y : through)
                if (x < y && snap.tangent_at(x, y, p)) {
                    ElementId r = std::min(rep[x], rep[y]);
                    ElementId rx = rep[x], ry = rep[y];
                    for (auto& [k2, v] : rep)
                        if (v == rx || v == ry) v = r;
                }
        std::set<ElementId> pencil_reps;
        for (const auto& [bl, r] : rep) pencil_reps.insert(r);
        for (const auto& r : pencil_reps) {
            IdList pencil;
            for (const auto& [bl, rr] : rep)
                if (rr == r) pencil.push_back(bl);
            for (const auto& q : snap.elements_of_sort(0)) {
                if (q == p) continue;
                // unique touching block through q exists already?
                bool exists = false;
                for (const auto& bl : pencil)
                    if (snap.incident_pair(q, bl)) { exists = true; break; }
                if (exists) continue;
                int my = c++;
                out.push_back({{p, r, q}, [&ctx, p, r, q, pencil, my]() {
                                   Namer nm{&ctx.cur};
                                   ElementId id = nm.fresh("touch", ctx.stage, my, 0, false);
                                   if (!ctx.add(id, "block", "touch", {p, r, q})) return;
                                   ctx.cur.add_incidence(p, id);
                                   ctx.cur.add_incidence(q, id);
                                   for (const auto& bl : pencil)
                                       if (ctx.cur.has_element(bl)) ctx.cur.add_tangency(id, bl, p);
                               }});
            }
        }
    }
    return out;
}

std::vector<Instance> moebius_meet_stage(const Structure& snap, StageContext& ctx, bool pairs_disjoint) {
    std::vector<Instance> out;
    auto blocks = snap.elements_of_sort(1);
    int c = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            if (snap.tangent(blocks[i], blocks[j])) continue;
            int shared = 0;
            for (const auto& p : snap.incident(blocks[i]))
                if (snap.incident_pair(p, blocks[j])) ++shared;
            if (pairs_disjoint ? shared != 0 : shared != 1) continue;
            ElementId a = blocks[i], b = blocks[j];
            int missing = pairs_disjoint ? 2 : 1;
            std::string rule = pairs_disjoint ? "meet2" : "meet";
            int my = c++;
            out.push_back({{a, b}, [&ctx, a, b, missing, rule, my]() {
                               Namer nm{&ctx.cur};
                               for (int s = 0; s < missing; ++s) {
                                   ElementId id = nm.fresh(rule, ctx.stage, my, s, missing > 1);
                                   if (!ctx.add(id, "point", rule, {a, b})) return;
                                   ctx.cur.add_incidence(id, a);
                                   ctx.cur.add_incidence(id, b);
                               }
                           }});
        }
    return out;
}

std::vector<Instance> graph_attach_stage(const Structure& snap, StageContext& ctx,
                                         int multiplicity) {
    std::vector<Instance> out;
    int n = snap.kind().n;
    auto verts = snap.element_ids();
    if (n > static_cast<int>(verts.size())) return out;
    int c = 0;
    combinations(verts, n, [&](const IdList& combo) {
        int my = c++;
        out.push_back({combo, [&ctx, combo, multiplicity, my]() {
                           Namer nm{&ctx.cur};
                           for (int s = 0; s < multiplicity; ++s) {
                               ElementId id = nm.fresh("attach", ctx.stage, my, s, true);
                               if (!ctx.add(id, "vertex", "attach", combo)) return;
                               for (const auto& v : combo) ctx.cur.add_incidence(id, v);
                           }
                       }});
    });
    return out;
}

} // namespace

CompletionStage free_completion(const Structure& seed, int stages, std::size_t cap,
                                int multiplicity, bool projective_stage) {
    if (stages < 0) throw Error("free_completion: stages must be nonnegative");
    if (cap < seed.size()) throw Error("free_completion: cap smaller than seed");
    if (!is_valid(seed)) throw Error("free_completion: seed violates the universal theory");
    if (multiplicity <= 0) multiplicity = seed.kind().multiplicity;

    CompletionStage out;
    out.structure = seed;
    Structure& cur = out.structure;
    bool done = false;

    for (int stage = 1; stage <= stages && !done; ++stage) {
        out.added_per_stage.push_back(0);
        out.stages_run = stage;
        Structure snap = cur;
        StageContext ctx{cur, out, cap, stage, done};
        std::vector<Instance> instances;
        switch (seed.kind().cls) {
            case GeometryClass::Steiner:
                instances = (stage % 2 == 1) ? steiner_block_stage(snap, ctx)
                                             : steiner_point_stage(snap, ctx);
                break;
            case GeometryClass::Projective:
            case GeometryClass::Ngon: instances = gon_arc_stage(snap, ctx); break;
            case GeometryClass::Net:
                instances = (stage % 2 == 1) ? net_point_stage(snap, ctx)
                                             : net_line_stage(snap, ctx);
                break;
            case GeometryClass::Affine:
                if (stage % 3 == 1) instances = affine_join_stage(snap, ctx);
                else if (stage % 3 == 2) instances = affine_meet_stage(snap, ctx);
                else instances = affine_parallel_stage(snap, ctx);
                break;
            case GeometryClass::Moebius:
                if (stage % 4 == 1) instances = moebius_block_stage(snap, ctx);
                else if (stage % 4 == 2) instances = moebius_touch_stage(snap, ctx);
                else if (stage % 4 == 3) instances = moebius_meet_stage(snap, ctx, false);
                else if (projective_stage) instances = moebius_meet_stage(snap, ctx, true);
                break;
            case GeometryClass::Graph:
                instances = graph_attach_stage(snap, ctx, multiplicity);
                break;
        }
        std::sort(instances.begin(), instances.end());
        for (auto& inst : instances) {
            if (done) break;
            inst.apply();
        }
        cur.close_local_equivalences();
    }
    return out;
}

namespace {

// One-step algebraic strong extensions of `base` realized inside `super`
// (the finite pattern list of the kind; clean arcs for n-gons).
std::optional<IdList> algebraic_extension_inside(const Structure& super, const IdList& base) {
    std::set<ElementId> a(base.begin(), base.end());
    for (const auto& x : super.element_ids()) {
        if (a.count(x)) continue;
        IdList members(base.begin(), base.end());
        members.push_back(x);
        Structure ext = induced_substructure(super, members);
        auto cls = classify_one_step(ext, {x});
        if (cls.tag == ExtensionTag::Algebraic) return IdList{x};
    }
    if (super.kind().is_gon() && super.kind().gon_order() > 3) {
        int len = super.kind().gon_order() - 2;
        IdList rest;
        for (const auto& x : super.element_ids())
            if (!a.count(x)) rest.push_back(x);
        std::vector<ElementId> chain;
        std::set<ElementId> used;
        std::optional<IdList> found;
        std::function<void(void)> extend = [&]() {
            if (found) return;
            if (static_cast<int>(chain.size()) == len) {
                IdList members(base.begin(), base.end());
                members.insert(members.end(), chain.begin(), chain.end());
                Structure ext = induced_substructure(super, members);
                if (classify_one_step(ext, IdList(chain.begin(), chain.end())).tag ==
                    ExtensionTag::Algebraic)
                    found = IdList(chain.begin(), chain.end());
                return;
            }
            for (const auto& x : rest) {
                if (used.count(x)) continue;
                if (!chain.empty() && !super.incident_pair(chain.back(), x)) continue;
                chain.push_back(x);
                used.insert(x);
                extend();
                used.erase(x);
                chain.pop_back();
                if (found) return;
            }
        };
        extend();
        if (found) return found;
    }
    return std::nullopt;
}

} // namespace

CompletionStage canonical_amalgam(const AmalgamSpec& spec, int stages, std::size_t cap) {
    require_same_shared(spec.b, spec.c, spec.shared);
    if (!is_open_over(spec.b, spec.shared).open())
        throw Error("canonical_amalgam: A is not strong in B");
    if (!is_open_over(spec.c, spec.shared).open())
        throw Error("canonical_amalgam: A is not strong in C");
    if (auto w = algebraic_extension_inside(spec.b, spec.shared))
        throw Error("canonical_amalgam: A not <=o-algebraically closed in B (algebraic extension by '" +
                    w->front() + "')");
    if (auto w = algebraic_extension_inside(spec.c, spec.shared))
        throw Error("canonical_amalgam: A not <=o-algebraically closed in C (algebraic extension by '" +
                    w->front() + "')");
    return free_completion(free_amalgam(spec), stages, cap);
}

Structure k_iterate(const Structure& c, const IdList& enumeration, int k) {
    if (k < 1) throw Error("k_iterate: k must be positive");
    check_subset(c, enumeration);
    if (enumeration.size() != c.size()) throw Error("k_iterate: enumeration must cover C");
    if (c.empty()) throw Error("k_iterate: C is empty");
    int n = static_cast<int>(enumeration.size()) - 1;
    if (n >= 1 && c.sort_index(enumeration.front()) != c.sort_index(enumeration.back()))
        throw Error("k_iterate: first and last element must have the same sort");

    auto name = [&](int copy, int j) -> ElementId {
        if (j == n && copy + 1 < k) return "d" + std::to_string(copy + 1) + "_0";
        return "d" + std::to_string(copy) + "_" + std::to_string(j);
    };

    Structure out(c.kind());
    for (int copy = 0; copy < k; ++copy)
        for (int j = (copy == 0 ? 0 : 1); j <= n; ++j)
            out.add_element(name(copy, j),
                            c.sort_name(enumeration[static_cast<std::size_t>(j)]));

    std::map<ElementId, int> pos;
    for (int j = 0; j <= n; ++j) pos[enumeration[static_cast<std::size_t>(j)]] = j;

    for (int copy = 0; copy < k; ++copy) {
        for (const auto& [x, y] : c.incidences()) {
            ElementId a = name(copy, pos.at(x)), b = name(copy, pos.at(y));
            if (!out.incident_pair(a, b)) out.add_incidence(a, b);
        }
        for (const auto& t : c.tangencies()) {
            ElementId b0 = name(copy, pos.at(t[0])), b1 = name(copy, pos.at(t[1])),
                      p = name(copy, pos.at(t[2]));
            if (!out.tangent_at(b0, b1, p)) out.add_tangency(b0, b1, p);
        }
        for (const auto& id : c.element_ids())
            for (const auto& mate : c.parallels(id)) {
                ElementId a = name(copy, pos.at(id)), b = name(copy, pos.at(mate));
                if (a < b && !out.parallel_pair(a, b)) out.add_parallel(a, b);
            }
        for (const auto& [line, cls] : c.line_classes()) out.set_line_class(name(copy, pos.at(line)), cls);
    }
    out.close_local_equivalences();
    return out;
}

IndependenceReport independent_icl(const Structure& m, const IdList& a, const IdList& b,
                                   const IdList& c, std::size_t bound) {
    check_subset(m, a);
    check_subset(m, b);
    check_subset(m, c);
    IndependenceReport rep;
    rep.icl_a = intrinsic_closure(m, a, bound).fixed_point;
    rep.icl_ab = intrinsic_closure(m, id_union(a, b), bound).fixed_point;
    rep.icl_ac = intrinsic_closure(m, id_union(a, c), bound).fixed_point;
    rep.icl_abc = intrinsic_closure(m, id_union(id_union(a, b), c), bound).fixed_point;

    Structure sab = induced_substructure(m, rep.icl_ab);
    Structure sac = induced_substructure(m, rep.icl_ac);
    if (auto w = algebraic_extension_inside(sab, rep.icl_a)) {
        rep.outcome = IndependenceOutcome::Inapplicable;
        rep.detail = "criterion inapplicable: icl(A) is not <=o-algebraically closed in icl(AB) "
                     "(algebraic extension by '" + w->front() + "')";
        return rep;
    }
    if (auto w = algebraic_extension_inside(sac, rep.icl_a)) {
        rep.outcome = IndependenceOutcome::Inapplicable;
        rep.detail = "criterion inapplicable: icl(A) is not <=o-algebraically closed in icl(AC) "
                     "(algebraic extension by '" + w->front() + "')";
        return rep;
    }

    IdList uni = id_union(rep.icl_ab, rep.icl_ac);
    if (uni != rep.icl_abc) {
        rep.outcome = IndependenceOutcome::Dependent;
        rep.detail = "icl(ABC) differs from icl(AB) + icl(AC)";
        return rep;
    }
    IdList inter;
    std::set<ElementId> sac_set(rep.icl_ac.begin(), rep.icl_ac.end());
    for (const auto& id : rep.icl_ab)
        if (sac_set.count(id)) inter.push_back(id);
    if (inter != rep.icl_a) {
        rep.outcome = IndependenceOutcome::Dependent;
        rep.detail = "icl(AB) and icl(AC) overlap beyond icl(A)";
        return rep;
    }
    Structure amalgam = free_amalgam({sab, sac, rep.icl_a});
    if (!(amalgam == induced_substructure(m, uni))) {
        rep.outcome = IndependenceOutcome::Dependent;
        rep.detail = "the union is not the free amalgam over icl(A)";
        return rep;
    }
    rep.outcome = IndependenceOutcome::Independent;
    rep.detail = "icl(ABC) = icl(AB) (x)_{icl(A)} icl(AC)";
    return rep;
}

} // namespace incidence
