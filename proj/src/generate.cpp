#include "generate.hpp"

#include <algorithm>

#include "incidence/geometry.hpp"
#include "incidence/openness.hpp"

namespace incidence::testgen {

std::vector<GeometryClass> all_classes() {
    return {GeometryClass::Projective, GeometryClass::Ngon,   GeometryClass::Steiner,
            GeometryClass::Net,        GeometryClass::Affine, GeometryClass::Moebius,
            GeometryClass::Graph};
}

GeometryKind random_kind(GeometryClass cls, Rng& rng) {
    auto pick = [&rng](int lo, int hi) {
        return static_cast<int>(lo + rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    switch (cls) {
        case GeometryClass::Projective: return GeometryKind::projective();
        case GeometryClass::Ngon: return GeometryKind::ngon(pick(3, 5));
        case GeometryClass::Steiner: {
            int k = pick(2, 3);
            return GeometryKind::steiner(k, pick(k + 1, k + 2));
        }
        case GeometryClass::Net: return GeometryKind::net(pick(3, 4));
        case GeometryClass::Affine: return GeometryKind::affine();
        case GeometryClass::Moebius: return GeometryKind::moebius();
        case GeometryClass::Graph: return GeometryKind::graph(pick(0, 3));
    }
    return GeometryKind::projective();
}

Structure random_structure(const GeometryKind& kind, Rng& rng, int max_elems) {
    auto pick = [&rng](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    int total = max_elems <= 0 ? 0 : pick(max_elems + 1);
    Structure s(kind);
    IdList points, others;
    for (int i = 0; i < total; ++i) {
        if (kind.cls == GeometryClass::Graph) {
            ElementId id = "v" + std::to_string(i);
            s.add_element(id, "vertex");
            points.push_back(id);
        } else if (pick(2) == 0) {
            ElementId id = "p" + std::to_string(i);
            s.add_element(id, "point");
            points.push_back(id);
        } else {
            ElementId id = (kind.sort_names()[1] == "block" ? "b" : "l") + std::to_string(i);
            s.add_element(id, kind.sort_names()[1]);
            others.push_back(id);
            if (kind.cls == GeometryClass::Net) s.set_line_class(id, pick(kind.k));
        }
    }
    auto try_keep = [&s](auto&& mutate) {
        Structure copy = s;
        try {
            mutate(copy);
        } catch (const Error&) {
            return;
        }
        copy.close_local_equivalences();
        if (is_valid(copy)) s = std::move(copy);
    };

    int attempts = 2 * total + 2;
    if (kind.cls == GeometryClass::Graph) {
        for (int t = 0; t < attempts && points.size() >= 2; ++t) {
            ElementId a = points[static_cast<std::size_t>(pick(static_cast<int>(points.size())))];
            ElementId b = points[static_cast<std::size_t>(pick(static_cast<int>(points.size())))];
            if (a == b || s.incident_pair(a, b)) continue;
            try_keep([&](Structure& c) { c.add_incidence(a, b); });
        }
        return s;
    }
    for (int t = 0; t < attempts && !points.empty() && !others.empty(); ++t) {
        ElementId p = points[static_cast<std::size_t>(pick(static_cast<int>(points.size())))];
        ElementId l = others[static_cast<std::size_t>(pick(static_cast<int>(others.size())))];
        if (s.incident_pair(p, l)) continue;
        try_keep([&](Structure& c) { c.add_incidence(p, l); });
    }
    if (kind.cls == GeometryClass::Affine && others.size() >= 2)
        for (int t = 0; t < attempts / 2 + 1; ++t) {
            ElementId a = others[static_cast<std::size_t>(pick(static_cast<int>(others.size())))];
            ElementId b = others[static_cast<std::size_t>(pick(static_cast<int>(others.size())))];
            if (a == b || s.parallel_pair(a, b)) continue;
            try_keep([&](Structure& c) { c.add_parallel(a, b); });
        }
    if (kind.cls == GeometryClass::Moebius && others.size() >= 2)
        for (int t = 0; t < attempts / 2 + 1; ++t) {
            ElementId a = others[static_cast<std::size_t>(pick(static_cast<int>(others.size())))];
            ElementId b = others[static_cast<std::size_t>(pick(static_cast<int>(others.size())))];
            if (a == b || s.tangent(a, b)) continue;
            IdList shared;
            for (const auto& q : s.incident(a))
                if (s.incident_pair(q, b)) shared.push_back(q);
            if (shared.empty()) continue;
            ElementId q = shared[static_cast<std::size_t>(pick(static_cast<int>(shared.size())))];
            try_keep([&](Structure& c) { c.add_tangency(a, b, q); });
        }
    return s;
}

Structure random_open_structure(const GeometryKind& kind, Rng& rng, int max_elems) {
    for (int t = 0; t < 64; ++t) {
        Structure s = random_structure(kind, rng, max_elems);
        if (is_open_over(s, {}).open()) return s;
    }
    return Structure(kind); // empty structure is always open
}

IdList random_subset(const Structure& s, Rng& rng, double p) {
    IdList out;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (const auto& id : s.element_ids())
        if (coin(rng) < p) out.push_back(id);
    return out;
}

IdList random_strong_subset(const Structure& b, Rng& rng, int tries) {
    for (int t = 0; t < tries; ++t) {
        IdList a = random_subset(b, rng);
        if (is_open_over(b, a).open()) return a;
    }
    return {};
}

} // namespace incidence::testgen
