#include "incidence/predimension.hpp"

#include <algorithm>
#include <set>

#include "dense.hpp"
#include "generate.hpp"
#include "incidence/geometry.hpp"
#include "incidence/io.hpp"
#include "incidence/openness.hpp"

namespace incidence {

std::optional<DeltaSpec> default_delta_spec(const GeometryKind& kind) {
    if (kind.cls == GeometryClass::Steiner) return DeltaSpec{1, kind.k, -1};
    if (kind.cls == GeometryClass::Projective) return DeltaSpec{2, 2, -1};
    return std::nullopt;
}

long delta(const Structure& m, std::optional<DeltaSpec> spec) {
    if (!spec) spec = default_delta_spec(m.kind());
    if (!spec)
        throw Error("no default predimension for kind " + m.kind().class_token() +
                    "; pass explicit weights");
    long points = static_cast<long>(m.elements_of_sort(0).size());
    long blocks = m.kind().cls == GeometryClass::Graph
                      ? 0
                      : static_cast<long>(m.elements_of_sort(1).size());
    long incs = static_cast<long>(m.incidences().size());
    return spec->point_weight * points + spec->block_weight * blocks +
           spec->incidence_weight * incs;
}

namespace {

// delta over an arbitrary subset, via the induced substructure
long delta_subset(const Structure& m, const IdList& sub, const DeltaSpec& spec) {
    return delta(induced_substructure(m, sub), spec);
}

// A <=_delta B over all subsets B0 of B (exhaustive; |B| stays small here)
bool delta_le(const Structure& b, const IdList& a, const DeltaSpec& spec, IdList* bad) {
    IdList ids = b.element_ids();
    std::set<ElementId> aset(a.begin(), a.end());
    std::size_t m = ids.size();
    for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
        IdList b0, a_cap;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (1ULL << i)) {
                b0.push_back(ids[i]);
                if (aset.count(ids[i])) a_cap.push_back(ids[i]);
            }
        if (delta_subset(b, a_cap, spec) > delta_subset(b, b0, spec)) {
            if (bad) *bad = b0;
            return false;
        }
    }
    return true;
}

// Candidate one-element extensions of B (the minimal-extension patterns of
// the steiner and projective kinds), returned as extended structures.
std::vector<std::pair<Structure, ElementId>> one_step_extensions(const Structure& b) {
    std::vector<std::pair<Structure, ElementId>> out;
    ElementId fresh = "zz_new";
    while (b.has_element(fresh)) fresh += "x";
    auto with_element = [&](const std::string& sort, const IdList& attach) {
        Structure ext = b;
        ext.add_element(fresh, sort);
        for (const auto& x : attach) ext.add_incidence(fresh, x);
        return ext;
    };
    auto points = b.elements_of_sort(0);
    auto lines = b.elements_of_sort(1);
    if (b.kind().cls == GeometryClass::Steiner) {
        out.push_back({with_element("point", {}), fresh});
        for (const auto& bl : lines) out.push_back({with_element("point", {bl}), fresh});
        int k = b.kind().k;
        std::vector<IdList> subsets{{}};
        for (const auto& p : points) {
            std::size_t cur = subsets.size();
            for (std::size_t i = 0; i < cur; ++i)
                if (static_cast<int>(subsets[i].size()) < k) {
                    IdList next = subsets[i];
                    next.push_back(p);
                    subsets.push_back(next);
                }
        }
        for (const auto& sub : subsets) out.push_back({with_element("block", sub), fresh});
    } else if (b.kind().cls == GeometryClass::Projective) {
        for (int sort = 0; sort < 2; ++sort) {
            const auto& opposite = sort == 0 ? lines : points;
            std::string name = sort == 0 ? "point" : "line";
            out.push_back({with_element(name, {}), fresh});
            for (std::size_t i = 0; i < opposite.size(); ++i) {
                out.push_back({with_element(name, {opposite[i]}), fresh});
                for (std::size_t j = i + 1; j < opposite.size(); ++j)
                    out.push_back({with_element(name, {opposite[i], opposite[j]}), fresh});
            }
        }
    }
    return out;
}

} // namespace

DeltaReport check_delta_axioms(const GeometryKind& kind, int samples, std::uint64_t seed) {
    auto spec = default_delta_spec(kind);
    if (!spec) throw Error("check_delta_axioms: kind has no default predimension");
    testgen::Rng rng(seed);
    DeltaReport report;
    report.samples = samples;

    auto fail = [&report](const std::string& property, const std::string& detail,
                          const Structure& s) {
        report.failures.push_back({property, detail, serialize_structure(s)});
    };

    for (int it = 0; it < samples; ++it) {
        Structure b = testgen::random_open_structure(kind, rng, 8);

        // (a) isomorphism invariance: rename every element
        {
            Structure renamed(kind);
            std::map<ElementId, ElementId> name;
            int i = 0;
            for (const auto& id : b.element_ids()) name[id] = "r" + std::to_string(i++);
            for (const auto& id : b.element_ids()) renamed.add_element(name[id], b.sort_name(id));
            for (const auto& [x, y] : b.incidences()) renamed.add_incidence(name[x], name[y]);
            for (const auto& [l, cls] : b.line_classes()) renamed.set_line_class(name[l], cls);
            ++report.checked_a;
            if (delta(b, spec) != delta(renamed, spec)) fail("a", "delta not invariant", b);
        }

        // (b) strong implies delta-strong
        {
            IdList a = testgen::random_strong_subset(b, rng);
            ++report.checked_b;
            IdList bad;
            if (!delta_le(b, a, *spec, &bad))
                fail("b", "A <=o B but delta(A cap B0) > delta(B0)", b);
        }

        // (c) minimal strong one-step extensions: delta-constant iff algebraic
        for (auto& [ext, fresh] : one_step_extensions(b)) {
            if (!is_valid(ext)) continue;
            auto cls = classify_one_step(ext, {fresh});
            if (cls.tag == ExtensionTag::NotStrong || cls.tag == ExtensionTag::NotMinimal) continue;
            ++report.checked_c;
            long change = delta(ext, spec) - delta(b, spec);
            bool algebraic = cls.tag == ExtensionTag::Algebraic;
            if (algebraic != (change == 0) || (!algebraic && change <= 0))
                fail("c", "minimal step " + to_string(cls.tag) + " with delta change " +
                              std::to_string(change), ext);
        }

        // (d) delta-strong restricts to subsets
        {
            IdList a = testgen::random_subset(b, rng);
            if (delta_le(b, a, *spec, nullptr)) {
                IdList c = testgen::random_subset(b, rng);
                Structure sc = induced_substructure(b, c);
                std::set<ElementId> cset(c.begin(), c.end());
                IdList a_cap;
                for (const auto& id : a)
                    if (cset.count(id)) a_cap.push_back(id);
                ++report.checked_d;
                if (!delta_le(sc, a_cap, *spec, nullptr))
                    fail("d", "A <=d B but A cap C not <=d C", b);
            }
        }
    }
    return report;
}

} // namespace incidence
