#include <doctest.h>

#include <algorithm>

#include "generate.hpp"
#include "helpers.hpp"
#include "incidence/construction.hpp"
#include "incidence/geometry.hpp"
#include "incidence/io.hpp"
#include "incidence/openness.hpp"
#include "incidence/predimension.hpp"

using namespace incidence;
using testutil::steiner_witness;

namespace {

Structure points_only(const GeometryKind& kind, int n) {
    Structure s(kind);
    for (int i = 0; i < n; ++i) s.add_element("p" + std::to_string(i), "point");
    return s;
}

} // namespace

TEST_CASE("free amalgam: identity and the counterexample") {
    Structure w = steiner_witness();
    Structure a = induced_substructure(w, {"c0", "c1", "c2"});
    CHECK(free_amalgam({w, a, a.element_ids()}) == w);

    auto side_b = parse_structure(testutil::read_file(std::string(FIXTURE_DIR) +
                                                      "/ngon4-amalgam-fail-b.geom"));
    auto side_c = parse_structure(testutil::read_file(std::string(FIXTURE_DIR) +
                                                      "/ngon4-amalgam-fail-c.geom"));
    IdList shared = {"a1", "a2", "b1", "b2"};
    // under the clean-arc definition these one-element extensions are not
    // strong for n = 4; the single-element reading would call them strong,
    // and the amalgam below is the resulting amalgamation failure
    CHECK_FALSE(is_open_over(side_b, shared).open());
    CHECK_FALSE(is_open_over(side_c, shared).open());
    Structure amalgam = free_amalgam({side_b, side_c, shared});
    CHECK(amalgam == builtin("ngon4-amalgam-fail").structure);
    auto v = validate_t_forall(amalgam);
    REQUIRE(v.size() == 1);
    CHECK(v[0].message == "girth 6 < 8");
}

TEST_CASE("free amalgam: steiner block and point sides stay strong") {
    Structure a(GeometryKind::steiner(2, 3));
    a.add_element("p", "point");
    a.add_element("q", "point");
    Structure b = a;
    b.add_element("blk", "block");
    b.add_incidence("p", "blk");
    b.add_incidence("q", "blk");
    Structure c = a;
    c.add_element("r", "point");
    Structure amalgam = free_amalgam({b, c, {"p", "q"}});
    CHECK(validate_t_forall(amalgam).empty());
    CHECK(is_open_over(amalgam, b.element_ids()).open());
    CHECK(is_open_over(amalgam, c.element_ids()).open());

    Structure clash = a;
    clash.add_element("blk", "block"); // same id outside the shared part
    CHECK_THROWS_AS(free_amalgam({b, clash, {"p", "q"}}), Error);
}

TEST_CASE("free amalgam closes parallelism through the shared part") {
    Structure base(GeometryKind::affine());
    base.add_element("l", "line");
    Structure b = base;
    b.add_element("lb", "line");
    b.add_parallel("lb", "l");
    Structure c = base;
    c.add_element("lc", "line");
    c.add_parallel("lc", "l");
    Structure amalgam = free_amalgam({b, c, {"l"}});
    CHECK(amalgam.parallel_pair("lb", "lc"));
    CHECK(validate_t_forall(amalgam).empty());
}

TEST_CASE("free completion: steiner") {
    // degenerate seed: one block, nothing to do after padding
    Structure one(GeometryKind::steiner(2, 3));
    one.add_element("b", "block");
    auto st = free_completion(one, 6, 100);
    CHECK(st.added_per_stage == std::vector<int>{0, 3, 0, 0, 0, 0});
    CHECK_FALSE(st.truncated);

    // three free points: +3 blocks, then +3 points
    auto st2 = free_completion(points_only(GeometryKind::steiner(2, 3), 3), 2, 100);
    CHECK(st2.added_per_stage == std::vector<int>{3, 3});
    CHECK(st2.structure.size() == 9);
    CHECK(validate_t_forall(st2.structure).empty());

    CHECK_THROWS_AS(free_completion(one, 2, 0), Error);
}

TEST_CASE("free completion: projective four free points") {
    auto st = free_completion(points_only(GeometryKind::projective(), 4), 2, 100);
    CHECK(st.added_per_stage == std::vector<int>{6, 3});
    CHECK(st.structure.elements_of_sort(1).size() == 6);
    CHECK(st.structure.elements_of_sort(0).size() == 7);
    CHECK(validate_t_forall(st.structure).empty());
    // provenance covers every non-seed element with its generating rule
    CHECK(st.provenance.size() == 9);
    for (const auto& [id, prov] : st.provenance) {
        CHECK(prov.rule == "arc");
        CHECK(prov.parents.size() == 2);
    }
}

TEST_CASE("free completion is deterministic, byte for byte") {
    for (int round = 0; round < 2; ++round) {
        auto a = free_completion(points_only(GeometryKind::projective(), 4), 3, 60);
        auto b = free_completion(points_only(GeometryKind::projective(), 4), 3, 60);
        CHECK(serialize_completion(a) == serialize_completion(b));
    }
    auto a = free_completion(points_only(GeometryKind::steiner(2, 3), 4), 4, 80);
    auto b = free_completion(points_only(GeometryKind::steiner(2, 3), 4), 4, 80);
    CHECK(serialize_completion(a) == serialize_completion(b));
}

TEST_CASE("free completion: truncation cap") {
    auto st = free_completion(points_only(GeometryKind::steiner(2, 3), 4), 4, 10);
    CHECK(st.truncated);
    CHECK(st.structure.size() == 10);
    // even a truncated prefix stays valid and strong over the seed
    CHECK(validate_t_forall(st.structure).empty());
    CHECK(is_open_over(st.structure, points_only(GeometryKind::steiner(2, 3), 4).element_ids())
              .open());
}

TEST_CASE("graph completion multiplicity") {
    Structure seed(GeometryKind::graph(1));
    seed.add_element("v0", "vertex");
    auto st = free_completion(seed, 1, 100, 3);
    CHECK(st.added_per_stage == std::vector<int>{3});
    for (const auto& [id, prov] : st.provenance) CHECK(prov.parents == IdList{"v0"});
}

TEST_CASE("completion stages stay strong over the seed") {
    testgen::Rng rng(59);
    for (auto cls : testgen::all_classes()) {
        for (int it = 0; it < 8; ++it) {
            auto kind = testgen::random_kind(cls, rng);
            Structure seed = testgen::random_open_structure(kind, rng, 5);
            std::size_t cap = cls == GeometryClass::Graph ? 40 : 90;
            for (int s = 1; s <= 4; ++s) {
                auto st = free_completion(seed, s, cap, 2);
                CHECK(validate_t_forall(st.structure).empty());
                CHECK(is_open_over(st.structure, seed.element_ids()).open());
            }
        }
    }
}

TEST_CASE("completion realizes minimal algebraic extensions strongly (C5)") {
    testgen::Rng rng(61);
    auto kind = GeometryKind::steiner(2, 3);
    for (int it = 0; it < 20; ++it) {
        Structure seed = testgen::random_open_structure(kind, rng, 5);
        auto st = free_completion(seed, 3, 60);
        const Structure& m = st.structure;
        // any realized one-step algebraic extension of a strong subset is strong
        IdList a = testgen::random_strong_subset(m, rng, 4);
        if (!is_open_over(m, a).open()) continue;
        std::set<ElementId> aset(a.begin(), a.end());
        for (const auto& x : m.element_ids()) {
            if (aset.count(x)) continue;
            Structure ext = induced_substructure(m, id_union(a, {x}));
            if (classify_one_step(ext, {x}).tag == ExtensionTag::Algebraic)
                CHECK(is_open_over(m, id_union(a, {x})).open());
        }
    }
}

TEST_CASE("steiner stage rules coincide with first-principles enumeration") {
    // tiny-scale cross-check of the staged process against the minimal
    // algebraic extensions it is meant to enumerate
    Structure seed = points_only(GeometryKind::steiner(2, 3), 3);
    auto st1 = free_completion(seed, 1, 50);
    // stage 1 realizes exactly the pairwise joining blocks: 3 of them,
    // each an algebraic extension of degree 1 over the seed
    CHECK(st1.added_per_stage == std::vector<int>{3});
    for (const auto& [id, prov] : st1.provenance) {
        Structure ext = induced_substructure(st1.structure, id_union(seed.element_ids(), {id}));
        auto cls = classify_one_step(ext, {id});
        CHECK(cls.tag == ExtensionTag::Algebraic);
        CHECK(cls.degree == 1);
    }
    // stage 2 pads each block to its three points: degree-many copies of the
    // point-on-block extension (degree = 1 per block after stage 1)
    auto st2 = free_completion(seed, 2, 50);
    CHECK(st2.added_per_stage[1] == 3);
}

TEST_CASE("canonical amalgam") {
    // B = C = A gives the free completion of A
    Structure a = points_only(GeometryKind::steiner(2, 3), 2);
    auto canon = canonical_amalgam({a, a, a.element_ids()}, 2, 100);
    auto plain = free_completion(a, 2, 100);
    CHECK(canon.structure == plain.structure);

    // two trivial points on each side: four points, then six joining blocks
    Structure b = a;
    b.add_element("x", "point");
    Structure c = a;
    c.add_element("y", "point");
    auto st = canonical_amalgam({b, c, a.element_ids()}, 1, 100);
    CHECK(st.structure.elements_of_sort(0).size() == 4);
    CHECK(st.added_per_stage == std::vector<int>{6});

    // precondition: a block through both points of A is algebraic over A
    Structure bad = a;
    bad.add_element("blk", "block");
    bad.add_incidence("p0", "blk");
    bad.add_incidence("p1", "blk");
    CHECK_THROWS_WITH_AS(canonical_amalgam({bad, c, a.element_ids()}, 1, 100),
                         doctest::Contains("algebraically closed in B"), Error);
}

TEST_CASE("k-iterate of the steiner witness") {
    auto w = builtin("steiner23-c6");
    Structure i1 = k_iterate(w.structure, w.declared_order, 1);
    CHECK(i1.size() == 13);
    CHECK(isomorphic(i1, w.structure));

    Structure i2 = k_iterate(w.structure, w.declared_order, 2);
    CHECK(i2.size() == 25);
    CHECK(validate_t_forall(i2).empty());

    Structure i3 = k_iterate(w.structure, w.declared_order, 3);
    CHECK(i3.size() == 37);
    CHECK(validate_t_forall(i3).empty());
    CHECK(is_open_over(i3, {}).open());

    // per-copy restriction is isomorphic to C
    IdList copy1;
    for (int j = 0; j <= 11; ++j) copy1.push_back("d1_" + std::to_string(j));
    copy1.push_back("d2_0"); // the glue element carries the next copy's name
    std::sort(copy1.begin(), copy1.end());
    CHECK(isomorphic(induced_substructure(i3, copy1), w.structure));

    Structure bad(GeometryKind::steiner(2, 3));
    bad.add_element("p", "point");
    bad.add_element("b", "block");
    CHECK_THROWS_AS(k_iterate(bad, {"p", "b"}, 2), Error);
}

TEST_CASE("independence criterion") {
    Structure w = steiner_witness();

    // B = C = empty: trivially independent
    auto rep0 = independent_icl(w, {"c0", "c1"}, {}, {}, 16);
    CHECK(rep0.outcome == IndependenceOutcome::Independent);

    // a free amalgam of strong sides over A is independent
    Structure a(GeometryKind::steiner(2, 3));
    a.add_element("p", "point");
    Structure b = a;
    b.add_element("x", "point");
    Structure c = a;
    c.add_element("yb", "block");
    c.add_incidence("p", "yb");
    Structure m = free_amalgam({b, c, {"p"}});
    REQUIRE(validate_t_forall(m).empty());
    auto rep1 = independent_icl(m, {"p"}, {"x"}, {"yb"}, 16);
    CHECK(rep1.outcome == IndependenceOutcome::Independent);

    // the witness example: c2 is algebraic over {c0,c1}, so the corollary's
    // precondition fails and the criterion is inapplicable (not independent)
    auto rep2 = independent_icl(w, {"c0", "c1"}, {"c2"}, {"c7"}, 16);
    CHECK(rep2.outcome == IndependenceOutcome::Inapplicable);
    CHECK_FALSE(rep2.independent());
    CHECK(rep2.icl_a == IdList{"c0", "c1"});

    // a genuinely dependent triple: a relation between B and C means the
    // union cannot be the free amalgam over icl(A)
    Structure g(GeometryKind::graph(1));
    g.add_element("x", "vertex");
    g.add_element("y", "vertex");
    g.add_incidence("x", "y");
    auto rep3 = independent_icl(g, {}, {"x"}, {"y"}, 16);
    CHECK(rep3.outcome == IndependenceOutcome::Dependent);

    // a closed configuration glued to everything collapses into icl(A):
    // degenerate but independent
    Structure tri(GeometryKind::graph(1));
    for (const auto& v : {"x", "y", "z"}) tri.add_element(v, "vertex");
    tri.add_incidence("x", "y");
    tri.add_incidence("y", "z");
    tri.add_incidence("z", "x");
    auto rep4 = independent_icl(tri, {}, {"x"}, {"y"}, 16);
    CHECK(rep4.outcome == IndependenceOutcome::Independent);
    CHECK(rep4.icl_a == (IdList{"x", "y", "z"}));
}

TEST_CASE("C4 exactly: under the side conditions the free amalgam must work") {
    // when the minimal extension is non-algebraic, or algebraic of degree d
    // with fewer than d copies realized in C, no embedding fallback is
    // allowed: the amalgam itself validates and keeps both sides strong
    testgen::Rng rng(101);
    int checked = 0;
    for (int it = 0; it < 600 && checked < 150; ++it) {
        auto kind = testgen::random_kind(testgen::all_classes()[static_cast<std::size_t>(it % 7)], rng);
        Structure base = testgen::random_open_structure(kind, rng, 5);
        IdList a = base.element_ids();

        Structure b = base;
        b.add_element("zz", kind.sort_names()[rng() % kind.sort_names().size()]);
        if (kind.cls == GeometryClass::Net && b.sort_index("zz") == 1)
            b.set_line_class("zz", static_cast<int>(rng() % static_cast<std::uint64_t>(kind.k)));
        for (const auto& id : a)
            if (rng() % 3 == 0) {
                Structure trial = b;
                try {
                    trial.add_incidence("zz", id);
                } catch (const Error&) {
                    continue;
                }
                if (is_valid(trial)) b = trial;
            }
        if (!is_valid(b) || !is_open_over(b, a).open()) continue;
        auto cls = classify_one_step(b, {"zz"});
        if (cls.tag != ExtensionTag::Trivial && cls.tag != ExtensionTag::Algebraic &&
            cls.tag != ExtensionTag::NonAlgebraic)
            continue;

        Structure c = testgen::random_open_structure(kind, rng, 4);
        {
            // rebuild C over the same base with disjoint fresh ids
            Structure merged = base;
            int fresh = 0;
            std::map<ElementId, ElementId> name;
            for (const auto& id : c.element_ids())
                name[id] = "cc" + std::to_string(fresh++);
            for (const auto& id : c.element_ids()) merged.add_element(name[id], c.sort_name(id));
            for (const auto& [x, y] : c.incidences()) merged.add_incidence(name[x], name[y]);
            for (const auto& [l, t] : c.line_classes()) merged.set_line_class(name[l], t);
            if (!is_valid(merged) || !is_open_over(merged, a).open()) continue;
            c = merged;
        }

        if (cls.tag == ExtensionTag::Algebraic &&
            count_copies_over(c, a, b) >= cls.degree)
            continue; // side condition violated: C is already saturated
        ++checked;
        Structure d = free_amalgam({b, c, a});
        CHECK(is_valid(d));
        CHECK(is_open_over(d, b.element_ids()).open());
        CHECK(is_open_over(d, c.element_ids()).open());
    }
    CHECK(checked >= 60);
}

TEST_CASE("amalgamation property with the C4 side conditions") {
    testgen::Rng rng(67);
    int checked = 0;
    for (int it = 0; it < 400 && checked < 120; ++it) {
        auto kind = testgen::random_kind(testgen::all_classes()[static_cast<std::size_t>(it % 7)], rng);
        Structure base = testgen::random_open_structure(kind, rng, 5);
        IdList a = base.element_ids();

        // a minimal strong extension of A on side B
        Structure m = testgen::random_open_structure(kind, rng, 7);
        auto cert = is_open_over(m, {});
        if (!cert.open() || cert.order.pieces.empty()) continue;
        Structure b = base;
        // attach a fresh trivial or pattern extension by re-generating small
        b.add_element("zz", kind.sort_names()[rng() % kind.sort_names().size()]);
        if (kind.cls == GeometryClass::Net && b.sort_index("zz") == 1) b.set_line_class("zz", 0);
        for (const auto& id : a)
            if (rng() % 3 == 0) {
                Structure trial = b;
                try {
                    trial.add_incidence("zz", id);
                } catch (const Error&) {
                    continue;
                }
                if (is_valid(trial)) b = trial;
            }
        if (!is_valid(b) || !is_open_over(b, a).open()) continue;
        auto cls = classify_one_step(b, {"zz"});
        if (cls.tag == ExtensionTag::NotStrong || cls.tag == ExtensionTag::NotMinimal) continue;

        // a strong C over A with fresh ids
        Structure c = base;
        auto grown = free_completion(base, 2, base.size() + 4, 1);
        c = grown.structure;
        if (!is_open_over(c, a).open()) continue;

        ++checked;
        bool amalgam_ok = false;
        try {
            Structure d = free_amalgam({b, c, a});
            amalgam_ok = is_valid(d) && is_open_over(d, b.element_ids()).open() &&
                         is_open_over(d, c.element_ids()).open();
        } catch (const Error&) {
            amalgam_ok = false;
        }
        bool embeds = false;
        if (!amalgam_ok) {
            // the case split: B must embed into C over A with strong image
            for (const auto& candidate : c.element_ids()) {
                if (std::find(a.begin(), a.end(), candidate) != a.end()) continue;
                if (c.sort_index(candidate) != b.sort_index("zz")) continue;
                Structure img = induced_substructure(c, id_union(a, {candidate}));
                if (count_copies_over(img, a, b) == 1 &&
                    is_open_over(c, id_union(a, {candidate})).open()) {
                    embeds = true;
                    break;
                }
            }
        }
        CHECK((amalgam_ok || embeds));
    }
    CHECK(checked >= 50);
}
