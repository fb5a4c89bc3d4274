#include "incidence/fixtures.hpp"

#include <map>

#include "incidence/construction.hpp"
#include "incidence/geometry.hpp"
#include "incidence/io.hpp"
#include "incidence/openness.hpp"

namespace incidence {

namespace {

// Golden data. These strings are byte-identical to the files under
// fixtures/; a test checks the copies against the disk files.

const std::string kSteiner23 = R"(# steiner23-c6: 13-element partial (2,3)-Steiner configuration
geometry steiner k=2 n=3
sort point: c0 c1 c3 c5 c6 c9 c10 c12
sort block: c2 c4 c7 c8 c11
inc c0 c2
inc c1 c2
inc c3 c2
inc c3 c4
inc c5 c4
inc c6 c4
inc c0 c7
inc c5 c7
inc c9 c7
inc c1 c8
inc c6 c8
inc c10 c8
inc c9 c11
inc c10 c11
inc c12 c11
order: c0 c1 c2 c3 c4 c5 c6 c7 c8 c9 c10 c11 c12
)";

const std::string kNet3 = R"(# net3-c6: 19-element partial 3-net configuration
geometry net k=3
sort point: c0 c1 c8 c9 c10 c14 c16 c18
sort line: c2 c3 c4 c5 c6 c7 c11 c12 c13 c15 c17
class P0 c2 c5 c12
class P1 c3 c6 c13 c15
class P2 c4 c7 c11 c17
inc c0 c2
inc c0 c3
inc c0 c4
inc c1 c5
inc c1 c6
inc c1 c7
inc c8 c2
inc c8 c6
inc c8 c11
inc c9 c3
inc c9 c7
inc c9 c12
inc c10 c4
inc c10 c5
inc c10 c13
inc c14 c11
inc c14 c12
inc c14 c15
inc c16 c2
inc c16 c15
inc c16 c17
inc c18 c13
inc c18 c17
order: c0 c1 c2 c3 c4 c5 c6 c7 c8 c9 c10 c11 c12 c13 c14 c15 c16 c17 c18
)";

const std::string kMoebius = R"(# moebius-c6: 17-element partial projective Moebius configuration
# (incidences only; the tangency relation on this configuration is empty)
geometry moebius
sort point: c0 c1 c2 c3 c8 c9 c10 c12 c14 c16
sort block: c4 c5 c6 c7 c11 c13 c15
inc c0 c4
inc c0 c6
inc c0 c7
inc c1 c4
inc c1 c5
inc c1 c7
inc c2 c4
inc c2 c5
inc c2 c6
inc c3 c5
inc c3 c6
inc c3 c7
inc c8 c4
inc c8 c11
inc c8 c15
inc c9 c5
inc c9 c11
inc c9 c15
inc c10 c6
inc c10 c11
inc c10 c13
inc c12 c7
inc c12 c11
inc c12 c13
inc c14 c4
inc c14 c13
inc c14 c15
inc c16 c13
inc c16 c15
order: c0 c1 c2 c3 c4 c5 c6 c7 c8 c9 c10 c11 c12 c13 c14 c15 c16
)";

const std::string kNgon4Amalgam =
    R"(# free amalgam of the two one-element extensions of the 4-gon seed
# {a1|a2, b1|b2}: the line c joins a1,b1 and the point d joins a2,b2.
# Rejected: the 6-cycle a1 a2 d b2 b1 c has length 6 < 2n = 8.
geometry ngon n=4
sort point: a1 b1 d
sort line: a2 b2 c
inc a1 a2
inc b1 b2
inc a1 c
inc b1 c
inc d a2
inc d b2
subset A: a1 a2 b1 b2
)";

const std::map<std::string, const std::string*>& table() {
    static const std::map<std::string, const std::string*> t = {
        {"steiner23-c6", &kSteiner23},
        {"net3-c6", &kNet3},
        {"moebius-c6", &kMoebius},
        {"ngon4-amalgam-fail", &kNgon4Amalgam},
    };
    return t;
}

} // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {"steiner23-c6", "net3-c6", "moebius-c6",
                                                   "ngon4-amalgam-fail"};
    return names;
}

const std::string& builtin_text(const std::string& name) {
    auto it = table().find(name);
    if (it == table().end()) throw Error("unknown fixture '" + name + "'");
    return *it->second;
}

WitnessConfig builtin(const std::string& name) {
    Document doc = parse_document(builtin_text(name));
    WitnessConfig w;
    w.name = name;
    w.structure = document_to_structure(doc);
    if (doc.order) {
        for (const auto& piece : *doc.order)
            for (const auto& id : piece) w.declared_order.push_back(id);
        w.first = w.declared_order.front();
        w.second = w.declared_order.size() > 1 ? w.declared_order[1] : ElementId{};
        w.last = w.declared_order.back();
    }
    return w;
}

C6Report verify_c6(const WitnessConfig& w, int k_max) {
    if (w.declared_order.empty()) throw Error("verify_c6: witness has no declared order");
    C6Report report;
    const Structure& c = w.structure;

    // (a) c0c1 strong, no relation between c0 and c1
    {
        bool no_edge = trivial_over(c, {w.first}, w.second);
        auto cert = is_open_over(c, {w.first, w.second});
        report.a.pass = no_edge && cert.open();
        report.a.detail = std::string(no_edge ? "no relation between c0 and c1"
                                              : "c0 and c1 are related") +
                          "; {c0,c1} " + (cert.open() ? "<=o C" : "not <=o C");
    }
    // (b) {c_n} not strong, same sort as c0
    {
        bool same_sort = c.sort_index(w.first) == c.sort_index(w.last);
        auto cert = is_open_over(c, {w.last});
        report.b.pass = same_sort && !cert.open();
        report.b.detail = std::string(same_sort ? "c_n has c0's sort" : "sort mismatch") + "; {c_n} " +
                          (cert.open() ? "<=o C (expected closed)"
                                       : "closed in C (witness of " +
                                             std::to_string(cert.witness.size()) + " elements)");
    }
    // (c) the k-iterates stay in K
    {
        report.c.pass = true;
        std::string detail;
        for (int k = 1; k <= k_max; ++k) {
            Structure it = k_iterate(c, w.declared_order, k);
            auto violations = validate_t_forall(it);
            bool open = violations.empty() && is_open_over(it, {}).open();
            if (!detail.empty()) detail += "; ";
            detail += "I_" + std::to_string(k) + "(" + std::to_string(it.size()) + " elements): ";
            if (!violations.empty()) {
                report.c.pass = false;
                detail += "invalid (" + violations.front().axiom + ": " +
                          violations.front().message + ")";
            } else if (!open) {
                report.c.pass = false;
                detail += "not open";
            } else {
                detail += "in K";
            }
        }
        report.c.detail = detail;
    }
    return report;
}

} // namespace incidence
