#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "incidence/construction.hpp"
#include "incidence/fixtures.hpp"
#include "incidence/geometry.hpp"
#include "incidence/io.hpp"
#include "incidence/openness.hpp"
#include "incidence/predimension.hpp"
#include "incidence/structure.hpp"

namespace py = pybind11;
using namespace incidence;

namespace {

py::dict cert_to_dict(const Certificate& cert) {
    py::dict d;
    d["verdict"] = cert.open() ? "open" : "closed";
    if (cert.open()) {
        d["order"] = cert.order.flat();
        d["pieces"] = cert.order.pieces;
    } else {
        d["witness"] = cert.witness;
    }
    return d;
}

HFOrder order_from_pieces(const std::vector<IdList>& pieces) {
    HFOrder hf;
    hf.pieces = pieces;
    return hf;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "finite open incidence structures: openness certificates, closures, "
              "free completions and predimensions";

    py::register_exception<Error>(m, "IncidenceError");

    py::class_<Structure>(m, "Structure")
        .def_static("from_text", [](const std::string& text) { return parse_structure(text); })
        .def("to_text", [](const Structure& s) { return serialize_structure(s); })
        .def("__len__", [](const Structure& s) { return s.size(); })
        .def("element_ids", &Structure::element_ids)
        .def("sort_name", [](const Structure& s, const ElementId& id) { return s.sort_name(id); })
        .def("kind", [](const Structure& s) { return s.kind().class_token(); })
        .def("__eq__", [](const Structure& a, const Structure& b) { return a == b; })
        .def("__repr__", [](const Structure& s) {
            return "<Structure " + s.kind().class_token() + " with " +
                   std::to_string(s.size()) + " elements>";
        });

    m.def("validate", [](const Structure& s) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& v : validate_t_forall(s)) out.push_back({v.axiom, v.message});
        return out;
    });
    m.def("is_valid", &is_valid);
    m.def("is_nondegenerate", &is_nondegenerate);
    m.def("valency", &valency);
    m.def("delta", [](const Structure& s, py::object weights) {
        if (weights.is_none()) return delta(s);
        auto t = weights.cast<std::tuple<long, long, long>>();
        return delta(s, DeltaSpec{std::get<0>(t), std::get<1>(t), std::get<2>(t)});
    }, py::arg("structure"), py::arg("weights") = py::none());

    m.def("open_over", [](const Structure& s, const IdList& over) {
        return cert_to_dict(is_open_over(s, over));
    }, py::arg("structure"), py::arg("over") = IdList{});
    m.def("closed_witness_bruteforce", [](const Structure& s, const IdList& over, std::size_t bound) {
        auto w = closed_witness_bruteforce(s, over, bound);
        return w ? py::object(py::cast(*w)) : py::object(py::none());
    }, py::arg("structure"), py::arg("over") = IdList{}, py::arg("bound") = 16);
    m.def("verify_hf_order", [](const Structure& s, const IdList& over,
                                const std::vector<IdList>& pieces, const std::string& mode) {
        auto res = verify_hf_order(s, over, order_from_pieces(pieces),
                                   mode == "exhaustive" ? VerifyMode::Exhaustive : VerifyMode::Fast);
        return std::make_pair(res.ok, res.violation);
    }, py::arg("structure"), py::arg("over"), py::arg("pieces"), py::arg("mode") = "fast");

    m.def("gaifman_closure", &gaifman_closure);
    m.def("hf_closure", [](const Structure& s, const std::vector<IdList>& pieces, const IdList& c) {
        return hf_closure(s, {}, order_from_pieces(pieces), c);
    });
    m.def("intrinsic_closure", [](const Structure& s, const IdList& a, std::size_t bound) {
        auto icl = intrinsic_closure(s, a, bound);
        return std::make_pair(icl.one_shot, icl.fixed_point);
    }, py::arg("structure"), py::arg("a"), py::arg("bound") = 16);

    m.def("free_amalgam", [](const Structure& b, const Structure& c, const IdList& shared) {
        return free_amalgam({b, c, shared});
    });
    m.def("free_completion", [](const Structure& s, int stages, std::size_t cap, int multiplicity,
                                bool projective_stage) {
        auto st = free_completion(s, stages, cap, multiplicity, projective_stage);
        py::dict d;
        d["structure"] = st.structure;
        d["stages_run"] = st.stages_run;
        d["truncated"] = st.truncated;
        d["added_per_stage"] = st.added_per_stage;
        d["text"] = serialize_completion(st);
        return d;
    }, py::arg("structure"), py::arg("stages"), py::arg("cap"), py::arg("multiplicity") = 0,
       py::arg("projective_stage") = true);
    m.def("k_iterate", &k_iterate);
    m.def("count_copies_over", &count_copies_over);
    m.def("classify_one_step", [](const Structure& extended, const IdList& ext) {
        auto cls = classify_one_step(extended, ext);
        return std::make_pair(to_string(cls.tag), cls.degree);
    });

    m.def("builtin", [](const std::string& name) {
        auto w = builtin(name);
        py::dict d;
        d["structure"] = w.structure;
        d["order"] = w.declared_order;
        return d;
    });
    m.def("builtin_text", [](const std::string& name) { return builtin_text(name); });
    m.def("verify_c6", [](const std::string& name, int kmax) {
        auto report = verify_c6(builtin(name), kmax);
        py::dict d;
        d["a"] = std::make_pair(report.a.pass, report.a.detail);
        d["b"] = std::make_pair(report.b.pass, report.b.detail);
        d["c"] = std::make_pair(report.c.pass, report.c.detail);
        d["ok"] = report.ok();
        return d;
    }, py::arg("name"), py::arg("kmax") = 4);
}
