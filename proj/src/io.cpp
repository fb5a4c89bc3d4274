#include "incidence/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace incidence {

namespace {

struct Token {
    std::string text;
    int column; // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

bool valid_id(const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' ||
              ch == '.' || ch == '+'))
            return false;
    return true;
}

int parse_int(const Token& t, int line) {
    try {
        std::size_t used = 0;
        int v = std::stoi(t.text, &used);
        if (used != t.text.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ParseError(line, t.column, "expected an integer, got '" + t.text + "'");
    }
}

} // namespace

bool Document::operator==(const Document& o) const {
    return kind == o.kind && sorts == o.sorts && incidences == o.incidences &&
           tangencies == o.tangencies && parallels == o.parallels && classes == o.classes &&
           subsets == o.subsets && order == o.order;
}

Document parse_document(const std::string& text) {
    Document doc;
    bool have_header = false;

    std::map<ElementId, int> sort_of; // id -> sort index
    std::set<std::pair<ElementId, ElementId>> incs;
    std::set<std::array<ElementId, 3>> tans;
    std::set<std::pair<ElementId, ElementId>> pars;
    std::map<int, std::set<ElementId>> classes;
    std::map<ElementId, int> class_of;
    std::map<std::string, IdList> subsets;
    std::optional<std::vector<IdList>> order;

    std::vector<std::string> sort_names;

    auto known = [&](const Token& t, int line) -> ElementId {
        if (!valid_id(t.text)) throw ParseError(line, t.column, "invalid id '" + t.text + "'");
        if (!sort_of.count(t.text))
            throw ParseError(line, t.column, "unknown id '" + t.text + "' (declare it in a sort line first)");
        return t.text;
    };

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto toks = tokenize(raw);
        if (toks.empty()) continue;
        const std::string& head = toks[0].text;

        if (!have_header) {
            if (head != "geometry")
                throw ParseError(lineno, toks[0].column, "expected 'geometry <class> ...' header");
            if (toks.size() < 2)
                throw ParseError(lineno, toks[0].column, "missing geometry class");
            std::map<std::string, int> params;
            for (std::size_t i = 2; i < toks.size(); ++i) {
                auto eq = toks[i].text.find('=');
                if (eq == std::string::npos || eq == 0)
                    throw ParseError(lineno, toks[i].column,
                                     "expected <name>=<int>, got '" + toks[i].text + "'");
                std::string key = toks[i].text.substr(0, eq);
                Token val{toks[i].text.substr(eq + 1), toks[i].column + static_cast<int>(eq) + 1};
                if (params.count(key))
                    throw ParseError(lineno, toks[i].column, "duplicate parameter '" + key + "'");
                params[key] = parse_int(val, lineno);
            }
            try {
                doc.kind = kind_from_token(toks[1].text, params);
            } catch (const Error& e) {
                throw ParseError(lineno, toks[1].column, e.what());
            }
            sort_names = doc.kind.sort_names();
            have_header = true;
            continue;
        }

        if (head == "geometry") throw ParseError(lineno, toks[0].column, "duplicate header");

        if (head == "sort") {
            if (toks.size() < 2) throw ParseError(lineno, toks[0].column, "missing sort name");
            std::string name = toks[1].text;
            if (name.empty() || name.back() != ':')
                throw ParseError(lineno, toks[1].column, "expected 'sort <name>: ...'");
            name.pop_back();
            auto it = std::find(sort_names.begin(), sort_names.end(), name);
            if (it == sort_names.end())
                throw ParseError(lineno, toks[1].column,
                                 "sort '" + name + "' is not a sort of kind " +
                                     doc.kind.class_token());
            int idx = static_cast<int>(it - sort_names.begin());
            for (std::size_t i = 2; i < toks.size(); ++i) {
                if (!valid_id(toks[i].text))
                    throw ParseError(lineno, toks[i].column, "invalid id '" + toks[i].text + "'");
                if (sort_of.count(toks[i].text))
                    throw ParseError(lineno, toks[i].column, "duplicate id '" + toks[i].text + "'");
                sort_of[toks[i].text] = idx;
            }
            continue;
        }

        if (head == "inc") {
            if (toks.size() != 3)
                throw ParseError(lineno, toks[0].column, "expected 'inc <id> <id>'");
            ElementId a = known(toks[1], lineno), b = known(toks[2], lineno);
            if (a == b) throw ParseError(lineno, toks[2].column, "incidence needs two distinct elements");
            if (doc.kind.cls != GeometryClass::Graph) {
                if (sort_of[a] == sort_of[b])
                    throw ParseError(lineno, toks[1].column,
                                     "incidence needs one element of each sort");
                if (sort_of[a] != 0) std::swap(a, b);
            } else if (b < a) {
                std::swap(a, b);
            }
            incs.insert({a, b});
            continue;
        }

        if (head == "rel") {
            if (toks.size() < 2) throw ParseError(lineno, toks[0].column, "missing relation symbol");
            const std::string& sym = toks[1].text;
            if (sym == "tan") {
                if (doc.kind.cls != GeometryClass::Moebius)
                    throw ParseError(lineno, toks[1].column, "'tan' is a moebius relation");
                if (toks.size() != 5)
                    throw ParseError(lineno, toks[0].column, "expected 'rel tan <block> <block> <point>'");
                ElementId b0 = known(toks[2], lineno), b1 = known(toks[3], lineno),
                          p = known(toks[4], lineno);
                if (sort_of[b0] != 1) throw ParseError(lineno, toks[2].column, "'" + b0 + "' is not a block");
                if (sort_of[b1] != 1) throw ParseError(lineno, toks[3].column, "'" + b1 + "' is not a block");
                if (sort_of[p] != 0) throw ParseError(lineno, toks[4].column, "'" + p + "' is not a point");
                if (b0 == b1) throw ParseError(lineno, toks[3].column, "reflexive tangency is implicit");
                if (b1 < b0) std::swap(b0, b1);
                tans.insert({b0, b1, p});
            } else if (sym == "par") {
                if (doc.kind.cls != GeometryClass::Affine)
                    throw ParseError(lineno, toks[1].column, "'par' is an affine relation");
                if (toks.size() != 4)
                    throw ParseError(lineno, toks[0].column, "expected 'rel par <line> <line>'");
                ElementId a = known(toks[2], lineno), b = known(toks[3], lineno);
                if (sort_of[a] != 1) throw ParseError(lineno, toks[2].column, "'" + a + "' is not a line");
                if (sort_of[b] != 1) throw ParseError(lineno, toks[3].column, "'" + b + "' is not a line");
                if (a == b) throw ParseError(lineno, toks[3].column, "reflexive parallelism is implicit");
                if (b < a) std::swap(a, b);
                pars.insert({a, b});
            } else {
                throw ParseError(lineno, toks[1].column, "unknown relation symbol '" + sym + "'");
            }
            continue;
        }

        if (head == "class") {
            if (doc.kind.cls != GeometryClass::Net)
                throw ParseError(lineno, toks[0].column, "'class' lines are a net feature");
            if (toks.size() < 2) throw ParseError(lineno, toks[0].column, "missing class name");
            const std::string& cname = toks[1].text;
            if (cname.size() < 2 || cname[0] != 'P')
                throw ParseError(lineno, toks[1].column, "expected class name P<int>");
            int idx = parse_int({cname.substr(1), toks[1].column + 1}, lineno);
            if (idx < 0 || idx >= doc.kind.k)
                throw ParseError(lineno, toks[1].column, "class index out of range");
            for (std::size_t i = 2; i < toks.size(); ++i) {
                ElementId l = known(toks[i], lineno);
                if (sort_of[l] != 1)
                    throw ParseError(lineno, toks[i].column, "'" + l + "' is not a line");
                auto it = class_of.find(l);
                if (it != class_of.end() && it->second != idx)
                    throw ParseError(lineno, toks[i].column,
                                     "line '" + l + "' already has a parallelism type");
                class_of[l] = idx;
                classes[idx].insert(l);
            }
            continue;
        }

        if (head == "subset") {
            if (toks.size() < 2) throw ParseError(lineno, toks[0].column, "missing subset name");
            std::string name = toks[1].text;
            if (name.empty() || name.back() != ':')
                throw ParseError(lineno, toks[1].column, "expected 'subset <name>: ...'");
            name.pop_back();
            if (!valid_id(name)) throw ParseError(lineno, toks[1].column, "invalid subset name");
            if (subsets.count(name))
                throw ParseError(lineno, toks[1].column, "duplicate subset '" + name + "'");
            IdList members;
            std::set<ElementId> seen;
            for (std::size_t i = 2; i < toks.size(); ++i) {
                ElementId id = known(toks[i], lineno);
                if (!seen.insert(id).second)
                    throw ParseError(lineno, toks[i].column, "duplicate member '" + id + "'");
                members.push_back(id);
            }
            subsets[name] = members;
            continue;
        }

        if (head == "order:") {
            if (order) throw ParseError(lineno, toks[0].column, "duplicate order line");
            std::vector<IdList> pieces;
            IdList cur;
            bool bars = false;
            std::set<ElementId> seen;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (toks[i].text == "|") {
                    bars = true;
                    if (cur.empty())
                        throw ParseError(lineno, toks[i].column, "empty partition piece");
                    pieces.push_back(cur);
                    cur.clear();
                    continue;
                }
                ElementId id = known(toks[i], lineno);
                if (!seen.insert(id).second)
                    throw ParseError(lineno, toks[i].column, "duplicate element '" + id + "' in order");
                cur.push_back(id);
            }
            if (!cur.empty()) pieces.push_back(cur);
            if (bars) {
                order = pieces;
            } else {
                // default: singleton pieces
                std::vector<IdList> singles;
                for (const auto& piece : pieces)
                    for (const auto& id : piece) singles.push_back({id});
                order = singles;
            }
            continue;
        }

        throw ParseError(lineno, toks[0].column, "unknown directive '" + head + "'");
    }
    if (!have_header) throw ParseError(1, 1, "missing 'geometry' header");

    // normalized document
    for (std::size_t i = 0; i < sort_names.size(); ++i) {
        IdList ids;
        for (const auto& [id, s] : sort_of)
            if (s == static_cast<int>(i)) ids.push_back(id);
        doc.sorts.push_back({sort_names[i], ids});
    }
    doc.incidences.assign(incs.begin(), incs.end());
    doc.tangencies.assign(tans.begin(), tans.end());
    doc.parallels.assign(pars.begin(), pars.end());
    for (const auto& [idx, members] : classes)
        doc.classes.push_back({idx, IdList(members.begin(), members.end())});
    for (const auto& [name, members] : subsets) doc.subsets.push_back({name, members});
    doc.order = order;
    return doc;
}

std::string serialize(const Document& doc) {
    std::ostringstream out;
    out << "geometry " << doc.kind.class_token();
    switch (doc.kind.cls) {
        case GeometryClass::Steiner: out << " k=" << doc.kind.k << " n=" << doc.kind.n; break;
        case GeometryClass::Ngon: out << " n=" << doc.kind.n; break;
        case GeometryClass::Net: out << " k=" << doc.kind.k; break;
        case GeometryClass::Graph: out << " n=" << doc.kind.n; break;
        default: break;
    }
    if (doc.kind.multiplicity != 3) out << " m=" << doc.kind.multiplicity;
    out << "\n";
    for (const auto& [name, ids] : doc.sorts) {
        out << "sort " << name << ":";
        for (const auto& id : ids) out << " " << id;
        out << "\n";
    }
    for (const auto& [a, b] : doc.incidences) out << "inc " << a << " " << b << "\n";
    for (const auto& t : doc.tangencies)
        out << "rel tan " << t[0] << " " << t[1] << " " << t[2] << "\n";
    for (const auto& [a, b] : doc.parallels) out << "rel par " << a << " " << b << "\n";
    for (const auto& [idx, members] : doc.classes) {
        out << "class P" << idx;
        for (const auto& id : members) out << " " << id;
        out << "\n";
    }
    for (const auto& [name, members] : doc.subsets) {
        out << "subset " << name << ":";
        for (const auto& id : members) out << " " << id;
        out << "\n";
    }
    if (doc.order) {
        out << "order:";
        bool all_single = true;
        for (const auto& piece : *doc.order)
            if (piece.size() != 1) all_single = false;
        bool first = true;
        for (const auto& piece : *doc.order) {
            if (!first && !all_single) out << " |";
            for (const auto& id : piece) out << " " << id;
            first = false;
        }
        out << "\n";
    }
    return out.str();
}

Structure document_to_structure(const Document& doc) {
    Structure s(doc.kind);
    for (const auto& [name, ids] : doc.sorts)
        for (const auto& id : ids) s.add_element(id, name);
    for (const auto& [a, b] : doc.incidences) s.add_incidence(a, b);
    for (const auto& t : doc.tangencies) s.add_tangency(t[0], t[1], t[2]);
    for (const auto& [a, b] : doc.parallels) s.add_parallel(a, b);
    for (const auto& [idx, members] : doc.classes)
        for (const auto& id : members) s.set_line_class(id, idx);
    return s;
}

Document structure_to_document(const Structure& s) {
    Document doc;
    doc.kind = s.kind();
    auto names = s.kind().sort_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        doc.sorts.push_back({names[i], s.elements_of_sort(static_cast<int>(i))});
    doc.incidences.assign(s.incidences().begin(), s.incidences().end());
    doc.tangencies.assign(s.tangencies().begin(), s.tangencies().end());
    std::set<std::pair<ElementId, ElementId>> pars;
    for (const auto& id : s.element_ids())
        for (const auto& mate : s.parallels(id))
            pars.insert(id < mate ? std::make_pair(id, mate) : std::make_pair(mate, id));
    doc.parallels.assign(pars.begin(), pars.end());
    std::map<int, IdList> classes;
    for (const auto& [line, cls] : s.line_classes()) classes[cls].push_back(line);
    for (auto& [idx, members] : classes) {
        std::sort(members.begin(), members.end());
        doc.classes.push_back({idx, members});
    }
    return doc;
}

Structure parse_structure(const std::string& text) {
    return document_to_structure(parse_document(text));
}

std::string serialize_structure(const Structure& s) { return serialize(structure_to_document(s)); }

std::string serialize_completion(const CompletionStage& stage) {
    std::ostringstream out;
    out << "# completion stages=" << stage.stages_run
        << " truncated=" << (stage.truncated ? 1 : 0) << "\n";
    out << "# added";
    for (int n : stage.added_per_stage) out << " " << n;
    out << "\n";
    out << serialize_structure(stage.structure);
    for (const auto& [id, prov] : stage.provenance) {
        out << "# provenance " << id << " stage=" << prov.stage << " rule=" << prov.rule
            << " parents=";
        for (std::size_t i = 0; i < prov.parents.size(); ++i)
            out << (i ? "," : "") << prov.parents[i];
        out << "\n";
    }
    return out.str();
}

std::string emit_certificate(const Certificate& cert, const GeometryKind& kind) {
    nlohmann::ordered_json j;
    j["verdict"] = cert.open() ? "open" : "closed";
    if (cert.open()) {
        j["order"] = cert.order.flat();
        auto pieces = nlohmann::ordered_json::array();
        for (const auto& piece : cert.order.pieces) pieces.push_back(piece);
        j["pieces"] = pieces;
    } else {
        j["witness"] = cert.witness;
    }
    nlohmann::ordered_json jk;
    jk["class"] = kind.class_token();
    if (kind.cls == GeometryClass::Steiner || kind.cls == GeometryClass::Net)
        jk["k"] = kind.k;
    if (kind.cls == GeometryClass::Steiner || kind.cls == GeometryClass::Ngon ||
        kind.cls == GeometryClass::Graph)
        jk["n"] = kind.n;
    if (kind.cls == GeometryClass::Graph) jk["m"] = kind.multiplicity;
    j["kind"] = jk;
    return j.dump();
}

} // namespace incidence
