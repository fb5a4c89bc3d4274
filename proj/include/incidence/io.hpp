#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "incidence/construction.hpp"
#include "incidence/openness.hpp"
#include "incidence/structure.hpp"

namespace incidence {

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                message),
          line(line), column(column) {}
    int line;
    int column;
};

/// Normalized form of one text-format file: a structure plus named subsets
/// and an optional declared order. Parsing normalizes element/tuple order,
/// so parse . serialize is the identity on Documents.
struct Document {
    GeometryKind kind;
    std::vector<std::pair<std::string, IdList>> sorts; // canonical sort order, ids sorted
    std::vector<std::pair<ElementId, ElementId>> incidences;
    std::vector<std::array<ElementId, 3>> tangencies;
    std::vector<std::pair<ElementId, ElementId>> parallels;
    std::vector<std::pair<int, IdList>> classes;         // net parallelism predicates
    std::vector<std::pair<std::string, IdList>> subsets; // name-sorted, member order preserved
    std::optional<std::vector<IdList>> order;            // partition pieces

    bool operator==(const Document& o) const;
};

Document parse_document(const std::string& text);
std::string serialize(const Document& doc);

Structure document_to_structure(const Document& doc);
Document structure_to_document(const Structure& s);

/// Convenience: structure straight from text / to canonical text.
Structure parse_structure(const std::string& text);
std::string serialize_structure(const Structure& s);

/// Completion prefix in the text format, provenance as structured comments.
std::string serialize_completion(const CompletionStage& stage);

/// Stable-key JSON for certificates; byte-stable for identical input.
std::string emit_certificate(const Certificate& cert, const GeometryKind& kind);

} // namespace incidence
