#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "incidence/structure.hpp"

namespace incidence {

struct DeltaSpec {
    long point_weight = 1;
    long block_weight = 1;
    long incidence_weight = -1;
};

/// Shipped defaults: steiner (1, k, -1); projective (2, 2, -1).
std::optional<DeltaSpec> default_delta_spec(const GeometryKind& kind);

long delta(const Structure& m, std::optional<DeltaSpec> spec = std::nullopt);

struct DeltaFailure {
    std::string property; // "a".."d"
    std::string detail;
    std::string structure_text; // offending structure, serialized verbatim
};

struct DeltaReport {
    int samples = 0;
    int checked_a = 0, checked_b = 0, checked_c = 0, checked_d = 0;
    std::vector<DeltaFailure> failures;
    bool ok() const { return failures.empty(); }
};

/// Randomized verification of Def. properties (a)-(d) on `samples` random
/// structures of the kind; (c) is checked on every enumerated minimal strong
/// extension of each sample.
DeltaReport check_delta_axioms(const GeometryKind& kind, int samples, std::uint64_t seed);

} // namespace incidence
