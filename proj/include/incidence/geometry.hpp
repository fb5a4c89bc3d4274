#pragma once

#include <string>
#include <vector>

#include "incidence/structure.hpp"

namespace incidence {

/// Per-kind universal-theory validation. An empty list means M |= T_forall.
std::vector<Violation> validate_t_forall(const Structure& m);

bool is_valid(const Structure& m);

enum class HyperfreeVariant {
    LooseEnd,
    CleanArc,
    PointBounded,
    BlockBounded,
    LineBounded,
    ValencyBounded,
};

struct HyperfreeTuple {
    IdList elements; // chain order for arcs, canonical direction
    HyperfreeVariant variant;
    bool operator==(const HyperfreeTuple& o) const {
        return elements == o.elements && variant == o.variant;
    }
};

/// All hyperfree tuples of B over A: singletons (or, for n-gons, loose ends
/// and clean arcs) lying entirely in B minus A, hyperfree in the whole of B.
/// Deterministic lexicographic order.
std::vector<HyperfreeTuple> hyperfree_tuples(const Structure& b, const IdList& a);

/// Graph valency, or the Moebius theta = |I| + |T| (tangency-pencil count;
/// points take T = 0).
int valency(const Structure& b, const ElementId& c);

enum class ExtensionTag { Trivial, Algebraic, NonAlgebraic, NotMinimal, NotStrong };

struct ExtensionClass {
    ExtensionTag tag;
    int degree = 0; // meaningful iff tag == Algebraic
};

std::string to_string(ExtensionTag tag);

/// Classify the candidate minimal strong extension (base = extended minus
/// ext) per the kind's case analysis; degrees are analytic.
ExtensionClass classify_one_step(const Structure& extended, const IdList& ext);

/// Kind-specific non-degeneracy criterion (seed generates an infinite free
/// completion). For n-gons this probes the completion.
bool is_nondegenerate(const Structure& m);

} // namespace incidence
