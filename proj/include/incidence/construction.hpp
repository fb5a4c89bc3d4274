#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "incidence/openness.hpp"
#include "incidence/structure.hpp"

namespace incidence {

struct Provenance {
    int stage = 0;
    std::string rule;
    IdList parents;
};

struct CompletionStage {
    Structure structure;
    int stages_run = 0;
    bool truncated = false;
    std::map<ElementId, Provenance> provenance; // every non-seed element
    std::vector<int> added_per_stage;           // added_per_stage[s-1] = new elements at stage s
};

struct AmalgamSpec {
    Structure b;
    Structure c;
    IdList shared; // A, embedded identically in both sides
};

/// Free amalgam B (x)_A C: union domain, incidences united, local
/// equivalences united and closed one step through shared A-parameters.
/// The result is raw; callers validate.
Structure free_amalgam(const AmalgamSpec& spec);

/// Stage-wise free completion prefix per the kind's rules, halting at the
/// element cap (flagged). Element naming and rule order are deterministic.
/// `projective_stage` toggles the Moebius disjoint-blocks stage.
CompletionStage free_completion(const Structure& seed, int stages, std::size_t cap,
                                int multiplicity = 0, bool projective_stage = true);

/// F(B (x)_A C) with the Corollary's preconditions checked: A strong in both
/// sides and <=o-algebraically closed in both (no one-step algebraic strong
/// extension of A realized inside either side).
CompletionStage canonical_amalgam(const AmalgamSpec& spec, int stages, std::size_t cap);

/// k glued copies of C along its declared enumeration: last element of each
/// copy identified with the first of the next. Elements are renamed d<i>_<j>.
Structure k_iterate(const Structure& c, const IdList& enumeration, int k);

enum class IndependenceOutcome { Independent, Dependent, Inapplicable };

struct IndependenceReport {
    IndependenceOutcome outcome = IndependenceOutcome::Inapplicable;
    IdList icl_a, icl_ab, icl_ac, icl_abc;
    std::string detail;
    bool independent() const { return outcome == IndependenceOutcome::Independent; }
};

/// Finite independence criterion: icl(ABC) = icl(AB) u icl(AC) and the union
/// is the free amalgam over icl(A). Precondition failures are reported, not
/// thrown ("criterion inapplicable").
IndependenceReport independent_icl(const Structure& m, const IdList& a, const IdList& b,
                                   const IdList& c, std::size_t bound = 16);

} // namespace incidence
