#pragma once

// Seeded random structures for property tests and the delta axiom suite.
// Structures are always valid for their kind (tuples added with rejection);
// openness is not enforced unless asked for.

#include <random>
#include <vector>

#include "incidence/structure.hpp"

namespace incidence::testgen {

using Rng = std::mt19937_64;

std::vector<GeometryClass> all_classes();

/// Sample parameters for a class (e.g. steiner (2,3)..(3,5), ngon n in 3..5).
GeometryKind random_kind(GeometryClass cls, Rng& rng);

/// Valid structure with at most max_elems elements; possibly closed.
Structure random_structure(const GeometryKind& kind, Rng& rng, int max_elems);

/// Valid and open (a member of K); rejection sampling over random_structure.
Structure random_open_structure(const GeometryKind& kind, Rng& rng, int max_elems);

/// Random subset of the element ids (each kept with probability p).
IdList random_subset(const Structure& s, Rng& rng, double p = 0.5);

/// Random A with A <=o B, or empty when none found in a few tries
/// (the empty set always works for open B).
IdList random_strong_subset(const Structure& b, Rng& rng, int tries = 8);

} // namespace incidence::testgen
