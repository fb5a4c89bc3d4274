#pragma once

#include <string>
#include <vector>

#include "incidence/structure.hpp"

namespace incidence {

/// A golden configuration with its declared build order and the designated
/// first, second and last elements.
struct WitnessConfig {
    std::string name;
    Structure structure;
    IdList declared_order;
    ElementId first, second, last;
};

/// Fixture names: steiner23-c6, net3-c6, moebius-c6, ngon4-amalgam-fail.
const std::vector<std::string>& builtin_names();

/// The raw text of the fixture file (golden data, never regenerated).
const std::string& builtin_text(const std::string& name);

/// Parse the fixture. For ngon4-amalgam-fail the declared order is empty and
/// the structure is the rejected free amalgam.
WitnessConfig builtin(const std::string& name);

struct C6Clause {
    bool pass = false;
    std::string detail;
};

struct C6Report {
    C6Clause a, b, c;
    bool ok() const { return a.pass && b.pass && c.pass; }
};

/// Clause (a): c0c1 strong in C with no relation between c0 and c1.
/// Clause (b): {c_n} not strong in C, c_n of c0's sort.
/// Clause (c): the k-iterates stay in the class for k = 1..k_max.
C6Report verify_c6(const WitnessConfig& w, int k_max);

} // namespace incidence
