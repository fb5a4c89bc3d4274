#pragma once

#include <optional>
#include <string>
#include <vector>

#include "incidence/structure.hpp"

namespace incidence {

/// A linear order on B minus A with a convex partition into pieces.
/// The order is the concatenation of the pieces.
struct HFOrder {
    std::vector<IdList> pieces;

    IdList flat() const;
    bool empty() const { return pieces.empty(); }
};

enum class Verdict { Open, Closed };

/// Machine-checkable evidence: an HF-order when open, a closed
/// configuration (no hyperfree tuple over the base within it) when closed.
struct Certificate {
    Verdict verdict = Verdict::Open;
    HFOrder order;  // open evidence
    IdList witness; // closed evidence
    bool open() const { return verdict == Verdict::Open; }
};

/// Decide A <=o B by hyperfree peeling. Deterministic: at each step the
/// lexicographically least hyperfree tuple is removed (loose ends before
/// clean arcs for n-gons); the open order is the reverse removal order.
Certificate is_open_over(const Structure& b, const IdList& a);

/// Exhaustive subset oracle for the same question. Returns some nonempty
/// D inside B minus A with no hyperfree tuple in A+D, or nullopt.
std::optional<IdList> closed_witness_bruteforce(const Structure& b, const IdList& a,
                                                std::size_t bound = 16);

enum class VerifyMode { Fast, Exhaustive };

struct VerifyResult {
    bool ok = true;
    std::string violation;
};

/// Check (H1) structurally and (H2) piece by piece. Fast mode tests only the
/// maximal predecessor set; exhaustive mode tests every subset of it.
VerifyResult verify_hf_order(const Structure& b, const IdList& a, const HFOrder& hf,
                             VerifyMode mode = VerifyMode::Fast);

/// Incidence neighbours of A plus one representative (lexicographically
/// least outside A) per local-equivalence class touching A.
IdList gaifman_closure(const Structure& m, const IdList& a);

/// HF-closure of C with respect to the order: downward Gaifman saturation,
/// iterated to the least fixed point; result is a union of whole pieces.
IdList hf_closure(const Structure& m, const IdList& base, const HFOrder& hf, const IdList& c);

struct IntrinsicClosure {
    IdList one_shot;    // A plus the union of minimal closed extensions
    IdList fixed_point; // the union operation iterated until stable
};

/// Exhaustive small-instance computation of icl(A) in M.
IntrinsicClosure intrinsic_closure(const Structure& m, const IdList& a, std::size_t bound = 16);

} // namespace incidence
