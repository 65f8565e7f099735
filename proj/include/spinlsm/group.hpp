#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace spinlsm {

/// Finite group given by its multiplication table, together with a parity
/// homomorphism into {+1,-1} marking antiunitarily-acting elements.
/// Element 0 is always the identity.
struct GradedGroup {
    int order = 0;
    std::vector<int> mult;    // row-major order x order, mult[g*order+h] = g*h
    std::vector<int> parity;  // per element, +1 or -1
    std::vector<std::string> labels;
    std::vector<int> inverse;  // filled by finalize()

    int mul(int g, int h) const { return mult[g * order + h]; }
    int inv(int g) const { return inverse[g]; }
    int par(int g) const { return parity[g]; }

    // Computes inverses; throws std::invalid_argument if the table is not a
    // group or parity is not a homomorphism.
    void finalize();
};

using GroupPtr = std::shared_ptr<const GradedGroup>;

struct GroupReport {
    bool ok = true;
    std::string message;  // first violation, empty when ok
};

// Full-table check of the group axioms and the parity homomorphism.
GroupReport validate(const GradedGroup& g);

// Cyclic group of order n; parity_of_generator in {+1,-1}.
// Rejects odd n with parity -1 (not a homomorphism).
GroupPtr make_cyclic(int n, int parity_of_generator);

// Direct product; element (g1,g2) has index g1*|G2| + g2.
GroupPtr direct_product(const GroupPtr& g1, const GroupPtr& g2);

// Builtin registry used by the CLI and the serializer:
//   trivial, z2, z2_tr, z3, z4, z2xz2, z3xz3, znxzn:<n>
GroupPtr builtin_group(const std::string& name);

// Stable content hash, used to decide whether two CohomologyGroup objects
// refer to the same underlying group.
std::size_t group_hash(const GradedGroup& g);

}  // namespace spinlsm
