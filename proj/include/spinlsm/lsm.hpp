#pragma once

#include <map>
#include <optional>

#include "spinlsm/cohomology.hpp"

namespace spinlsm {

enum class SpatialSymmetry { translation, reflection_about_origin, star };

/// Abstract chain: a degree-2 class c_x per site and a spatial symmetry.
/// For star(m), site 0 is the center and x >= 1 is the arm coordinate
/// (classes are arm-independent by construction).
struct ChainSpec {
    GroupPtr group;
    CohomologyGroupPtr h2;
    SpatialSymmetry symmetry = SpatialSymmetry::translation;
    int star_arms = 0;  // m, only for star
    std::map<int, CohomologyClass> sites;

    // Missing sites carry the zero class.
    CohomologyClass site_class(int x) const;

    // Throws std::invalid_argument when the symmetry constraints on the
    // site classes fail.
    void validate() const;
};

struct Verdict {
    bool obstructed = false;
    std::string theorem;  // "translation" | "reflection" | "star(m)"
    std::optional<CohomologyClass> witness;  // m * witness = c0 when not obstructed
    std::string detail;
};

// Obstructed iff the uniform class c is nonzero.
Verdict check_translation(const ChainSpec& spec);

// Obstructed iff c0 = 2c has no solution c.
Verdict check_reflection(const ChainSpec& spec);

// Obstructed iff c_o = m c has no solution c; check_star(spec, 2) agrees with
// check_reflection on matched specs.
Verdict check_star(const ChainSpec& spec, int m);

struct Propagation {
    std::map<int, CohomologyClass> sigma_r;  // window plus one site past the right end
    std::map<int, CohomologyClass> sigma_l;  // sigma_l[x] = -sigma_r[x+1]
    bool consistent = true;
    std::string message;
};

// Propagates sigma^R_x = c_x + sigma^R_{x+1} from the seed across
// [lo, hi]; under translation asserts constancy, under reflection asserts
// sigma^L_x = sigma^R_{-x} (equivalently c_0 = 2 sigma^R_0). A failed
// assertion is reported, not thrown: it is the no-go mechanism.
Propagation propagate_indices(const ChainSpec& spec, int seed_site,
                              const CohomologyClass& seed, int lo, int hi);

/// One finite-subgroup instance of the compact-group reduction.
struct SubgroupInstance {
    int k = 0;                  // cyclic order of the pi_1 factor
    GroupPtr group;             // Z_k x Z_k
    CohomologyGroupPtr h2;      // isomorphic to Z_k
    CohomologyClass cls;
    Verdict verdict;            // translation verdict for this component
};

struct CompactReduction {
    std::vector<SubgroupInstance> instances;
    bool obstructed = false;
};

// For pi_1(G) = prod Z_{k_i} and c = (c_i), emits the finite instances
// (Z_{k_i} x Z_{k_i}, class c_i); obstructed iff any component obstructs.
CompactReduction reduce_compact_group(const std::vector<int>& pi1_factors,
                                      const std::vector<std::int64_t>& c);

}  // namespace spinlsm
