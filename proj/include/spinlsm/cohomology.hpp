#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spinlsm/group.hpp"
#include "spinlsm/phase.hpp"
#include "spinlsm/snf.hpp"

namespace spinlsm {

/// Normalized phase-valued 2-cochain on G x G.
struct Cocycle2 {
    GroupPtr group;
    std::vector<PhaseQ> phases;  // row-major |G| x |G|

    PhaseQ& at(int g, int h) { return phases[g * group->order + h]; }
    const PhaseQ& at(int g, int h) const { return phases[g * group->order + h]; }

    static Cocycle2 trivial(GroupPtr g);
    Cocycle2 product(const Cocycle2& other) const;  // pointwise
    std::int64_t common_denominator() const;
};

/// 1-cochain with psi(e) = 1.
struct Cochain1 {
    GroupPtr group;
    std::vector<PhaseQ> phases;  // size |G|
};

struct CocycleReport {
    bool ok = true;
    std::string message;
    int f = -1, g = -1, h = -1;  // first violating triple, when any
};

// Checks normalization phi(g,e)=phi(e,g)=1 and the parity-twisted cocycle
// condition over all triples, in exact rational arithmetic.
CocycleReport validate_cocycle(const Cocycle2& phi);

// phi(g,h) = psi(g) * psi(h)^{p(g)} / psi(gh); always a valid cocycle.
Cocycle2 coboundary(const Cochain1& psi);

class CohomologyGroup;
using CohomologyGroupPtr = std::shared_ptr<const CohomologyGroup>;

/// Element of H^2(G, U(1)_p) in invariant-factor coordinates.
struct CohomologyClass {
    CohomologyGroupPtr parent;
    std::vector<std::int64_t> coords;  // coords[i] in [0, d_i)

    bool is_zero() const;
    bool operator==(const CohomologyClass& o) const;
    bool operator!=(const CohomologyClass& o) const { return !(*this == o); }
};

CohomologyClass add(const CohomologyClass& a, const CohomologyClass& b);
CohomologyClass negate(const CohomologyClass& a);
CohomologyClass times(std::int64_t m, const CohomologyClass& a);

// Smallest x (in lexicographic coordinate order) with m*x = c, when solvable.
std::optional<CohomologyClass> solve_divisibility(std::int64_t m, const CohomologyClass& c);

/// The finite abelian group H^2(G, U(1)_p), computed over the discrete
/// coefficient grid Z_N inside U(1) and quotiented by all U(1)-coboundaries
/// that land on that grid.
class CohomologyGroup : public std::enable_shared_from_this<CohomologyGroup> {
  public:
    GroupPtr group;
    std::int64_t modulus = 1;                     // N
    std::vector<std::int64_t> invariant_factors;  // d1 | d2 | ..., each > 1

    // Class of a cocycle whose denominators all divide the modulus.
    // Throws CocycleDenominatorError otherwise.
    CohomologyClass class_of(const Cocycle2& phi) const;

    // Class of an arbitrary rational-phase cocycle: lifts the computation to
    // modulus lcm(N, denominators) and maps back through the canonical
    // isomorphism. Coordinates are always expressed in *this* group.
    CohomologyClass class_of_u1(const Cocycle2& phi) const;

    CohomologyClass zero_class() const;
    CohomologyClass class_from_coords(std::vector<std::int64_t> coords) const;

    // Deterministic representative cocycle of a class (denominator = modulus).
    Cocycle2 section(const CohomologyClass& c) const;

    std::size_t order() const;  // product of invariant factors
    std::vector<CohomologyClass> all_classes() const;

    bool same_structure(const CohomologyGroup& o) const;

    // internal data, exposed for serialization
    std::size_t ghash = 0;
    IMat vinv;                     // from SNF of the cocycle-condition matrix
    std::vector<bint> lattice_d;   // per-coordinate divisor N/gcd(s_i,N)
    IMat v;                        // column transform of that SNF
    IMat ux, uxinv;                // row transforms of the relation-matrix SNF
    std::vector<int> factor_pos;   // rows of ux carrying nontrivial factors

    friend CohomologyGroupPtr compute_H2(const GroupPtr&, std::int64_t);

  private:
    mutable std::map<std::int64_t, CohomologyGroupPtr> lifted_;  // cache by modulus
    mutable std::map<std::int64_t, std::vector<std::vector<std::int64_t>>> lift_table_;
};

struct CocycleDenominatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Computes H^2(G, U(1)_p). modulus <= 0 selects the default N = |G|.
CohomologyGroupPtr compute_H2(const GroupPtr& g, std::int64_t modulus = 0);

}  // namespace spinlsm
