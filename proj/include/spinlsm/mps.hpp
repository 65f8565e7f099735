#pragma once

#include <optional>

#include "spinlsm/sesqui.hpp"

namespace spinlsm {

inline constexpr double kTolInjective = 1e-8;
inline constexpr double kTolEdge = 1e-8;
inline constexpr double kTolPower = 1e-12;
inline constexpr int kMaxPowerIters = 10000;

/// Translation-invariant MPS tensor: phys matrices A_j of size bond x bond.
/// Construction rescales to unit transfer spectral radius.
struct MPSTensor {
    int phys = 0, bond = 0;
    std::vector<CMat> tensors;

    // E(X) = sum_j A_j X A_j^dag
    CMat transfer(const CMat& x) const;
};

struct InjectivityReport {
    bool ok = true;
    std::string message;
    double spectral_radius = 0.0;
    double second_modulus = 0.0;   // next-largest transfer eigenvalue modulus
    double fixed_point_min_eig = 0.0;
};

// Normalizes in place (spectral radius -> 1) and checks injectivity: unique
// dominant transfer eigenvalue with positive-definite fixed point.
InjectivityReport normalize_and_check(MPSTensor& mps, double tol = kTolInjective);

// Positive-definite fixed point of the transfer map, trace-normalized.
CMat right_fixed_point(const MPSTensor& mps);

/// Bond-space symmetry action extracted from a symmetric MPS.
struct EdgeRep {
    SesquiRep rep;
    std::vector<PhaseQ> phases;      // extracted e^{i theta_g} per element
    std::vector<double> residuals;   // intertwiner fit error per element
};

// Solves sum_j u(g)_ij Atilde_j = e^{i theta_g} V(g) A_i V(g)^dag per element
// via the dominant eigenvector of the mixed transfer map. Throws on
// non-injective tensors and non-symmetric states.
EdgeRep extract_edge_rep(const MPSTensor& mps, const SesquiRep& sym,
                         double tol_edge = kTolEdge);

struct MainIdentityReport {
    CohomologyClass combined;   // edge class of the site-prepended state
    CohomologyClass expected;   // class(site_rep) + edge class of the chain
    bool holds = false;
};

// Checks sigma^R(prepended) = c(site_rep) + sigma^R(chain), realizing the
// prepend as a dimerized site_rep chain tensored with the two-site-blocked
// chain.
MainIdentityReport verify_main_identity(const MPSTensor& mps, const SesquiRep& sym,
                                        const SesquiRep& site_rep,
                                        const CohomologyGroupPtr& h2);

struct LeftRightIndices {
    CohomologyClass left, right;
    bool sum_is_zero = false;
};

// sigma^R from the tensor, sigma^L from the spatially reversed (transposed)
// tensor; checks sigma^L + sigma^R = 0.
LeftRightIndices left_right_indices(const MPSTensor& mps, const SesquiRep& sym,
                                    const CohomologyGroupPtr& h2);

// --- builders and tensor surgery ---

MPSTensor product_mps(const CVec& site_state);
MPSTensor aklt_mps();

// Blocks `sites` consecutive sites into one (phys^sites physical legs).
MPSTensor block_mps(const MPSTensor& mps, int sites);
SesquiRep block_rep(const SesquiRep& rep, int sites);

// Site-wise tensor product of two chains (physical index = p1*phys2 + p2).
MPSTensor tensor_mps(const MPSTensor& m1, const MPSTensor& m2);

// Gauge transform A_j -> W A_j W^{-1} (W invertible), then renormalize.
MPSTensor gauge_mps(const MPSTensor& mps, const CMat& w);

MPSTensor transpose_mps(const MPSTensor& mps);

// Two-site-blocked chain of maximally entangled site_rep pairs cut across the
// cell boundary; its edge carries site_rep's class. Throws when site_rep has
// no invariant bilinear pairing.
MPSTensor dimer_chain(const SesquiRep& site_rep);

// Clock-model SPT chain for G = Zn x Zn at level k (gcd(k,n) = 1): physical
// dimension n^2 indexed by group elements, bond dimension n, A^g = V(g)/sqrt(n)
// with V the k-twisted pair rep. Symmetric under clock_symmetry_rep(n, k);
// the edge carries a generator-level nonzero class.
MPSTensor clock_mps(int n, std::int64_t k);

// Genuine (diagonal character) action of Zn x Zn leaving clock_mps invariant.
SesquiRep clock_symmetry_rep(int n, std::int64_t k);

// Left regular representation u(x)|g> = |xg> (genuine, class 0).
SesquiRep left_regular_rep(GroupPtr g);

}  // namespace spinlsm
