#pragma once

#include "spinlsm/sesqui.hpp"

namespace spinlsm {

enum class Boundary { open, periodic };

/// Local Hermitian term acting on an explicit list of sites (row-major window
/// basis, first listed site most significant).
struct LocalTerm {
    std::vector<int> sites;
    CMat matrix;
};

struct ChainHamiltonian {
    int length = 0;
    std::vector<int> spins;  // two_s per site
    Boundary boundary = Boundary::open;
    std::vector<LocalTerm> terms;

    int site_dim(int x) const { return spins.at(x) + 1; }
    std::size_t dim() const;
    double term_norm_bound() const;  // max operator norm over terms

    // Throws when a term is non-Hermitian, references bad sites, or has the
    // wrong window dimension.
    void validate() const;
};

// h_x = J_x Svec_x . Svec_{x+1}; couplings has length L-1 (open) or L.
ChainHamiltonian build_heisenberg(const std::vector<int>& spins,
                                  const std::vector<double>& couplings, Boundary boundary);

// h_x = J (S1_x S1_{x+1} + S2_x S2_{x+1}), uniform spin.
ChainHamiltonian build_xx(int length, int two_s, double j, Boundary boundary);

// max over terms and group elements of ||Xi(g)(h_term) - h_term||_max, with
// the per-site representation chosen by family: "z2xz2" or "z2_tr".
double onsite_invariance_residual(const ChainHamiltonian& h, const std::string& family);

// max over terms of ||[h_term, sum_x S3_x]||_max on the term window.
double u1_invariance_residual(const ChainHamiltonian& h);

// Rtilde = reflection about `center` composed with the pi-rotation
// exp(-i pi S1) on every site. Returns max mismatch between the transformed
// and the original term content, grouped by (sorted) support.
double rtilde_invariance_residual(const ChainHamiltonian& h, int center);

// Full-chain action of Rtilde on a state vector (monomial: permutation plus
// phases). Requires a reflection-symmetric spin profile.
CVec apply_rtilde(const ChainHamiltonian& h, int center, const CVec& psi);

// exp(-i pi S1) on one spin-two_s/2 site; numerically monomial.
CMat pi_rotation_about_1(int two_s);

}  // namespace spinlsm
