#pragma once

#include <functional>

#include "spinlsm/hamiltonian.hpp"

namespace spinlsm {

inline constexpr double kTolEig = 1e-8;   // eigenpair residual
inline constexpr double kTolDeg = 1e-9;   // relative degeneracy clustering
inline constexpr double kTolExp = 1e-10;  // twist expectation
inline constexpr std::size_t kDimCap = 2000000;

// H psi on the full product basis (site 0 most significant). The first form
// parallelizes over basis states; the serial form is the reference kernel.
CVec apply_hamiltonian(const ChainHamiltonian& h, const CVec& psi);
CVec apply_hamiltonian_serial(const ChainHamiltonian& h, const CVec& psi);

struct SpectrumResult {
    std::vector<double> eigenvalues;    // ascending, degenerate copies included
    std::vector<int> multiplicities;    // one entry per cluster
    double gap = 0.0;                   // ground cluster to next cluster
    double max_residual = 0.0;          // max ||Hv - Ev|| over returned pairs
};

// k lowest eigenvalues (cluster-completed); uses the U(1) block decomposition
// whenever the Hamiltonian commutes with sum_x S3_x.
SpectrumResult lowest_spectrum(const ChainHamiltonian& h, int k);

struct GroundSpace {
    double energy = 0.0;
    std::vector<CVec> vectors;  // orthonormal, full Hilbert space
};

GroundSpace ground_space(const ChainHamiltonian& h);

struct GapPoint {
    int length = 0;
    double gap = 0.0;
};

struct GapScanResult {
    std::vector<GapPoint> table;
    double alpha = 0.0;  // fitted exponent of gap ~ L^-alpha (0 when unfittable)
};

GapScanResult gap_scan(const std::function<ChainHamiltonian(int)>& family,
                       const std::vector<int>& lengths, int k = 6);

/// U_ell = exp[-i sum_x ((x - center + ell)/ell) pi S3_x] over
/// [center-ell, center+ell]; diagonal in the product basis.
struct TwistData {
    int ell = 0, center = 0;
    CVec diagonal;
};

TwistData twist_operator(const ChainHamiltonian& h, int ell, int center);

struct TwistEnergyPoint {
    int ell = 0;
    double delta_e = 0.0;      // <U psi0|H|U psi0> - E0
    double delta_e_sym = 0.0;  // symmetrized over U and U^dag
    double bound = 0.0;        // second-order commutator bound, O(1/ell)
};

// Delta E(ell) for the local twist. Asserts variational positivity of both
// twists and the rigorous bound delta_e_sym <= sum_t ||[A_t,[A_t,h_t]]||/2
// (the C/ell decay with an explicit constant); requires a U(1)-invariant
// Hamiltonian.
std::vector<TwistEnergyPoint> twist_energy_check(const ChainHamiltonian& h, const CVec& psi0,
                                                 const std::vector<int>& ells, int center);

// Average of <U_ell> over the (Rtilde-invariant) ground multiplet. Requires
// Rtilde symmetry; asserts |value| <= kTolExp when the center spin is
// half-odd-integral.
std::complex<double> twist_expectation_check(const ChainHamiltonian& h, int ell, int center,
                                             double tol_exp = kTolExp);

}  // namespace spinlsm
