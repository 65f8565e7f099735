#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "spinlsm/cohomology.hpp"
#include "spinlsm/group.hpp"

namespace spinlsm {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Tolerances for numerically-built representations.
inline constexpr double kTolUnitary = 1e-9;  // ||M^dag M - I||_max
inline constexpr double kTolScalar = 1e-9;   // scalar-multiple residual
inline constexpr double kTolSnap = 1e-6;     // phase distance to rational grid

/// Unitary or antiunitary operator; an antiunitary acts as v -> matrix*conj(v).
struct SesquiOperator {
    CMat matrix;
    bool conjugates = false;

    int dim() const { return (int)matrix.rows(); }
    CVec apply(const CVec& v) const {
        return conjugates ? CVec(matrix * v.conjugate()) : CVec(matrix * v);
    }
};

SesquiOperator compose(const SesquiOperator& a, const SesquiOperator& b);

/// Projective (co-)representation: element -> sesquilinear operator.
struct SesquiRep {
    GroupPtr group;
    int dim = 0;
    std::vector<SesquiOperator> ops;

    const SesquiOperator& op(int g) const { return ops[g]; }
};

struct RepReport {
    bool ok = true;
    std::string message;
    double max_unitarity_residual = 0.0;
    double max_scalar_residual = 0.0;
};

RepReport check_rep(const SesquiRep& rep, double tol_u = kTolUnitary,
                    double tol_s = kTolScalar);

// phi(g,h) from V(g)V(h) = phi(g,h) V(gh), snapped to the rational grid with
// the given denominator. Throws when the rep is not projective or a phase is
// off-grid.
Cocycle2 extract_cocycle(const SesquiRep& rep, std::int64_t snap_denominator,
                         double tol_s = kTolScalar, double tol_q = kTolSnap);

// Determinant-gauges the rep, extracts its cocycle and returns the degree-2
// class in the given cohomology group.
CohomologyClass classify(const SesquiRep& rep, const CohomologyGroupPtr& h2);

// Standard spin matrices for spin two_s/2; dimension two_s+1, S3 diagonal,
// basis ordered m = S, S-1, ..., -S. S2 entries are purely imaginary.
void spin_matrices(int two_s, CMat& s1, CMat& s2, CMat& s3);

// Z2xZ2 spin representation v(a_nu) = exp(-i pi S^nu).
SesquiRep spin_rep_z2z2(int two_s);

// Time-reversal representation v(a) = K exp(-i pi S^2) on the Z2 group with
// antiunitary generator.
SesquiRep spin_rep_timereversal(int two_s);

SesquiRep trivial_rep(GroupPtr group, int dim = 1);

SesquiRep tensor(const SesquiRep& r1, const SesquiRep& r2);

// Xi(g)(A) = V(g) A V(g)^*, with entrywise conjugation of A first for
// antiunitary g. A genuine (non-projective) action.
CMat adjoint_action(const SesquiRep& rep, int g, const CMat& a);

// SU(n) pair with a b = c b a, c = exp(2 pi i/n), and a^n = b^n = I (n odd)
// or c^{n/2} I (n even).
void almost_commuting_pair(int n, CMat& a, CMat& b);

// Projective rep of Zn x Zn sending the generators to the k-twisted pair.
SesquiRep representation_group_rep(int n, std::int64_t k);

// Multiplies each V(g), g != e, by the given unit phase (gauge transform).
SesquiRep rephase(const SesquiRep& rep, const std::vector<std::complex<double>>& psi);

}  // namespace spinlsm
