#include "spinlsm/mps.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace spinlsm {

CMat MPSTensor::transfer(const CMat& x) const {
    CMat out = CMat::Zero(bond, bond);
    for (const auto& a : tensors) out += a * x * a.adjoint();
    return out;
}

namespace {

// Dense transfer matrix T[(a,b),(c,d)] = sum_j A_j(a,c) conj(A_j(b,d)) acting
// on row-major vec(X).
CMat dense_transfer(const MPSTensor& mps) {
    const int d = mps.bond;
    CMat t = CMat::Zero(d * d, d * d);
    for (const auto& a : mps.tensors)
        for (int r = 0; r < d; ++r)
            for (int b = 0; b < d; ++b)
                for (int c = 0; c < d; ++c)
                    for (int e = 0; e < d; ++e)
                        t(r * d + b, c * d + e) += a(r, c) * std::conj(a(b, e));
    return t;
}

CMat unvec(const CVec& v, int d) {
    CMat x(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) x(i, j) = v(i * d + j);
    return x;
}

}  // namespace

InjectivityReport normalize_and_check(MPSTensor& mps, double tol) {
    InjectivityReport rep;
    if (mps.bond < 1 || mps.phys < 1 || (int)mps.tensors.size() != mps.phys) {
        rep.ok = false;
        rep.message = "malformed tensor";
        return rep;
    }
    Eigen::ComplexEigenSolver<CMat> es(dense_transfer(mps));
    const auto& ev = es.eigenvalues();
    int top = 0;
    for (int i = 1; i < ev.size(); ++i)
        if (std::abs(ev(i)) > std::abs(ev(top))) top = i;
    const double radius = std::abs(ev(top));
    if (radius <= 0) {
        rep.ok = false;
        rep.message = "zero transfer map";
        return rep;
    }
    const double scale = 1.0 / std::sqrt(radius);
    for (auto& a : mps.tensors) a *= scale;
    rep.spectral_radius = 1.0;
    double second = 0.0;
    for (int i = 0; i < ev.size(); ++i)
        if (i != top) second = std::max(second, std::abs(ev(i)) / radius);
    rep.second_modulus = second;
    if (std::abs(ev(top) / radius - 1.0) > tol) {
        rep.ok = false;
        rep.message = "dominant transfer eigenvalue is not real positive";
        return rep;
    }
    if (second >= 1.0 - tol) {
        rep.ok = false;
        rep.message = "degenerate dominant transfer eigenvalue";
        return rep;
    }
    // positive-definite fixed point
    CMat x = unvec(es.eigenvectors().col(top), mps.bond);
    std::complex<double> tr = x.trace();
    if (std::abs(tr) > 1e-14) x *= std::conj(tr) / std::abs(tr);
    x = CMat(0.5 * (x + x.adjoint()));
    Eigen::SelfAdjointEigenSolver<CMat> hs(x);
    const double lo = hs.eigenvalues().minCoeff(), hi = hs.eigenvalues().maxCoeff();
    rep.fixed_point_min_eig = (hi > 0) ? lo / hi : 0.0;
    if (rep.fixed_point_min_eig <= tol) {
        rep.ok = false;
        rep.message = "transfer fixed point is not positive definite";
        return rep;
    }
    return rep;
}

CMat right_fixed_point(const MPSTensor& mps) {
    CMat x = CMat::Identity(mps.bond, mps.bond);
    x /= x.trace().real();
    for (int it = 0; it < kMaxPowerIters; ++it) {
        CMat y = mps.transfer(x);
        const double tr = y.trace().real();
        if (tr <= 0) throw std::runtime_error("right_fixed_point: trace collapsed");
        y /= tr;
        const double diff = (y - x).cwiseAbs().maxCoeff();
        x = std::move(y);
        if (diff < kTolPower) break;
    }
    x = CMat(0.5 * (x + x.adjoint()));
    return x;
}

namespace {

// Dominant eigenpair of the mixed transfer F(X) = sum_i B_i X A_i^dag by power
// iteration from a fixed pseudorandom start.
void mixed_dominant(const std::vector<CMat>& b, const MPSTensor& mps,
                    std::complex<double>& eta, CMat& x, double& fit_residual) {
    const int d = mps.bond;
    std::mt19937 rng(0x5eed);
    std::normal_distribution<double> gauss;
    x = CMat(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) x(i, j) = {gauss(rng), gauss(rng)};
    x /= x.norm();
    fit_residual = 1.0;
    for (int it = 0; it < kMaxPowerIters; ++it) {
        CMat y = CMat::Zero(d, d);
        for (int i = 0; i < mps.phys; ++i) y += b[i] * x * mps.tensors[i].adjoint();
        eta = (x.adjoint() * y).trace();  // <X,Y> with ||X|| = 1
        const double yn = y.norm();
        if (yn <= 1e-300) throw std::runtime_error("mixed transfer collapsed to zero");
        fit_residual = (y - eta * x).norm() / yn;
        x = y / yn;
        if (fit_residual < kTolPower) break;
    }
}

std::complex<double> fix_phase(CMat& v) {
    for (int i = 0; i < v.rows(); ++i)
        for (int j = 0; j < v.cols(); ++j)
            if (std::abs(v(i, j)) > 1e-8) {
                std::complex<double> ph = v(i, j) / std::abs(v(i, j));
                v *= std::conj(ph);
                return ph;
            }
    throw std::runtime_error("edge operator is numerically zero");
}

}  // namespace

EdgeRep extract_edge_rep(const MPSTensor& mps, const SesquiRep& sym, double tol_edge) {
    if (sym.dim != mps.phys)
        throw std::invalid_argument("extract_edge_rep: physical dimension mismatch");
    MPSTensor norm = mps;
    auto inj = normalize_and_check(norm);
    if (!inj.ok) throw std::runtime_error("extract_edge_rep: " + inj.message);

    CMat rho = right_fixed_point(norm);
    Eigen::SelfAdjointEigenSolver<CMat> rs(rho);
    if (rs.eigenvalues().minCoeff() <= 0)
        throw std::runtime_error("extract_edge_rep: fixed point not positive definite");
    // right-canonical gauge: A -> rho^{-1/2} A rho^{1/2} turns the fixed point
    // into I/bond, so the intertwiners come out unitary whatever gauge the
    // caller handed in (no-op for tensors that are already canonical)
    {
        const CMat s = rs.operatorSqrt(), sinv = rs.operatorInverseSqrt();
        for (auto& a : norm.tensors) a = sinv * a * s;
        rho = right_fixed_point(norm);
        rs.compute(rho);
    }
    CMat rho_inv = rs.operatorInverseSqrt() * rs.operatorInverseSqrt();

    const auto& G = *sym.group;
    EdgeRep out;
    out.rep.group = sym.group;
    out.rep.dim = norm.bond;
    out.rep.ops.resize(G.order);
    out.phases.resize(G.order);
    out.residuals.assign(G.order, 0.0);
    out.rep.ops[0] = {CMat::Identity(norm.bond, norm.bond), false};
    out.phases[0] = PhaseQ{0, 1};

    const std::int64_t den = std::lcm<std::int64_t>(
        std::lcm<std::int64_t>(2 * G.order, 2 * std::max(norm.phys, 1)),
        2 * std::max(norm.bond, 1));

    for (int g = 1; g < G.order; ++g) {
        const bool anti = G.par(g) == -1;
        const CMat& m = sym.op(g).matrix;
        std::vector<CMat> b(norm.phys, CMat::Zero(norm.bond, norm.bond));
        for (int i = 0; i < norm.phys; ++i)
            for (int j = 0; j < norm.phys; ++j) {
                if (m(i, j) == 0.0) continue;
                b[i] += m(i, j) * (anti ? norm.tensors[j].conjugate() : norm.tensors[j]);
            }
        std::complex<double> eta;
        CMat xstar;
        double fit;
        mixed_dominant(b, norm, eta, xstar, fit);
        if (std::abs(std::abs(eta) - 1.0) > tol_edge) {
            std::ostringstream os;
            os << "state is not symmetric under element " << G.labels[g]
               << " (mixed transfer modulus " << std::abs(eta) << ")";
            throw std::runtime_error(os.str());
        }
        // X* = eta V rho up to scale; unitary part via polar decomposition
        CMat w = xstar * rho_inv;
        Eigen::JacobiSVD<CMat> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
        CMat v = svd.matrixU() * svd.matrixV().adjoint();
        fix_phase(v);
        double res = 0.0;
        for (int i = 0; i < norm.phys; ++i)
            res = std::max(res,
                           (b[i] - eta * v * norm.tensors[i] * v.adjoint()).cwiseAbs().maxCoeff());
        if (res > tol_edge * 100) {
            std::ostringstream os;
            os << "edge intertwiner fit failed for element " << G.labels[g] << " (residual "
               << res << ")";
            throw std::runtime_error(os.str());
        }
        PhaseQ q;
        if (!snap_phase(eta, den, kTolSnap, q))
            throw std::runtime_error("extract_edge_rep: symmetry phase off the rational grid");
        out.rep.ops[g] = {std::move(v), anti};
        out.phases[g] = q;
        out.residuals[g] = res;
    }
    return out;
}

MainIdentityReport verify_main_identity(const MPSTensor& mps, const SesquiRep& sym,
                                        const SesquiRep& site_rep,
                                        const CohomologyGroupPtr& h2) {
    MainIdentityReport rep;
    EdgeRep chain_edge = extract_edge_rep(mps, sym);
    rep.expected = add(classify(site_rep, h2), classify(chain_edge.rep, h2));

    MPSTensor combined = tensor_mps(dimer_chain(site_rep), block_mps(mps, 2));
    SesquiRep comb_sym = tensor(block_rep(site_rep, 2), block_rep(sym, 2));
    EdgeRep comb_edge = extract_edge_rep(combined, comb_sym);
    rep.combined = classify(comb_edge.rep, h2);
    rep.holds = rep.combined == rep.expected;
    return rep;
}

LeftRightIndices left_right_indices(const MPSTensor& mps, const SesquiRep& sym,
                                    const CohomologyGroupPtr& h2) {
    LeftRightIndices lr{classify(extract_edge_rep(transpose_mps(mps), sym).rep, h2),
                        classify(extract_edge_rep(mps, sym).rep, h2), false};
    lr.sum_is_zero = add(lr.left, lr.right).is_zero();
    return lr;
}

MPSTensor product_mps(const CVec& site_state) {
    if (site_state.size() < 1) throw std::invalid_argument("product_mps: empty state");
    MPSTensor mps;
    mps.phys = (int)site_state.size();
    mps.bond = 1;
    for (int j = 0; j < mps.phys; ++j) {
        CMat a(1, 1);
        a(0, 0) = site_state(j);
        mps.tensors.push_back(std::move(a));
    }
    return mps;
}

MPSTensor aklt_mps() {
    MPSTensor mps;
    mps.phys = 3;
    mps.bond = 2;
    mps.tensors.assign(3, CMat::Zero(2, 2));
    const double a = std::sqrt(2.0 / 3.0), c = std::sqrt(1.0 / 3.0);
    mps.tensors[0](0, 1) = a;    // m = +1: sqrt(2/3) sigma+
    mps.tensors[1](0, 0) = -c;   // m =  0: -sqrt(1/3) sigma3
    mps.tensors[1](1, 1) = c;
    mps.tensors[2](1, 0) = -a;   // m = -1: -sqrt(2/3) sigma-
    return mps;
}

MPSTensor block_mps(const MPSTensor& mps, int sites) {
    if (sites < 1) throw std::invalid_argument("block_mps: sites must be >= 1");
    MPSTensor out;
    out.bond = mps.bond;
    out.phys = 1;
    out.tensors = {CMat::Identity(mps.bond, mps.bond)};
    for (int s = 0; s < sites; ++s) {
        std::vector<CMat> next;
        next.reserve(out.phys * mps.phys);
        for (const auto& left : out.tensors)
            for (const auto& a : mps.tensors) next.push_back(left * a);
        out.tensors = std::move(next);
        out.phys *= mps.phys;
    }
    return out;
}

SesquiRep block_rep(const SesquiRep& rep, int sites) {
    if (sites < 1) throw std::invalid_argument("block_rep: sites must be >= 1");
    SesquiRep out = rep;
    for (int s = 1; s < sites; ++s) out = tensor(out, rep);
    return out;
}

MPSTensor tensor_mps(const MPSTensor& m1, const MPSTensor& m2) {
    MPSTensor out;
    out.phys = m1.phys * m2.phys;
    out.bond = m1.bond * m2.bond;
    for (int p = 0; p < m1.phys; ++p)
        for (int q = 0; q < m2.phys; ++q) {
            CMat k(out.bond, out.bond);
            for (int i = 0; i < m1.bond; ++i)
                for (int j = 0; j < m1.bond; ++j)
                    k.block(i * m2.bond, j * m2.bond, m2.bond, m2.bond) =
                        m1.tensors[p](i, j) * m2.tensors[q];
            out.tensors.push_back(std::move(k));
        }
    return out;
}

MPSTensor gauge_mps(const MPSTensor& mps, const CMat& w) {
    if (w.rows() != mps.bond || w.cols() != mps.bond)
        throw std::invalid_argument("gauge_mps: bad gauge matrix shape");
    Eigen::FullPivLU<CMat> lu(w);
    if (!lu.isInvertible()) throw std::invalid_argument("gauge_mps: gauge matrix is singular");
    CMat winv = lu.inverse();
    MPSTensor out = mps;
    for (auto& a : out.tensors) a = w * a * winv;
    return out;
}

MPSTensor transpose_mps(const MPSTensor& mps) {
    MPSTensor out = mps;
    for (auto& a : out.tensors) a = a.transpose().eval();
    return out;
}

namespace {

// m (ω or conj ω for antiunitary m) m^T = χ ω for every group element.
bool invariant_form_ok(const SesquiRep& rep, const CMat& omega) {
    Eigen::JacobiSVD<CMat> svd(omega);
    if (svd.singularValues().minCoeff() < 1e-8 * svd.singularValues().maxCoeff()) return false;
    for (int g = 1; g < rep.group->order; ++g) {
        const auto& op = rep.op(g);
        CMat lhs = op.matrix *
                   (op.conjugates ? CMat(omega.conjugate()) : omega) * op.matrix.transpose();
        std::complex<double> chi = (omega.adjoint() * lhs).trace() / omega.squaredNorm();
        if (std::abs(std::abs(chi) - 1.0) > 1e-8) return false;
        if ((lhs - chi * omega).cwiseAbs().maxCoeff() > 1e-8) return false;
    }
    return true;
}

}  // namespace

MPSTensor dimer_chain(const SesquiRep& site_rep) {
    const int d = site_rep.dim;
    std::vector<CMat> candidates;
    candidates.push_back(CMat::Identity(d, d));
    CMat spin_form = CMat::Zero(d, d);
    for (int i = 0; i < d; ++i) spin_form(i, d - 1 - i) = (i % 2 == 0) ? 1.0 : -1.0;
    candidates.push_back(spin_form);
    // generic fallback: eigenvectors of the first nontrivial kron(m, m)
    for (int g = 1; g < site_rep.group->order; ++g) {
        if (site_rep.op(g).conjugates) continue;
        const CMat& m = site_rep.op(g).matrix;
        CMat k(d * d, d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) k.block(i * d, j * d, d, d) = m(i, j) * m;
        Eigen::ComplexEigenSolver<CMat> es(k);
        for (int c = 0; c < d * d; ++c) candidates.push_back(unvec(es.eigenvectors().col(c), d));
        break;
    }
    CMat omega;
    bool found = false;
    for (const auto& cand : candidates)
        if (invariant_form_ok(site_rep, cand)) {
            omega = cand / cand.norm();
            found = true;
            break;
        }
    if (!found)
        throw std::runtime_error("dimer_chain: representation has no invariant bilinear pairing");

    MPSTensor mps;
    mps.phys = d * d;  // two sites per cell
    mps.bond = d;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            CMat t = CMat::Zero(d, d);
            for (int alpha = 0; alpha < d; ++alpha) t(alpha, b) = omega(alpha, a);
            mps.tensors.push_back(std::move(t));
        }
    return mps;
}

MPSTensor clock_mps(int n, std::int64_t k) {
    if (n < 2 || std::gcd((std::int64_t)n, ((k % n) + n) % n) != 1)
        throw std::invalid_argument("clock_mps: need n >= 2 and gcd(k, n) = 1");
    SesquiRep v = representation_group_rep(n, k);
    MPSTensor mps;
    mps.phys = n * n;
    mps.bond = n;
    const double s = 1.0 / std::sqrt((double)n);
    for (int g = 0; g < n * n; ++g) mps.tensors.push_back(s * v.op(g).matrix);
    return mps;
}

SesquiRep clock_symmetry_rep(int n, std::int64_t k) {
    SesquiRep v = representation_group_rep(n, k);
    SesquiRep rep;
    rep.group = v.group;
    rep.dim = n * n;
    for (int x = 0; x < n * n; ++x) {
        // V(x) V(g) V(x)^dag = chi_x(g) V(g); u(x) = diag conj(chi_x(g))
        CMat u = CMat::Zero(rep.dim, rep.dim);
        for (int g = 0; g < n * n; ++g) {
            std::complex<double> chi =
                (v.op(x).matrix * v.op(g).matrix * v.op(x).matrix.adjoint() *
                 v.op(g).matrix.adjoint())
                    .trace() /
                double(n);
            u(g, g) = std::conj(chi) / std::abs(chi);
        }
        rep.ops.push_back({std::move(u), false});
    }
    return rep;
}

SesquiRep left_regular_rep(GroupPtr g) {
    SesquiRep rep;
    rep.group = std::move(g);
    const auto& G = *rep.group;
    rep.dim = G.order;
    for (int x = 0; x < G.order; ++x) {
        CMat m = CMat::Zero(G.order, G.order);
        for (int j = 0; j < G.order; ++j) m(G.mul(x, j), j) = 1.0;
        rep.ops.push_back({std::move(m), G.par(x) == -1});
    }
    return rep;
}

}  // namespace spinlsm
