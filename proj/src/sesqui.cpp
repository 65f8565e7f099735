#include "spinlsm/sesqui.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace spinlsm {

using namespace std::complex_literals;

SesquiOperator compose(const SesquiOperator& a, const SesquiOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("compose: dimension mismatch");
    SesquiOperator out;
    out.matrix = a.conjugates ? CMat(a.matrix * b.matrix.conjugate()) : CMat(a.matrix * b.matrix);
    out.conjugates = a.conjugates != b.conjugates;
    return out;
}

namespace {

double unitarity_residual(const CMat& m) {
    CMat r = m.adjoint() * m - CMat::Identity(m.rows(), m.cols());
    return r.cwiseAbs().maxCoeff();
}

// residual and scalar for P = s * Q with unitary Q
std::complex<double> scalar_multiple(const CMat& p, const CMat& q, double& residual) {
    std::complex<double> s = (p * q.adjoint()).trace() / double(p.rows());
    residual = (p - s * q).cwiseAbs().maxCoeff();
    return s;
}

}  // namespace

RepReport check_rep(const SesquiRep& rep, double tol_u, double tol_s) {
    RepReport r;
    const auto& G = *rep.group;
    if ((int)rep.ops.size() != G.order) return {false, "operator table size mismatch", 0, 0};
    if (!rep.ops[0].matrix.isApprox(CMat::Identity(rep.dim, rep.dim), 1e-12) ||
        rep.ops[0].conjugates)
        return {false, "V(e) is not the identity", 0, 0};
    for (int g = 0; g < G.order; ++g) {
        if (rep.ops[g].dim() != rep.dim) return {false, "dimension mismatch", 0, 0};
        if (rep.ops[g].conjugates != (G.par(g) == -1))
            return {false, "conjugation flag does not follow the parity", 0, 0};
        r.max_unitarity_residual =
            std::max(r.max_unitarity_residual, unitarity_residual(rep.ops[g].matrix));
    }
    if (r.max_unitarity_residual > tol_u) return {false, "operator not unitary", r.max_unitarity_residual, 0};
    for (int g = 0; g < G.order; ++g)
        for (int h = 0; h < G.order; ++h) {
            SesquiOperator p = compose(rep.op(g), rep.op(h));
            double res;
            std::complex<double> s = scalar_multiple(p.matrix, rep.op(G.mul(g, h)).matrix, res);
            r.max_scalar_residual = std::max(r.max_scalar_residual, res);
            if (res > tol_s || std::abs(std::abs(s) - 1.0) > tol_s) {
                std::ostringstream os;
                os << "V(g)V(h) is not a unit scalar multiple of V(gh) at (" << g << "," << h
                   << "), residual " << res;
                return {false, os.str(), r.max_unitarity_residual, res};
            }
        }
    return r;
}

Cocycle2 extract_cocycle(const SesquiRep& rep, std::int64_t snap_denominator, double tol_s,
                         double tol_q) {
    if (snap_denominator < 1) throw std::invalid_argument("extract_cocycle: bad denominator");
    const auto& G = *rep.group;
    Cocycle2 out = Cocycle2::trivial(rep.group);
    for (int g = 0; g < G.order; ++g)
        for (int h = 0; h < G.order; ++h) {
            SesquiOperator p = compose(rep.op(g), rep.op(h));
            double res;
            std::complex<double> s = scalar_multiple(p.matrix, rep.op(G.mul(g, h)).matrix, res);
            if (res > tol_s)
                throw std::runtime_error("extract_cocycle: rep is not projective");
            PhaseQ q;
            if (!snap_phase(s, snap_denominator, tol_q, q))
                throw std::runtime_error(
                    "extract_cocycle: phase off the rational grid; gauge-fix or enlarge "
                    "the denominator");
            out.at(g, h) = q;
        }
    auto rep_ok = validate_cocycle(out);
    if (!rep_ok.ok)
        throw std::runtime_error("extract_cocycle: snapped table fails the cocycle condition: " +
                                 rep_ok.message);
    return out;
}

namespace {

// divide by the principal d-th root of det, arg in (-pi/d, pi/d]
CMat det_gauge(const CMat& m) {
    std::complex<double> dt = m.determinant();
    double a = std::arg(dt);  // (-pi, pi]
    std::complex<double> root = std::polar(std::pow(std::abs(dt), 1.0 / m.rows()),
                                           a / double(m.rows()));
    return m / root;
}

}  // namespace

CohomologyClass classify(const SesquiRep& rep, const CohomologyGroupPtr& h2) {
    SesquiRep gauged = rep;
    for (int g = 1; g < rep.group->order; ++g)
        gauged.ops[g].matrix = det_gauge(rep.ops[g].matrix);
    const std::int64_t den =
        std::lcm<std::int64_t>(2 * rep.group->order, 2 * std::max(rep.dim, 1));
    Cocycle2 phi = extract_cocycle(gauged, den);
    return h2->class_of_u1(phi);
}

void spin_matrices(int two_s, CMat& s1, CMat& s2, CMat& s3) {
    const int d = two_s + 1;
    const double s = two_s / 2.0;
    s1 = CMat::Zero(d, d);
    s2 = CMat::Zero(d, d);
    s3 = CMat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const double m = s - i;  // basis ordered m = S..-S
        s3(i, i) = m;
        if (i + 1 < d) {
            // <m|S+|m-1> = sqrt(s(s+1) - m(m-1))
            const double c = std::sqrt(s * (s + 1) - m * (m - 1));
            s1(i, i + 1) = 0.5 * c;
            s1(i + 1, i) = 0.5 * c;
            s2(i, i + 1) = -0.5i * c;
            s2(i + 1, i) = 0.5i * c;
        }
    }
}

namespace {

CMat expm_herm(const CMat& h, std::complex<double> factor) {
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    CVec ph(h.rows());
    for (int i = 0; i < h.rows(); ++i) ph(i) = std::exp(factor * es.eigenvalues()(i));
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

SesquiRep spin_rep_z2z2(int two_s) {
    if (two_s < 1) throw std::invalid_argument("spin_rep_z2z2: two_s must be >= 1");
    CMat s1, s2, s3;
    spin_matrices(two_s, s1, s2, s3);
    SesquiRep rep;
    rep.group = builtin_group("z2xz2");
    rep.dim = two_s + 1;
    rep.ops.resize(4);
    rep.ops[0] = {CMat::Identity(rep.dim, rep.dim), false};
    // element indices in z2xz2: 1 = (0,1), 2 = (1,0), 3 = (1,1)
    // use a1 -> index 2, a2 -> index 1, a3 -> index 3 = a1*a2
    rep.ops[2] = {expm_herm(s1, -1i * M_PI), false};
    rep.ops[1] = {expm_herm(s2, -1i * M_PI), false};
    rep.ops[3] = {expm_herm(s3, -1i * M_PI), false};
    // fix the a3 phase so that V(a1)V(a2) = phi * V(a3) has a clean phase;
    // any choice works, exp(-i pi S3) is already exact in this basis.
    return rep;
}

SesquiRep spin_rep_timereversal(int two_s) {
    if (two_s < 1) throw std::invalid_argument("spin_rep_timereversal: two_s must be >= 1");
    CMat s1, s2, s3;
    spin_matrices(two_s, s1, s2, s3);
    SesquiRep rep;
    rep.group = builtin_group("z2_tr");
    rep.dim = two_s + 1;
    rep.ops.resize(2);
    rep.ops[0] = {CMat::Identity(rep.dim, rep.dim), false};
    rep.ops[1] = {expm_herm(s2, -1i * M_PI), true};
    return rep;
}

SesquiRep trivial_rep(GroupPtr group, int dim) {
    SesquiRep rep;
    rep.group = std::move(group);
    rep.dim = dim;
    for (int g = 0; g < rep.group->order; ++g)
        rep.ops.push_back({CMat::Identity(dim, dim), rep.group->par(g) == -1});
    return rep;
}

SesquiRep tensor(const SesquiRep& r1, const SesquiRep& r2) {
    if (group_hash(*r1.group) != group_hash(*r2.group))
        throw std::invalid_argument("tensor: group mismatch");
    SesquiRep rep;
    rep.group = r1.group;
    rep.dim = r1.dim * r2.dim;
    for (int g = 0; g < rep.group->order; ++g) {
        CMat k(rep.dim, rep.dim);
        for (int i = 0; i < r1.dim; ++i)
            for (int j = 0; j < r1.dim; ++j)
                k.block(i * r2.dim, j * r2.dim, r2.dim, r2.dim) =
                    r1.op(g).matrix(i, j) * r2.op(g).matrix;
        rep.ops.push_back({std::move(k), r1.op(g).conjugates});
    }
    return rep;
}

CMat adjoint_action(const SesquiRep& rep, int g, const CMat& a) {
    if (a.rows() != rep.dim || a.cols() != rep.dim)
        throw std::invalid_argument("adjoint_action: dimension mismatch");
    const auto& v = rep.op(g);
    if (v.conjugates) return v.matrix * a.conjugate() * v.matrix.adjoint();
    return v.matrix * a * v.matrix.adjoint();
}

namespace {

std::complex<double> principal_root(std::complex<double> w, int n) {
    return std::polar(std::pow(std::abs(w), 1.0 / n), std::arg(w) / double(n));
}

void twisted_pair(int n, std::complex<double> c, CMat& a, CMat& b) {
    // gamma^n = c^{n(n-1)/2}
    std::complex<double> w = std::pow(c, double(n * (n - 1) / 2));
    std::complex<double> gamma = principal_root(w, n);
    a = CMat::Zero(n, n);
    b = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = gamma * std::pow(c, double(i));
        b(i, (i + 1) % n) = gamma;
    }
}

}  // namespace

void almost_commuting_pair(int n, CMat& a, CMat& b) {
    if (n < 2) throw std::invalid_argument("almost_commuting_pair: n must be >= 2");
    // twisted_pair(c, x, y) satisfies yx = c xy; swap the outputs for ab = c ba
    twisted_pair(n, std::polar(1.0, 2.0 * M_PI / n), b, a);
}

SesquiRep representation_group_rep(int n, std::int64_t k) {
    if (n < 2) throw std::invalid_argument("representation_group_rep: n must be >= 2");
    std::int64_t kk = ((k % n) + n) % n;
    CMat a, b;
    twisted_pair(n, std::polar(1.0, 2.0 * M_PI * double(kk) / n), a, b);
    SesquiRep rep;
    rep.group = builtin_group("znxzn:" + std::to_string(n));
    rep.dim = n;
    rep.ops.resize(n * n);
    CMat as = CMat::Identity(n, n);
    for (int s = 0; s < n; ++s) {
        CMat asbt = as;
        for (int t = 0; t < n; ++t) {
            rep.ops[s * n + t] = {asbt, false};
            asbt = asbt * b;
        }
        as = as * a;
    }
    // restore exact unitarity damaged by repeated products
    for (auto& op : rep.ops) {
        Eigen::JacobiSVD<CMat> svd(op.matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);
        op.matrix = svd.matrixU() * svd.matrixV().adjoint();
    }
    return rep;
}

SesquiRep rephase(const SesquiRep& rep, const std::vector<std::complex<double>>& psi) {
    if ((int)psi.size() != rep.group->order)
        throw std::invalid_argument("rephase: phase table size mismatch");
    SesquiRep out = rep;
    for (int g = 1; g < rep.group->order; ++g) out.ops[g].matrix *= psi[g];
    return out;
}

}  // namespace spinlsm
