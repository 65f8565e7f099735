#include "spinlsm/hamiltonian.hpp"

#include <map>
#include <stdexcept>

namespace spinlsm {

using namespace std::complex_literals;

namespace {

CMat kron(const CMat& a, const CMat& b) {
    CMat k(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

CMat spin_component(int two_s, int nu) {
    CMat s1, s2, s3;
    spin_matrices(two_s, s1, s2, s3);
    return nu == 1 ? s1 : nu == 2 ? s2 : s3;
}

}  // namespace

std::size_t ChainHamiltonian::dim() const {
    std::size_t d = 1;
    for (int x = 0; x < length; ++x) d *= (std::size_t)site_dim(x);
    return d;
}

double ChainHamiltonian::term_norm_bound() const {
    double b = 0.0;
    for (const auto& t : terms) {
        Eigen::SelfAdjointEigenSolver<CMat> es(t.matrix, Eigen::EigenvaluesOnly);
        b = std::max(b, es.eigenvalues().cwiseAbs().maxCoeff());
    }
    return b;
}

void ChainHamiltonian::validate() const {
    if (length < 1 || (int)spins.size() != length)
        throw std::invalid_argument("ChainHamiltonian: inconsistent length");
    for (int s : spins)
        if (s < 0) throw std::invalid_argument("ChainHamiltonian: negative spin");
    for (const auto& t : terms) {
        long wd = 1;
        for (int x : t.sites) {
            if (x < 0 || x >= length)
                throw std::invalid_argument("ChainHamiltonian: term site out of range");
            wd *= site_dim(x);
        }
        if (t.matrix.rows() != wd || t.matrix.cols() != wd)
            throw std::invalid_argument("ChainHamiltonian: term window dimension mismatch");
        if ((t.matrix - t.matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("ChainHamiltonian: non-Hermitian term");
    }
}

ChainHamiltonian build_heisenberg(const std::vector<int>& spins,
                                  const std::vector<double>& couplings, Boundary boundary) {
    ChainHamiltonian h;
    h.length = (int)spins.size();
    h.spins = spins;
    h.boundary = boundary;
    const int nbonds = boundary == Boundary::open ? h.length - 1 : h.length;
    if ((int)couplings.size() != nbonds)
        throw std::invalid_argument("build_heisenberg: coupling count mismatch");
    for (int x = 0; x < nbonds; ++x) {
        const int y = (x + 1) % h.length;
        CMat m = CMat::Zero(h.site_dim(x) * h.site_dim(y), h.site_dim(x) * h.site_dim(y));
        for (int nu = 1; nu <= 3; ++nu)
            m += kron(spin_component(spins[x], nu), spin_component(spins[y], nu));
        h.terms.push_back({{x, y}, couplings[x] * m});
    }
    h.validate();
    return h;
}

ChainHamiltonian build_xx(int length, int two_s, double j, Boundary boundary) {
    ChainHamiltonian h;
    h.length = length;
    h.spins.assign(length, two_s);
    h.boundary = boundary;
    const int nbonds = boundary == Boundary::open ? length - 1 : length;
    const int d = two_s + 1;
    CMat m = CMat::Zero(d * d, d * d);
    for (int nu = 1; nu <= 2; ++nu)
        m += kron(spin_component(two_s, nu), spin_component(two_s, nu));
    for (int x = 0; x < nbonds; ++x) h.terms.push_back({{x, (x + 1) % length}, j * m});
    h.validate();
    return h;
}

double onsite_invariance_residual(const ChainHamiltonian& h, const std::string& family) {
    std::map<int, SesquiRep> reps;  // keyed by two_s
    for (int s : h.spins)
        if (!reps.count(s))
            reps.emplace(s, family == "z2xz2"   ? spin_rep_z2z2(s)
                            : family == "z2_tr" ? spin_rep_timereversal(s)
                                                : throw std::invalid_argument(
                                                      "onsite_invariance_residual: unknown "
                                                      "family " +
                                                      family));
    const int order = reps.begin()->second.group->order;
    double res = 0.0;
    for (const auto& t : h.terms)
        for (int g = 1; g < order; ++g) {
            CMat v = CMat::Identity(1, 1);
            bool anti = false;
            for (int x : t.sites) {
                const auto& op = reps.at(h.spins[x]).op(g);
                v = kron(v, op.matrix);
                anti = op.conjugates;
            }
            CMat xi = v * (anti ? CMat(t.matrix.conjugate()) : t.matrix) * v.adjoint();
            res = std::max(res, (xi - t.matrix).cwiseAbs().maxCoeff());
        }
    return res;
}

double u1_invariance_residual(const ChainHamiltonian& h) {
    double res = 0.0;
    for (const auto& t : h.terms) {
        CMat s3tot = CMat::Zero(t.matrix.rows(), t.matrix.cols());
        for (std::size_t i = 0; i < t.sites.size(); ++i) {
            CMat piece = CMat::Identity(1, 1);
            for (std::size_t j = 0; j < t.sites.size(); ++j) {
                const int d = h.site_dim(t.sites[j]);
                piece = kron(piece, i == j ? spin_component(h.spins[t.sites[j]], 3)
                                           : CMat(CMat::Identity(d, d)));
            }
            s3tot += piece;
        }
        res = std::max(res, (t.matrix * s3tot - s3tot * t.matrix).cwiseAbs().maxCoeff());
    }
    return res;
}

CMat pi_rotation_about_1(int two_s) {
    CMat s1 = spin_component(two_s, 1);
    Eigen::SelfAdjointEigenSolver<CMat> es(s1);
    CVec ph(s1.rows());
    for (int i = 0; i < s1.rows(); ++i) ph(i) = std::exp(-1i * M_PI * es.eigenvalues()(i));
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

// monomial matrix u: e_j -> phase[j] e_{perm[j]}
void monomial_decompose(const CMat& u, std::vector<int>& perm,
                        std::vector<std::complex<double>>& phase) {
    const int d = (int)u.rows();
    perm.assign(d, -1);
    phase.assign(d, 0.0);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            const double a = std::abs(u(i, j));
            if (a > 0.5) {
                perm[j] = i;
                phase[j] = u(i, j);
            } else if (a > 1e-10) {
                throw std::runtime_error("monomial_decompose: matrix is not monomial");
            }
        }
        if (perm[j] < 0 || std::abs(std::abs(phase[j]) - 1.0) > 1e-10)
            throw std::runtime_error("monomial_decompose: matrix is not monomial");
    }
}

int reflect_site(const ChainHamiltonian& h, int center, int x) {
    int r = 2 * center - x;
    if (h.boundary == Boundary::periodic) return ((r % h.length) + h.length) % h.length;
    if (r < 0 || r >= h.length)
        throw std::invalid_argument("reflection maps a site outside the open chain");
    return r;
}

// reorder term sites ascending, permuting the window basis to match
LocalTerm canonical_term(const ChainHamiltonian& h, LocalTerm t) {
    const int k = (int)t.sites.size();
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return t.sites[a] < t.sites[b]; });
    bool sorted = true;
    for (int i = 0; i < k; ++i) sorted = sorted && idx[i] == i;
    if (sorted) return t;
    std::vector<int> dims(k), new_sites(k);
    long wd = 1;
    for (int i = 0; i < k; ++i) {
        new_sites[i] = t.sites[idx[i]];
        dims[i] = h.site_dim(t.sites[i]);
        wd *= dims[i];
    }
    CMat p = CMat::Zero(wd, wd);
    for (long r = 0; r < wd; ++r) {
        std::vector<int> dig(k);
        long rem = r;
        for (int i = k - 1; i >= 0; --i) {
            dig[i] = rem % dims[i];
            rem /= dims[i];
        }
        long rp = 0;
        for (int i = 0; i < k; ++i) rp = rp * dims[idx[i]] + dig[idx[i]];
        p(rp, r) = 1.0;
    }
    return {std::move(new_sites), p * t.matrix * p.transpose()};
}

std::map<std::vector<int>, CMat> term_map(const ChainHamiltonian& h,
                                          const std::vector<LocalTerm>& terms) {
    std::map<std::vector<int>, CMat> m;
    for (const auto& raw : terms) {
        LocalTerm t = canonical_term(h, raw);
        auto it = m.find(t.sites);
        if (it == m.end())
            m.emplace(t.sites, t.matrix);
        else
            it->second += t.matrix;
    }
    return m;
}

}  // namespace

double rtilde_invariance_residual(const ChainHamiltonian& h, int center) {
    std::vector<LocalTerm> transformed;
    for (const auto& t : h.terms) {
        CMat v = CMat::Identity(1, 1);
        std::vector<int> new_sites;
        for (int x : t.sites) {
            const int r = reflect_site(h, center, x);
            if (h.spins[r] != h.spins[x])
                throw std::invalid_argument("rtilde: spin profile is not reflection symmetric");
            new_sites.push_back(r);
            v = kron(v, pi_rotation_about_1(h.spins[x]));
        }
        transformed.push_back({std::move(new_sites), v * t.matrix * v.adjoint()});
    }
    auto orig = term_map(h, h.terms);
    auto trans = term_map(h, transformed);
    if (orig.size() != trans.size()) return 1.0;
    double res = 0.0;
    for (const auto& [sites, m] : orig) {
        auto it = trans.find(sites);
        if (it == trans.end()) return 1.0;
        res = std::max(res, (m - it->second).cwiseAbs().maxCoeff());
    }
    return res;
}

CVec apply_rtilde(const ChainHamiltonian& h, int center, const CVec& psi) {
    const std::size_t n = h.dim();
    if ((std::size_t)psi.size() != n)
        throw std::invalid_argument("apply_rtilde: state dimension mismatch");
    std::vector<std::vector<int>> perm(h.length);
    std::vector<std::vector<std::complex<double>>> phase(h.length);
    std::vector<int> refl(h.length);
    for (int x = 0; x < h.length; ++x) {
        refl[x] = reflect_site(h, center, x);
        if (h.spins[refl[x]] != h.spins[x])
            throw std::invalid_argument("apply_rtilde: spin profile is not reflection symmetric");
        monomial_decompose(pi_rotation_about_1(h.spins[x]), perm[x], phase[x]);
    }
    std::vector<std::size_t> stride(h.length);
    std::size_t acc = 1;
    for (int x = h.length - 1; x >= 0; --x) {
        stride[x] = acc;
        acc *= (std::size_t)h.site_dim(x);
    }
    CVec out = CVec::Zero(n);
    std::vector<int> dig(h.length);
    for (std::size_t s = 0; s < n; ++s) {
        for (int x = 0; x < h.length; ++x) dig[x] = (int)(s / stride[x]) % h.site_dim(x);
        std::size_t t = 0;
        std::complex<double> ph = 1.0;
        for (int x = 0; x < h.length; ++x) {
            const int g = dig[refl[x]];  // reflection first, then the rotation
            t += stride[x] * (std::size_t)perm[x][g];
            ph *= phase[x][g];
        }
        out(t) += ph * psi(s);
    }
    return out;
}

}  // namespace spinlsm
