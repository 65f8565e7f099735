#include "spinlsm/spectra.hpp"

#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace spinlsm {

using namespace std::complex_literals;

namespace {

struct CompiledTerm {
    std::vector<std::size_t> strides;  // per listed site
    std::vector<int> dims;
    int wdim = 1;
    std::vector<std::ptrdiff_t> delta;  // wdim x wdim basis-index offsets
    CMat matrix;
};

struct Compiled {
    std::size_t dim = 0;
    std::vector<std::size_t> stride;  // per chain site
    std::vector<CompiledTerm> terms;
};

Compiled compile(const ChainHamiltonian& h) {
    h.validate();
    Compiled c;
    c.stride.resize(h.length);
    std::size_t acc = 1;
    for (int x = h.length - 1; x >= 0; --x) {
        c.stride[x] = acc;
        acc *= (std::size_t)h.site_dim(x);
    }
    c.dim = acc;
    for (const auto& t : h.terms) {
        CompiledTerm ct;
        for (int x : t.sites) {
            ct.strides.push_back(c.stride[x]);
            ct.dims.push_back(h.site_dim(x));
            ct.wdim *= h.site_dim(x);
        }
        ct.delta.assign((std::size_t)ct.wdim * ct.wdim, 0);
        const int k = (int)ct.dims.size();
        std::vector<int> rdig(k), cdig(k);
        for (int r = 0; r < ct.wdim; ++r) {
            int rem = r;
            for (int i = k - 1; i >= 0; --i) {
                rdig[i] = rem % ct.dims[i];
                rem /= ct.dims[i];
            }
            for (int col = 0; col < ct.wdim; ++col) {
                rem = col;
                for (int i = k - 1; i >= 0; --i) {
                    cdig[i] = rem % ct.dims[i];
                    rem /= ct.dims[i];
                }
                std::ptrdiff_t d = 0;
                for (int i = 0; i < k; ++i)
                    d += (std::ptrdiff_t)(cdig[i] - rdig[i]) * (std::ptrdiff_t)ct.strides[i];
                ct.delta[(std::size_t)r * ct.wdim + col] = d;
            }
        }
        ct.matrix = t.matrix;
        c.terms.push_back(std::move(ct));
    }
    return c;
}

inline int window_row(const CompiledTerm& ct, std::size_t s) {
    int r = 0;
    for (std::size_t i = 0; i < ct.dims.size(); ++i)
        r = r * ct.dims[i] + (int)(s / ct.strides[i]) % ct.dims[i];
    return r;
}

void apply_full(const Compiled& c, const CVec& psi, CVec& out, bool parallel) {
    const std::ptrdiff_t n = (std::ptrdiff_t)c.dim;
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t s = 0; s < n; ++s) {
        std::complex<double> acc = 0.0;
        for (const auto& ct : c.terms) {
            const int r = window_row(ct, (std::size_t)s);
            const std::ptrdiff_t* d = &ct.delta[(std::size_t)r * ct.wdim];
            for (int col = 0; col < ct.wdim; ++col) {
                const std::complex<double> m = ct.matrix(r, col);
                if (m != 0.0) acc += m * psi(s + d[col]);
            }
        }
        out(s) = acc;
    }
}

// --- U(1) sectors ---

struct Sector {
    int two_m = 0;
    std::vector<std::size_t> states;
};

std::vector<Sector> u1_sectors(const ChainHamiltonian& h, const Compiled& c) {
    std::map<int, Sector> by_m;
    for (std::size_t s = 0; s < c.dim; ++s) {
        int m = 0;
        for (int x = 0; x < h.length; ++x)
            m += h.spins[x] - 2 * ((int)(s / c.stride[x]) % h.site_dim(x));
        auto& sec = by_m[m];
        sec.two_m = m;
        sec.states.push_back(s);
    }
    std::vector<Sector> out;
    for (auto& [m, sec] : by_m) out.push_back(std::move(sec));
    return out;
}

// pos: full-dim lookup, -1 outside the sector
CVec sector_apply(const Compiled& c, const Sector& sec, const std::vector<std::ptrdiff_t>& pos,
                  const CVec& psi) {
    const std::ptrdiff_t n = (std::ptrdiff_t)sec.states.size();
    CVec out(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const std::size_t s = sec.states[i];
        std::complex<double> acc = 0.0;
        for (const auto& ct : c.terms) {
            const int r = window_row(ct, s);
            const std::ptrdiff_t* d = &ct.delta[(std::size_t)r * ct.wdim];
            for (int col = 0; col < ct.wdim; ++col) {
                const std::complex<double> m = ct.matrix(r, col);
                if (m == 0.0) continue;
                const std::ptrdiff_t p = pos[s + d[col]];
                if (p >= 0) acc += m * psi(p);
            }
        }
        out(i) = acc;
    }
    return out;
}

struct EigPairs {
    std::vector<double> vals;       // ascending
    std::vector<CVec> vecs;         // sector coordinates
    std::vector<double> residuals;  // ||Hv - Ev||
};

constexpr std::size_t kDenseCutoff = 2048;

EigPairs dense_lowest(const std::function<CVec(const CVec&)>& mv, std::size_t dim, int k) {
    CMat m(dim, dim);
    CVec e = CVec::Zero(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        e(j) = 1.0;
        m.col(j) = mv(e);
        e(j) = 0.0;
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (m + m.adjoint()));
    EigPairs out;
    const int kk = (int)std::min<std::size_t>(k, dim);
    for (int i = 0; i < kk; ++i) {
        out.vals.push_back(es.eigenvalues()(i));
        out.vecs.push_back(es.eigenvectors().col(i));
        out.residuals.push_back((mv(out.vecs.back()) - out.vals[i] * out.vecs.back()).norm());
    }
    return out;
}

EigPairs lanczos_lowest(const std::function<CVec(const CVec&)>& mv, std::size_t dim, int k) {
    if (dim <= kDenseCutoff) return dense_lowest(mv, dim, k);
    const int cap = (int)std::min<std::size_t>(dim, 600);
    int m = std::min(cap, std::max(3 * k + 30, 80));
    std::mt19937 rng(0x1ab0a);
    std::normal_distribution<double> gauss;
    CVec v0(dim);
    for (std::size_t i = 0; i < dim; ++i) v0(i) = {gauss(rng), gauss(rng)};
    v0.normalize();
    for (;;) {
        std::vector<CVec> basis{v0};
        std::vector<double> alpha, beta;
        double bnext = 0.0;
        bool breakdown = false;
        for (int j = 0; j < m; ++j) {
            CVec w = mv(basis[j]);
            const double a = std::real(basis[j].dot(w));
            alpha.push_back(a);
            w -= a * basis[j];
            if (j > 0) w -= beta[j - 1] * basis[j - 1];
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& b : basis) w -= b.dot(w) * b;
            bnext = w.norm();
            if (bnext < 1e-12) {
                breakdown = true;
                break;
            }
            if (j + 1 < m) {
                beta.push_back(bnext);
                basis.push_back(w / bnext);
            }
        }
        const int steps = (int)alpha.size();
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(steps, steps);
        for (int i = 0; i < steps; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < steps) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        const int kk = std::min(k, steps);
        bool converged = breakdown;
        if (!breakdown) {
            converged = true;
            for (int i = 0; i < kk; ++i)
                if (bnext * std::abs(es.eigenvectors()(steps - 1, i)) > 0.1 * kTolEig)
                    converged = false;
        }
        if (converged || m >= cap) {
            EigPairs out;
            for (int i = 0; i < kk; ++i) {
                CVec v = CVec::Zero(dim);
                for (int j = 0; j < steps; ++j) v += es.eigenvectors()(j, i) * basis[j];
                v.normalize();
                const double val = es.eigenvalues()(i);
                out.vals.push_back(val);
                out.residuals.push_back((mv(v) - val * v).norm());
                out.vecs.push_back(std::move(v));
            }
            return out;
        }
        m = std::min(cap, 2 * m);
    }
}

struct SolvedSectors {
    Compiled compiled;
    std::vector<Sector> sectors;              // empty when U(1) is broken
    std::vector<EigPairs> pairs;              // parallel to sectors (or single full-space entry)
};

SolvedSectors solve_sectors(const ChainHamiltonian& h, int k) {
    SolvedSectors out;
    out.compiled = compile(h);
    if (out.compiled.dim > kDimCap)
        throw std::runtime_error("lowest_spectrum: Hilbert dimension exceeds the cap");
    const bool u1 = u1_invariance_residual(h) <= 1e-12;
    if (u1) {
        out.sectors = u1_sectors(h, out.compiled);
        std::vector<std::ptrdiff_t> pos(out.compiled.dim, -1);
        for (const auto& sec : out.sectors) {
            for (std::size_t i = 0; i < sec.states.size(); ++i)
                pos[sec.states[i]] = (std::ptrdiff_t)i;
            auto mv = [&](const CVec& v) { return sector_apply(out.compiled, sec, pos, v); };
            out.pairs.push_back(lanczos_lowest(mv, sec.states.size(), k));
            for (std::size_t s : sec.states) pos[s] = -1;
        }
    } else {
        Sector full;
        full.states.resize(out.compiled.dim);
        for (std::size_t s = 0; s < out.compiled.dim; ++s) full.states[s] = s;
        auto mv = [&](const CVec& v) {
            CVec o(v.size());
            apply_full(out.compiled, v, o, true);
            return o;
        };
        out.sectors.push_back(std::move(full));
        out.pairs.push_back(lanczos_lowest(mv, out.compiled.dim, k));
    }
    return out;
}

CVec embed(const Sector& sec, const CVec& v, std::size_t dim) {
    CVec full = CVec::Zero(dim);
    for (std::size_t i = 0; i < sec.states.size(); ++i) full(sec.states[i]) = v(i);
    return full;
}

}  // namespace

CVec apply_hamiltonian(const ChainHamiltonian& h, const CVec& psi) {
    Compiled c = compile(h);
    if ((std::size_t)psi.size() != c.dim)
        throw std::invalid_argument("apply_hamiltonian: state dimension mismatch");
    CVec out(psi.size());
    apply_full(c, psi, out, true);
    return out;
}

CVec apply_hamiltonian_serial(const ChainHamiltonian& h, const CVec& psi) {
    Compiled c = compile(h);
    if ((std::size_t)psi.size() != c.dim)
        throw std::invalid_argument("apply_hamiltonian_serial: state dimension mismatch");
    CVec out(psi.size());
    apply_full(c, psi, out, false);
    return out;
}

SpectrumResult lowest_spectrum(const ChainHamiltonian& h, int k) {
    if (k < 1) throw std::invalid_argument("lowest_spectrum: k must be >= 1");
    SolvedSectors ss = solve_sectors(h, k + 4);
    std::vector<std::pair<double, double>> merged;  // (value, residual)
    for (const auto& p : ss.pairs)
        for (std::size_t i = 0; i < p.vals.size(); ++i)
            merged.push_back({p.vals[i], p.residuals[i]});
    std::sort(merged.begin(), merged.end());
    if (merged.empty()) throw std::runtime_error("lowest_spectrum: no eigenvalues");

    auto same_cluster = [](double a, double b) {
        return std::abs(b - a) <= kTolDeg * std::max(1.0, std::abs(b));
    };
    std::size_t n = std::min<std::size_t>(k, merged.size());
    while (n < merged.size() && same_cluster(merged[n - 1].first, merged[n].first)) ++n;

    SpectrumResult r;
    for (std::size_t i = 0; i < n; ++i) {
        r.eigenvalues.push_back(merged[i].first);
        r.max_residual = std::max(r.max_residual, merged[i].second);
    }
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && same_cluster(r.eigenvalues[j - 1], r.eigenvalues[j])) ++j;
        r.multiplicities.push_back((int)(j - i));
        i = j;
    }
    r.gap = (r.multiplicities.size() >= 2)
                ? r.eigenvalues[r.multiplicities[0]] - r.eigenvalues[0]
                : 0.0;
    return r;
}

GroundSpace ground_space(const ChainHamiltonian& h) {
    SolvedSectors ss = solve_sectors(h, 4);
    double e0 = std::numeric_limits<double>::infinity();
    for (const auto& p : ss.pairs)
        if (!p.vals.empty()) e0 = std::min(e0, p.vals[0]);
    GroundSpace gs;
    gs.energy = e0;
    for (std::size_t sidx = 0; sidx < ss.sectors.size(); ++sidx) {
        const auto& p = ss.pairs[sidx];
        for (std::size_t i = 0; i < p.vals.size(); ++i)
            if (std::abs(p.vals[i] - e0) <= kTolDeg * std::max(1.0, std::abs(e0)))
                gs.vectors.push_back(embed(ss.sectors[sidx], p.vecs[i], ss.compiled.dim));
    }
    return gs;
}

GapScanResult gap_scan(const std::function<ChainHamiltonian(int)>& family,
                       const std::vector<int>& lengths, int k) {
    GapScanResult out;
    std::vector<double> lx, ly;
    for (int l : lengths) {
        SpectrumResult s = lowest_spectrum(family(l), k);
        out.table.push_back({l, s.gap});
        if (s.gap > 0) {
            lx.push_back(std::log((double)l));
            ly.push_back(std::log(s.gap));
        }
    }
    if (lx.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            mx += lx[i];
            my += ly[i];
        }
        mx /= lx.size();
        my /= ly.size();
        double num = 0, den = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            num += (lx[i] - mx) * (ly[i] - my);
            den += (lx[i] - mx) * (lx[i] - mx);
        }
        if (den > 0) out.alpha = -num / den;
    }
    return out;
}

TwistData twist_operator(const ChainHamiltonian& h, int ell, int center) {
    h.validate();
    if (ell < 1) throw std::invalid_argument("twist_operator: ell must be >= 1");
    if (center - ell < 0 || center + ell >= h.length)
        throw std::invalid_argument("twist_operator: window outside the chain");
    Compiled c = compile(h);
    TwistData td;
    td.ell = ell;
    td.center = center;
    td.diagonal.resize(c.dim);
    for (std::size_t s = 0; s < c.dim; ++s) {
        double angle = 0.0;
        for (int x = center - ell; x <= center + ell; ++x) {
            const double m3 =
                0.5 * (h.spins[x] - 2 * ((int)(s / c.stride[x]) % h.site_dim(x)));
            angle += (double)(x - center + ell) / ell * M_PI * m3;
        }
        td.diagonal(s) = std::exp(-1i * angle);
    }
    return td;
}

namespace {

// sum_t ||[A_t, [A_t, h_t]]|| / 2 with A_t the twist phase on the term
// window relative to its first site, reduced mod 2 pi (a full 2 pi twist of
// S3 is a scalar and costs nothing).
double twist_second_order_bound(const ChainHamiltonian& h, int ell, int center) {
    auto weight = [&](int x) {
        return (x >= center - ell && x <= center + ell)
                   ? (double)(x - center + ell) / ell * M_PI
                   : 0.0;
    };
    double total = 0.0;
    for (const auto& t : h.terms) {
        const int k = (int)t.sites.size();
        CMat a = CMat::Zero(t.matrix.rows(), t.matrix.cols());
        for (int i = 0; i < k; ++i) {
            double c = weight(t.sites[i]) - weight(t.sites[0]);
            c = std::remainder(c, 2.0 * M_PI);
            if (c == 0.0) continue;
            CMat piece = CMat::Identity(1, 1);
            for (int j = 0; j < k; ++j) {
                const int d = h.site_dim(t.sites[j]);
                CMat site = CMat::Identity(d, d);
                if (i == j) {
                    CMat s1, s2, s3;
                    spin_matrices(h.spins[t.sites[j]], s1, s2, s3);
                    site = s3;
                }
                CMat next((piece.rows()) * d, (piece.cols()) * d);
                for (int r = 0; r < piece.rows(); ++r)
                    for (int cc = 0; cc < piece.cols(); ++cc)
                        next.block(r * d, cc * d, d, d) = piece(r, cc) * site;
                piece = std::move(next);
            }
            a += c * piece;
        }
        if (a.cwiseAbs().maxCoeff() == 0.0) continue;
        CMat dd = a * (a * t.matrix - t.matrix * a) - (a * t.matrix - t.matrix * a) * a;
        Eigen::SelfAdjointEigenSolver<CMat> es(dd, Eigen::EigenvaluesOnly);
        total += 0.5 * es.eigenvalues().cwiseAbs().maxCoeff();
    }
    return total;
}

}  // namespace

std::vector<TwistEnergyPoint> twist_energy_check(const ChainHamiltonian& h, const CVec& psi0,
                                                 const std::vector<int>& ells, int center) {
    if (u1_invariance_residual(h) > 1e-12)
        throw std::invalid_argument("twist_energy_check: Hamiltonian is not U(1) invariant");
    if (ells.empty()) return {};
    Compiled c = compile(h);
    if ((std::size_t)psi0.size() != c.dim)
        throw std::invalid_argument("twist_energy_check: state dimension mismatch");
    CVec hpsi(psi0.size());
    apply_full(c, psi0, hpsi, true);
    const double e0 = std::real(psi0.dot(hpsi)) / psi0.squaredNorm();
    std::vector<int> sorted = ells;
    std::sort(sorted.begin(), sorted.end());
    std::vector<TwistEnergyPoint> out;
    for (const int ell : sorted) {
        TwistData u = twist_operator(h, ell, center);
        double de[2];
        for (int s = 0; s < 2; ++s) {
            CVec phi = s == 0 ? CVec(u.diagonal.cwiseProduct(psi0))
                              : CVec(u.diagonal.conjugate().cwiseProduct(psi0));
            CVec hphi(phi.size());
            apply_full(c, phi, hphi, true);
            de[s] = std::real(phi.dot(hphi)) / phi.squaredNorm() - e0;
            if (de[s] < -1e-12)
                throw std::runtime_error("twist_energy_check: variational positivity violated");
        }
        const double sym = 0.5 * (de[0] + de[1]);
        const double bound = twist_second_order_bound(h, ell, center);
        if (sym > bound + 1e-9) {
            std::ostringstream os;
            os << "twist_energy_check: symmetrized Delta E = " << sym
               << " exceeds the commutator bound " << bound << " at ell = " << ell;
            throw std::runtime_error(os.str());
        }
        out.push_back({ell, de[0], sym, bound});
    }
    return out;
}

std::complex<double> twist_expectation_check(const ChainHamiltonian& h, int ell, int center,
                                             double tol_exp) {
    if (rtilde_invariance_residual(h, center) > 1e-10)
        throw std::invalid_argument(
            "twist_expectation_check: Hamiltonian is not Rtilde symmetric");
    TwistData u = twist_operator(h, ell, center);
    GroundSpace gs = ground_space(h);
    if (gs.vectors.empty()) throw std::runtime_error("twist_expectation_check: no ground state");
    std::complex<double> val = 0.0;
    for (const auto& v : gs.vectors) val += v.dot(u.diagonal.cwiseProduct(v));
    val /= (double)gs.vectors.size();
    if (h.spins[center] % 2 == 1 && std::abs(val) > tol_exp) {
        std::ostringstream os;
        os << "twist_expectation_check: |<U_ell>| = " << std::abs(val)
           << " exceeds " << tol_exp << " for a half-odd-integral center spin";
        throw std::runtime_error(os.str());
    }
    return val;
}

}  // namespace spinlsm
