#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spinlsm/hamiltonian.hpp"
#include "spinlsm/serialize.hpp"
#include "spinlsm/spectra.hpp"

using namespace spinlsm;

namespace {

const std::complex<double> I(0, 1);

CVec random_state(std::size_t dim, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss;
    CVec v(dim);
    for (std::size_t i = 0; i < dim; ++i) v(i) = {gauss(rng), gauss(rng)};
    return v / v.norm();
}

// e^{2 pi i S3} on the center site, diagonal over the full basis
CVec center_phase(const ChainHamiltonian& h, int center, const CVec& psi) {
    CVec out = psi;
    std::size_t stride = 1;
    for (int x = h.length - 1; x > center; --x) stride *= h.site_dim(x);
    const int d = h.site_dim(center);
    for (std::size_t i = 0; i < (std::size_t)out.size(); ++i) {
        const int idx = (int)(i / stride % d);
        const double m3 = h.spins[center] / 2.0 - idx;
        out(i) *= std::exp(2.0 * M_PI * I * m3);
    }
    return out;
}

}  // namespace

TEST_CASE("hamiltonian construction and symmetries") {
    auto h = build_heisenberg({1, 1, 1, 1, 1, 1}, {1, 1, 1, 1, 1, 1}, Boundary::periodic);
    h.validate();
    CHECK(h.terms.size() == 6);
    CHECK(h.dim() == 64);
    CHECK(h.term_norm_bound() == doctest::Approx(0.75));
    CHECK(onsite_invariance_residual(h, "z2xz2") < 1e-12);
    CHECK(onsite_invariance_residual(h, "z2_tr") < 1e-12);
    CHECK(u1_invariance_residual(h) < 1e-12);
    CHECK(rtilde_invariance_residual(h, 3) < 1e-12);

    auto xx = build_xx(6, 1, 1.0, Boundary::open);
    xx.validate();
    CHECK(u1_invariance_residual(xx) < 1e-12);

    auto bad = h;
    bad.terms[0].matrix(0, 1) += 0.5;  // breaks Hermiticity
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("two-site Heisenberg is exact") {
    auto h = build_heisenberg({1, 1}, {1.0}, Boundary::open);
    auto s = lowest_spectrum(h, 4);
    REQUIRE(s.eigenvalues.size() == 4);
    CHECK(s.eigenvalues[0] == doctest::Approx(-0.75).epsilon(1e-12));
    for (int i = 1; i < 4; ++i) CHECK(s.eigenvalues[i] == doctest::Approx(0.25).epsilon(1e-12));
    REQUIRE(s.multiplicities.size() >= 2);
    CHECK(s.multiplicities[0] == 1);
    CHECK(s.multiplicities[1] == 3);  // triplet
    CHECK(s.gap == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(s.max_residual < 1e-10);
}

TEST_CASE("decoupled chain is fully degenerate") {
    auto h = build_heisenberg({1, 1, 1}, {0.0, 0.0}, Boundary::open);
    auto s = lowest_spectrum(h, 8);
    for (double e : s.eigenvalues) CHECK(std::abs(e) < 1e-12);
}

TEST_CASE("parallel and serial matvec agree") {
    auto h = load_hamiltonian("heisenberg:1:10:periodic");
    auto psi = random_state(h.dim(), 5);
    CVec a = apply_hamiltonian(h, psi);
    CVec b = apply_hamiltonian_serial(h, psi);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-13);
    // mixed spins too
    auto hm = build_heisenberg({1, 2, 1, 2, 1}, {0.7, 1.1, 0.9, 1.3}, Boundary::open);
    auto psim = random_state(hm.dim(), 6);
    CHECK((apply_hamiltonian(hm, psim) - apply_hamiltonian_serial(hm, psim))
              .cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("sector solver matches a dense diagonalization") {
    auto h = load_hamiltonian("heisenberg:1:8:periodic");
    const std::size_t dim = h.dim();
    CMat dense(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        CVec e = CVec::Zero(dim);
        e(j) = 1.0;
        dense.col(j) = apply_hamiltonian(h, e);
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(dense);
    auto s = lowest_spectrum(h, 20);
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
        CHECK(std::abs(s.eigenvalues[i] - es.eigenvalues()(i)) < 1e-10);
}

TEST_CASE("xx chain matches the free-fermion solution") {
    auto h = load_hamiltonian("xx:1:12:periodic");
    auto oracle = oracles::xx_fermion_oracle(12, 1.0, 0, 0);
    auto gs = ground_space(h);
    CHECK(std::abs(gs.energy - oracle.e0) < 1e-8);
    REQUIRE(gs.vectors.size() == 1);

    for (int ell : {2, 3}) {
        auto pts = twist_energy_check(h, gs.vectors[0], {ell}, 6);
        auto tw = oracles::xx_fermion_oracle(12, 1.0, ell, 6);
        CHECK_MESSAGE(std::abs(pts[0].delta_e - tw.delta_e) < 1e-8, "ell=", ell, " ed=",
                      pts[0].delta_e, " oracle=", tw.delta_e);
    }
}

TEST_CASE("lanczos path agrees with the fermion oracle at L=14") {
    auto h = load_hamiltonian("xx:1:14:periodic");  // largest sector 3432 > dense cutoff
    auto s = lowest_spectrum(h, 1);
    auto oracle = oracles::xx_fermion_oracle(14, 1.0, 0, 0);
    CHECK(std::abs(s.eigenvalues[0] - oracle.e0) < 1e-8);
    CHECK(s.max_residual < 1e-7);
}

TEST_CASE("twist over a decoupled window costs nothing") {
    auto h = build_heisenberg({1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
                              {1, 1, 0, 0, 0, 0, 0, 1, 1}, Boundary::open);
    auto gs = ground_space(h);
    auto pts = twist_energy_check(h, gs.vectors[0], {2}, 5);
    CHECK(std::abs(pts[0].delta_e) < 1e-12);
    CHECK(pts[0].bound < 1e-12);
}

TEST_CASE("twist energy obeys the commutator bound") {
    auto h = load_hamiltonian("heisenberg:1:10:periodic");
    auto gs = ground_space(h);
    auto pts = twist_energy_check(h, gs.vectors[0], {2, 3, 4}, 5);
    for (const auto& p : pts) {
        CHECK(p.delta_e >= -1e-12);
        CHECK(p.delta_e_sym <= p.bound + 1e-9);
    }
    // decay: the bound itself scales as C/ell
    CHECK(pts[2].bound * 4 == doctest::Approx(pts[0].bound * 2).epsilon(0.05));
}

TEST_CASE("twist energy rejects a U(1)-breaking hamiltonian") {
    auto h = build_heisenberg({1, 1, 1, 1, 1}, {1, 1, 1, 1}, Boundary::open);
    CMat s1, s2, s3;
    spin_matrices(1, s1, s2, s3);
    h.terms.push_back({{2}, s1});
    CHECK(u1_invariance_residual(h) > 0.1);
    CVec psi = CVec::Zero(h.dim());
    psi(0) = 1.0;
    CHECK_THROWS(twist_energy_check(h, psi, {1}, 2));
}

TEST_CASE("rtilde twist identity holds entrywise") {
    struct Case { std::string name; int center; int max_ell; };
    for (const auto& c : {Case{"heisenberg:1:9:open", 4, 3}, Case{"heisenberg:2:5:open", 2, 2},
                          Case{"xx:1:9:periodic", 4, 3}}) {
        auto h = load_hamiltonian(c.name);
        for (int ell = 2; ell <= c.max_ell; ++ell) {
            auto u = twist_operator(h, ell, c.center);
            for (unsigned seed = 0; seed < 5; ++seed) {
                CVec psi = random_state(h.dim(), 100 + seed);
                // R(U psi) = e^{2 pi i S3_center} U (R psi)
                CVec lhs = apply_rtilde(h, c.center, CVec(u.diagonal.cwiseProduct(psi)));
                CVec rpsi = apply_rtilde(h, c.center, psi);
                CVec rhs = center_phase(h, c.center, CVec(u.diagonal.cwiseProduct(rpsi)));
                CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
            }
        }
    }
}

TEST_CASE("twist expectation vanishes on half-odd-integer-centered chains") {
    auto h = load_hamiltonian("heisenberg:1:9:open");
    auto val = twist_expectation_check(h, 2, 4);
    CHECK(std::abs(val) <= 1e-10);

    // asymmetric profile: rtilde is not a symmetry, the check must refuse
    auto bad = build_heisenberg({1, 1, 1, 2, 1}, {1, 1, 1, 1}, Boundary::open);
    CHECK_THROWS(twist_expectation_check(bad, 1, 2));
}

TEST_CASE("gap scan produces positive decreasing gaps") {
    auto family = [](int L) { return load_hamiltonian("heisenberg:1:" + std::to_string(L) +
                                                      ":periodic"); };
    auto scan = gap_scan(family, {6, 8, 10});
    REQUIRE(scan.table.size() == 3);
    for (const auto& p : scan.table) CHECK(p.gap > 0.0);
    CHECK(scan.table[2].gap < scan.table[0].gap);
    CHECK(scan.alpha > 0.0);
}
