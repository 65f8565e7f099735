#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spinlsm/mps.hpp"
#include "spinlsm/serialize.hpp"
#include "spinlsm/sesqui.hpp"

using namespace spinlsm;

namespace {

const std::complex<double> I(0, 1);

std::vector<std::string> example_reps() {
    return {"spin_z2xz2:1", "spin_z2xz2:2", "spin_z2xz2:3",
            "spin_tr:1",    "spin_tr:2",    "spin_tr:3",
            "repgroup:2:1", "repgroup:3:1", "repgroup:3:2", "repgroup:4:1",
            "repgroup:4:3", "regular:z3xz3", "clock_sym:3:1"};
}

SesquiRep random_gauge(const SesquiRep& rep, std::mt19937& rng) {
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::vector<std::complex<double>> psi(rep.group->order, 1.0);
    for (int g = 1; g < rep.group->order; ++g) psi[g] = std::exp(I * ang(rng));
    return rephase(rep, psi);
}

}  // namespace

TEST_CASE("spin matrices satisfy the su(2) algebra") {
    for (int two_s = 1; two_s <= 8; ++two_s) {
        CMat s1, s2, s3;
        spin_matrices(two_s, s1, s2, s3);
        const double s = two_s / 2.0;
        CMat casimir = s1 * s1 + s2 * s2 + s3 * s3;
        CHECK((casimir - s * (s + 1) * CMat::Identity(two_s + 1, two_s + 1))
                  .cwiseAbs().maxCoeff() < 1e-12);
        CHECK((s1 * s2 - s2 * s1 - I * s3).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((s2 * s3 - s3 * s2 - I * s1).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(s3.diagonal()(0).real() == doctest::Approx(s));
        CHECK(s2.real().cwiseAbs().maxCoeff() < 1e-15);  // convention: S2 imaginary
    }
}

TEST_CASE("example reps are projective reps") {
    for (const auto& name : example_reps()) {
        auto rep = load_rep(name);
        auto rr = check_rep(rep);
        CHECK_MESSAGE(rr.ok, name, ": ", rr.message);
        CHECK(rr.max_unitarity_residual < 1e-12);
        CHECK(!rep.ops[0].conjugates);
        for (int g = 0; g < rep.group->order; ++g)
            CHECK(rep.ops[g].conjugates == (rep.group->par(g) == -1));
    }
}

TEST_CASE("extracted cocycles validate") {
    for (const auto& name : {"spin_z2xz2:1", "spin_tr:1", "repgroup:3:2"}) {
        auto rep = load_rep(name);
        std::int64_t den = 2 * rep.group->order * std::max(rep.dim, 1);
        auto phi = extract_cocycle(rep, den);
        CHECK(validate_cocycle(phi).ok);
    }
}

TEST_CASE("spin parity law") {
    auto h2_s = compute_H2(builtin_group("z2xz2"));
    auto h2_t = compute_H2(builtin_group("z2_tr"));
    for (int two_s = 1; two_s <= 8; ++two_s) {
        auto cs = classify(spin_rep_z2z2(two_s), h2_s);
        auto ct = classify(spin_rep_timereversal(two_s), h2_t);
        CHECK(cs.coords == std::vector<std::int64_t>{two_s % 2});
        CHECK(ct.coords == std::vector<std::int64_t>{two_s % 2});
    }
}

TEST_CASE("Kramers sign") {
    // antiunitary generator squares to -1 exactly when the spin is half-odd
    for (int two_s = 1; two_s <= 4; ++two_s) {
        auto rep = spin_rep_timereversal(two_s);
        auto t2 = compose(rep.ops[1], rep.ops[1]);
        const double sign = (two_s % 2 == 0) ? 1.0 : -1.0;
        CHECK((t2.matrix - sign * CMat::Identity(rep.dim, rep.dim)).cwiseAbs().maxCoeff()
              < 1e-12);
    }
}

TEST_CASE("gauge invariance of classify") {
    std::mt19937 rng(31);
    auto names = example_reps();
    for (int trial = 0; trial < 30; ++trial) {
        const auto& name = names[rng() % names.size()];
        auto rep = load_rep(name);
        auto h2 = compute_H2(rep.group);
        auto base = classify(rep, h2);
        CHECK_MESSAGE(classify(random_gauge(rep, rng), h2) == base, name);
    }
}

TEST_CASE("tensor additivity of classify") {
    std::mt19937 rng(37);
    struct Pair { const char *a, *b; };
    const Pair pairs[] = {{"spin_z2xz2:1", "spin_z2xz2:1"}, {"spin_z2xz2:1", "spin_z2xz2:2"},
                          {"spin_tr:1", "spin_tr:1"},       {"spin_tr:1", "spin_tr:2"},
                          {"repgroup:3:1", "repgroup:3:2"}, {"repgroup:3:2", "repgroup:3:2"},
                          {"repgroup:4:1", "repgroup:4:3"}, {"repgroup:2:1", "spin_z2xz2:2"}};
    for (const auto& p : pairs) {
        auto r1 = load_rep(p.a), r2 = load_rep(p.b);
        auto h2 = compute_H2(r1.group);
        auto lhs = classify(tensor(r1, r2), h2);
        auto rhs = add(classify(r1, h2), classify(r2, h2));
        CHECK_MESSAGE(lhs == rhs, p.a, " (x) ", p.b);
        // additivity also survives random gauges on each factor
        auto lhs2 = classify(tensor(random_gauge(r1, rng), random_gauge(r2, rng)), h2);
        CHECK(lhs2 == rhs);
    }
}

TEST_CASE("adjoint action is genuine") {
    auto rep = load_rep("repgroup:3:1");
    CMat a = CMat::Random(3, 3);
    for (int g = 0; g < 9; ++g)
        for (int h = 0; h < 9; ++h) {
            CMat lhs = adjoint_action(rep, g, adjoint_action(rep, h, a));
            CMat rhs = adjoint_action(rep, rep.group->mul(g, h), a);
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
        }
}

TEST_CASE("almost-commuting pair relations") {
    for (int n = 2; n <= 8; ++n) {
        CMat a, b;
        almost_commuting_pair(n, a, b);
        const std::complex<double> c = std::exp(2.0 * M_PI * I / (double)n);
        CHECK((a * b - c * b * a).cwiseAbs().maxCoeff() < 1e-12);
        CMat an = CMat::Identity(n, n), bn = an;
        for (int k = 0; k < n; ++k) { an = a * an; bn = b * bn; }
        CHECK((an - bn).cwiseAbs().maxCoeff() < 1e-12);
        const std::complex<double> scal =
            (n % 2 == 0) ? std::pow(c, n / 2) : std::complex<double>(1.0);
        CHECK((an - scal * CMat::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
        // det = +-1: the pair sits inside SU(n) up to a sign convention
        CHECK(std::abs(std::abs(a.determinant()) - 1.0) < 1e-12);
    }
}

TEST_CASE("representation group reps exhaust H2(Zn x Zn)") {
    for (int n = 2; n <= 4; ++n) {
        auto h2 = compute_H2(builtin_group("znxzn:" + std::to_string(n)));
        std::set<std::vector<std::int64_t>> seen{std::vector<std::int64_t>{0}};
        for (std::int64_t k = 1; k < n; ++k)
            seen.insert(classify(representation_group_rep(n, k), h2).coords);
        CHECK(seen.size() == (std::size_t)n);
    }
    auto h2 = compute_H2(builtin_group("z3xz3"));
    CHECK(classify(representation_group_rep(3, 1), h2).coords == std::vector<std::int64_t>{1});
    CHECK(classify(representation_group_rep(3, 2), h2).coords == std::vector<std::int64_t>{2});
}

// --- MPS -------------------------------------------------------------------

TEST_CASE("product state carries the zero class") {
    CVec v(3);
    v << 0, 1, 0;  // m = 0 of spin 1, invariant under both example symmetries
    auto mps = product_mps(v);
    auto rep = normalize_and_check(mps);
    CHECK(rep.ok);

    for (const char* sym_name : {"spin_z2xz2:2", "spin_tr:2"}) {
        auto sym = load_rep(sym_name);
        auto h2 = compute_H2(sym.group);
        auto lr = left_right_indices(mps, sym, h2);
        CHECK(lr.right.is_zero());
        CHECK(lr.left.is_zero());
        CHECK(lr.sum_is_zero);
    }
}

TEST_CASE("aklt carries the nontrivial class under both symmetries") {
    auto mps = aklt_mps();
    auto chk = normalize_and_check(mps);
    CHECK(chk.ok);
    CHECK(chk.second_modulus < 0.5);  // AKLT transfer spectrum 1, (-1/3)^3

    for (const char* sym_name : {"spin_z2xz2:2", "spin_tr:2"}) {
        auto sym = load_rep(sym_name);
        auto h2 = compute_H2(sym.group);
        auto edge = extract_edge_rep(mps, sym);
        for (double r : edge.residuals) CHECK(r < 1e-8);
        auto lr = left_right_indices(mps, sym, h2);
        CHECK(lr.right.coords == std::vector<std::int64_t>{1});
        CHECK(lr.sum_is_zero);

        // independent oracle: direct intertwiner solve at D=2
        MPSTensor norm = mps;
        normalize_and_check(norm);
        const std::int64_t den = 2 * sym.group->order * 2 * 3;
        std::vector<CMat> v(sym.group->order);
        for (int g = 0; g < sym.group->order; ++g) {
            auto sol = oracles::solve_intertwiner(norm, sym.ops[g], den);
            CHECK(sol.residual < 1e-8);
            v[g] = sol.v;
        }
        if (sym.group->order == 4) {
            // commutator sign of the two pi rotations
            CMat w = v[1] * v[2] * v[1].adjoint() * v[2].adjoint();
            CHECK((w + CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-7);
        } else {
            // Kramers: V conj(V) = -1 for the antiunitary generator
            CMat w = v[1] * v[1].conjugate();
            CHECK((w + CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-7);
        }
    }
}

TEST_CASE("gauge transforms preserve the index") {
    auto mps = aklt_mps();
    CMat w(2, 2);
    w << 1.3, 0.4 + 0.2 * I, -0.1, 0.9 - 0.5 * I;
    auto gauged = gauge_mps(mps, w);
    auto sym = load_rep("spin_z2xz2:2");
    auto h2 = compute_H2(sym.group);
    CHECK(left_right_indices(gauged, sym, h2).right.coords == std::vector<std::int64_t>{1});
}

TEST_CASE("main identity: prepending a site adds its class") {
    auto h2s = compute_H2(builtin_group("z2xz2"));
    auto h2t = compute_H2(builtin_group("z2_tr"));

    auto m1 = verify_main_identity(aklt_mps(), load_rep("spin_z2xz2:2"),
                                   load_rep("spin_z2xz2:1"), h2s);
    CHECK(m1.holds);
    CHECK(m1.combined.is_zero());  // 1 + 1 = 0 over Z2

    auto m2 = verify_main_identity(aklt_mps(), load_rep("spin_z2xz2:2"),
                                   load_rep("spin_z2xz2:2"), h2s);
    CHECK(m2.holds);
    CHECK(m2.combined.coords == std::vector<std::int64_t>{1});

    auto m3 = verify_main_identity(aklt_mps(), load_rep("spin_tr:2"),
                                   load_rep("spin_tr:1"), h2t);
    CHECK(m3.holds);
}

TEST_CASE("blocking preserves the index") {
    auto mps = block_mps(aklt_mps(), 2);
    auto sym = block_rep(load_rep("spin_z2xz2:2"), 2);
    auto h2 = compute_H2(sym.group);
    CHECK(left_right_indices(mps, sym, h2).right.coords == std::vector<std::int64_t>{1});
}

TEST_CASE("clock SPT chain") {
    auto mps = load_mps("clock:3:1");
    auto chk = normalize_and_check(mps);
    CHECK(chk.ok);
    CHECK(chk.second_modulus < 1e-10);  // depolarizing transfer: gap is exactly 1

    auto sym = load_rep("clock_sym:3:1");
    auto h2 = compute_H2(sym.group);
    auto lr = left_right_indices(mps, sym, h2);
    CHECK(!lr.right.is_zero());
    CHECK(lr.sum_is_zero);

    auto mps2 = load_mps("clock:3:2");
    auto sym2 = load_rep("clock_sym:3:2");
    auto lr2 = left_right_indices(mps2, sym2, h2);
    CHECK(!lr2.right.is_zero());
    CHECK(lr2.right != lr.right);
}

TEST_CASE("dimer chain edge class") {
    for (const char* site : {"spin_z2xz2:1", "spin_tr:1"}) {
        auto site_rep = load_rep(site);
        auto h2 = compute_H2(site_rep.group);
        auto mps = dimer_chain(site_rep);
        auto sym = block_rep(site_rep, 2);
        auto lr = left_right_indices(mps, sym, h2);
        CHECK(lr.right == classify(site_rep, h2));  // 2-torsion: class = -class
    }
}

TEST_CASE("non-injective tensors are rejected") {
    MPSTensor ghz;
    ghz.phys = 2;
    ghz.bond = 2;
    ghz.tensors = {CMat::Zero(2, 2), CMat::Zero(2, 2)};
    ghz.tensors[0](0, 0) = 1.0;
    ghz.tensors[1](1, 1) = 1.0;
    auto chk = normalize_and_check(ghz);
    CHECK(!chk.ok);
    auto sym = load_rep("spin_z2xz2:1");
    CHECK_THROWS(extract_edge_rep(ghz, sym));
}

TEST_CASE("non-symmetric states are rejected") {
    CVec up(3);
    up << 1, 0, 0;  // m = +1 breaks the pi rotations about 1 and 2
    auto mps = product_mps(up);
    CHECK_THROWS(extract_edge_rep(mps, load_rep("spin_z2xz2:2")));
}
