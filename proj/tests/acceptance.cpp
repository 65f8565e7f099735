// Acceptance gate: one line per criterion, PASS or FAIL, exit code = number of
// failed criteria. Each criterion is evaluated independently; an exception
// inside one criterion fails that criterion only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "spinlsm/cohomology.hpp"
#include "spinlsm/lsm.hpp"
#include "spinlsm/mps.hpp"
#include "spinlsm/serialize.hpp"
#include "spinlsm/sesqui.hpp"
#include "spinlsm/spectra.hpp"

using namespace spinlsm;

namespace {

const std::complex<double> I(0, 1);
int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void run_criterion(int number, const std::string& title,
                   const std::function<void(std::ostringstream&)>& body) {
    std::ostringstream detail;
    bool ok = true;
    try {
        body(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail << (detail.str().empty() ? "" : "; ") << "exception: " << e.what();
    }
    std::printf("criterion %d (%s): %s%s%s\n", number, title.c_str(), ok ? "PASS" : "FAIL",
                detail.str().empty() ? "" : " -- ", detail.str().c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

struct CheckFail : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw CheckFail(msg);
}

SesquiRep random_gauge(const SesquiRep& rep, std::mt19937& rng) {
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::vector<std::complex<double>> psi(rep.group->order, 1.0);
    for (int g = 1; g < rep.group->order; ++g) psi[g] = std::exp(I * ang(rng));
    return rephase(rep, psi);
}

ChainSpec uniform_spec(const char* group, SpatialSymmetry sym, std::int64_t c0, int arms = 0) {
    ChainSpec s;
    s.group = builtin_group(group);
    s.h2 = compute_H2(s.group);
    s.symmetry = sym;
    s.star_arms = arms;
    s.sites[0] = s.h2->class_from_coords({c0});
    return s;
}

// ---------------------------------------------------------------------------

void criterion1(std::ostringstream& out) {
    struct Row { const char* group; std::vector<std::int64_t> factors; };
    const Row rows[] = {{"z2xz2", {2}}, {"z2_tr", {2}}, {"z3xz3", {3}}, {"trivial", {}}};
    for (const auto& r : rows) {
        auto t0 = std::chrono::steady_clock::now();
        auto h2 = compute_H2(builtin_group(r.group));
        const double dt = seconds_since(t0);
        require(h2->invariant_factors == r.factors,
                std::string("wrong H^2 for ") + r.group);
        require(dt < 1.0, std::string(r.group) + " exceeded 1 s");
    }
    out << "H2(Z2xZ2)=Z2, H2(Z2 antiunitary)=Z2, H2(Z3xZ3)=Z3, H2(trivial)=0";
}

void criterion2(std::ostringstream& out) {
    auto t0 = std::chrono::steady_clock::now();
    auto h2_s = compute_H2(builtin_group("z2xz2"));
    auto h2_t = compute_H2(builtin_group("z2_tr"));
    for (int two_s = 1; two_s <= 8; ++two_s) {
        const std::vector<std::int64_t> want{two_s % 2};
        require(classify(spin_rep_z2z2(two_s), h2_s).coords == want,
                "Z2xZ2 spin parity failed at 2S=" + std::to_string(two_s));
        require(classify(spin_rep_timereversal(two_s), h2_t).coords == want,
                "time-reversal spin parity failed at 2S=" + std::to_string(two_s));
    }
    const double dt = seconds_since(t0);
    require(dt < 5.0, "runtime over 5 s");
    out << "class = 2S mod 2 for both groups, 2S <= 8, " << dt << " s";
}

void criterion3(std::ostringstream& out) {
    const char* names[] = {"spin_z2xz2:1", "spin_z2xz2:2", "spin_z2xz2:3",
                           "spin_tr:1",    "spin_tr:2",    "spin_tr:3",
                           "repgroup:2:1", "repgroup:3:1", "repgroup:3:2", "repgroup:4:1",
                           "repgroup:4:3", "regular:z3xz3", "clock_sym:3:1"};
    std::mt19937 rng(0xACCE55);
    int trials = 0;
    for (int round = 0; round < 8; ++round)
        for (const char* name : names) {
            auto rep = load_rep(name);
            auto h2 = compute_H2(rep.group);
            auto base = classify(rep, h2);
            require(classify(random_gauge(rep, rng), h2) == base,
                    std::string("gauge trial failed for ") + name);
            ++trials;
        }
    struct Pair { const char *a, *b; };
    const Pair pairs[] = {{"spin_z2xz2:1", "spin_z2xz2:2"}, {"spin_tr:1", "spin_tr:1"},
                          {"repgroup:3:1", "repgroup:3:2"}, {"repgroup:4:1", "repgroup:4:3"}};
    for (const auto& p : pairs) {
        auto r1 = load_rep(p.a), r2 = load_rep(p.b);
        auto h2 = compute_H2(r1.group);
        require(classify(tensor(random_gauge(r1, rng), random_gauge(r2, rng)), h2) ==
                    add(classify(r1, h2), classify(r2, h2)),
                std::string("tensor additivity failed for ") + p.a + " x " + p.b);
    }
    out << trials << " random-gauge trials plus 4 gauged tensor pairs, zero failures";
}

void criterion4(std::ostringstream& out) {
    CVec v(3);
    v << 0, 1, 0;
    auto product = product_mps(v);
    auto aklt = aklt_mps();
    double max_res = 0.0;

    for (const char* sym_name : {"spin_z2xz2:2", "spin_tr:2"}) {
        auto sym = load_rep(sym_name);
        auto h2 = compute_H2(sym.group);

        auto lr0 = left_right_indices(product, sym, h2);
        require(lr0.right.is_zero() && lr0.sum_is_zero,
                std::string("product state class under ") + sym_name);

        auto edge = extract_edge_rep(aklt, sym);
        for (double r : edge.residuals) max_res = std::max(max_res, r);
        auto lr = left_right_indices(aklt, sym, h2);
        require(lr.right.coords == std::vector<std::int64_t>{1} && lr.sum_is_zero,
                std::string("AKLT class under ") + sym_name);

        // oracle: direct intertwiner solve at D=2, then the commutator sign
        MPSTensor norm = aklt;
        normalize_and_check(norm);
        std::vector<CMat> w(sym.group->order);
        for (int g = 0; g < sym.group->order; ++g) {
            auto sol = oracles::solve_intertwiner(norm, sym.ops[g], 8 * sym.group->order * 3);
            max_res = std::max(max_res, sol.residual);
            w[g] = sol.v;
        }
        CMat sign = (sym.group->order == 4)
                        ? CMat(w[1] * w[2] * w[1].adjoint() * w[2].adjoint())
                        : CMat(w[1] * w[1].conjugate());
        require((sign + CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-6,
                std::string("oracle commutator sign under ") + sym_name);

        // prepend identity sigma^R = c + sigma^R'
        auto site = load_rep(sym.group->order == 4 ? "spin_z2xz2:1" : "spin_tr:1");
        require(verify_main_identity(aklt, sym, site, h2).holds,
                std::string("prepend identity under ") + sym_name);
    }
    require(max_res < 1e-8, "intertwiner residual over 1e-8");
    out << "product -> 0, AKLT -> 1 (both groups, oracle-confirmed), sigma^L+sigma^R=0, "
        << "prepend identity holds; max residual " << max_res;
}

void criterion5(std::ostringstream& out) {
    require(check_translation(uniform_spec("z2xz2", SpatialSymmetry::translation, 1)).obstructed,
            "translation spin-1/2 not obstructed");
    require(check_reflection(
                uniform_spec("z2xz2", SpatialSymmetry::reflection_about_origin, 1)).obstructed,
            "reflection Z2xZ2 c0=1 not obstructed");
    require(check_reflection(
                uniform_spec("z2_tr", SpatialSymmetry::reflection_about_origin, 1)).obstructed,
            "reflection time-reversal c0=1 not obstructed");
    auto v3 = check_reflection(uniform_spec("z3xz3", SpatialSymmetry::reflection_about_origin, 1));
    require(!v3.obstructed && v3.witness &&
                v3.witness->coords == std::vector<std::int64_t>{2},
            "Z3xZ3 c0=1 must be unobstructed with witness 2");

    std::mt19937 rng(0x5747);
    const char* groups[] = {"z2_tr", "z2xz2", "z3xz3", "znxzn:4"};
    std::vector<CohomologyGroupPtr> cached;
    for (const char* g : groups) cached.push_back(compute_H2(builtin_group(g)));
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t pick = rng() % 4;
        const char* g = groups[pick];
        auto h2 = cached[pick];
        const std::int64_t c0 = (std::int64_t)(rng() % (std::uint32_t)h2->order());
        auto mk = [&](SpatialSymmetry sym, int arms) {
            ChainSpec s;
            s.group = h2->group;
            s.h2 = h2;
            s.symmetry = sym;
            s.star_arms = arms;
            s.sites[0] = h2->class_from_coords({c0});
            return s;
        };
        auto refl = check_reflection(mk(SpatialSymmetry::reflection_about_origin, 0));
        auto star = check_star(mk(SpatialSymmetry::star, 2), 2);
        require(refl.obstructed == star.obstructed,
                std::string("star(2) disagrees with reflection on ") + g);
        if (refl.witness && star.witness)
            require(*refl.witness == *star.witness, "witness mismatch");
    }
    out << "golden verdicts plus star(2) == reflection on 50 randomized specs";
}

void criterion6(std::ostringstream& out) {
    for (int n = 2; n <= 8; ++n) {
        CMat a, b;
        almost_commuting_pair(n, a, b);
        const std::complex<double> c = std::exp(2.0 * M_PI * I / (double)n);
        require((a * b - c * b * a).cwiseAbs().maxCoeff() < 1e-12,
                "ab = c ba failed at n=" + std::to_string(n));
        CMat an = CMat::Identity(n, n), bn = an;
        for (int k = 0; k < n; ++k) { an = a * an; bn = b * bn; }
        require((an - bn).cwiseAbs().maxCoeff() < 1e-12,
                "a^n = b^n failed at n=" + std::to_string(n));
    }
    for (int n = 2; n <= 4; ++n) {
        auto h2 = compute_H2(builtin_group("znxzn:" + std::to_string(n)));
        std::set<std::vector<std::int64_t>> seen{std::vector<std::int64_t>{0}};
        for (std::int64_t k = 1; k < n; ++k)
            seen.insert(classify(representation_group_rep(n, k), h2).coords);
        require(seen.size() == (std::size_t)n,
                "classes do not exhaust Z_" + std::to_string(n));
    }
    out << "pair relations to 1e-12 for n <= 8; classes exhaust H2(Zn x Zn) for n <= 4";
}

void criterion7(std::ostringstream& out) {
    auto t0 = std::chrono::steady_clock::now();

    // (a) operator identity, entrywise through the monomial action
    {
        auto h = load_hamiltonian("heisenberg:1:13:open");
        auto u = twist_operator(h, 3, 6);
        std::mt19937 rng(99);
        std::normal_distribution<double> gauss;
        for (int rep = 0; rep < 3; ++rep) {
            CVec psi(h.dim());
            for (std::size_t i = 0; i < h.dim(); ++i) psi(i) = {gauss(rng), gauss(rng)};
            psi /= psi.norm();
            CVec lhs = apply_rtilde(h, 6, CVec(u.diagonal.cwiseProduct(psi)));
            // half-odd center spin: e^{2 pi i S3_0} = -1
            CVec rhs = -u.diagonal.cwiseProduct(apply_rtilde(h, 6, psi));
            require((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12, "twist identity over 1e-12");
        }
    }

    // (b) ground-multiplet twist expectation at L = 13
    const double expval = std::abs(twist_expectation_check(
        load_hamiltonian("heisenberg:1:13:open"), 3, 6, 1.0));
    require(expval <= 1e-10, "|<U>| = " + std::to_string(expval) + " over 1e-10");

    // (c) Delta E(ell) * ell at L = 14, literal non-increasing-within-10% reading
    auto h14 = load_hamiltonian("heisenberg:1:14:periodic");
    auto gs = ground_space(h14);
    auto pts = twist_energy_check(h14, gs.vectors[0], {2, 3, 4, 5, 6}, 6);
    std::ostringstream table;
    double first = 0.0, worst = 0.0;
    bool literal_ok = true;
    for (const auto& p : pts) {
        const double v = p.delta_e * p.ell;
        if (p.ell == 2) first = v;
        worst = std::max(worst, v);
        if (v > 1.1 * first) literal_ok = false;
        table << " l=" << p.ell << ": dE*l=" << v;
    }
    const double dt = seconds_since(t0);
    require(dt < 120.0, "runtime over 2 min");
    out << "identity <= 1e-12 PASS; |<U>| = " << expval << " <= 1e-10 PASS; "
        << "rigorous bound dE_sym <= C(l)/l PASS (asserted inside twist_energy_check); "
        << "literal 'dE*l non-increasing within 10% from l=2' "
        << (literal_ok ? "PASS" : "FAIL") << " --" << table.str() << " (rise "
        << 100.0 * (worst / first - 1.0) << "%; measured dE*l approaches its constant "
        << "from below, so the fitted-on-smallest-l reading is violated by the actual "
        << "spectrum; see the rigorous second-order commutator bound, which holds). "
        << dt << " s";
    require(literal_ok,
            "dE*l grows past 110% of the l=2 value; the literal criterion is unattainable "
            "on this model (documented in the build notes), while the underlying "
            "dE <= C/l bound with an explicit constant is verified");
}

void criterion8(std::ostringstream& out) {
    auto half = [](int L) {
        return load_hamiltonian("heisenberg:1:" + std::to_string(L) + ":periodic");
    };
    auto scan = gap_scan(half, {8, 10, 12, 14});
    require(scan.alpha >= 0.7 && scan.alpha <= 1.3,
            "spin-1/2 gap exponent " + std::to_string(scan.alpha) + " outside [0.7, 1.3]");

    auto one = [](int L) {
        return load_hamiltonian("heisenberg:2:" + std::to_string(L) + ":periodic");
    };
    const double g6 = lowest_spectrum(one(6), 2).gap;
    const double g10 = lowest_spectrum(one(10), 2).gap;
    require(g6 > 0 && g10 / g6 > 0.5,
            "spin-1 gap ratio " + std::to_string(g10 / g6) + " not above 0.5");
    out << "spin-1/2 alpha = " << scan.alpha << " in [0.7, 1.3]; spin-1 gap(10)/gap(6) = "
        << g10 / g6 << " > 0.5";
}

void criterion9(std::ostringstream& out) {
    for (const char* name : {"trivial", "z2", "z2_tr", "z3", "z4", "z2xz2"}) {
        auto g = builtin_group(name);
        for (std::int64_t N = 1; N <= 4; ++N) {
            auto bf = oracles::brute_force_h2(g, N);
            auto h2 = compute_H2(g, N);
            require(bf.classes == h2->order(),
                    std::string(name) + " N=" + std::to_string(N) + ": brute force " +
                        std::to_string(bf.classes) + " vs SNF " + std::to_string(h2->order()));
        }
    }
    out << "brute-force class counts equal SNF counts for all |G| <= 4, N <= 4";
}

}  // namespace

int main() {
    run_criterion(1, "cohomology golden values", criterion1);
    run_criterion(2, "spin parity law", criterion2);
    run_criterion(3, "gauge invariance and tensor additivity", criterion3);
    run_criterion(4, "MPS indices", criterion4);
    run_criterion(5, "LSM verdicts", criterion5);
    run_criterion(6, "almost-commuting pairs", criterion6);
    run_criterion(7, "twist suite", criterion7);
    run_criterion(8, "gap-scan consistency", criterion8);
    run_criterion(9, "oracle equivalence", criterion9);
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all criteria passed\n");
    return failures;
}
