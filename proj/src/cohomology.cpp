#include "spinlsm/cohomology.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace spinlsm {

namespace {
std::mutex g_lift_mutex;
}

Cocycle2 Cocycle2::trivial(GroupPtr g) {
    Cocycle2 c;
    c.group = std::move(g);
    c.phases.assign(std::size_t(c.group->order) * c.group->order, PhaseQ());
    return c;
}

Cocycle2 Cocycle2::product(const Cocycle2& other) const {
    if (group->order != other.group->order)
        throw std::invalid_argument("cocycle product: group mismatch");
    Cocycle2 out = *this;
    for (std::size_t i = 0; i < phases.size(); ++i)
        out.phases[i] = phases[i] * other.phases[i];
    return out;
}

std::int64_t Cocycle2::common_denominator() const {
    std::int64_t d = 1;
    for (const auto& p : phases) d = std::lcm(d, p.den);
    return d;
}

CocycleReport validate_cocycle(const Cocycle2& phi) {
    const auto& G = *phi.group;
    const int n = G.order;
    if ((int)phi.phases.size() != n * n) return {false, "phase table size mismatch", -1, -1, -1};
    for (int g = 0; g < n; ++g) {
        if (!phi.at(g, 0).is_one() || !phi.at(0, g).is_one()) {
            std::ostringstream os;
            os << "normalization fails: phi involving e at element " << g;
            return {false, os.str(), g, 0, -1};
        }
    }
    // p(f)*theta(g,h) + theta(f,gh) - theta(f,g) - theta(fg,h) == 0 (mod 1)
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h) {
                PhaseQ t = phi.at(g, h).pow_sign(G.par(f)) * phi.at(f, G.mul(g, h)) *
                           phi.at(f, g).inverse() * phi.at(G.mul(f, g), h).inverse();
                if (!t.is_one()) {
                    std::ostringstream os;
                    os << "cocycle condition fails at (" << f << "," << g << "," << h << ")";
                    return {false, os.str(), f, g, h};
                }
            }
    return {true, "", -1, -1, -1};
}

Cocycle2 coboundary(const Cochain1& psi) {
    const auto& G = *psi.group;
    const int n = G.order;
    if ((int)psi.phases.size() != n) throw std::invalid_argument("coboundary: size mismatch");
    if (!psi.phases[0].is_one()) throw std::invalid_argument("coboundary: psi(e) must be 1");
    Cocycle2 out = Cocycle2::trivial(psi.group);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            out.at(g, h) = psi.phases[g] * psi.phases[h].pow_sign(G.par(g)) *
                           psi.phases[G.mul(g, h)].inverse();
    return out;
}

bool CohomologyClass::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](std::int64_t c) { return c == 0; });
}

bool CohomologyClass::operator==(const CohomologyClass& o) const {
    return parent->same_structure(*o.parent) && coords == o.coords;
}

static void require_compatible(const CohomologyClass& a, const CohomologyClass& b) {
    if (!a.parent->same_structure(*b.parent))
        throw std::invalid_argument("cohomology class parents differ");
}

CohomologyClass add(const CohomologyClass& a, const CohomologyClass& b) {
    require_compatible(a, b);
    CohomologyClass out = a;
    for (std::size_t i = 0; i < out.coords.size(); ++i) {
        out.coords[i] = (out.coords[i] + b.coords[i]) % a.parent->invariant_factors[i];
    }
    return out;
}

CohomologyClass negate(const CohomologyClass& a) {
    CohomologyClass out = a;
    for (std::size_t i = 0; i < out.coords.size(); ++i) {
        const std::int64_t d = a.parent->invariant_factors[i];
        out.coords[i] = (d - out.coords[i]) % d;
    }
    return out;
}

CohomologyClass times(std::int64_t m, const CohomologyClass& a) {
    CohomologyClass out = a;
    for (std::size_t i = 0; i < out.coords.size(); ++i) {
        const std::int64_t d = a.parent->invariant_factors[i];
        std::int64_t v = (m % d) * out.coords[i] % d;
        if (v < 0) v += d;
        out.coords[i] = v;
    }
    return out;
}

std::optional<CohomologyClass> solve_divisibility(std::int64_t m, const CohomologyClass& c) {
    CohomologyClass out = c;
    for (std::size_t i = 0; i < c.coords.size(); ++i) {
        const std::int64_t d = c.parent->invariant_factors[i];
        bool found = false;
        for (std::int64_t x = 0; x < d; ++x) {
            std::int64_t v = (m % d) * x % d;
            if (v < 0) v += d;
            if (v == c.coords[i]) { out.coords[i] = x; found = true; break; }
        }
        if (!found) return std::nullopt;
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// index of the (g,h) component among pairs with g,h != e
inline int pair_index(int g, int h, int n) { return (g - 1) * (n - 1) + (h - 1); }

}  // namespace

CohomologyGroupPtr compute_H2(const GroupPtr& gp, std::int64_t modulus) {
    const auto& G = *gp;
    const int n = G.order;
    const std::int64_t N = modulus > 0 ? modulus : n;
    if (N < 1) throw std::invalid_argument("compute_H2: modulus must be >= 1");
    const int c1 = n - 1;
    const int c2 = (n - 1) * (n - 1);

    auto h2 = std::make_shared<CohomologyGroup>();
    h2->group = gp;
    h2->modulus = N;
    h2->ghash = group_hash(G);

    // coboundary matrix d1: c2 x c1
    IMat d1(c2, c1);
    for (int g = 1; g < n; ++g)
        for (int h = 1; h < n; ++h) {
            const int row = pair_index(g, h, n);
            d1.at(row, g - 1) += 1;
            d1.at(row, h - 1) += G.par(g);
            const int gh = G.mul(g, h);
            if (gh != 0) d1.at(row, gh - 1) -= 1;
        }

    // cocycle-condition rows, pruned incrementally to a row-echelon lattice basis
    RowEchelon ech(c2);
    std::vector<bint> row(c2);
    for (int f = 1; f < n; ++f)
        for (int g = 1; g < n; ++g)
            for (int h = 1; h < n; ++h) {
                std::fill(row.begin(), row.end(), bint(0));
                row[pair_index(g, h, n)] += G.par(f);
                const int gh = G.mul(g, h);
                if (gh != 0) row[pair_index(f, gh, n)] += 1;
                row[pair_index(f, g, n)] -= 1;
                const int fg = G.mul(f, g);
                if (fg != 0) row[pair_index(fg, h, n)] -= 1;
                ech.insert(row);
            }
    IMat d2 = ech.to_matrix();

    // kernel lattice L = { v : d2 v = 0 mod N } = V * diag(D) * Z^{c2}
    SnfResult s2 = smith(std::move(d2), TRACK_V | TRACK_VINV);
    h2->v = std::move(s2.V);
    h2->vinv = std::move(s2.Vinv);
    h2->lattice_d.assign(c2, bint(1));
    for (int i = 0; i < s2.rank; ++i) {
        bint g = gcd(s2.diag[i] % N == 0 ? bint(N) : s2.diag[i] % N, bint(N));
        h2->lattice_d[i] = bint(N) / g;
    }

    // saturation of the coboundary lattice: with rational (U(1)) cochains any
    // rational multiple of a coboundary direction that meets the grid is a
    // coboundary, so the quotient must divide out sat(im d1), not just im d1.
    SnfResult s1 = smith(d1, TRACK_UINV);
    const int r1 = s1.rank;

    // relation generators expressed in the L basis
    IMat gen(c2, r1 + c2);
    for (int j = 0; j < r1; ++j)
        for (int i = 0; i < c2; ++i) gen.at(i, j) = s1.Uinv.at(i, j);
    for (int j = 0; j < c2; ++j) gen.at(j, r1 + j) = N;
    IMat W = matmul(h2->vinv, gen);
    for (int i = 0; i < c2; ++i)
        for (int j = 0; j < r1 + c2; ++j) {
            if (W.at(i, j) % h2->lattice_d[i] != 0)
                throw std::logic_error("compute_H2: relation not inside kernel lattice");
            W.at(i, j) /= h2->lattice_d[i];
        }

    SnfResult sx = smith(std::move(W), TRACK_U | TRACK_UINV);
    if (sx.rank != c2) throw std::logic_error("compute_H2: relation matrix not full rank");
    h2->ux = std::move(sx.U);
    h2->uxinv = std::move(sx.Uinv);
    for (int i = 0; i < sx.rank; ++i)
        if (sx.diag[i] > 1) {
            h2->factor_pos.push_back(i);
            h2->invariant_factors.push_back((std::int64_t)sx.diag[i]);
        }
    return h2;
}

CohomologyClass CohomologyGroup::zero_class() const {
    CohomologyClass c;
    c.parent = shared_from_this();
    c.coords.assign(invariant_factors.size(), 0);
    return c;
}

CohomologyClass CohomologyGroup::class_from_coords(std::vector<std::int64_t> coords) const {
    if (coords.size() != invariant_factors.size())
        throw std::invalid_argument("class_from_coords: wrong coordinate count");
    CohomologyClass c;
    c.parent = shared_from_this();
    for (std::size_t i = 0; i < coords.size(); ++i) {
        std::int64_t v = coords[i] % invariant_factors[i];
        if (v < 0) v += invariant_factors[i];
        c.coords.push_back(v);
    }
    return c;
}

CohomologyClass CohomologyGroup::class_of(const Cocycle2& phi) const {
    const int n = group->order;
    if (phi.group->order != n || group_hash(*phi.group) != ghash)
        throw std::invalid_argument("class_of: cocycle group mismatch");
    const int c2 = (n - 1) * (n - 1);
    std::vector<bint> vec(c2);
    for (int g = 1; g < n; ++g)
        for (int h = 1; h < n; ++h) {
            const PhaseQ& p = phi.at(g, h);
            if (modulus % p.den != 0)
                throw CocycleDenominatorError(
                    "class_of: phase denominator " + std::to_string(p.den) +
                    " does not divide modulus " + std::to_string(modulus) +
                    "; recompute H2 with the lcm modulus");
            vec[pair_index(g, h, n)] = bint(p.num) * (modulus / p.den);
        }
    for (int g = 0; g < n; ++g)
        if (!phi.at(g, 0).is_one() || !phi.at(0, g).is_one())
            throw std::invalid_argument("class_of: cocycle not normalized");

    std::vector<bint> w = matvec(vinv, vec);
    for (int i = 0; i < c2; ++i) {
        if (w[i] % lattice_d[i] != 0)
            throw std::invalid_argument("class_of: input is not a cocycle mod N");
        w[i] /= lattice_d[i];
    }
    std::vector<bint> y = matvec(ux, w);
    CohomologyClass c;
    c.parent = shared_from_this();
    for (std::size_t j = 0; j < factor_pos.size(); ++j) {
        bint m = y[factor_pos[j]] % invariant_factors[j];
        if (m < 0) m += invariant_factors[j];
        c.coords.push_back((std::int64_t)m);
    }
    return c;
}

Cocycle2 CohomologyGroup::section(const CohomologyClass& c) const {
    if (!c.parent->same_structure(*this))
        throw std::invalid_argument("section: class parent mismatch");
    const int n = group->order;
    const int c2 = (n - 1) * (n - 1);
    std::vector<bint> y(c2, bint(0));
    for (std::size_t j = 0; j < factor_pos.size(); ++j) y[factor_pos[j]] = c.coords[j];
    std::vector<bint> w = matvec(uxinv, y);
    for (int i = 0; i < c2; ++i) w[i] *= lattice_d[i];
    std::vector<bint> vec = matvec(v, w);
    Cocycle2 out = Cocycle2::trivial(group);
    for (int g = 1; g < n; ++g)
        for (int h = 1; h < n; ++h) {
            bint m = vec[pair_index(g, h, n)] % modulus;
            if (m < 0) m += modulus;
            out.at(g, h) = PhaseQ((std::int64_t)m, modulus);
        }
    return out;
}

std::size_t CohomologyGroup::order() const {
    std::size_t p = 1;
    for (auto d : invariant_factors) p *= (std::size_t)d;
    return p;
}

std::vector<CohomologyClass> CohomologyGroup::all_classes() const {
    std::vector<CohomologyClass> out;
    std::vector<std::int64_t> coords(invariant_factors.size(), 0);
    while (true) {
        out.push_back(class_from_coords(coords));
        std::size_t i = 0;
        for (; i < coords.size(); ++i) {
            if (++coords[i] < invariant_factors[i]) break;
            coords[i] = 0;
        }
        if (i == coords.size()) break;
        if (coords.empty()) break;
    }
    return out;
}

bool CohomologyGroup::same_structure(const CohomologyGroup& o) const {
    return ghash == o.ghash && modulus == o.modulus &&
           invariant_factors == o.invariant_factors;
}

CohomologyClass CohomologyGroup::class_of_u1(const Cocycle2& phi) const {
    const std::int64_t q = phi.common_denominator();
    const std::int64_t nn = std::lcm(q, modulus);
    if (nn == modulus) return class_of(phi);

    std::lock_guard<std::mutex> lock(g_lift_mutex);
    auto it = lifted_.find(nn);
    if (it == lifted_.end()) {
        auto lifted = compute_H2(group, nn);
        if (lifted->invariant_factors != invariant_factors)
            throw std::logic_error("class_of_u1: invariant factors changed with modulus");
        // table: lifted coordinates of each class representative of this group
        std::vector<std::vector<std::int64_t>> table;
        for (const auto& cls : all_classes())
            table.push_back(lifted->class_of(section(cls)).coords);
        lifted_[nn] = lifted;
        lift_table_[nn] = std::move(table);
        it = lifted_.find(nn);
    }
    CohomologyClass lifted_class = it->second->class_of(phi);
    const auto& table = lift_table_.at(nn);
    const auto classes = all_classes();
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (table[i] == lifted_class.coords) return classes[i];
    throw std::logic_error("class_of_u1: no matching class (lift is not an isomorphism?)");
}

}  // namespace spinlsm
