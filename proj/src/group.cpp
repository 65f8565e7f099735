#include "spinlsm/group.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace spinlsm {

void GradedGroup::finalize() {
    GroupReport r = validate(*this);
    if (!r.ok) throw std::invalid_argument("invalid group: " + r.message);
    inverse.assign(order, -1);
    for (int g = 0; g < order; ++g)
        for (int h = 0; h < order; ++h)
            if (mul(g, h) == 0) inverse[g] = h;
}

GroupReport validate(const GradedGroup& g) {
    const int n = g.order;
    if (n <= 0) return {false, "order must be positive"};
    if ((int)g.mult.size() != n * n) return {false, "mult table size mismatch"};
    if ((int)g.parity.size() != n) return {false, "parity size mismatch"};
    for (int a = 0; a < n * n; ++a)
        if (g.mult[a] < 0 || g.mult[a] >= n)
            return {false, "mult entry out of range"};
    for (int a = 0; a < n; ++a) {
        if (g.mult[0 * n + a] != a || g.mult[a * n + 0] != a) {
            std::ostringstream os;
            os << "element 0 is not the identity at " << a;
            return {false, os.str()};
        }
    }
    // associativity, full scan
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) {
                    std::ostringstream os;
                    os << "associativity fails at (" << a << "," << b << "," << c << ")";
                    return {false, os.str()};
                }
    // inverses
    for (int a = 0; a < n; ++a) {
        bool has = false;
        for (int b = 0; b < n; ++b)
            if (g.mul(a, b) == 0 && g.mul(b, a) == 0) has = true;
        if (!has) {
            std::ostringstream os;
            os << "element " << a << " has no inverse";
            return {false, os.str()};
        }
    }
    // parity homomorphism
    for (int a = 0; a < n; ++a)
        if (g.parity[a] != 1 && g.parity[a] != -1)
            return {false, "parity values must be +1 or -1"};
    if (g.parity[0] != 1) return {false, "parity(e) must be +1"};
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.parity[g.mul(a, b)] != g.parity[a] * g.parity[b]) {
                std::ostringstream os;
                os << "parity is not a homomorphism at (" << a << "," << b << ")";
                return {false, os.str()};
            }
    return {true, ""};
}

GroupPtr make_cyclic(int n, int parity_of_generator) {
    if (n < 1) throw std::invalid_argument("make_cyclic: n must be >= 1");
    if (parity_of_generator != 1 && parity_of_generator != -1)
        throw std::invalid_argument("make_cyclic: parity must be +1 or -1");
    if (parity_of_generator == -1 && n % 2 != 0)
        throw std::invalid_argument(
            "make_cyclic: odd order with antiunitary generator is not a homomorphism");
    auto g = std::make_shared<GradedGroup>();
    g->order = n;
    g->mult.resize(n * n);
    g->parity.resize(n);
    g->labels.resize(n);
    for (int i = 0; i < n; ++i) {
        g->parity[i] = (parity_of_generator == -1 && i % 2 == 1) ? -1 : 1;
        g->labels[i] = (i == 0) ? "e" : ("g^" + std::to_string(i));
        for (int j = 0; j < n; ++j) g->mult[i * n + j] = (i + j) % n;
    }
    g->finalize();
    return g;
}

GroupPtr direct_product(const GroupPtr& g1, const GroupPtr& g2) {
    const int n1 = g1->order, n2 = g2->order, n = n1 * n2;
    auto g = std::make_shared<GradedGroup>();
    g->order = n;
    g->mult.resize(n * n);
    g->parity.resize(n);
    g->labels.resize(n);
    for (int a1 = 0; a1 < n1; ++a1)
        for (int a2 = 0; a2 < n2; ++a2) {
            const int a = a1 * n2 + a2;
            g->parity[a] = g1->par(a1) * g2->par(a2);
            g->labels[a] = "(" + g1->labels[a1] + "," + g2->labels[a2] + ")";
            for (int b1 = 0; b1 < n1; ++b1)
                for (int b2 = 0; b2 < n2; ++b2) {
                    const int b = b1 * n2 + b2;
                    g->mult[a * n + b] = g1->mul(a1, b1) * n2 + g2->mul(a2, b2);
                }
        }
    g->finalize();
    return g;
}

GroupPtr builtin_group(const std::string& name) {
    if (name == "trivial") return make_cyclic(1, 1);
    if (name == "z2") return make_cyclic(2, 1);
    if (name == "z2_tr") return make_cyclic(2, -1);
    if (name == "z3") return make_cyclic(3, 1);
    if (name == "z4") return make_cyclic(4, 1);
    if (name == "z2xz2") return direct_product(make_cyclic(2, 1), make_cyclic(2, 1));
    if (name == "z3xz3") return direct_product(make_cyclic(3, 1), make_cyclic(3, 1));
    if (name.rfind("znxzn:", 0) == 0) {
        int n = std::stoi(name.substr(6));
        return direct_product(make_cyclic(n, 1), make_cyclic(n, 1));
    }
    throw std::invalid_argument("unknown builtin group: " + name);
}

std::size_t group_hash(const GradedGroup& g) {
    std::size_t h = std::hash<int>{}(g.order);
    auto mix = [&h](std::size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (int v : g.mult) mix(std::hash<int>{}(v));
    for (int v : g.parity) mix(std::hash<int>{}(v * 7 + 3));
    return h;
}

}  // namespace spinlsm
