#include "spinlsm/lsm.hpp"

#include <sstream>
#include <stdexcept>

namespace spinlsm {

CohomologyClass ChainSpec::site_class(int x) const {
    auto it = sites.find(x);
    if (it != sites.end()) return it->second;
    return h2->zero_class();
}

void ChainSpec::validate() const {
    if (!group || !h2) throw std::invalid_argument("ChainSpec: missing group or H^2");
    for (const auto& [x, c] : sites)
        if (!c.parent || !c.parent->same_structure(*h2))
            throw std::invalid_argument("ChainSpec: site class from a different H^2");
    switch (symmetry) {
        case SpatialSymmetry::translation:
            for (const auto& [x, c] : sites)
                if (c != site_class(0))
                    throw std::invalid_argument(
                        "ChainSpec: translation symmetry requires a uniform class");
            break;
        case SpatialSymmetry::reflection_about_origin:
            for (const auto& [x, c] : sites)
                if (c != site_class(-x))
                    throw std::invalid_argument(
                        "ChainSpec: reflection symmetry requires c_x = c_{-x}");
            break;
        case SpatialSymmetry::star:
            if (star_arms < 2)
                throw std::invalid_argument("ChainSpec: star lattice needs m >= 2 arms");
            for (const auto& [x, c] : sites)
                if (x < 0)
                    throw std::invalid_argument(
                        "ChainSpec: star sites are the center 0 and arm coordinates x >= 1");
            break;
    }
}

namespace {

std::string class_str(const CohomologyClass& c) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < c.coords.size(); ++i)
        os << (i ? "," : "") << c.coords[i];
    os << ")";
    return os.str();
}

Verdict divisibility_verdict(const ChainSpec& spec, std::int64_t m, const char* name) {
    Verdict v;
    v.theorem = name;
    CohomologyClass c0 = spec.site_class(0);
    auto witness = solve_divisibility(m, c0);
    if (witness) {
        if (times(m, *witness) != c0)
            throw std::logic_error("divisibility witness failed to re-verify");
        v.obstructed = false;
        v.witness = *witness;
        std::ostringstream os;
        os << "solvable: " << m << " * " << class_str(*witness) << " = " << class_str(c0);
        v.detail = os.str();
    } else {
        v.obstructed = true;
        std::ostringstream os;
        os << "no class c satisfies " << m << " * c = " << class_str(c0);
        v.detail = os.str();
    }
    return v;
}

}  // namespace

Verdict check_translation(const ChainSpec& spec) {
    if (spec.symmetry != SpatialSymmetry::translation)
        throw std::invalid_argument("check_translation: spec is not translation invariant");
    spec.validate();
    Verdict v;
    v.theorem = "translation";
    CohomologyClass c = spec.site_class(0);
    v.obstructed = !c.is_zero();
    if (v.obstructed)
        v.detail = "uniform class c = " + class_str(c) + " is nonzero";
    else {
        v.witness = c;
        v.detail = "uniform class vanishes";
    }
    return v;
}

Verdict check_reflection(const ChainSpec& spec) {
    if (spec.symmetry != SpatialSymmetry::reflection_about_origin)
        throw std::invalid_argument("check_reflection: spec is not reflection invariant");
    spec.validate();
    return divisibility_verdict(spec, 2, "reflection");
}

Verdict check_star(const ChainSpec& spec, int m) {
    if (m < 2) throw std::invalid_argument("check_star: m must be >= 2");
    if (spec.symmetry != SpatialSymmetry::star)
        throw std::invalid_argument("check_star: spec is not a star lattice");
    if (spec.star_arms != m) throw std::invalid_argument("check_star: arm count mismatch");
    spec.validate();
    std::ostringstream name;
    name << "star(" << m << ")";
    return divisibility_verdict(spec, m, name.str().c_str());
}

Propagation propagate_indices(const ChainSpec& spec, int seed_site,
                              const CohomologyClass& seed, int lo, int hi) {
    spec.validate();
    if (seed_site < lo || seed_site > hi + 1)
        throw std::invalid_argument("propagate_indices: seed outside the window");
    Propagation p;
    p.sigma_r[seed_site] = seed;
    // sigma^R_x = c_x + sigma^R_{x+1}
    for (int x = seed_site; x > lo; --x)
        p.sigma_r[x - 1] = add(spec.site_class(x - 1), p.sigma_r[x]);
    for (int x = seed_site; x <= hi; ++x)
        p.sigma_r[x + 1] = add(negate(spec.site_class(x)), p.sigma_r[x]);
    for (int x = lo; x <= hi; ++x) p.sigma_l[x - 1] = negate(p.sigma_r[x]);

    if (spec.symmetry == SpatialSymmetry::translation) {
        for (int x = lo; x <= hi + 1; ++x)
            if (p.sigma_r[x] != seed) {
                p.consistent = false;
                std::ostringstream os;
                os << "translation invariance forces a constant sigma^R, but sigma^R_" << x
                   << " = " << class_str(p.sigma_r[x]) << " differs from the seed "
                   << class_str(seed) << "; hence c = 0 is required";
                p.message = os.str();
                break;
            }
    } else if (spec.symmetry == SpatialSymmetry::reflection_about_origin) {
        // sigma^L_x = sigma^R_{-x}, equivalently c_0 = 2 sigma^R_0
        CohomologyClass c0 = spec.site_class(0);
        CohomologyClass s0 = p.sigma_r.count(0) ? p.sigma_r[0] : seed;
        if (c0 != times(2, s0)) {
            p.consistent = false;
            std::ostringstream os;
            os << "reflection invariance requires c_0 = 2 sigma^R_0, but c_0 = "
               << class_str(c0) << " and 2 sigma^R_0 = " << class_str(times(2, s0));
            p.message = os.str();
        }
    }
    return p;
}

CompactReduction reduce_compact_group(const std::vector<int>& pi1_factors,
                                      const std::vector<std::int64_t>& c) {
    if (pi1_factors.size() != c.size())
        throw std::invalid_argument("reduce_compact_group: component count mismatch");
    CompactReduction out;
    for (std::size_t i = 0; i < pi1_factors.size(); ++i) {
        const int k = pi1_factors[i];
        if (k < 2) throw std::invalid_argument("reduce_compact_group: factors must be >= 2");
        SubgroupInstance inst;
        inst.k = k;
        inst.group = builtin_group("znxzn:" + std::to_string(k));
        inst.h2 = compute_H2(inst.group);
        std::int64_t ci = ((c[i] % k) + k) % k;
        inst.cls = inst.h2->class_from_coords({ci});
        ChainSpec spec;
        spec.group = inst.group;
        spec.h2 = inst.h2;
        spec.symmetry = SpatialSymmetry::translation;
        spec.sites[0] = inst.cls;
        inst.verdict = check_translation(spec);
        out.obstructed = out.obstructed || inst.verdict.obstructed;
        out.instances.push_back(std::move(inst));
    }
    return out;
}

}  // namespace spinlsm
