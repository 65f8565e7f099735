#include "spinlsm/serialize.hpp"

#include <fstream>
#include <sstream>

namespace spinlsm {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

long to_long(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad integer for ") + what + ": '" + s + "'");
    }
}

double to_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad number for ") + what + ": '" + s + "'");
    }
}

json mat_to_json(const CMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

CMat mat_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw ParseError(std::string("expected a matrix for ") + what);
    const int rows = (int)j.size();
    const int cols = (int)j[0].size();
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if ((int)j[i].size() != cols)
            throw ParseError(std::string("ragged matrix for ") + what);
        for (int c = 0; c < cols; ++c) {
            const auto& e = j[i][c];
            if (!e.is_array() || e.size() != 2)
                throw ParseError(std::string("matrix entries must be [re, im] pairs for ") + what);
            m(i, c) = {e[0].get<double>(), e[1].get<double>()};
        }
    }
    return m;
}

}  // namespace

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("cannot parse " + path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

json group_to_json(const GradedGroup& g) {
    return {{"order", g.order},
            {"mult", g.mult},
            {"parity", g.parity},
            {"labels", g.labels}};
}

GroupPtr group_from_json(const json& j) {
    try {
        auto g = std::make_shared<GradedGroup>();
        g->order = j.at("order").get<int>();
        g->mult = j.at("mult").get<std::vector<int>>();
        g->parity = j.at("parity").get<std::vector<int>>();
        if (j.contains("labels")) g->labels = j.at("labels").get<std::vector<std::string>>();
        g->finalize();
        auto rep = validate(*g);
        if (!rep.ok) throw ParseError("invalid group table: " + rep.message);
        return g;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad group document: ") + e.what());
    }
}

GroupPtr load_group(const std::string& name_or_path) {
    try {
        return builtin_group(name_or_path);
    } catch (const std::invalid_argument&) {
        return group_from_json(read_json_file(name_or_path));
    }
}

json cocycle_to_json(const Cocycle2& phi) {
    json phases = json::array();
    for (const auto& p : phi.phases) phases.push_back({p.num, p.den});
    return {{"group", group_to_json(*phi.group)}, {"phases", phases}};
}

Cocycle2 cocycle_from_json(const json& j, GroupPtr group) {
    try {
        Cocycle2 phi;
        phi.group = group            ? group
                    : j.contains("group") && j["group"].is_string()
                        ? load_group(j["group"].get<std::string>())
                        : group_from_json(j.at("group"));
        for (const auto& e : j.at("phases")) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError("cocycle phases must be [num, den] pairs");
            phi.phases.push_back(PhaseQ{e[0].get<std::int64_t>(), e[1].get<std::int64_t>()});
        }
        const std::size_t n = (std::size_t)phi.group->order;
        if (phi.phases.size() != n * n)
            throw ParseError("cocycle phase table has the wrong size");
        return phi;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad cocycle document: ") + e.what());
    }
}

json h2_to_json(const CohomologyGroup& h2) {
    return {{"modulus", h2.modulus},
            {"invariant_factors", h2.invariant_factors},
            {"order", h2.order()}};
}

json class_to_json(const CohomologyClass& c) {
    return {{"coords", c.coords},
            {"invariant_factors", c.parent ? c.parent->invariant_factors
                                           : std::vector<std::int64_t>{}}};
}

json rep_to_json(const SesquiRep& rep) {
    json ops = json::array();
    for (const auto& op : rep.ops)
        ops.push_back({{"matrix", mat_to_json(op.matrix)}, {"conjugates", op.conjugates}});
    return {{"group", group_to_json(*rep.group)}, {"dim", rep.dim}, {"ops", ops}};
}

SesquiRep rep_from_json(const json& j) {
    try {
        SesquiRep rep;
        rep.group = j.at("group").is_string() ? load_group(j["group"].get<std::string>())
                                              : group_from_json(j.at("group"));
        rep.dim = j.at("dim").get<int>();
        for (const auto& o : j.at("ops"))
            rep.ops.push_back({mat_from_json(o.at("matrix"), "rep operator"),
                               o.value("conjugates", false)});
        if ((int)rep.ops.size() != rep.group->order)
            throw ParseError("rep has the wrong number of operators");
        return rep;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad rep document: ") + e.what());
    }
}

SesquiRep load_rep(const std::string& name_or_path) {
    auto parts = split(name_or_path, ':');
    if (parts[0] == "spin_z2xz2" && parts.size() == 2)
        return spin_rep_z2z2((int)to_long(parts[1], "two_s"));
    if (parts[0] == "spin_tr" && parts.size() == 2)
        return spin_rep_timereversal((int)to_long(parts[1], "two_s"));
    if (parts[0] == "repgroup" && parts.size() == 3)
        return representation_group_rep((int)to_long(parts[1], "n"), to_long(parts[2], "k"));
    if (parts[0] == "regular" && parts.size() == 2) return left_regular_rep(load_group(parts[1]));
    if (parts[0] == "clock_sym" && parts.size() == 3)
        return clock_symmetry_rep((int)to_long(parts[1], "n"), to_long(parts[2], "k"));
    return rep_from_json(read_json_file(name_or_path));
}

json mps_to_json(const MPSTensor& mps) {
    json tensors = json::array();
    for (const auto& a : mps.tensors) tensors.push_back(mat_to_json(a));
    return {{"phys", mps.phys}, {"bond", mps.bond}, {"tensors", tensors}};
}

MPSTensor mps_from_json(const json& j) {
    try {
        MPSTensor mps;
        mps.phys = j.at("phys").get<int>();
        mps.bond = j.at("bond").get<int>();
        for (const auto& t : j.at("tensors"))
            mps.tensors.push_back(mat_from_json(t, "MPS tensor"));
        if ((int)mps.tensors.size() != mps.phys)
            throw ParseError("MPS has the wrong number of physical matrices");
        for (const auto& a : mps.tensors)
            if (a.rows() != mps.bond || a.cols() != mps.bond)
                throw ParseError("MPS tensor has the wrong bond dimension");
        return mps;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad MPS document: ") + e.what());
    }
}

MPSTensor load_mps(const std::string& name_or_path) {
    auto parts = split(name_or_path, ':');
    if (parts[0] == "aklt" && parts.size() == 1) return aklt_mps();
    if (parts[0] == "clock" && parts.size() == 3)
        return clock_mps((int)to_long(parts[1], "n"), to_long(parts[2], "k"));
    return mps_from_json(read_json_file(name_or_path));
}

json hamiltonian_to_json(const ChainHamiltonian& h) {
    json terms = json::array();
    for (const auto& t : h.terms)
        terms.push_back({{"sites", t.sites}, {"matrix", mat_to_json(t.matrix)}});
    return {{"length", h.length},
            {"spins", h.spins},
            {"boundary", h.boundary == Boundary::open ? "open" : "periodic"},
            {"terms", terms}};
}

ChainHamiltonian hamiltonian_from_json(const json& j) {
    try {
        std::vector<int> spins = j.at("spins").get<std::vector<int>>();
        const std::string bnd = j.value("boundary", "open");
        if (bnd != "open" && bnd != "periodic") throw ParseError("bad boundary tag: " + bnd);
        Boundary b = bnd == "open" ? Boundary::open : Boundary::periodic;
        if (j.contains("builtin")) {
            const auto& bi = j["builtin"];
            const std::string name = bi.at("name").get<std::string>();
            if (name == "heisenberg")
                return build_heisenberg(spins, bi.at("couplings").get<std::vector<double>>(), b);
            throw ParseError("unknown builtin Hamiltonian: " + name);
        }
        ChainHamiltonian h;
        h.length = (int)spins.size();
        h.spins = std::move(spins);
        h.boundary = b;
        for (const auto& t : j.at("terms"))
            h.terms.push_back({t.at("sites").get<std::vector<int>>(),
                               mat_from_json(t.at("matrix"), "Hamiltonian term")});
        try {
            h.validate();
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("invalid Hamiltonian: ") + e.what());
        }
        return h;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad Hamiltonian document: ") + e.what());
    }
}

ChainHamiltonian load_hamiltonian(const std::string& name_or_path) {
    auto parts = split(name_or_path, ':');
    if ((parts[0] == "heisenberg" || parts[0] == "xx") && parts.size() >= 4) {
        const int two_s = (int)to_long(parts[1], "two_s");
        const int length = (int)to_long(parts[2], "length");
        if (parts[3] != "open" && parts[3] != "periodic")
            throw ParseError("bad boundary tag: " + parts[3]);
        Boundary b = parts[3] == "open" ? Boundary::open : Boundary::periodic;
        const double jc = parts.size() >= 5 ? to_double(parts[4], "coupling") : 1.0;
        if (length < 2) throw ParseError("chain length must be >= 2");
        if (parts[0] == "xx") return build_xx(length, two_s, jc, b);
        const int nb = b == Boundary::open ? length - 1 : length;
        return build_heisenberg(std::vector<int>(length, two_s),
                                std::vector<double>(nb, jc), b);
    }
    return hamiltonian_from_json(read_json_file(name_or_path));
}

ChainSpec chain_spec_from_json(const json& j) {
    try {
        ChainSpec spec;
        spec.group = j.at("group").is_string() ? load_group(j["group"].get<std::string>())
                                               : group_from_json(j.at("group"));
        spec.h2 = compute_H2(spec.group, j.value("modulus", (std::int64_t)0));
        const std::string sym = j.at("symmetry").get<std::string>();
        if (sym == "translation")
            spec.symmetry = SpatialSymmetry::translation;
        else if (sym == "reflection")
            spec.symmetry = SpatialSymmetry::reflection_about_origin;
        else if (sym == "star") {
            spec.symmetry = SpatialSymmetry::star;
            spec.star_arms = j.at("m").get<int>();
        } else
            throw ParseError("unknown symmetry tag: " + sym);
        for (const auto& [key, val] : j.at("sites").items()) {
            const int x = (int)to_long(key, "site coordinate");
            spec.sites.emplace(x, spec.h2->class_from_coords(
                                      val.get<std::vector<std::int64_t>>()));
        }
        try {
            spec.validate();
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("invalid chain spec: ") + e.what());
        }
        return spec;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad chain spec document: ") + e.what());
    }
}

ChainSpec load_chain_spec(const std::string& path) {
    return chain_spec_from_json(read_json_file(path));
}

}  // namespace spinlsm
