#pragma once

#include <json.hpp>

#include "spinlsm/hamiltonian.hpp"
#include "spinlsm/lsm.hpp"
#include "spinlsm/mps.hpp"

namespace spinlsm {

using json = nlohmann::json;

/// Malformed or unreadable input document.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A checked invariant failed on otherwise well-formed data.
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

json group_to_json(const GradedGroup& g);
GroupPtr group_from_json(const json& j);
// Builtin name (trivial, z2, z2_tr, z3, z4, z2xz2, z3xz3, znxzn:<n>) or a
// file path to a group document.
GroupPtr load_group(const std::string& name_or_path);

json cocycle_to_json(const Cocycle2& phi);
Cocycle2 cocycle_from_json(const json& j, GroupPtr group = nullptr);

json h2_to_json(const CohomologyGroup& h2);
json class_to_json(const CohomologyClass& c);

json rep_to_json(const SesquiRep& rep);
SesquiRep rep_from_json(const json& j);
// Builtins: spin_z2xz2:<two_s>, spin_tr:<two_s>, repgroup:<n>:<k>,
// regular:<group>, clock_sym:<n>:<k>; otherwise a file path.
SesquiRep load_rep(const std::string& name_or_path);

json mps_to_json(const MPSTensor& mps);
MPSTensor mps_from_json(const json& j);
// Builtins: aklt, clock:<n>:<k>; otherwise a file path.
MPSTensor load_mps(const std::string& name_or_path);

json hamiltonian_to_json(const ChainHamiltonian& h);
ChainHamiltonian hamiltonian_from_json(const json& j);
// Builtins: heisenberg:<two_s>:<L>:<open|periodic>[:J],
// xx:<two_s>:<L>:<open|periodic>[:J]; otherwise a file path.
ChainHamiltonian load_hamiltonian(const std::string& name_or_path);

// {"group": ..., "modulus"?: N, "symmetry": "translation"|"reflection"|"star",
//  "m"?: arms, "sites": {"<x>": [coords...]}}
ChainSpec chain_spec_from_json(const json& j);
ChainSpec load_chain_spec(const std::string& path);

}  // namespace spinlsm
