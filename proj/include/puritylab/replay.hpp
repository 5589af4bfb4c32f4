#pragma once

#include <string>

#include <json.hpp>

#include "puritylab/channel_spec.hpp"
#include "puritylab/semigroup.hpp"
#include "puritylab/verify.hpp"

namespace puritylab {

// Re-runs a check from its serialized witness. Checks are pure functions of
// their inputs plus seeds, so a replayed witness reproduces the original
// verdict; this is what makes a `violated` report a shippable counterexample.

namespace detail {

inline Matrix witness_matrix(const nlohmann::json& j, const char* name) {
  if (!j.contains(name))
    throw InvalidInput(std::string("witness: missing matrix \"") + name + "\"");
  return parse_matrix_object(j[name], std::string("witness.") + name);
}

inline double witness_num(const nlohmann::json& j, const char* name) {
  if (!j.contains(name) || !j[name].is_number())
    throw InvalidInput(std::string("witness: missing number \"") + name + "\"");
  return j[name].get<double>();
}

inline PurityConfig witness_config(const nlohmann::json& j) {
  PurityConfig cfg;
  if (!j.contains("config")) return cfg;
  const auto& c = j["config"];
  cfg.restarts = c.value("restarts", cfg.restarts);
  cfg.max_iterations = c.value("max_iterations", cfg.max_iterations);
  cfg.tolerance = c.value("tolerance", cfg.tolerance);
  cfg.oracle_samples = c.value("oracle_samples", cfg.oracle_samples);
  cfg.oracle_hill_steps = c.value("oracle_hill_steps", cfg.oracle_hill_steps);
  cfg.dispatch_oracle_samples =
      c.value("dispatch_oracle_samples", cfg.dispatch_oracle_samples);
  cfg.dispatch_oracle_hill_steps =
      c.value("dispatch_oracle_hill_steps", cfg.dispatch_oracle_hill_steps);
  cfg.seed = c.value("seed", cfg.seed);
  return cfg;
}

}  // namespace detail

inline BoundReport replay_witness(const std::string& witness_text) {
  const nlohmann::json j = parse_spec_text(witness_text, "witness");
  const std::string claim = j.value("claim", "");
  const std::uint64_t master = j.value("master_seed", std::uint64_t{0});
  const std::uint64_t inst = j.value("instance_seed", std::uint64_t{0});

  if (claim == "bk1") {
    return check_bk1(detail::witness_matrix(j, "m"),
                     static_cast<Index>(detail::witness_num(j, "d")),
                     static_cast<Index>(detail::witness_num(j, "n")),
                     detail::witness_num(j, "q"),
                     detail::witness_num(j, "check_tolerance"));
  }
  if (claim == "lieb_thirring") {
    return check_lieb_thirring(detail::witness_matrix(j, "r"),
                               detail::witness_matrix(j, "w"),
                               detail::witness_num(j, "p"),
                               detail::witness_num(j, "rel_tol"));
  }
  if (claim == "antinorm_super") {
    const int count = static_cast<int>(detail::witness_num(j, "count"));
    std::vector<Matrix> ms;
    for (int i = 0; i < count; ++i)
      ms.push_back(detail::witness_matrix(j, ("m" + std::to_string(i)).c_str()));
    return check_antinorm_super(ms, detail::witness_num(j, "t"),
                                detail::witness_num(j, "check_tolerance"));
  }
  if (claim == "gen_hann") {
    return check_gen_hann(detail::witness_matrix(j, "m"),
                          static_cast<Index>(detail::witness_num(j, "proj_dim")),
                          detail::witness_num(j, "p"),
                          detail::witness_num(j, "check_tolerance"));
  }
  if (claim == "psd_2x2") {
    return check_psd_2x2(detail::witness_matrix(j, "a"),
                         static_cast<Index>(detail::witness_num(j, "proj_dim")),
                         detail::witness_num(j, "q"),
                         detail::witness_num(j, "check_tolerance"));
  }
  if (claim == "pinching") {
    return check_pinching(detail::witness_matrix(j, "a"),
                          static_cast<Index>(detail::witness_num(j, "d")),
                          static_cast<Index>(detail::witness_num(j, "n")),
                          detail::witness_num(j, "q"),
                          detail::witness_num(j, "check_tolerance"));
  }
  if (claim == "pot_eq_qgep" || claim == "thm3" || claim == "thm4" ||
      claim == "unital_qubit" || claim == "eb_exploratory") {
    const Matrix phi_choi = detail::witness_matrix(j, "phi_choi");
    const Matrix omega_choi = detail::witness_matrix(j, "omega_choi");
    const auto structure = static_cast<MapStructure>(
        static_cast<int>(j.value("phi_structure", 0.0)));
    const CpMap phi =
        from_choi(phi_choi, static_cast<Index>(detail::witness_num(j, "phi_d_in")),
                  static_cast<Index>(detail::witness_num(j, "phi_d_out")),
                  structure);
    const CpMap omega = from_choi(
        omega_choi, static_cast<Index>(detail::witness_num(j, "omega_d_in")),
        static_cast<Index>(detail::witness_num(j, "omega_d_out")));
    const NormParams np(detail::witness_num(j, "q"),
                        detail::witness_num(j, "p"));
    ClaimId id = ClaimId::pot_eq_qgep;
    if (claim == "thm3") id = ClaimId::thm3;
    if (claim == "thm4") id = ClaimId::thm4;
    if (claim == "unital_qubit") id = ClaimId::unital_qubit;
    if (claim == "eb_exploratory") id = ClaimId::eb_exploratory;
    return detail::product_equality(id, phi, omega, np,
                                    detail::witness_config(j), master, inst,
                                    detail::witness_num(j, "rel_tol"));
  }
  if (claim == "cq_chain") {
    const CpMap phi = from_choi(
        detail::witness_matrix(j, "phi_choi"),
        static_cast<Index>(detail::witness_num(j, "phi_d_in")),
        static_cast<Index>(detail::witness_num(j, "phi_d_out")),
        MapStructure::cq);
    const CpMap omega = from_choi(
        detail::witness_matrix(j, "omega_choi"),
        static_cast<Index>(detail::witness_num(j, "omega_d_in")),
        static_cast<Index>(detail::witness_num(j, "omega_d_out")));
    return check_cq_chain(phi, omega, detail::witness_matrix(j, "a"),
                          NormParams(detail::witness_num(j, "q"),
                                     detail::witness_num(j, "p")),
                          detail::witness_config(j),
                          detail::witness_num(j, "rel_tol"), master, inst);
  }
  if (claim == "hadamard_column") {
    const int count = static_cast<int>(detail::witness_num(j, "count"));
    std::vector<Matrix> bs;
    for (int i = 0; i < count; ++i)
      bs.push_back(detail::witness_matrix(j, ("b" + std::to_string(i)).c_str()));
    const CpMap omega = from_choi(
        detail::witness_matrix(j, "omega_choi"),
        static_cast<Index>(detail::witness_num(j, "omega_d_in")),
        static_cast<Index>(detail::witness_num(j, "omega_d_out")));
    return check_hadamard_column(
        detail::witness_matrix(j, "c"), omega, bs,
        static_cast<Index>(detail::witness_num(j, "m")),
        NormParams(detail::witness_num(j, "q"), detail::witness_num(j, "p")),
        detail::witness_config(j), master, inst);
  }
  if (claim == "gap_hunt") {
    return hunt_gap_instance(static_cast<Index>(detail::witness_num(j, "d")),
                             detail::witness_num(j, "p"), master, inst,
                             detail::witness_config(j));
  }
  if (claim == "thm1" || claim == "thm2") {
    // The rhs is exact (thm1) or seed-deterministic (thm2); the stored lhs is
    // the potential estimate, reproducible from its own seeds upstream.
    const CpMap phi =
        from_choi(detail::witness_matrix(j, "phi_choi"),
                  static_cast<Index>(detail::witness_num(j, "d_in")),
                  static_cast<Index>(detail::witness_num(j, "d_out")));
    const NormParams np(detail::witness_num(j, "q"),
                        detail::witness_num(j, "p"));
    PotentialEstimate pot;
    pot.value = detail::witness_num(j, "lhs");
    if (claim == "thm1")
      return check_thm1(phi, np, pot, detail::witness_num(j, "check_tolerance"),
                        master, inst);
    return check_thm2(phi, np, pot, detail::witness_config(j),
                      detail::witness_num(j, "check_tolerance"), master, inst);
  }
  if (claim == "hypercontractivity") {
    return check_hypercontractivity(detail::witness_num(j, "lambda"),
                                    detail::witness_num(j, "q"),
                                    detail::witness_num(j, "p_requested"),
                                    static_cast<int>(detail::witness_num(j, "copies")),
                                    detail::witness_config(j));
  }
  throw InvalidInput("witness: unknown or unsupported claim \"" + claim + "\"");
}

}  // namespace puritylab
