#pragma once

#include <array>
#include <string>
#include <vector>

#include "puritylab/parallel.hpp"
#include "puritylab/purity.hpp"
#include "puritylab/semigroup.hpp"
#include "puritylab/verify.hpp"

namespace puritylab {

// Randomized verification suites. Each suite is a pure function of
// (trials, seed) plus optimizer budgets; instances run in parallel and the
// emitted list is sorted by instance seed, so output never depends on the
// schedule. Exponent grids double as the acceptance grids.

inline constexpr std::array<std::pair<double, double>, 5> kThm1Grid = {
    {{1.0, 2.0}, {1.0, 4.0}, {1.5, 3.0}, {3.0, 4.0}, {1.2, 1.7}}};
inline constexpr std::array<std::pair<double, double>, 3> kThm2Grid = {
    {{1.0, 2.0}, {1.0, 4.0}, {1.5, 3.0}}};
inline constexpr std::array<std::pair<double, double>, 3> kMultGrid = {
    {{2.0, 2.0}, {3.0, 2.0}, {4.0, 3.0}}};
inline constexpr std::array<std::pair<double, double>, 4> kThm3Grid = {
    {{1.0, 2.0}, {1.3, 2.6}, {2.0, 4.0}, {2.5, 3.0}}};
inline constexpr std::array<std::pair<double, double>, 4> kThm4Grid = {
    {{1.0, 2.0}, {1.5, 2.0}, {2.0, 4.0}, {1.7, 3.1}}};
inline constexpr std::array<std::pair<double, double>, 3> kUnitalQubitGrid = {
    {{1.0, 2.0}, {1.5, 3.0}, {2.0, 4.0}}};

/// Optimizer budgets used by the batch suites: lean enough for hundreds of
/// dispatcher calls, strong enough for the 1e-4/1e-6 equality tolerances at
/// the desk dimensions (d <= 3, ancilla <= 3).
inline PurityConfig suite_purity_config(std::uint64_t seed) {
  PurityConfig cfg;
  cfg.restarts = 6;
  cfg.max_iterations = 300;
  cfg.tolerance = 1e-10;
  cfg.oracle_samples = 200;
  cfg.oracle_hill_steps = 80;
  cfg.dispatch_oracle_samples = 48;
  cfg.dispatch_oracle_hill_steps = 50;
  cfg.seed = seed;
  return cfg;
}

namespace detail {

inline void sort_by_instance_seed(std::vector<BoundReport>& rs) {
  std::stable_sort(rs.begin(), rs.end(),
                   [](const BoundReport& a, const BoundReport& b) {
                     return a.instance_seed < b.instance_seed;
                   });
}

inline std::vector<BoundReport> flatten_sorted(
    std::vector<std::vector<BoundReport>> batches) {
  std::vector<BoundReport> out;
  for (auto& b : batches)
    for (auto& r : b) out.push_back(std::move(r));
  sort_by_instance_seed(out);
  return out;
}

inline CpMap random_small_channel(Rng& rng, Index d_lo, Index d_hi) {
  const Index span = d_hi - d_lo + 1;
  const Index d_in = d_lo + static_cast<Index>(rng.raw() % span);
  const Index d_out = d_lo + static_cast<Index>(rng.raw() % span);
  const Index env = 1 + static_cast<Index>(rng.raw() % d_hi);
  const std::uint64_t s = rng.raw();
  if (d_out * env >= d_in) return random_channel(d_in, d_out, env, s);
  return random_channel(d_in, d_out, d_in, s);
}

inline CpMap random_ancilla(Rng& rng, Index n_hi) {
  const Index n = 1 + static_cast<Index>(rng.raw() % n_hi);
  const std::uint64_t s = rng.raw();
  if (rng.uniform() < 0.5) return random_channel(n, n, n, s);
  return random_cp(n, n, n * n, s);
}

inline Matrix haar_unitary(Rng& rng, Index d) {
  Matrix g = gaussian_matrix(rng, d, d);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    const Complex rj = r(j, j);
    const double a = std::abs(rj);
    if (a > 0) q.col(j) *= rj / a;
  }
  return q;
}

/// Unital TP qubit map as a random mixture of Haar unitaries.
inline CpMap random_unital_qubit(Rng& rng) {
  const int terms = 2 + static_cast<int>(rng.raw() % 3);
  std::vector<double> w(static_cast<std::size_t>(terms));
  double total = 0.0;
  for (auto& x : w) {
    x = rng.uniform() + 1e-3;
    total += x;
  }
  std::vector<Matrix> ks;
  for (int t = 0; t < terms; ++t)
    ks.push_back(std::sqrt(w[static_cast<std::size_t>(t)] / total) *
                 haar_unitary(rng, 2));
  return from_kraus(ks);
}

}  // namespace detail

/// thm1 suite: potential-purity lower bounds vs alpha(q,p)||X||_2 over
/// random channels and the full exponent grid. One-sided, tolerance 1e-6.
inline std::vector<BoundReport> suite_thm1(int trials, std::uint64_t seed,
                                           int n_max = 3,
                                           int omegas_per_n = 1) {
  auto batches = parallel_map(static_cast<std::size_t>(trials), [&](std::size_t t) {
    const std::uint64_t inst = split_seed(seed, t);
    Rng rng(inst);
    const CpMap phi = detail::random_small_channel(rng, 2, 3);
    std::vector<BoundReport> out;
    for (std::size_t g = 0; g < kThm1Grid.size(); ++g) {
      const NormParams np(kThm1Grid[g].first, kThm1Grid[g].second);
      PurityConfig cfg = suite_purity_config(split_seed(inst, 1000 + g));
      const PotentialEstimate pot =
          potential_lower(phi, np, n_max, omegas_per_n, cfg);
      out.push_back(check_thm1(phi, np, pot, 1e-6, seed, inst));
    }
    return out;
  });
  return detail::flatten_sorted(std::move(batches));
}

/// thm2 suite: the same population restricted to 1 <= q <= 2 <= p,
/// against min(||Phi||_{p->p} + margin, ||X||_2).
inline std::vector<BoundReport> suite_thm2(int trials, std::uint64_t seed,
                                           int n_max = 3,
                                           int omegas_per_n = 1) {
  auto batches = parallel_map(static_cast<std::size_t>(trials), [&](std::size_t t) {
    const std::uint64_t inst = split_seed(seed, t);
    Rng rng(inst);
    const CpMap phi = detail::random_small_channel(rng, 2, 3);
    std::vector<BoundReport> out;
    for (std::size_t g = 0; g < kThm2Grid.size(); ++g) {
      const NormParams np(kThm2Grid[g].first, kThm2Grid[g].second);
      PurityConfig cfg = suite_purity_config(split_seed(inst, 2000 + g));
      const PotentialEstimate pot =
          potential_lower(phi, np, n_max, omegas_per_n, cfg);
      out.push_back(check_thm2(phi, np, pot, cfg, 1e-6, seed, inst));
    }
    return out;
  });
  return detail::flatten_sorted(std::move(batches));
}

/// Multiplicativity suite for q >= p over random channel pairs.
inline std::vector<BoundReport> suite_multiplicativity(int trials,
                                                       std::uint64_t seed) {
  auto batches = parallel_map(static_cast<std::size_t>(trials), [&](std::size_t t) {
    const std::uint64_t inst = split_seed(seed, t);
    Rng rng(inst);
    const CpMap phi = detail::random_small_channel(rng, 2, 3);
    const CpMap omega = detail::random_small_channel(rng, 2, 3);
    std::vector<BoundReport> out;
    for (std::size_t g = 0; g < kMultGrid.size(); ++g) {
      const NormParams np(kMultGrid[g].first, kMultGrid[g].second);
      PurityConfig cfg = suite_purity_config(split_seed(inst, 3000 + g));
      out.push_back(check_multiplicativity(phi, omega, np, cfg, seed, inst));
    }
    return out;
  });
  return detail::flatten_sorted(std::move(batches));
}

namespace detail {

inline CpMap random_cq(Rng& rng, Index d_lo, Index d_hi) {
  const Index d = d_lo + static_cast<Index>(rng.raw() % (d_hi - d_lo + 1));
  const Index dp = d_lo + static_cast<Index>(rng.raw() % (d_hi - d_lo + 1));
  std::vector<Matrix> states;
  for (Index k = 0; k < d; ++k) states.push_back(random_test_psd(rng, dp));
  return cq_map(states);
}

inline CpMap random_qc(Rng& rng, Index d_lo, Index d_hi) {
  const Index d = d_lo + static_cast<Index>(rng.raw() % (d_hi - d_lo + 1));
  const Index n = d_lo + static_cast<Index>(rng.raw() % (d_hi - d_lo + 1));
  std::vector<Matrix> povm;
  for (Index k = 0; k < n; ++k) povm.push_back(random_test_psd(rng, d));
  return qc_map(povm);
}

/// Adjoint-duality identity report: est ||Psi||_{q->p} vs est ||Psi*||_{p'->q'}.
inline BoundReport adjoint_duality_report(const CpMap& psi,
                                          const NormParams& np,
                                          const PurityConfig& cfg,
                                          std::uint64_t master,
                                          std::uint64_t inst,
                                          double tol_rel = 1e-6) {
  const PurityEstimate fwd =
      purity(psi, np, with_seed(cfg, split_seed(cfg.seed, 61)));
  const CpMap adj = adjoint_map(psi);
  const PurityEstimate bwd =
      purity(adj, np.dual(), with_seed(cfg, split_seed(cfg.seed, 62)));
  const double tol =
      tol_rel * std::max({fwd.value, bwd.value, 1.0});
  BoundReport r = equality(
      ClaimId::thm3, fwd.value, bwd.value, tol,
      witness_json(ClaimId::thm3,
                   {{"q", np.q},
                    {"p", np.p},
                    {"rel_tol", tol_rel},
                    {"adjoint_duality", 1.0},
                    {"phi_d_in", static_cast<double>(psi.input_dim())},
                    {"phi_d_out", static_cast<double>(psi.output_dim())},
                    {"phi_structure",
                     static_cast<double>(static_cast<int>(psi.structure()))},
                    {"omega_d_in", static_cast<double>(adj.input_dim())},
                    {"omega_d_out", static_cast<double>(adj.output_dim())}},
                   {{"phi_choi", psi.choi()}, {"omega_choi", adj.choi()}},
                   &cfg, master, inst));
  r.master_seed = master;
  r.instance_seed = inst;
  r.params = {{"q", np.q},
              {"p", np.p},
              {"adjoint_duality", 1.0}};
  return r;
}

}  // namespace detail

// thm3 suite: CQ and QC maps against random ancillas on the 4-point
// grid, plus the adjoint-duality identity on the same population.
inline std::vector<BoundReport> suite_thm3(int trials_each, std::uint64_t seed,
                                           bool include_duality = true) {
  const std::size_t total = 2 * static_cast<std::size_t>(trials_each);
  auto batches = parallel_map(total, [&](std::size_t t) {
    const std::uint64_t inst = split_seed(seed, t);
    Rng rng(inst);
    const bool use_cq = t < static_cast<std::size_t>(trials_each);
    const CpMap phi = use_cq ? detail::random_cq(rng, 2, 3)
                             : detail::random_qc(rng, 2, 3);
    const CpMap omega = detail::random_ancilla(rng, 2);
    std::vector<BoundReport> out;
    for (std::size_t g = 0; g < kThm3Grid.size(); ++g) {
      const NormParams np(kThm3Grid[g].first, kThm3Grid[g].second);
      PurityConfig cfg = suite_purity_config(split_seed(inst, 4000 + g));
      out.push_back(check_thm3(phi, omega, np, cfg, seed, inst));
      if (include_duality)
        out.push_back(detail::adjoint_duality_report(
            phi, np, with_seed(cfg, split_seed(inst, 4100 + g)), seed, inst));
    }
    return out;
  });
  return detail::flatten_sorted(std::move(batches));
}

/// thm4 suite: random PSD Hadamard multipliers against random ancillas.
inline std::vector<BoundReport> suite_thm4(int trials, std::uint64_t seed) {
  auto batches = parallel_map(static_cast<std::size_t>(trials), [&](std::size_t t) {
    const std::uint64_t inst = split_seed(seed, t);
    Rng rng(inst);
    const Index d = 2 + static_cast<Index>(rng.raw() % 2);
    const Matrix c = detail::random_test_psd(rng, d);
    const CpMap omega = detail::random_ancilla(rng, 2);
    std::vector<BoundReport> out;
    for (std::size_t g = 0; g < kThm4Grid.size(); ++g) {
      const NormParams np(kThm4Grid[g].first, kThm4Grid[g].second);
      PurityConfig cfg = suite_purity_config(split_seed(inst, 5000 + g));
      out.push_back(check_thm4(c, omega, np, cfg, seed, inst));
    }
    return out;
  });
  return detail::flatten_sorted(std::move(batches));
}

/// Unital TP qubit multiplicativity in 1 <= q <= 2 <= p.
inline std::vector<BoundReport> suite_unital_qubit(int trials,
                                                   std::uint64_t seed) {
  auto batches = parallel_map(static_cast<std::size_t>(trials), [&](std::size_t t) {
    const std::uint64_t inst = split_seed(seed, t);
    Rng rng(inst);
    const CpMap phi = detail::random_unital_qubit(rng);
    const CpMap omega = detail::random_ancilla(rng, 2);
    std::vector<BoundReport> out;
    for (std::size_t g = 0; g < kUnitalQubitGrid.size(); ++g) {
      const NormParams np(kUnitalQubitGrid[g].first, kUnitalQubitGrid[g].second);
      PurityConfig cfg = suite_purity_config(split_seed(inst, 5500 + g));
      out.push_back(check_unital_qubit(phi, omega, np, cfg, seed, inst));
    }
    return out;
  });
  return detail::flatten_sorted(std::move(batches));
}

/// Exploratory equality probe on general EB maps (open question).
inline std::vector<BoundReport> suite_eb_exploratory(int trials,
                                                     std::uint64_t seed) {
  auto batches = parallel_map(static_cast<std::size_t>(trials), [&](std::size_t t) {
    const std::uint64_t inst = split_seed(seed, t);
    Rng rng(inst);
    const Index d = 2 + static_cast<Index>(rng.raw() % 2);
    const Index dp = 2 + static_cast<Index>(rng.raw() % 2);
    const int terms = 2 + static_cast<int>(rng.raw() % 2);
    std::vector<Matrix> povm, states;
    for (int k = 0; k < terms; ++k) {
      povm.push_back(detail::random_test_psd(rng, d));
      states.push_back(detail::random_test_psd(rng, dp));
    }
    const CpMap eb = eb_map(povm, states);
    const CpMap omega = detail::random_ancilla(rng, 2);
    const NormParams np(kThm3Grid[t % kThm3Grid.size()].first,
                        kThm3Grid[t % kThm3Grid.size()].second);
    PurityConfig cfg = suite_purity_config(split_seed(inst, 5700));
    std::vector<BoundReport> out;
    out.push_back(check_eb_exploratory(eb, omega, np, cfg, seed, inst));
    return out;
  });
  return detail::flatten_sorted(std::move(batches));
}

// ---- exact one-sided property suites -------------------------------------

inline std::vector<BoundReport> suite_bk1(int cases, std::uint64_t seed) {
  static constexpr std::array<double, 5> qs = {1.0, 1.5, 2.0, 3.0, 4.0};
  auto batches = parallel_map(static_cast<std::size_t>(cases), [&](std::size_t t) {
    const std::uint64_t inst = split_seed(seed, t);
    Rng rng(inst);
    const Index d = 2 + static_cast<Index>(rng.raw() % 2);
    const Index n = 2 + static_cast<Index>(rng.raw() % 2);
    const Matrix m = detail::gaussian_matrix(rng, d * n, d * n);
    BoundReport r = check_bk1(m, d, n, qs[t % qs.size()]);
    r.master_seed = seed;
    r.instance_seed = inst;
    return std::vector<BoundReport>{std::move(r)};
  });
  return detail::flatten_sorted(std::move(batches));
}

inline std::vector<BoundReport> suite_lieb_thirring(int cases,
                                                    std::uint64_t seed) {
  static constexpr std::array<double, 4> ps = {1.0, 1.5, 2.0, 3.0};
  auto batches = parallel_map(static_cast<std::size_t>(cases), [&](std::size_t t) {
    const std::uint64_t inst = split_seed(seed, t);
    Rng rng(inst);
    const Index rows = 2 + static_cast<Index>(rng.raw() % 5);
    const Index cols = 2 + static_cast<Index>(rng.raw() % 5);
    const Matrix r_op = detail::gaussian_matrix(rng, rows, cols);
    const Matrix w = detail::random_test_psd(rng, cols);
    BoundReport r = check_lieb_thirring(r_op, w, ps[t % ps.size()]);
    r.master_seed = seed;
    r.instance_seed = inst;
    return std::vector<BoundReport>{std::move(r)};
  });
  return detail::flatten_sorted(std::move(batches));
}

inline std::vector<BoundReport> suite_antinorm(int cases, std::uint64_t seed) {
  static constexpr std::array<double, 4> ts = {0.3, 0.5, 0.9, 1.0};
  auto batches = parallel_map(static_cast<std::size_t>(cases), [&](std::size_t t) {
    const std::uint64_t inst = split_seed(seed, t);
    Rng rng(inst);
    const Index d = 2 + static_cast<Index>(rng.raw() % 5);
    const int count = 2 + static_cast<int>(rng.raw() % 3);
    std::vector<Matrix> ms;
    for (int i = 0; i < count; ++i) ms.push_back(detail::random_test_psd(rng, d));
    BoundReport r = check_antinorm_super(ms, ts[t % ts.size()]);
    r.master_seed = seed;
    r.instance_seed = inst;
    return std::vector<BoundReport>{std::move(r)};
  });
  return detail::flatten_sorted(std::move(batches));
}

inline std::vector<BoundReport> suite_gen_hann(int cases, std::uint64_t seed) {
  static constexpr std::array<double, 5> ps = {1.0, 1.5, 2.0, 3.0, 4.0};
  auto batches = parallel_map(static_cast<std::size_t>(cases), [&](std::size_t t) {
    const std::uint64_t inst = split_seed(seed, t);
    Rng rng(inst);
    const Index d = 3 + static_cast<Index>(rng.raw() % 4);
    const Matrix m = detail::random_test_psd(rng, d);
    const Index proj = 1 + static_cast<Index>(rng.raw() % (d - 1));
    BoundReport r = check_gen_hann(m, proj, ps[t % ps.size()]);
    r.master_seed = seed;
    r.instance_seed = inst;
    return std::vector<BoundReport>{std::move(r)};
  });
  return detail::flatten_sorted(std::move(batches));
}

inline std::vector<BoundReport> suite_psd_2x2(int cases, std::uint64_t seed) {
  static constexpr std::array<double, 3> qs = {1.0, 1.3, 2.0};
  auto batches = parallel_map(static_cast<std::size_t>(cases), [&](std::size_t t) {
    const std::uint64_t inst = split_seed(seed, t);
    Rng rng(inst);
    const Index d = 2 + static_cast<Index>(rng.raw() % 5);
    const Matrix a = detail::random_test_psd(rng, d);
    const Index proj = 1 + static_cast<Index>(rng.raw() % (d - 1));
    BoundReport r = check_psd_2x2(a, proj, qs[t % qs.size()]);
    r.master_seed = seed;
    r.instance_seed = inst;
    return std::vector<BoundReport>{std::move(r)};
  });
  return detail::flatten_sorted(std::move(batches));
}

inline std::vector<BoundReport> suite_pinching(int cases, std::uint64_t seed) {
  static constexpr std::array<double, 4> qs = {1.0, 1.4, 2.0, 3.0};
  auto batches = parallel_map(static_cast<std::size_t>(cases), [&](std::size_t t) {
    const std::uint64_t inst = split_seed(seed, t);
    Rng rng(inst);
    const Index d = 2 + static_cast<Index>(rng.raw() % 2);
    const Index n = 2 + static_cast<Index>(rng.raw() % 2);
    const Matrix a = detail::random_test_psd(rng, d * n);
    BoundReport r = check_pinching(a, d, n, qs[t % qs.size()]);
    r.master_seed = seed;
    r.instance_seed = inst;
    return std::vector<BoundReport>{std::move(r)};
  });
  return detail::flatten_sorted(std::move(batches));
}

// ---- estimator-assisted chain suites --------------------------------------

inline std::vector<BoundReport> suite_cq_chain(int cases, std::uint64_t seed) {
  static constexpr std::array<std::pair<double, double>, 4> grid = {
      {{1.0, 2.0}, {1.5, 3.0}, {2.0, 4.0}, {2.5, 3.0}}};
  auto batches = parallel_map(static_cast<std::size_t>(cases), [&](std::size_t t) {
    const std::uint64_t inst = split_seed(seed, t);
    Rng rng(inst);
    const CpMap phi = detail::random_cq(rng, 2, 3);
    const CpMap omega = detail::random_ancilla(rng, 2);
    const Matrix a =
        detail::random_test_psd(rng, phi.input_dim() * omega.input_dim());
    const NormParams np(grid[t % grid.size()].first,
                        grid[t % grid.size()].second);
    PurityConfig cfg = suite_purity_config(split_seed(inst, 6000));
    BoundReport r = check_cq_chain(phi, omega, a, np, cfg, 1e-8, seed, inst);
    return std::vector<BoundReport>{std::move(r)};
  });
  return detail::flatten_sorted(std::move(batches));
}

inline std::vector<BoundReport> suite_hadamard_column(int cases,
                                                      std::uint64_t seed) {
  static constexpr std::array<std::pair<double, double>, 3> grid = {
      {{1.0, 2.0}, {1.5, 3.0}, {2.0, 4.0}}};
  auto batches = parallel_map(static_cast<std::size_t>(cases), [&](std::size_t t) {
    const std::uint64_t inst = split_seed(seed, t);
    Rng rng(inst);
    const Index d = 2 + static_cast<Index>(rng.raw() % 2);
    const Matrix c = detail::random_test_psd(rng, d);
    const Index n = 2;
    const CpMap omega = detail::random_ancilla(rng, n);
    std::vector<Matrix> bs;
    for (Index j = 0; j < d; ++j)
      bs.push_back(detail::gaussian_matrix(rng, omega.input_dim(),
                                           omega.input_dim()));
    const Index m = static_cast<Index>(rng.raw() % d);
    const NormParams np(grid[t % grid.size()].first,
                        grid[t % grid.size()].second);
    PurityConfig cfg = suite_purity_config(split_seed(inst, 6100));
    BoundReport r =
        check_hadamard_column(c, omega, bs, m, np, cfg, seed, inst);
    return std::vector<BoundReport>{std::move(r)};
  });
  return detail::flatten_sorted(std::move(batches));
}

/// Hypercontractivity equality grid for the qubit depolarizing family.
inline std::vector<BoundReport> suite_hypercontractivity(int trials,
                                                         std::uint64_t seed) {
  static constexpr std::array<double, 3> lambdas = {0.3, 0.5, 0.8};
  static constexpr std::array<double, 2> qs = {2.0, 3.0};
  auto batches = parallel_map(static_cast<std::size_t>(trials), [&](std::size_t t) {
    const std::uint64_t inst = split_seed(seed, t);
    const double lambda = lambdas[t % lambdas.size()];
    const double q = qs[(t / lambdas.size()) % qs.size()];
    PurityConfig cfg = suite_purity_config(inst);
    BoundReport r = check_hypercontractivity(lambda, q, 8.0, 2, cfg, 8.0, seed);
    r.instance_seed = inst;
    return std::vector<BoundReport>{std::move(r)};
  });
  return detail::flatten_sorted(std::move(batches));
}

/// Named suite dispatch used by the CLI.
inline std::vector<BoundReport> run_suite(const std::string& name, int trials,
                                          std::uint64_t seed) {
  if (name == "thm1") return suite_thm1(trials, seed);
  if (name == "thm2") return suite_thm2(trials, seed);
  if (name == "mult") return suite_multiplicativity(trials, seed);
  if (name == "thm3") return suite_thm3(trials, seed);
  if (name == "thm4") return suite_thm4(trials, seed);
  if (name == "unital_qubit") return suite_unital_qubit(trials, seed);
  if (name == "bk1") return suite_bk1(trials, seed);
  if (name == "lieb_thirring") return suite_lieb_thirring(trials, seed);
  if (name == "antinorm") return suite_antinorm(trials, seed);
  if (name == "gen_hann") return suite_gen_hann(trials, seed);
  if (name == "psd_2x2") return suite_psd_2x2(trials, seed);
  if (name == "pinching") return suite_pinching(trials, seed);
  if (name == "cq_chain") return suite_cq_chain(trials, seed);
  if (name == "hadamard_column") return suite_hadamard_column(trials, seed);
  if (name == "hyper") return suite_hypercontractivity(trials, seed);
  if (name == "eb") return suite_eb_exploratory(trials, seed);
  throw InvalidInput("unknown verification suite \"" + name + "\"");
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "thm1",     "thm2",    "mult",     "thm3",           "thm4",
      "unital_qubit", "bk1", "lieb_thirring", "antinorm",  "gen_hann",
      "psd_2x2",  "pinching", "cq_chain", "hadamard_column", "hyper", "eb"};
  return names;
}

}  // namespace puritylab
