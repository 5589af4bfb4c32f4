#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "puritylab/channels.hpp"
#include "puritylab/json_writer.hpp"
#include "puritylab/linalg.hpp"
#include "puritylab/parallel.hpp"
#include "puritylab/purity.hpp"

namespace puritylab {

// Claim catalog. Each id names one bound/equality the library can test; the
// strings are the stable wire schema used in report JSON.
enum class ClaimId {
  thm1,              // potential purity <= alpha(q,p) * ||X_Phi||_2
  thm2,              // potential purity <= min(||Phi||_{p->p}, ||X_Phi||_2), q<=2<=p
  pot_eq_qgep,       // multiplicativity of the q->p purity for q >= p
  thm3,              // potential purity = purity for CQ/QC maps
  thm4,              // potential purity = purity for Hadamard maps, q<=2<=p
  bk1,               // block norm-square sums vs Schatten norm of the whole
  lieb_thirring,     // Tr (R W R*)^p <= Tr (R*R)^p W^p
  antinorm_super,    // anti-norm superadditivity on PSD sums
  gen_hann,          // 2x2 norm-compression inequality (direction flips at p=2)
  gen_hann2,         // projector reformulation of gen_hann
  cq_chain,          // the factorization chain bounding ||(Phi (x) Omega)(A)||_p
  hadamard_column,   // single block-column/row multiplicativity for Hadamard maps
  psd_2x2,           // ||F||_q^2 <= ||E||_q ||G||_q for PSD corner blocks
  pinching,          // block-diagonal pinch is Schatten-q nonincreasing
  unital_qubit,      // multiplicativity for unital TP qubit maps, q<=2<=p
  hypercontractivity,// depolarizing product-norm equality for p <= 1+(q-1)/l^2
  gap_hunt,          // search for ||Phi (x) conj(Phi)||_{1->p} > ||Phi||^2
  eb_exploratory,    // equality probe on general EB maps (open question, no proof)
};

inline const char* claim_name(ClaimId c) {
  switch (c) {
    case ClaimId::thm1: return "thm1";
    case ClaimId::thm2: return "thm2";
    case ClaimId::pot_eq_qgep: return "pot_eq_qgep";
    case ClaimId::thm3: return "thm3";
    case ClaimId::thm4: return "thm4";
    case ClaimId::bk1: return "bk1";
    case ClaimId::lieb_thirring: return "lieb_thirring";
    case ClaimId::antinorm_super: return "antinorm_super";
    case ClaimId::gen_hann: return "gen_hann";
    case ClaimId::gen_hann2: return "gen_hann2";
    case ClaimId::cq_chain: return "cq_chain";
    case ClaimId::hadamard_column: return "hadamard_column";
    case ClaimId::psd_2x2: return "psd_2x2";
    case ClaimId::pinching: return "pinching";
    case ClaimId::unital_qubit: return "unital_qubit";
    case ClaimId::hypercontractivity: return "hypercontractivity";
    case ClaimId::gap_hunt: return "gap_hunt";
    case ClaimId::eb_exploratory: return "eb_exploratory";
  }
  return "unknown";
}

enum class Verdict { holds, violated, inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

// One comparison record. For one-sided claims the tested statement is
// lhs <= rhs and `violated` means slack = rhs - lhs < -tolerance exactly.
// Equality claims grade |slack| against the estimator-derived tolerance:
// holds within it, inconclusive within 10x, violated beyond that.
struct BoundReport {
  ClaimId claim = ClaimId::thm1;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;   // rhs - lhs
  double tolerance = 0.0;
  Verdict verdict = Verdict::holds;
  std::string witness;  // serialized inputs, present iff violated; replayable
  std::uint64_t master_seed = 0;
  std::uint64_t instance_seed = 0;
  std::vector<std::pair<std::string, double>> params;
};

namespace detail {

/// Serialized check inputs: numeric fields, named matrices, and optionally
/// the optimizer budgets, enough to rerun the check and land on the same
/// verdict (see replay.hpp).
inline std::string witness_json(
    ClaimId claim, const std::vector<std::pair<std::string, double>>& nums,
    const std::vector<std::pair<std::string, Matrix>>& mats,
    const PurityConfig* cfg = nullptr, std::uint64_t master = 0,
    std::uint64_t instance = 0) {
  JsonWriter w;
  w.begin_object();
  w.key("claim").value(claim_name(claim));
  w.key("master_seed").value(master);
  w.key("instance_seed").value(instance);
  for (const auto& [k, v] : nums) w.key(k).value(v);
  for (const auto& [k, m] : mats) w.key(k).raw(matrix_json(m));
  if (cfg) {
    w.key("config").begin_object();
    w.key("restarts").value(cfg->restarts);
    w.key("max_iterations").value(cfg->max_iterations);
    w.key("tolerance").value(cfg->tolerance);
    w.key("oracle_samples").value(cfg->oracle_samples);
    w.key("oracle_hill_steps").value(cfg->oracle_hill_steps);
    w.key("dispatch_oracle_samples").value(cfg->dispatch_oracle_samples);
    w.key("dispatch_oracle_hill_steps").value(cfg->dispatch_oracle_hill_steps);
    w.key("seed").value(cfg->seed);
    w.end_object();
  }
  w.end_object();
  return w.str();
}

inline BoundReport one_sided(ClaimId claim, double lhs, double rhs, double tol,
                             const std::string& witness_on_violation = {}) {
  BoundReport r;
  r.claim = claim;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.tolerance = tol;
  r.verdict = (r.slack < -tol) ? Verdict::violated : Verdict::holds;
  if (r.verdict == Verdict::violated) r.witness = witness_on_violation;
  return r;
}

inline BoundReport equality(ClaimId claim, double lhs, double rhs, double tol,
                            const std::string& witness_on_violation = {}) {
  BoundReport r;
  r.claim = claim;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.tolerance = tol;
  const double diff = std::abs(r.slack);
  if (diff <= tol) {
    r.verdict = Verdict::holds;
  } else if (diff <= 10.0 * tol) {
    r.verdict = Verdict::inconclusive;
  } else {
    r.verdict = Verdict::violated;
    r.witness = witness_on_violation;
  }
  return r;
}

/// Estimator slack of one lower-bound estimate: relative floor plus the
/// observed restart dispersion.
inline double estimate_margin(const PurityEstimate& e, double rel = 1e-4) {
  return std::max(rel * std::max(e.value, 0.0), e.spread);
}

/// Combined slack for comparing est(Phi (x) Omega) with est(Phi)*est(Omega).
inline double combined_product_slack(const PurityEstimate& tensor,
                                     const PurityEstimate& left,
                                     const PurityEstimate& right,
                                     double rel = 1e-4) {
  const double scale =
      std::max({std::abs(tensor.value), std::abs(left.value * right.value),
                1e-300});
  const double dispersion = std::max(
      tensor.spread, left.spread * right.value + right.spread * left.value);
  return std::max(rel * scale, dispersion);
}

inline Matrix random_test_psd(Rng& rng, Index d) {
  // 10% rank one, 10% near singular, the rest full rank: inequality
  // tightness tends to live at the extreme ranks.
  const double u = rng.uniform();
  Index rank = d;
  bool near_singular = false;
  if (u < 0.1) {
    rank = 1;
  } else if (u < 0.2) {
    near_singular = true;
  }
  Matrix g = gaussian_matrix(rng, d, rank);
  if (near_singular && d > 1) g.col(d - 1) *= 1e-5;
  return hermitize(g * g.adjoint());
}

}  // namespace detail

// alpha(q,p) from the Choi 2-norm bound, defined for q < p. The three
// expressions agree on the q = 2 and p = 2 boundaries, which resolve to the
// first case's value 1.
inline double alpha_factor(const NormParams& np, Index d, Index d_out) {
  if (!(np.q < np.p))
    throw InvalidInput("alpha_factor: requires q < p (q >= p is the "
                       "multiplicative regime)");
  if (np.q <= 2.0 && np.p >= 2.0) return 1.0;
  if (np.q > 2.0) return std::pow(static_cast<double>(d), 1.0 - 2.0 / np.q);
  return std::pow(static_cast<double>(d_out), 2.0 / np.p - 1.0);
}

/// potential.value <= alpha(q,p) * ||X_Phi||_2. One-sided: the estimate is a
/// lower bound, so a genuine violation is a counterexample.
inline BoundReport check_thm1(const CpMap& phi, const NormParams& np,
                              const PotentialEstimate& potential,
                              double tol = 1e-6, std::uint64_t master = 0,
                              std::uint64_t instance = 0) {
  const double alpha = alpha_factor(np, phi.input_dim(), phi.output_dim());
  const double rhs = alpha * choi_frobenius(phi);
  BoundReport r = detail::one_sided(
      ClaimId::thm1, potential.value, rhs, tol,
      detail::witness_json(ClaimId::thm1,
                           {{"q", np.q},
                            {"p", np.p},
                            {"lhs", potential.value},
                            {"check_tolerance", tol},
                            {"d_in", static_cast<double>(phi.input_dim())},
                            {"d_out", static_cast<double>(phi.output_dim())}},
                           {{"phi_choi", phi.choi()}}, nullptr, master,
                           instance));
  r.master_seed = master;
  r.instance_seed = instance;
  r.params = {{"q", np.q},
              {"p", np.p},
              {"d_in", static_cast<double>(phi.input_dim())},
              {"d_out", static_cast<double>(phi.output_dim())},
              {"alpha", alpha},
              {"ancilla_dim", static_cast<double>(potential.ancilla_dim)}};
  return r;
}

/// potential.value <= min(||Phi||_{p->p} + margin, ||X_Phi||_2) for
/// 1 <= q <= 2 <= p. The p->p term is itself an estimate, so it enters with
/// its declared estimator margin.
inline BoundReport check_thm2(const CpMap& phi, const NormParams& np,
                              const PotentialEstimate& potential,
                              const PurityConfig& config, double tol = 1e-6,
                              std::uint64_t master = 0,
                              std::uint64_t instance = 0) {
  if (!(np.q >= 1.0 && np.q <= 2.0 && np.p >= 2.0))
    throw InvalidInput("check_thm2: requires 1 <= q <= 2 <= p");
  const NormParams pp(np.p, np.p);
  const PurityEstimate est_pp =
      purity(phi, pp, with_seed(config, split_seed(config.seed, 77)));
  const double margin = detail::estimate_margin(est_pp);
  const double rhs = std::min(est_pp.value + margin, choi_frobenius(phi));
  BoundReport r = detail::one_sided(
      ClaimId::thm2, potential.value, rhs, tol,
      detail::witness_json(ClaimId::thm2,
                           {{"q", np.q},
                            {"p", np.p},
                            {"lhs", potential.value},
                            {"check_tolerance", tol},
                            {"d_in", static_cast<double>(phi.input_dim())},
                            {"d_out", static_cast<double>(phi.output_dim())}},
                           {{"phi_choi", phi.choi()}}, &config, master,
                           instance));
  r.master_seed = master;
  r.instance_seed = instance;
  r.params = {{"q", np.q},
              {"p", np.p},
              {"norm_pp_estimate", est_pp.value},
              {"norm_pp_margin", margin},
              {"choi_frobenius", choi_frobenius(phi)}};
  return r;
}

namespace detail {

/// Shared two-sided equality comparison of est(Phi (x) Omega) against
/// est(Phi) * est(Omega), with the tensor search warm-started at the product
/// of component maximizers so the lower side is guaranteed.
inline BoundReport product_equality(ClaimId claim, const CpMap& phi,
                                    const CpMap& omega, const NormParams& np,
                                    const PurityConfig& config,
                                    std::uint64_t master, std::uint64_t instance,
                                    double rel_tol = 1e-4) {
  const PurityEstimate est_phi =
      purity(phi, np, with_seed(config, split_seed(config.seed, 11)));
  const PurityEstimate est_om =
      purity(omega, np, with_seed(config, split_seed(config.seed, 12)));
  const CpMap tens = tensor_map(phi, omega);
  const Matrix warm = kron(est_phi.maximizer, est_om.maximizer);
  const PurityEstimate est_t =
      purity(tens, np, with_seed(config, split_seed(config.seed, 13)), warm);
  const double tol = combined_product_slack(est_t, est_phi, est_om, rel_tol);
  BoundReport r = equality(
      claim, est_t.value, est_phi.value * est_om.value, tol,
      witness_json(claim,
                   {{"q", np.q},
                    {"p", np.p},
                    {"rel_tol", rel_tol},
                    {"phi_d_in", static_cast<double>(phi.input_dim())},
                    {"phi_d_out", static_cast<double>(phi.output_dim())},
                    {"phi_structure",
                     static_cast<double>(static_cast<int>(phi.structure()))},
                    {"omega_d_in", static_cast<double>(omega.input_dim())},
                    {"omega_d_out", static_cast<double>(omega.output_dim())}},
                   {{"phi_choi", phi.choi()}, {"omega_choi", omega.choi()}},
                   &config, master, instance));
  r.master_seed = master;
  r.instance_seed = instance;
  r.params = {{"q", np.q},
              {"p", np.p},
              {"purity_phi", est_phi.value},
              {"purity_omega", est_om.value},
              {"purity_tensor", est_t.value}};
  return r;
}

}  // namespace detail

/// Multiplicativity in the q >= p regime (two-sided equality check).
inline BoundReport check_multiplicativity(const CpMap& phi, const CpMap& omega,
                                          const NormParams& np,
                                          const PurityConfig& config,
                                          std::uint64_t master = 0,
                                          std::uint64_t instance = 0) {
  if (!(np.q >= np.p))
    throw InvalidInput("check_multiplicativity: requires q >= p");
  return detail::product_equality(ClaimId::pot_eq_qgep, phi, omega, np, config,
                                  master, instance);
}

/// Purity multiplicativity for CQ/QC-constructed maps, any q, p >= 1.
inline BoundReport check_thm3(const CpMap& phi, const CpMap& omega,
                              const NormParams& np, const PurityConfig& config,
                              std::uint64_t master = 0,
                              std::uint64_t instance = 0) {
  if (phi.structure() != MapStructure::cq &&
      phi.structure() != MapStructure::qc)
    throw InvalidInput("check_thm3: map was not constructed as CQ or QC");
  return detail::product_equality(ClaimId::thm3, phi, omega, np, config,
                                  master, instance);
}

/// Purity multiplicativity for Hadamard maps in 1 <= q <= 2 <= p.
inline BoundReport check_thm4(const Matrix& c, const CpMap& omega,
                              const NormParams& np, const PurityConfig& config,
                              std::uint64_t master = 0,
                              std::uint64_t instance = 0) {
  if (!(np.q >= 1.0 && np.q <= 2.0 && np.p >= 2.0))
    throw InvalidInput("check_thm4: requires 1 <= q <= 2 <= p");
  return detail::product_equality(ClaimId::thm4, hadamard_map(c), omega, np,
                                  config, master, instance);
}

/// Multiplicativity for unital trace-preserving qubit maps in 1 <= q <= 2 <= p.
inline BoundReport check_unital_qubit(const CpMap& phi, const CpMap& omega,
                                      const NormParams& np,
                                      const PurityConfig& config,
                                      std::uint64_t master = 0,
                                      std::uint64_t instance = 0) {
  if (phi.input_dim() != 2 || phi.output_dim() != 2)
    throw InvalidInput("check_unital_qubit: map must act on qubits");
  if (!phi.is_unital() || !phi.is_trace_preserving())
    throw InvalidInput(
        "check_unital_qubit: map must be unital and trace preserving");
  if (!(np.q >= 1.0 && np.q <= 2.0 && np.p >= 2.0))
    throw InvalidInput("check_unital_qubit: requires 1 <= q <= 2 <= p");
  return detail::product_equality(ClaimId::unital_qubit, phi, omega, np,
                                  config, master, instance);
}

/// Exploratory probe of the open question whether general EB maps are
/// multiplicative; filed under its own claim id, separate from the proven cases.
inline BoundReport check_eb_exploratory(const CpMap& eb, const CpMap& omega,
                                        const NormParams& np,
                                        const PurityConfig& config,
                                        std::uint64_t master = 0,
                                        std::uint64_t instance = 0) {
  return detail::product_equality(ClaimId::eb_exploratory, eb, omega, np,
                                  config, master, instance);
}

/// Block norm-square sum bound: sum_ij ||M_ij||_q^2 <= ||M||_q^2 for
/// 1 <= q <= 2 and <= d^{2-4/q} ||M||_q^2 for q >= 2. Exact evaluation.
inline BoundReport check_bk1(const Matrix& m, Index d, Index n, double q,
                             double tol = 1e-9) {
  if (m.rows() != d * n || m.cols() != d * n)
    throw DimensionMismatch("check_bk1: matrix is not (d*n) x (d*n)");
  double lhs = 0.0;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      const double nb = schatten_norm(block(m, d, n, i, j), q);
      lhs += nb * nb;
    }
  const double whole = schatten_norm(m, q);
  const double factor =
      q <= 2.0 ? 1.0 : std::pow(static_cast<double>(d), 2.0 - 4.0 / q);
  const double rhs = factor * whole * whole;
  BoundReport r = detail::one_sided(
      ClaimId::bk1, lhs, rhs, tol,
      detail::witness_json(ClaimId::bk1,
                           {{"q", q},
                            {"d", static_cast<double>(d)},
                            {"n", static_cast<double>(n)},
                            {"check_tolerance", tol}},
                           {{"m", m}}));
  r.params = {{"q", q}, {"d", static_cast<double>(d)},
              {"n", static_cast<double>(n)}};
  return r;
}

/// Tr (R W R*)^p <= Tr (R*R)^p W^p for PSD W and p >= 1. Exact evaluation,
/// relative tolerance.
inline BoundReport check_lieb_thirring(const Matrix& r_op, const Matrix& w,
                                       double p, double rel_tol = 1e-9) {
  if (r_op.cols() != w.rows())
    throw DimensionMismatch("check_lieb_thirring: shapes not conformable");
  const Matrix wh = hermitize(w);
  psd_eigenvalues(wh);  // PSD gate
  const Matrix inner = hermitize(r_op * wh * r_op.adjoint());
  const RealVector ev = psd_eigenvalues(inner, 1e-8);
  double lhs = 0.0;
  for (Index i = 0; i < ev.size(); ++i)
    if (ev[i] > 0.0) lhs += std::pow(ev[i], p);
  const Matrix gram_p = herm_power(hermitize(r_op.adjoint() * r_op), p);
  const Matrix w_p = herm_power(wh, p);
  const double rhs = (gram_p * w_p).trace().real();
  const double tol = rel_tol * std::max({std::abs(lhs), std::abs(rhs), 1.0});
  BoundReport rep = detail::one_sided(
      ClaimId::lieb_thirring, lhs, rhs, tol,
      detail::witness_json(ClaimId::lieb_thirring,
                           {{"p", p}, {"rel_tol", rel_tol}},
                           {{"r", r_op}, {"w", w}}));
  rep.params = {{"p", p}};
  return rep;
}

/// ||sum M_i||_t >= sum ||M_i||_t for PSD M_i and t in (0, 1].
inline BoundReport check_antinorm_super(const std::vector<Matrix>& ms, double t,
                                        double tol = 1e-9) {
  if (ms.empty()) throw InvalidInput("check_antinorm_super: empty list");
  Matrix sum = Matrix::Zero(ms.front().rows(), ms.front().cols());
  double lhs = 0.0;
  std::vector<std::pair<std::string, Matrix>> mats;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const Matrix h = hermitize(ms[i]);
    lhs += schatten_antinorm(h, t);
    sum += h;
    mats.emplace_back("m" + std::to_string(i), ms[i]);
  }
  const double rhs = schatten_antinorm(sum, t);
  BoundReport r = detail::one_sided(
      ClaimId::antinorm_super, lhs, rhs, tol,
      detail::witness_json(ClaimId::antinorm_super,
                           {{"t", t},
                            {"count", static_cast<double>(ms.size())},
                            {"check_tolerance", tol}},
                           mats));
  r.params = {{"t", t}, {"count", static_cast<double>(ms.size())}};
  return r;
}

// Norm compression onto the 2x2 matrix of block norms, with Q1 the span of
// the first proj_dim basis vectors: for p >= 2 the compressed norm dominates;
// for 1 <= p <= 2 the inequality reverses.
inline BoundReport check_gen_hann(const Matrix& m, Index proj_dim, double p,
                                  double tol = 1e-9) {
  const Index dim = m.rows();
  if (proj_dim < 1 || proj_dim >= dim)
    throw InvalidInput("check_gen_hann: need 1 <= proj_dim < dim");
  const Matrix h = hermitize(m);
  psd_eigenvalues(h);
  const Index k = proj_dim;
  // diagonal blocks of a PSD matrix are PSD: use the eigenvalue path, which
  // avoids the Gram squaring and its accuracy loss near singularity
  const double n11 = hermitian_schatten_norm(h.block(0, 0, k, k), p);
  const double n12 = schatten_norm(h.block(0, k, k, dim - k), p);
  const double n21 = schatten_norm(h.block(k, 0, dim - k, k), p);
  const double n22 = hermitian_schatten_norm(h.block(k, k, dim - k, dim - k), p);
  Matrix two(2, 2);
  two << n11, n12, n21, n22;
  const double compressed = hermitian_schatten_norm(two, p);
  const double whole = hermitian_schatten_norm(h, p);
  const double lhs = p >= 2.0 ? whole : compressed;
  const double rhs = p >= 2.0 ? compressed : whole;
  BoundReport r = detail::one_sided(
      ClaimId::gen_hann, lhs, rhs, tol,
      detail::witness_json(ClaimId::gen_hann,
                           {{"p", p},
                            {"proj_dim", static_cast<double>(proj_dim)},
                            {"check_tolerance", tol}},
                           {{"m", m}}));
  r.params = {{"p", p}, {"proj_dim", static_cast<double>(proj_dim)}};
  return r;
}

/// ||F||_q <= sqrt(||E||_q ||G||_q) for the corner blocks of a PSD matrix.
inline BoundReport check_psd_2x2(const Matrix& a, Index proj_dim, double q,
                                 double tol = 1e-9) {
  const Index dim = a.rows();
  if (proj_dim < 1 || proj_dim >= dim)
    throw InvalidInput("check_psd_2x2: need 1 <= proj_dim < dim");
  const Matrix h = hermitize(a);
  psd_eigenvalues(h);
  const Index k = proj_dim;
  const double nf = schatten_norm(h.block(0, k, k, dim - k), q);
  const double ne = hermitian_schatten_norm(h.block(0, 0, k, k), q);
  const double ng = hermitian_schatten_norm(h.block(k, k, dim - k, dim - k), q);
  BoundReport r = detail::one_sided(
      ClaimId::psd_2x2, nf, std::sqrt(ne * ng), tol,
      detail::witness_json(ClaimId::psd_2x2,
                           {{"q", q},
                            {"proj_dim", static_cast<double>(proj_dim)},
                            {"check_tolerance", tol}},
                           {{"a", a}}));
  r.params = {{"q", q}, {"proj_dim", static_cast<double>(proj_dim)}};
  return r;
}

/// ||block_diag_pinch(A)||_q <= ||A||_q for PSD A.
inline BoundReport check_pinching(const Matrix& a, Index d, Index n, double q,
                                  double tol = 1e-10) {
  const Matrix h = hermitize(a);
  psd_eigenvalues(h);
  const double lhs = hermitian_schatten_norm(block_diag_pinch(h, d, n), q);
  const double rhs = hermitian_schatten_norm(h, q);
  BoundReport r = detail::one_sided(
      ClaimId::pinching, lhs, rhs, tol,
      detail::witness_json(ClaimId::pinching,
                           {{"q", q},
                            {"d", static_cast<double>(d)},
                            {"n", static_cast<double>(n)},
                            {"check_tolerance", tol}},
                           {{"a", a}}));
  r.params = {{"q", q}, {"d", static_cast<double>(d)},
              {"n", static_cast<double>(n)}};
  return r;
}

// The CQ factorization chain on input A (PSD on the d*n product space), with
// x_k = ||A_kk||_q and C = sum_k x_k |k><k|:
//   (a) ||B||_p = ||(Phi (x) Omega)(A)||_p   (pure middle factor)
//   (b) ||B||_p <= ||Omega||_{q->p} ||Phi(C)||_p
//   (c) ||Phi(C)||_p <= ||Phi||_{q->p} ||C||_q
//   (d) ||C||_q <= ||A||_q                   (pinching)
// Links (b), (c) compare against lower-bound estimates, so they only count
// as violated beyond the recorded estimator margin.
inline BoundReport check_cq_chain(const CpMap& phi, const CpMap& omega,
                                  const Matrix& a_in, const NormParams& np,
                                  const PurityConfig& config,
                                  double rel_tol = 1e-8,
                                  std::uint64_t master = 0,
                                  std::uint64_t instance = 0) {
  if (phi.structure() != MapStructure::cq)
    throw InvalidInput("check_cq_chain: map was not constructed as CQ");
  const Index d = phi.input_dim();
  const Index dp = phi.output_dim();
  const Index n = omega.input_dim();
  if (a_in.rows() != d * n)
    throw DimensionMismatch("check_cq_chain: input lives on the wrong space");

  Matrix a = hermitize(a_in);
  psd_eigenvalues(a);
  const double a_scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  {  // zero diagonal blocks break the x_k construction; nudge by eps * I
    bool degenerate = false;
    for (Index k = 0; k < d; ++k)
      if (block(a, d, n, k, k).cwiseAbs().maxCoeff() <= 1e-12 * a_scale)
        degenerate = true;
    if (degenerate)
      a += 1e-12 * a_scale * Matrix::Identity(a.rows(), a.cols());
  }

  const std::vector<Matrix> states = cq_states(phi);
  std::vector<double> x(static_cast<std::size_t>(d));
  for (Index k = 0; k < d; ++k)
    x[static_cast<std::size_t>(k)] =
        hermitian_schatten_norm(block(a, d, n, k, k), np.q);

  // B = sum_k R_k (x) |0><0|_d (x) Omega(A_kk)
  const Index np_dim = omega.output_dim();
  Matrix b = Matrix::Zero(dp * d * np_dim, dp * d * np_dim);
  Matrix psi = Matrix::Zero(d, d);
  psi(0, 0) = 1.0;
  for (Index k = 0; k < d; ++k) {
    const Matrix om_a = omega.apply(block(a, d, n, k, k));
    b += kron(states[static_cast<std::size_t>(k)], kron(psi, om_a));
  }

  const CpMap tens = tensor_map(phi, omega);
  const Matrix y = tens.apply(a);
  const double norm_b = hermitian_schatten_norm(hermitize(b), np.p);
  const double norm_y = hermitian_schatten_norm(hermitize(y), np.p);

  Matrix c_mat = Matrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) c_mat(k, k) = x[static_cast<std::size_t>(k)];
  const Matrix phi_c = phi.apply(c_mat);
  const double norm_phi_c = hermitian_schatten_norm(hermitize(phi_c), np.p);
  const double norm_c = hermitian_schatten_norm(c_mat, np.q);
  const double norm_a = hermitian_schatten_norm(a, np.q);

  const PurityEstimate est_om =
      purity(omega, np, with_seed(config, split_seed(config.seed, 21)));
  const PurityEstimate est_phi =
      purity(phi, np, with_seed(config, split_seed(config.seed, 22)));

  struct Link {
    const char* name;
    double lhs, rhs, tol;
  };
  const double scale_a = std::max({norm_b, norm_y, 1e-300});
  const Link links[] = {
      {"link_a", std::abs(norm_b - norm_y), 0.0, rel_tol * scale_a},
      {"link_b", norm_b,
       (est_om.value + detail::estimate_margin(est_om)) * norm_phi_c,
       rel_tol * std::max(norm_b, 1e-300)},
      {"link_c", norm_phi_c,
       (est_phi.value + detail::estimate_margin(est_phi)) * norm_c,
       rel_tol * std::max(norm_phi_c, 1e-300)},
      {"link_d", norm_c, norm_a, rel_tol * std::max(norm_a, 1e-300)},
  };

  // Report carries the worst link; params record every link's slack.
  int worst = 0;
  double worst_margin = kInf;
  std::vector<std::pair<std::string, double>> params = {{"q", np.q},
                                                        {"p", np.p}};
  for (int i = 0; i < 4; ++i) {
    const double margin = (links[i].rhs - links[i].lhs) + links[i].tol;
    params.emplace_back(std::string(links[i].name) + "_slack",
                        links[i].rhs - links[i].lhs);
    if (margin < worst_margin) {
      worst_margin = margin;
      worst = i;
    }
  }
  BoundReport r = detail::one_sided(
      ClaimId::cq_chain, links[worst].lhs, links[worst].rhs, links[worst].tol,
      detail::witness_json(ClaimId::cq_chain,
                           {{"q", np.q},
                            {"p", np.p},
                            {"rel_tol", rel_tol},
                            {"phi_d_in", static_cast<double>(d)},
                            {"phi_d_out", static_cast<double>(dp)},
                            {"omega_d_in", static_cast<double>(n)},
                            {"omega_d_out", static_cast<double>(np_dim)}},
                           {{"phi_choi", phi.choi()},
                            {"omega_choi", omega.choi()},
                            {"a", a_in}},
                           &config, master, instance));
  r.master_seed = master;
  r.instance_seed = instance;
  r.params = std::move(params);
  return r;
}

// Single block-column (and block-row) multiplicativity for Hadamard maps:
// for B = sum_j |j><m| (x) B_j and 1 <= q <= 2 <= p,
// ||(H_C (x) Omega)(B)||_p <= ||H_C|| ||Omega|| ||B||_q, with the norms
// entering as estimates plus margin.
inline BoundReport check_hadamard_column(const Matrix& c, const CpMap& omega,
                                         const std::vector<Matrix>& bs,
                                         Index m_col, const NormParams& np,
                                         const PurityConfig& config,
                                         std::uint64_t master = 0,
                                         std::uint64_t instance = 0) {
  if (!(np.q >= 1.0 && np.q <= 2.0 && np.p >= 2.0))
    throw InvalidInput("check_hadamard_column: requires 1 <= q <= 2 <= p");
  const Matrix ch = hermitize(c);
  const Index d = ch.rows();
  if (m_col < 0 || m_col >= d)
    throw InvalidInput("check_hadamard_column: column index out of range");
  if (static_cast<Index>(bs.size()) != d)
    throw InvalidInput("check_hadamard_column: need one block per basis vector");
  const Index n = bs.front().rows();
  const Index n_out = omega.output_dim();

  const CpMap hc = hadamard_map(ch);
  const PurityEstimate est_h =
      purity(hc, np, with_seed(config, split_seed(config.seed, 31)));
  const PurityEstimate est_om =
      purity(omega, np, with_seed(config, split_seed(config.seed, 32)));
  const double bound_factor = (est_h.value + detail::estimate_margin(est_h)) *
                              (est_om.value + detail::estimate_margin(est_om));

  double worst_lhs = 0.0, worst_rhs = kInf;
  for (int variant = 0; variant < 2; ++variant) {  // column, then row
    Matrix b = Matrix::Zero(d * n, d * n);
    Matrix y = Matrix::Zero(d * n_out, d * n_out);
    for (Index j = 0; j < d; ++j) {
      const Matrix& bj = bs[static_cast<std::size_t>(j)];
      const Matrix om_b = omega.apply(bj);
      const Index row = variant == 0 ? j : m_col;
      const Index col = variant == 0 ? m_col : j;
      b.block(row * n, col * n, n, n) += bj;
      y.block(row * n_out, col * n_out, n_out, n_out) += ch(row, col) * om_b;
    }
    const double lhs = schatten_norm(y, np.p);
    const double rhs = bound_factor * schatten_norm(b, np.q);
    if (rhs - lhs < worst_rhs - worst_lhs) {
      worst_lhs = lhs;
      worst_rhs = rhs;
    }
  }
  const double tol = 1e-8 * std::max(worst_rhs, 1e-300);
  std::vector<std::pair<std::string, Matrix>> mats = {{"c", c}};
  for (std::size_t j = 0; j < bs.size(); ++j)
    mats.emplace_back("b" + std::to_string(j), bs[j]);
  mats.emplace_back("omega_choi", omega.choi());
  BoundReport r = detail::one_sided(
      ClaimId::hadamard_column, worst_lhs, worst_rhs, tol,
      detail::witness_json(ClaimId::hadamard_column,
                           {{"q", np.q},
                            {"p", np.p},
                            {"m", static_cast<double>(m_col)},
                            {"omega_d_in", static_cast<double>(omega.input_dim())},
                            {"omega_d_out", static_cast<double>(n_out)},
                            {"count", static_cast<double>(bs.size())}},
                           mats, &config, master, instance));
  r.master_seed = master;
  r.instance_seed = instance;
  r.params = {{"q", np.q},
              {"p", np.p},
              {"m", static_cast<double>(m_col)},
              {"purity_hadamard", est_h.value},
              {"purity_omega", est_om.value}};
  return r;
}

/// One gap-hunt trial: compares est(Phi (x) conj(Phi))_{1->p} against
/// est(Phi)^2. A `violated` verdict is a finding (supermultiplicative gap).
inline BoundReport hunt_gap_instance(Index d, double p, std::uint64_t master,
                                     std::uint64_t instance_seed,
                                     const PurityConfig& config) {
  const NormParams np(1.0, p);
  const CpMap phi = random_channel(d, d, d, instance_seed);
  const CpMap conj = conjugate_map(phi);
  const PurityEstimate est_phi =
      purity(phi, np, with_seed(config, split_seed(instance_seed, 1)));
  const CpMap tens = tensor_map(phi, conj);
  const Matrix warm = kron(est_phi.maximizer, est_phi.maximizer.conjugate());
  const PurityEstimate est_t =
      purity(tens, np, with_seed(config, split_seed(instance_seed, 2)), warm);
  const double square = est_phi.value * est_phi.value;
  const double tol =
      std::max(1e-4 * std::max(square, est_t.value),
               2.0 * est_phi.spread * est_phi.value + est_t.spread);
  // One-sided with roles swapped: a finding means lhs = tensor value exceeds
  // rhs = square beyond the combined estimator slack.
  BoundReport r = detail::one_sided(
      ClaimId::gap_hunt, est_t.value, square, tol,
      detail::witness_json(ClaimId::gap_hunt,
                           {{"p", p}, {"d", static_cast<double>(d)}}, {},
                           &config, master, instance_seed));
  r.master_seed = master;
  r.instance_seed = instance_seed;
  r.params = {{"p", p},
              {"d", static_cast<double>(d)},
              {"purity_phi", est_phi.value},
              {"purity_tensor", est_t.value}};
  return r;
}

/// Gap findings over `trials` random channels at q = 1. Expected to come back
/// empty at desk dimensions; any returned report is a flagged gap instance.
inline std::vector<BoundReport> hunt_gap(Index d, double p, int trials,
                                         std::uint64_t seed,
                                         const PurityConfig& config = {}) {
  auto all = parallel_map(static_cast<std::size_t>(trials), [&](std::size_t t) {
    return hunt_gap_instance(d, p, seed, split_seed(seed, t), config);
  });
  std::vector<BoundReport> findings;
  for (auto& r : all)
    if (r.verdict == Verdict::violated) findings.push_back(std::move(r));
  return findings;
}

}  // namespace puritylab
