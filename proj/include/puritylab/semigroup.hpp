#pragma once

#include <cmath>
#include <vector>

#include "puritylab/channels.hpp"
#include "puritylab/purity.hpp"
#include "puritylab/verify.hpp"

namespace puritylab {

// Log-Sobolev constants use the natural logarithm throughout; changing the
// log base rescales every constant below.

/// alpha_2 of the depolarizing generator on M_d: 2(1 - 2/d) / ln(d - 1).
/// Degenerate at d = 2 (numerator and denominator both vanish), so d >= 3.
inline double lsc_single(Index d) {
  if (d <= 2)
    throw DomainError("lsc_single: formula degenerates at d <= 2 "
                      "(0/0 at d = 2); requires d >= 3");
  const double dd = static_cast<double>(d);
  return 2.0 * (1.0 - 2.0 / dd) / std::log(dd - 1.0);
}

/// Lower bound for alpha_2 of the n-fold product semigroup:
/// (1 - 2/d) / (ln 3 * ln(d-1) + 2(1 - 2/d)).
inline double lsc_product_bound(Index d) {
  if (d <= 2)
    throw DomainError("lsc_product_bound: requires d >= 3");
  const double dd = static_cast<double>(d);
  const double a = 1.0 - 2.0 / dd;
  return a / (std::log(3.0) * std::log(dd - 1.0) + 2.0 * a);
}

// Depolarizing product-norm equality in the hypercontractive regime: for the
// qubit channel with 0 <= lambda <= 1, q >= 2 and p <= 1 + (q-1)/lambda^2,
// ||Delta^{(x) n}||_{q->p} = ||Delta||^n_{q->p}. p is capped at the regime
// edge (default ceiling 8 guards the lambda -> 0 blowup).
inline BoundReport check_hypercontractivity(double lambda, double q,
                                            double p_requested, int copies,
                                            const PurityConfig& config,
                                            double p_ceiling = 8.0,
                                            std::uint64_t master = 0) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw InvalidInput("check_hypercontractivity: lambda must lie in [0, 1]");
  if (!(q >= 2.0))
    throw InvalidInput("check_hypercontractivity: requires q >= 2");
  if (copies < 1 || copies > 2)
    throw InvalidInput("check_hypercontractivity: copies capped at 2");
  double p_edge = p_ceiling;
  if (lambda > 0.0)
    p_edge = std::min(p_ceiling, 1.0 + (q - 1.0) / (lambda * lambda));
  const double p = std::min(p_requested, p_edge);
  const NormParams np(q, p);

  const CpMap delta = depolarizing(2, lambda);
  const PurityEstimate single =
      purity(delta, np, with_seed(config, split_seed(config.seed, 41)));
  const CpMap power = tensor_power(delta, copies);
  Matrix warm = single.maximizer;
  for (int i = 1; i < copies; ++i) warm = kron(warm, single.maximizer);
  const PurityEstimate tens =
      purity(power, np, with_seed(config, split_seed(config.seed, 42)), warm);

  const double product = std::pow(single.value, copies);
  const double scale = std::max({tens.value, product, 1e-300});
  const double tol = std::max(
      1e-4 * scale,
      std::max(tens.spread, copies * single.spread *
                                std::pow(std::max(single.value, 0.0),
                                         copies - 1)));
  BoundReport r = detail::equality(
      ClaimId::hypercontractivity, tens.value, product, tol,
      detail::witness_json(ClaimId::hypercontractivity,
                           {{"lambda", lambda},
                            {"q", q},
                            {"p_requested", p_requested},
                            {"copies", static_cast<double>(copies)}},
                           {}, &config, master, 0));
  r.master_seed = master;
  r.params = {{"lambda", lambda},
              {"q", q},
              {"p", p},
              {"copies", static_cast<double>(copies)},
              {"single_copy", single.value}};
  return r;
}

/// Product-norm equality check for Delta_lambda on M_d at (q, p) = (2, 4),
/// n = 2 (the entrywise-nonnegative-Choi regime; lambda > 0 qualifies).
inline BoundReport check_depolarizing_24_equality(Index d, double lambda,
                                              const PurityConfig& config,
                                              std::uint64_t master = 0) {
  const NormParams np(2.0, 4.0);
  const CpMap delta = depolarizing(d, lambda);
  return detail::product_equality(ClaimId::pot_eq_qgep, delta, delta, np,
                                  config, master,
                                  split_seed(master, static_cast<std::uint64_t>(
                                                         lambda * 1e6)));
}

/// The d >= 3 log-Sobolev record: both closed-form constants plus the
/// (2 -> 4, n = 2) multiplicativity evidence the product bound relies on.
struct LscReport {
  Index d = 3;
  double alpha2_single = 0.0;
  double alpha2_product_bound = 0.0;
  std::vector<BoundReport> multiplicativity_checks;  // lambda in {0.25, 0.5, 0.75}
  BoundReport multiplicativity_check;                // worst of the above
  bool sound = false;  // no check violated
};

inline LscReport lsc_report(Index d, const PurityConfig& config,
                            std::uint64_t master = 0) {
  LscReport rep;
  rep.d = d;
  rep.alpha2_single = lsc_single(d);
  rep.alpha2_product_bound = lsc_product_bound(d);
  const double lambdas[] = {0.25, 0.5, 0.75};
  for (int i = 0; i < 3; ++i) {
    BoundReport r = check_depolarizing_24_equality(
        d, lambdas[i], with_seed(config, split_seed(config.seed, 50 + i)),
        master);
    r.params.emplace_back("lambda", lambdas[i]);
    rep.multiplicativity_checks.push_back(std::move(r));
  }
  rep.multiplicativity_check = rep.multiplicativity_checks.front();
  double worst = kInf;
  bool any_violated = false;
  for (const BoundReport& r : rep.multiplicativity_checks) {
    const double margin = r.tolerance - std::abs(r.slack);
    if (margin < worst) {
      worst = margin;
      rep.multiplicativity_check = r;
    }
    if (r.verdict == Verdict::violated) any_violated = true;
  }
  rep.sound = !any_violated;
  return rep;
}

}  // namespace puritylab
