#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "puritylab/channels.hpp"
#include "puritylab/linalg.hpp"
#include "puritylab/parallel.hpp"
#include "puritylab/rng.hpp"

namespace puritylab {

/// A certified lower bound on ||Phi||_{q->p}: re-evaluating the stored
/// maximizer reproduces `value`.
struct PurityEstimate {
  enum class Method { oracle, gradient, fixed_point, analytic, dispatch };

  double value = 0.0;
  Matrix maximizer;  // PSD with ||.||_q = 1
  Method method = Method::dispatch;
  int restarts_used = 0;
  int iterations = 0;
  bool converged = false;
  std::uint64_t seed = 0;
  /// Best-minus-runner-up across the winning method's restarts/samples;
  /// feeds the estimator-slack accounting in equality checks.
  double spread = 0.0;
};

inline const char* method_name(PurityEstimate::Method m) {
  switch (m) {
    case PurityEstimate::Method::oracle: return "oracle";
    case PurityEstimate::Method::gradient: return "gradient";
    case PurityEstimate::Method::fixed_point: return "fixed_point";
    case PurityEstimate::Method::analytic: return "analytic";
    case PurityEstimate::Method::dispatch: return "dispatch";
  }
  return "unknown";
}

struct PurityConfig {
  int restarts = 32;
  int max_iterations = 500;
  double tolerance = 1e-8;
  int oracle_samples = 2000;
  int oracle_hill_steps = 200;
  // Reduced oracle budget when invoked as one dispatcher member.
  int dispatch_oracle_samples = 200;
  int dispatch_oracle_hill_steps = 60;
  std::uint64_t seed = 0;
};

namespace detail {

inline Matrix gaussian_matrix(Rng& rng, Index rows, Index cols) {
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = rng.cgaussian();
  return g;
}

/// ||Phi(A)||_p / ||A||_q for Hermitian PSD A (tiny negative eigenvalues from
/// roundoff enter through their absolute values).
inline double psd_ratio(const CpMap& phi, const Matrix& a,
                        const NormParams& np) {
  const double den = hermitian_schatten_norm(a, np.q);
  if (!(den > 0.0)) return 0.0;
  return hermitian_schatten_norm(phi.apply(a), np.p) / den;
}

/// Projector onto the top eigenvector; ties within 1e-12 relative break to
/// the lowest index in the (ascending) eigenbasis ordering.
inline Matrix top_eigenprojector(const EigenSystem& es) {
  const Index n = es.values.size();
  const double lam_max = es.values[n - 1];
  const double tie = 1e-12 * std::max(std::abs(lam_max), 1e-300);
  Index pick = n - 1;
  for (Index i = 0; i < n; ++i) {
    if (es.values[i] >= lam_max - tie) {
      pick = i;
      break;
    }
  }
  return es.vectors.col(pick) * es.vectors.col(pick).adjoint();
}

inline Matrix normalize_q(const Matrix& a, double q) {
  const double nrm = hermitian_schatten_norm(a, q);
  if (!(nrm > 0.0))
    throw NumericalError("normalize_q: zero matrix cannot be normalized");
  return a / nrm;
}

struct LocalRun {
  double value = 0.0;
  Matrix maximizer;  // q-normalized
  int iterations = 0;
  bool converged = false;
};

inline LocalRun fixed_point_run(const CpMap& phi, const NormParams& np,
                                const Matrix& a0, double tol, int max_iter) {
  LocalRun run;
  Matrix a = normalize_q(hermitize(a0), np.q);
  run.value = psd_ratio(phi, a, np);
  run.maximizer = a;
  for (int it = 0; it < max_iter; ++it) {
    run.iterations = it + 1;
    const Matrix out = phi.apply(a);
    const EigenSystem es_out = hermitian_eigen(out);
    Matrix mp;
    if (std::isinf(np.p)) {
      mp = top_eigenprojector(es_out);
    } else {
      RealVector powered(es_out.values.size());
      const double scale = es_out.values.cwiseAbs().maxCoeff();
      for (Index i = 0; i < powered.size(); ++i) {
        const double v = es_out.values[i];
        powered[i] = (v > 1e-14 * scale) ? std::pow(v, np.p - 1.0) : 0.0;
      }
      mp = es_out.vectors * powered.asDiagonal() * es_out.vectors.adjoint();
    }
    const Matrix t = hermitize(phi.apply_adjoint(mp));
    Matrix next;
    if (np.q == 1.0) {
      next = top_eigenprojector(hermitian_eigen(t));
    } else {
      const EigenSystem es_t = hermitian_eigen(t);
      const double scale = std::max(es_t.values.cwiseAbs().maxCoeff(), 1e-300);
      RealVector powered(es_t.values.size());
      for (Index i = 0; i < powered.size(); ++i) {
        const double v = es_t.values[i];
        powered[i] = (v > 1e-14 * scale) ? std::pow(v, 1.0 / (np.q - 1.0)) : 0.0;
      }
      const double nrm = lp_of_values(powered, np.q);
      if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
      next = es_t.vectors * (powered / nrm).asDiagonal() * es_t.vectors.adjoint();
    }
    const double delta = (next - a).norm();
    a = next;
    const double val = psd_ratio(phi, a, np);
    if (val > run.value) {
      run.value = val;
      run.maximizer = a;
    }
    if (delta < tol) {
      run.converged = true;
      break;
    }
  }
  return run;
}

/// Value and Wirtinger ascent direction of f(G) = ||Phi(GG*)||_p / ||GG*||_q.
/// The directional derivative along a complex direction D is
/// d/dt f(G + tD)|_0 = 2 Re Tr(D^adj grad).
struct RatioGrad {
  double value = 0.0;
  Matrix grad;
};

inline RatioGrad ratio_gradient(const CpMap& phi, const Matrix& g,
                                const NormParams& np) {
  const Matrix a = hermitize(g * g.adjoint());
  const EigenSystem es_a = hermitian_eigen(a);
  const double den = lp_of_values(es_a.values, np.q);
  const Matrix out = phi.apply(a);
  const EigenSystem es_out = hermitian_eigen(out);
  const double num = lp_of_values(es_out.values, np.p);
  RatioGrad rg;
  if (!(den > 0.0)) {
    rg.grad = Matrix::Zero(g.rows(), g.cols());
    return rg;
  }
  rg.value = num / den;

  Matrix grad_num;  // d||Phi(A)||_p / dA = ||Phi(A)||_p^{1-p} Phi*(Phi(A)^{p-1})
  if (std::isinf(np.p)) {
    grad_num = phi.apply_adjoint(top_eigenprojector(es_out));
  } else {
    RealVector powered(es_out.values.size());
    const double scale = std::max(es_out.values.cwiseAbs().maxCoeff(), 1e-300);
    for (Index i = 0; i < powered.size(); ++i) {
      const double v = es_out.values[i];
      powered[i] = (v > 1e-14 * scale) ? std::pow(v, np.p - 1.0) : 0.0;
    }
    const Matrix mp =
        es_out.vectors * powered.asDiagonal() * es_out.vectors.adjoint();
    grad_num = std::pow(std::max(num, 1e-300), 1.0 - np.p) *
               phi.apply_adjoint(mp);
  }

  Matrix grad_den;  // d||A||_q / dA
  if (np.q == 1.0) {
    grad_den = Matrix::Identity(a.rows(), a.cols());
  } else {
    RealVector powered(es_a.values.size());
    const double scale = std::max(es_a.values.cwiseAbs().maxCoeff(), 1e-300);
    for (Index i = 0; i < powered.size(); ++i) {
      const double v = es_a.values[i];
      powered[i] = (v > 1e-14 * scale) ? std::pow(v, np.q - 1.0) : 0.0;
    }
    grad_den = std::pow(den, 1.0 - np.q) *
               (es_a.vectors * powered.asDiagonal() * es_a.vectors.adjoint());
  }

  const Matrix m = (grad_num - rg.value * grad_den) / den;
  rg.grad = m * g;
  return rg;
}

inline double ratio_of_factor(const CpMap& phi, const Matrix& g,
                              const NormParams& np) {
  return psd_ratio(phi, hermitize(g * g.adjoint()), np);
}

inline LocalRun gradient_run(const CpMap& phi, const NormParams& np, Matrix g,
                             double tol, int max_iter) {
  LocalRun run;
  {  // scale so that ||GG*||_q = 1; f is scale invariant
    const double nq = hermitian_schatten_norm(hermitize(g * g.adjoint()), np.q);
    if (nq > 0.0) g /= std::sqrt(nq);
  }
  RatioGrad rg = ratio_gradient(phi, g, np);
  run.value = rg.value;
  run.maximizer = normalize_q(hermitize(g * g.adjoint()), np.q);
  double step = 0.5;
  int stall = 0;
  for (int it = 0; it < max_iter; ++it) {
    run.iterations = it + 1;
    const double gn = rg.grad.norm();
    if (gn < 1e-14) {
      run.converged = true;
      break;
    }
    const Matrix dir = rg.grad / gn;
    double s = step;
    double f_try = rg.value;
    Matrix g_try;
    bool improved = false;
    for (int trial = 0; trial < 30; ++trial) {
      g_try = g + s * dir;
      f_try = ratio_of_factor(phi, g_try, np);
      if (f_try > rg.value) {
        improved = true;
        break;
      }
      s *= 0.5;
    }
    if (!improved) {
      run.converged = true;  // no ascent within line search: stationary
      break;
    }
    const double rel = (f_try - rg.value) / std::max(f_try, 1e-300);
    g = g_try;
    const double nq = hermitian_schatten_norm(hermitize(g * g.adjoint()), np.q);
    if (nq > 0.0) g /= std::sqrt(nq);
    step = std::min(s * 2.0, 64.0);
    rg = ratio_gradient(phi, g, np);
    if (rg.value > run.value) {
      run.value = rg.value;
      run.maximizer = normalize_q(hermitize(g * g.adjoint()), np.q);
    }
    if (rel < tol) {
      if (++stall >= 2) {
        run.converged = true;
        break;
      }
    } else {
      stall = 0;
    }
  }
  return run;
}

/// Factor initialization for restart `r`: the rank cycles through 1..d_in so
/// both the rank-one optimum regime (q = 1) and interior optima are reachable.
inline Matrix restart_factor(const CpMap& phi, std::uint64_t seed, int r) {
  Rng rng(split_seed(seed, static_cast<std::uint64_t>(r)));
  const Index rank = 1 + static_cast<Index>(r) % phi.input_dim();
  return gaussian_matrix(rng, phi.input_dim(), rank);
}

/// PSD square-root factor of a Hermitian PSD matrix (columns spanning the
/// positive eigenspace), used to warm-start factor-parameterized searches.
inline Matrix psd_factor(const Matrix& a) {
  const EigenSystem es = hermitian_eigen(hermitize(a));
  const double scale = std::max(es.values.cwiseAbs().maxCoeff(), 1e-300);
  std::vector<Index> keep;
  for (Index i = 0; i < es.values.size(); ++i)
    if (es.values[i] > 1e-14 * scale) keep.push_back(i);
  if (keep.empty()) return Matrix::Zero(a.rows(), 1);
  Matrix g(a.rows(), static_cast<Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    g.col(static_cast<Index>(k)) =
        es.vectors.col(keep[k]) * std::sqrt(es.values[keep[k]]);
  return g;
}

/// Best-first merge over runs: strictly greater value wins, so the lowest
/// index prevails on ties. Returns (winner index, spread to runner-up).
inline std::pair<std::size_t, double> pick_best(
    const std::vector<LocalRun>& runs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].value > runs[best].value) best = i;
  double runner = -kInf;
  for (std::size_t i = 0; i < runs.size(); ++i)
    if (i != best) runner = std::max(runner, runs[i].value);
  const double spread =
      runs.size() > 1 ? std::max(0.0, runs[best].value - runner) : 0.0;
  return {best, spread};
}

inline PurityEstimate estimate_from_runs(const CpMap& phi,
                                         const NormParams& np,
                                         std::vector<LocalRun> runs,
                                         PurityEstimate::Method method,
                                         std::uint64_t seed, int restarts) {
  const auto [best, spread] = pick_best(runs);
  PurityEstimate est;
  est.maximizer = std::move(runs[best].maximizer);
  est.value = psd_ratio(phi, est.maximizer, np);  // exact certificate
  est.method = method;
  est.restarts_used = restarts;
  est.iterations = runs[best].iterations;
  est.converged = runs[best].converged;
  est.seed = seed;
  est.spread = spread;
  return est;
}

}  // namespace detail

/// Best ratio over random PSD inputs GG* (rank swept 1..d_in), each refined
/// by seeded random-perturbation hill climbing. Deterministic given seed.
inline PurityEstimate purity_oracle(const CpMap& phi, const NormParams& np,
                                    int samples, std::uint64_t seed,
                                    int hill_steps = 200) {
  if (samples < 1) throw InvalidInput("purity_oracle: need samples >= 1");
  auto runs = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t s) {
    Rng rng(split_seed(seed, s));
    const Index rank = 1 + static_cast<Index>(s) % phi.input_dim();
    Matrix g = detail::gaussian_matrix(rng, phi.input_dim(), rank);
    double f = detail::ratio_of_factor(phi, g, np);
    // Hill climbing alternates full-matrix moves (escape) with single-entry
    // moves (polish); the step size adapts toward a moderate success rate.
    double sigma = 0.3;
    for (int t = 0; t < hill_steps; ++t) {
      Matrix g2 = g;
      if (rng.uniform() < 0.5) {
        g2 += sigma * detail::gaussian_matrix(rng, g.rows(), g.cols());
      } else {
        const Index i = static_cast<Index>(rng.raw() % g.rows());
        const Index j = static_cast<Index>(rng.raw() % g.cols());
        g2(i, j) += sigma * rng.cgaussian();
      }
      const double f2 = detail::ratio_of_factor(phi, g2, np);
      if (f2 > f) {
        f = f2;
        g = std::move(g2);
        sigma = std::min(sigma * 1.3, 2.0);
      } else {
        sigma = std::max(sigma * 0.9, 1e-8);
      }
    }
    detail::LocalRun run;
    run.value = f;
    run.maximizer = detail::normalize_q(hermitize(g * g.adjoint()), np.q);
    run.iterations = hill_steps;
    run.converged = true;
    return run;
  });
  return detail::estimate_from_runs(phi, np, std::move(runs),
                                    PurityEstimate::Method::oracle, seed,
                                    samples);
}

/// Projected gradient ascent on the factor parameterization A = GG* with
/// backtracking line search. Requires p > 1 (use the analytic path at p = 1).
inline PurityEstimate purity_gradient(const CpMap& phi, const NormParams& np,
                                      int restarts, double tol, int max_iter,
                                      std::uint64_t seed,
                                      std::optional<Matrix> warm = {}) {
  if (!(np.p > 1.0))
    throw InvalidInput("purity_gradient: requires p > 1");
  if (std::isinf(np.q))
    throw InvalidInput("purity_gradient: requires finite q");
  const std::size_t total = static_cast<std::size_t>(restarts) + (warm ? 1 : 0);
  auto runs = parallel_map(total, [&](std::size_t r) {
    Matrix g0;
    if (warm && r == 0) {
      g0 = detail::psd_factor(*warm);
    } else {
      const int idx = static_cast<int>(r) - (warm ? 1 : 0);
      g0 = detail::restart_factor(phi, seed, idx);
    }
    return detail::gradient_run(phi, np, g0, tol, max_iter);
  });
  return detail::estimate_from_runs(phi, np, std::move(runs),
                                    PurityEstimate::Method::gradient, seed,
                                    restarts);
}

/// Iterates the stationarity map A <- normalize_q[(Phi*(Phi(A)^{p-1}))^{1/(q-1)}]
/// (top-eigenvector projector at q = 1), tracking the best iterate.
inline PurityEstimate purity_fixed_point(const CpMap& phi, const NormParams& np,
                                         int restarts, double tol,
                                         std::uint64_t seed, int max_iter = 500,
                                         std::optional<Matrix> warm = {}) {
  if (!(np.p > 1.0))
    throw InvalidInput("purity_fixed_point: requires p > 1");
  if (std::isinf(np.q))
    throw InvalidInput("purity_fixed_point: requires finite q");
  const std::size_t total = static_cast<std::size_t>(restarts) + (warm ? 1 : 0);
  auto runs = parallel_map(total, [&](std::size_t r) {
    Matrix a0;
    if (warm && r == 0) {
      a0 = *warm;
    } else {
      const int idx = static_cast<int>(r) - (warm ? 1 : 0);
      const Matrix g = detail::restart_factor(phi, seed, idx);
      a0 = hermitize(g * g.adjoint());
    }
    return detail::fixed_point_run(phi, np, a0, tol, max_iter);
  });
  return detail::estimate_from_runs(phi, np, std::move(runs),
                                    PurityEstimate::Method::fixed_point, seed,
                                    restarts);
}

// Closed forms: p = 1 gives ||Phi||_{q->1} = ||Phi*(I)||_{q'}; q = inf gives
// ||Phi(I)||_p by operator monotonicity; identity and trace channels have
// exact values for any exponents.
inline std::optional<PurityEstimate> purity_analytic(const CpMap& phi,
                                                     const NormParams& np) {
  PurityEstimate est;
  est.method = PurityEstimate::Method::analytic;
  est.converged = true;
  est.restarts_used = 0;
  est.iterations = 0;

  const Index d = phi.input_dim();
  if (np.p == 1.0) {
    const Matrix dual_id =
        hermitize(phi.apply_adjoint(Matrix::Identity(phi.output_dim(),
                                                     phi.output_dim())));
    const EigenSystem es = hermitian_eigen(dual_id);
    const double top = es.values.maxCoeff();
    if (!(top > 0.0)) {
      est.value = 0.0;
      est.maximizer = Matrix::Identity(d, d) /
                      hermitian_schatten_norm(Matrix::Identity(d, d), np.q);
      return est;
    }
    if (np.q == 1.0) {
      est.maximizer = detail::top_eigenprojector(es);
    } else {
      RealVector powered(es.values.size());
      for (Index i = 0; i < powered.size(); ++i) {
        const double v = std::max(es.values[i], 0.0);
        powered[i] = v > 0.0 ? std::pow(v, 1.0 / (np.q - 1.0)) : 0.0;
      }
      Matrix a = es.vectors * powered.asDiagonal() * es.vectors.adjoint();
      est.maximizer = detail::normalize_q(hermitize(a), np.q);
    }
    est.value = detail::psd_ratio(phi, est.maximizer, np);
    return est;
  }
  if (std::isinf(np.q)) {
    est.maximizer = Matrix::Identity(d, d);
    est.value = detail::psd_ratio(phi, est.maximizer, np);
    return est;
  }
  if (phi.structure() == MapStructure::identity && np.p >= np.q) {
    est.maximizer = Matrix::Zero(d, d);
    est.maximizer(0, 0) = 1.0;
    est.value = detail::psd_ratio(phi, est.maximizer, np);
    return est;
  }
  if (phi.structure() == MapStructure::trace) {
    est.maximizer = Matrix::Identity(d, d) /
                    std::pow(static_cast<double>(d), 1.0 / np.q);
    est.value = detail::psd_ratio(phi, est.maximizer, np);
    return est;
  }
  return std::nullopt;
}

inline PurityConfig with_seed(PurityConfig config, std::uint64_t seed) {
  config.seed = seed;
  return config;
}

/// Multi-strategy dispatcher: max over the applicable methods, certificate
/// retained from the winner. Deterministic given config.seed; an optional
/// warm-start matrix is always evaluated as a candidate, which makes the
/// returned value a floor for warm-started tensor searches.
inline PurityEstimate purity(const CpMap& phi, const NormParams& np,
                             const PurityConfig& config = {},
                             std::optional<Matrix> warm = {}) {
  std::vector<PurityEstimate> cands;

  if (auto a = purity_analytic(phi, np)) {
    a->seed = config.seed;
    cands.push_back(std::move(*a));
  }
  if (warm) {
    PurityEstimate w;
    w.method = PurityEstimate::Method::dispatch;
    w.maximizer = detail::normalize_q(hermitize(*warm), np.q);
    w.value = detail::psd_ratio(phi, w.maximizer, np);
    w.converged = true;
    w.seed = config.seed;
    cands.push_back(std::move(w));
  }
  if (np.p > 1.0 && !std::isinf(np.q)) {
    cands.push_back(purity_fixed_point(phi, np, config.restarts,
                                       config.tolerance,
                                       split_seed(config.seed, 1),
                                       config.max_iterations, warm));
    cands.push_back(purity_gradient(phi, np, config.restarts, config.tolerance,
                                    config.max_iterations,
                                    split_seed(config.seed, 2), warm));
  }
  if (!std::isinf(np.q)) {
    cands.push_back(purity_oracle(phi, np, config.dispatch_oracle_samples,
                                  split_seed(config.seed, 3),
                                  config.dispatch_oracle_hill_steps));
  }
  if (cands.empty())
    throw InvalidInput("purity: no applicable estimation method for exponents");

  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i)
    if (cands[i].value > cands[best].value) best = i;
  PurityEstimate winner = cands[best];
  winner.seed = config.seed;
  return winner;
}

/// Lower bound on the potential purity sup_Omega ||Phi (x) Omega|| / ||Omega||.
struct PotentialEstimate {
  double value = 0.0;
  Index ancilla_dim = 1;
  std::optional<CpMap> ancilla_map;
  PurityEstimate tensor_estimate;   // for Phi (x) Omega at the winner
  PurityEstimate ancilla_estimate;  // for the winner Omega
  Index attained_n = 1;
  bool truncated = false;  // dimension cap prevented some candidates
};

// Candidate ancillas per dimension n: the identity, Haar channels, Gaussian
// CP maps, and the conjugate map when Phi is square (the canonical witness
// family for multiplicativity gaps). Ratios against the id_1 candidate floor
// the result at the plain purity estimate.
inline PotentialEstimate potential_lower(const CpMap& phi, const NormParams& np,
                                         int n_max, int omegas_per_n,
                                         const PurityConfig& config,
                                         Index choi_dim_cap = kChoiDimCap) {
  if (n_max < 1) throw InvalidInput("potential_lower: need n_max >= 1");
  const PurityEstimate est_phi =
      purity(phi, np, with_seed(config, split_seed(config.seed, 9000)));

  struct Candidate {
    CpMap omega;
    Index n;
  };
  std::vector<Candidate> cands;
  cands.push_back({identity_map(1), 1});
  for (Index n = 2; n <= n_max; ++n) {
    cands.push_back({identity_map(n), n});
    for (int t = 0; t < omegas_per_n; ++t) {
      const std::uint64_t s =
          split_seed(config.seed, 100 + 17 * static_cast<std::uint64_t>(n) + 2 * t);
      if (t % 2 == 0) {
        cands.push_back({random_channel(n, n, n, s), n});
      } else {
        cands.push_back({random_cp(n, n, n * n, s), n});
      }
    }
  }
  if (phi.input_dim() == phi.output_dim() && phi.input_dim() <= n_max) {
    cands.push_back({conjugate_map(phi), phi.input_dim()});
  }

  PotentialEstimate out;
  out.value = est_phi.value;
  out.ancilla_dim = 1;
  out.ancilla_map = identity_map(1);
  out.tensor_estimate = est_phi;
  out.ancilla_estimate = purity(identity_map(1), np,
                                with_seed(config, split_seed(config.seed, 9001)));
  out.attained_n = 1;

  for (std::size_t k = 0; k < cands.size(); ++k) {
    const Candidate& c = cands[k];
    CpMap tens = phi;  // replaced below; CpMap has no default ctor
    try {
      tens = tensor_map(phi, c.omega, choi_dim_cap);
    } catch (const ResourceLimit&) {
      out.truncated = true;
      continue;
    }
    const PurityEstimate est_om =
        purity(c.omega, np, with_seed(config, split_seed(config.seed, 9100 + 2 * k)));
    if (!(est_om.value > 0.0)) continue;
    const Matrix warm = kron(est_phi.maximizer, est_om.maximizer);
    const PurityEstimate est_t =
        purity(tens, np, with_seed(config, split_seed(config.seed, 9101 + 2 * k)),
               warm);
    out.attained_n = std::max(out.attained_n, c.n);
    const double ratio = est_t.value / est_om.value;
    if (ratio > out.value) {
      out.value = ratio;
      out.ancilla_dim = c.n;
      out.ancilla_map = c.omega;
      out.tensor_estimate = est_t;
      out.ancilla_estimate = est_om;
    }
  }
  return out;
}

/// (||Phi^{(x) n}||_{q->p})^{1/n}, warm-started from the n-fold product of the
/// single-copy maximizer.
inline double regularized_estimate(const CpMap& phi, const NormParams& np,
                                   int n, const PurityConfig& config,
                                   Index choi_dim_cap = kChoiDimCap) {
  if (n < 1) throw InvalidInput("regularized_estimate: need n >= 1");
  if (n == 1) return purity(phi, np, config).value;
  const PurityEstimate single =
      purity(phi, np, with_seed(config, split_seed(config.seed, 8000)));
  const CpMap power = tensor_power(phi, n, choi_dim_cap);
  Matrix warm = single.maximizer;
  for (int i = 1; i < n; ++i) warm = kron(warm, single.maximizer);
  const PurityEstimate est =
      purity(power, np, with_seed(config, split_seed(config.seed, 8001)), warm);
  return std::pow(est.value, 1.0 / n);
}

}  // namespace puritylab
