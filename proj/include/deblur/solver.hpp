#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "deblur/blur.hpp"
#include "deblur/core.hpp"
#include "deblur/image.hpp"
#include "deblur/preconditioner.hpp"

namespace deblur {

struct StoppingRule {
  enum class Kind { FixedIterations, MinRre, RelativeResidualBelow };
  Kind kind = Kind::MinRre;
  int fixed_iterations = 0;
  double residual_threshold = 0.0;

  static StoppingRule fixed(int k) {
    detail::require(k >= 0, "StoppingRule: negative iteration count");
    return {Kind::FixedIterations, k, 0.0};
  }
  static StoppingRule min_rre() { return {Kind::MinRre, 0, 0.0}; }
  static StoppingRule residual_below(double eps) {
    detail::require(eps > 0.0, "StoppingRule: threshold must be positive");
    return {Kind::RelativeResidualBelow, 0, eps};
  }
};

struct SolverConfig {
  double tau = 1.0;  // descent parameter; the reference choice is 1
  int max_iters = 100;
  StoppingRule stop = StoppingRule::min_rre();
  std::optional<Matrix> track_rre_against;  // true image for the RRE history
};

/// Thrown when an iteration blows past the divergence guard.
struct SolverDivergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RestorationRun {
  Matrix restored;
  int iterations_executed = 0;
  int best_iteration = 0;  // 1-based; 0 when untracked or no iterations ran
  std::vector<double> rre_history;
  std::vector<double> residual_history;
};

struct SemiconvergenceReport {
  int best_iter = 0;
  double best_rre = 0.0;
  bool diverged_after = false;
};

namespace detail {

// Shared Landweber loop; the preconditioner slot is empty for the plain method.
inline RestorationRun landweber_loop(const BlurOperator& op,
                                     const FilteredOperator* d, const Matrix& g,
                                     const SolverConfig& cfg) {
  require(g.rows() == op.n1() && g.cols() == op.n2(), "landweber: data size mismatch");
  require(cfg.tau > 0.0, "landweber: tau must be positive");
  require(cfg.max_iters >= 1, "landweber: max_iters must be at least 1");
  if (cfg.track_rre_against)
    require(cfg.track_rre_against->rows() == g.rows() &&
                cfg.track_rre_against->cols() == g.cols(),
            "landweber: true image size mismatch");
  if (d) {
    require(d->sop.n1 == op.n1() && d->sop.n2 == op.n2(),
            "d_landweber: preconditioner size mismatch");
    const bool compatible =
        (d->sop.algebra == Algebra::Circulant && op.bc() == BoundaryCondition::Periodic) ||
        (d->sop.algebra == Algebra::CosineIII && op.bc() == BoundaryCondition::Reflective) ||
        (d->sop.algebra == Algebra::AntiReflective &&
         op.bc() == BoundaryCondition::AntiReflective);
    require(compatible, "d_landweber: preconditioner algebra does not match the BC");
  }

  // A fixed-iteration rule runs exactly that many steps; the other rules are
  // capped by max_iters.
  int total = cfg.max_iters;
  if (cfg.stop.kind == StoppingRule::Kind::FixedIterations)
    total = cfg.stop.fixed_iterations;

  const double g_norm = g.norm();
  const double guard = 1e8 * g_norm;
  const Psf rotated = rotate180(op.psf());
  const BlurOperator adj(rotated, op.bc(), op.n1(), op.n2());

  RestorationRun run;
  Matrix x = Matrix::Zero(g.rows(), g.cols());
  Matrix best = x;
  double best_rre = std::numeric_limits<double>::infinity();
  Matrix r = g;  // residual of x_0 = 0

  for (int k = 1; k <= total; ++k) {
    Matrix step = apply(adj, r);
    if (d) step = precondition_apply(*d, step);
    x += cfg.tau * step;
    r = g - apply(op, x);

    if (x.norm() > guard && g_norm > 0.0)
      throw SolverDivergence("landweber: iterate exceeded 1e8 * ||g||");

    run.residual_history.push_back(r.norm());
    if (cfg.track_rre_against) {
      const double e = rre(x, *cfg.track_rre_against);
      run.rre_history.push_back(e);
      if (e < best_rre) {
        best_rre = e;
        run.best_iteration = k;
        if (cfg.stop.kind == StoppingRule::Kind::MinRre) best = x;
      }
    }
    run.iterations_executed = k;

    if (cfg.stop.kind == StoppingRule::Kind::RelativeResidualBelow && g_norm > 0.0 &&
        r.norm() / g_norm < cfg.stop.residual_threshold)
      break;
  }

  run.restored = (cfg.stop.kind == StoppingRule::Kind::MinRre && cfg.track_rre_against &&
                  run.best_iteration > 0)
                     ? best
                     : x;
  return run;
}

}  // namespace detail

/// x_{k+1} = x_k + tau A'(g - A x_k) from x_0 = 0, with A' the rotated-mask
/// operator (reblurring adjoint). Histories are recorded for every completed
/// step; iteration numbering starts at 1.
inline RestorationRun landweber(const BlurOperator& op, const Matrix& g,
                                const SolverConfig& cfg) {
  return detail::landweber_loop(op, nullptr, g, cfg);
}

/// x_{k+1} = x_k + tau D A'(g - A x_k): the preconditioned iteration.
inline RestorationRun d_landweber(const BlurOperator& op, const FilteredOperator& d,
                                  const Matrix& g, const SolverConfig& cfg) {
  return detail::landweber_loop(op, &d, g, cfg);
}

/// Locates the global RRE minimum and reports whether the history degrades by
/// more than 5% afterwards (the semiconvergence signature).
inline SemiconvergenceReport semiconvergence_report(const RestorationRun& run) {
  detail::require(!run.rre_history.empty(), "semiconvergence_report: no RRE history");
  const auto it = std::min_element(run.rre_history.begin(), run.rre_history.end());
  SemiconvergenceReport rep;
  rep.best_iter = static_cast<int>(it - run.rre_history.begin()) + 1;
  rep.best_rre = *it;
  rep.diverged_after = run.rre_history.back() > rep.best_rre * 1.05;
  return rep;
}

}  // namespace deblur
