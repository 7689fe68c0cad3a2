#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "deblur/blur.hpp"
#include "deblur/core.hpp"
#include "deblur/image.hpp"
#include "deblur/io.hpp"
#include "deblur/preconditioner.hpp"
#include "deblur/psf.hpp"
#include "deblur/solver.hpp"

namespace deblur {

/// Honest: blur a scene that extends beyond the FOV, so the data really
/// depends on out-of-FOV content, then crop. InverseCrime: generate with the
/// same discrete operator later used for inversion (solver validation only).
enum class DataGeneration { Honest, InverseCrime };

struct AlphaSweep {
  double min_alpha = 1e-6;
  double max_alpha = 1e-1;
  int count = 6;
};

inline std::vector<double> alpha_grid(const AlphaSweep& s) {
  detail::require(s.min_alpha > 0.0 && s.max_alpha >= s.min_alpha,
                  "AlphaSweep: bounds must be positive and ordered");
  detail::require(s.count >= 1, "AlphaSweep: need at least one point");
  std::vector<double> g;
  if (s.count == 1) return {s.min_alpha};
  const double la = std::log(s.min_alpha), lb = std::log(s.max_alpha);
  for (int i = 0; i < s.count; ++i)
    g.push_back(std::exp(la + (lb - la) * i / (s.count - 1)));
  return g;
}

struct ExperimentConfig {
  Matrix scene;  // true scene; honest mode needs a margin of at least (q1, q2)
  Index fov1 = 0, fov2 = 0;
  Psf psf = delta_psf();
  std::vector<BoundaryCondition> bcs;
  NoiseSpec noise{0.001, 1};
  DataGeneration generation = DataGeneration::Honest;
  double tau = 1.0;
  int max_iters = 1000;            // plain Landweber budget
  int precond_max_iters = 0;       // 0: same as max_iters
  std::optional<double> alpha;     // fixed-alpha preconditioning
  std::optional<AlphaSweep> sweep; // or a logarithmic alpha sweep
  std::string out_dir;             // empty: keep results in memory only
};

struct SyntheticData {
  Matrix g;
  Matrix f_true;
};

/// Generates the blurred and noisy data. In honest mode the blur reads real
/// scene content outside the FOV (bc is ignored); in inverse-crime mode
/// g = A_bc f + eta with the same BC later used for restoration.
inline SyntheticData synthesize(const ExperimentConfig& cfg, BoundaryCondition bc) {
  const Index q1 = cfg.psf.q1(), q2 = cfg.psf.q2();
  detail::require(cfg.fov1 >= 1 && cfg.fov2 >= 1, "synthesize: empty FOV");
  detail::require(cfg.scene.rows() >= cfg.fov1 && cfg.scene.cols() >= cfg.fov2,
                  "synthesize: scene smaller than the FOV");
  const Index off1 = (cfg.scene.rows() - cfg.fov1) / 2;
  const Index off2 = (cfg.scene.cols() - cfg.fov2) / 2;
  SyntheticData data;
  data.f_true = cfg.scene.block(off1, off2, cfg.fov1, cfg.fov2);
  if (cfg.generation == DataGeneration::Honest) {
    detail::require(off1 >= q1 && cfg.scene.rows() - off1 - cfg.fov1 >= q1 &&
                        off2 >= q2 && cfg.scene.cols() - off2 - cfg.fov2 >= q2,
                    "synthesize: honest mode needs a scene margin of at least q");
    Matrix g(cfg.fov1, cfg.fov2);
    for (Index r = 0; r < cfg.fov1; ++r)
      for (Index c = 0; c < cfg.fov2; ++c) {
        double acc = 0.0;
        for (Index s1 = -q1; s1 <= q1; ++s1)
          for (Index s2 = -q2; s2 <= q2; ++s2)
            acc += cfg.psf.tap(s1, s2) * cfg.scene(off1 + r - s1, off2 + c - s2);
        g(r, c) = acc;
      }
    data.g = add_noise(g, cfg.noise);
  } else {
    BlurOperator op(cfg.psf, bc, cfg.fov1, cfg.fov2);
    data.g = add_noise(apply(op, data.f_true), cfg.noise);
  }
  return data;
}

struct CellResult {
  BoundaryCondition bc;
  std::string method;  // "landweber" or "d-landweber"
  double alpha = 0.0;  // 0 for plain
  RestorationRun run;
  double seconds = 0.0;
  bool diverged = false;
};

struct SummaryRow {
  BoundaryCondition bc;
  std::string method;
  double alpha = 0.0;
  double best_rre = std::numeric_limits<double>::infinity();
  int best_iter = 0;
  double seconds = 0.0;
};

struct ExperimentResult {
  std::vector<CellResult> cells;    // every executed run, sweep cells included
  std::vector<SummaryRow> summary;  // one row per (bc, method)
};

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string format_alpha(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// All experiment files are written to a temp name then renamed into place.
inline void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) io_fail(tmp, "cannot open for writing");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

inline std::string history_csv(const RestorationRun& run) {
  std::ostringstream out;
  out << "iter,rre,residual\n";
  for (size_t k = 0; k < run.residual_history.size(); ++k) {
    out << (k + 1) << ",";
    out << (k < run.rre_history.size() ? format_double(run.rre_history[k]) : "");
    out << "," << format_double(run.residual_history[k]) << "\n";
  }
  return out.str();
}

inline std::string cell_stem(const CellResult& cell) {
  std::string stem = std::string(to_string(cell.bc)) + "_" + cell.method;
  if (cell.method != "landweber") stem += "_alpha" + format_alpha(cell.alpha);
  return stem;
}

inline Algebra algebra_for(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Periodic: return Algebra::Circulant;
    case BoundaryCondition::Reflective: return Algebra::CosineIII;
    case BoundaryCondition::AntiReflective: return Algebra::AntiReflective;
    default:
      throw std::invalid_argument("no preconditioner algebra for zero BCs");
  }
}

}  // namespace detail

/// Runs the requested (BC x method x alpha) grid: plain Landweber always, the
/// preconditioned method when a fixed alpha or a sweep is configured. Writes
/// per-iteration CSVs, restored PGMs, a summary CSV and run metadata when
/// out_dir is set. Returns everything in memory as well.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  detail::require(!cfg.bcs.empty(), "run_experiment: need at least one BC");
  const bool write = !cfg.out_dir.empty();
  if (write) std::filesystem::create_directories(cfg.out_dir);
  const auto out_path = [&](const std::string& name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
  };

  ExperimentResult result;
  std::vector<double> alphas;
  if (cfg.sweep)
    alphas = alpha_grid(*cfg.sweep);
  else if (cfg.alpha)
    alphas = {*cfg.alpha};

  std::optional<SyntheticData> honest_data;
  if (cfg.generation == DataGeneration::Honest)
    honest_data = synthesize(cfg, cfg.bcs.front());

  for (BoundaryCondition bc : cfg.bcs) {
    const SyntheticData data =
        honest_data ? *honest_data : synthesize(cfg, bc);
    BlurOperator op(cfg.psf, bc, cfg.fov1, cfg.fov2);

    SolverConfig plain_cfg;
    plain_cfg.tau = cfg.tau;
    plain_cfg.max_iters = cfg.max_iters;
    plain_cfg.stop = StoppingRule::min_rre();
    plain_cfg.track_rre_against = data.f_true;

    const auto run_cell = [&](const std::string& method, double alpha,
                              const FilteredOperator* d, int iters) {
      CellResult cell;
      cell.bc = bc;
      cell.method = method;
      cell.alpha = alpha;
      SolverConfig scfg = plain_cfg;
      scfg.max_iters = iters;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        cell.run = d ? d_landweber(op, *d, data.g, scfg) : landweber(op, data.g, scfg);
      } catch (const SolverDivergence&) {
        cell.diverged = true;
      }
      cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                         .count();
      if (write && !cell.run.rre_history.empty())
        detail::write_file_atomic(out_path(detail::cell_stem(cell) + ".csv"),
                                  detail::history_csv(cell.run));
      result.cells.push_back(cell);
      return cell;
    };

    const CellResult plain = run_cell("landweber", 0.0, nullptr, cfg.max_iters);
    SummaryRow row{bc, "landweber", 0.0,
                   plain.run.best_iteration > 0
                       ? plain.run.rre_history[plain.run.best_iteration - 1]
                       : std::numeric_limits<double>::infinity(),
                   plain.run.best_iteration, plain.seconds};
    result.summary.push_back(row);
    if (write)
      write_pgm(out_path(std::string(to_string(bc)) + "_landweber.pgm"),
                plain.run.restored);

    if (!alphas.empty()) {
      const int piters = cfg.precond_max_iters > 0 ? cfg.precond_max_iters : cfg.max_iters;
      SummaryRow best{bc, "d-landweber", 0.0,
                      std::numeric_limits<double>::infinity(), 0, 0.0};
      std::ptrdiff_t best_cell = -1;
      for (double a : alphas) {
        const FilteredOperator d =
            build_tikhonov(cfg.psf, {detail::algebra_for(bc), a}, cfg.fov1, cfg.fov2);
        const CellResult cell = run_cell("d-landweber", a, &d, piters);
        if (cell.diverged || cell.run.best_iteration == 0) continue;
        const double cell_rre = cell.run.rre_history[cell.run.best_iteration - 1];
        if (cell_rre < best.best_rre) {
          best.alpha = a;
          best.best_rre = cell_rre;
          best.best_iter = cell.run.best_iteration;
          best.seconds = cell.seconds;
          best_cell = static_cast<std::ptrdiff_t>(result.cells.size()) - 1;
        }
      }
      result.summary.push_back(best);
      if (write && best_cell >= 0)
        write_pgm(out_path(std::string(to_string(bc)) + "_d-landweber.pgm"),
                  result.cells[static_cast<size_t>(best_cell)].run.restored);
    }
  }

  if (write) {
    std::ostringstream summary;
    summary << "bc,method,alpha,best_rre,best_iter,seconds\n";
    for (const SummaryRow& row : result.summary) {
      char seconds[32];
      std::snprintf(seconds, sizeof(seconds), "%.3f", row.seconds);
      summary << to_string(row.bc) << "," << row.method << ","
              << detail::format_alpha(row.alpha) << ","
              << detail::format_double(row.best_rre) << "," << row.best_iter << ","
              << seconds << "\n";
    }
    detail::write_file_atomic(out_path("summary.csv"), summary.str());

    std::ostringstream meta;
    meta << "fov=" << cfg.fov1 << "x" << cfg.fov2 << "\n"
         << "psf_support=" << (2 * cfg.psf.q1() + 1) << "x" << (2 * cfg.psf.q2() + 1)
         << "\n"
         << "generation="
         << (cfg.generation == DataGeneration::Honest ? "honest" : "inverse-crime")
         << "\n"
         << "noise_level=" << detail::format_double(cfg.noise.relative_level) << "\n"
         << "noise_rng=" << kNoiseRngId << "\n"
         << "noise_clipping=none\n"
         << "seed=" << cfg.noise.seed << "\n"
         << "tau=" << detail::format_double(cfg.tau) << "\n"
         << "x0=zero\n"
         << "iteration_convention=completed-steps-from-1\n"
         << "stopping=min-rre (oracle stopping on the true image; non-blind)\n"
         << "plain_max_iters=" << cfg.max_iters << "\n"
         << "precond_max_iters="
         << (cfg.precond_max_iters > 0 ? cfg.precond_max_iters : cfg.max_iters) << "\n";
    meta << "alphas=";
    for (size_t i = 0; i < alphas.size(); ++i)
      meta << (i ? "," : "") << detail::format_alpha(alphas[i]);
    meta << "\n";
    detail::write_file_atomic(out_path("metadata.txt"), meta.str());
  }
  return result;
}

}  // namespace deblur
