#pragma once

#include "pyra/graph.hpp"
#include "pyra/interpolate.hpp"
#include "pyra/mask.hpp"
#include "pyra/reduce.hpp"
#include "pyra/spectral.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace pyra {

struct SparsifyMeta {
  bool sparsified = false;
  Index q = 0; // resolved sample count
  std::uint64_t seed = 0; // per-level stream seed
  bool repaired = false;
};

// Everything one level stores for reconstruction: the coarser Laplacian, the
// keep/eliminate split, the detail coefficients, and the exact filtering
// configuration so the analysis operator can be rebuilt.
struct PyramidLevelRecord {
  Laplacian laplacian_next;
  VertexMask mask;
  Vector prediction_error;
  FilterKernel filter;
  double epsilon = 0.0;
  bool exact_filtering = true;
  Index cheb_order = 0; // Chebyshev path only
  double lambda_max_bound = 0.0; // Chebyshev path only
  SparsifyMeta sparsify;
};

struct PyramidOutput {
  std::vector<PyramidLevelRecord> levels; // j = 0 .. J-1
  Vector coarsest;
  Index n0 = 0;

  Index num_levels() const { return static_cast<Index>(levels.size()); }
  Index total_coefficients() const;
};

struct AnalyzeConfig {
  FilterKernel filter = FilterKernel::green(0.5);
  double epsilon = 0.0; // must be set > 0
  bool sparsify = false;
  SparsifyConfig sparsify_cfg; // per-level seeds derived from `seed`
  std::uint64_t seed = 0;
  Index exact_filter_threshold = 2000; // dense filtering below, Chebyshev above
  Index chebyshev_order = 50;
};

// One analysis step: select the kept set, reduce the Laplacian, filter and
// restrict the signal, and store the interpolation residual as detail.
// level_index salts the seed so each level draws an independent stream.
std::pair<PyramidLevelRecord, Vector> analyze_level(const Vector& x, const Laplacian& L,
                                                    const AnalyzeConfig& cfg,
                                                    Index level_index = 0);

PyramidOutput analyze(const Vector& x, const Laplacian& L, Index num_levels,
                      const AnalyzeConfig& cfg);

// The per-level analysis map as a linear operator: x -> (coarse, detail),
// with its adjoint. Used by the least-squares synthesis and by tests.
class LevelOperator {
public:
  LevelOperator(const PyramidLevelRecord& rec, const Laplacian& L);

  std::pair<Vector, Vector> apply(const Vector& x) const;
  Vector apply_adjoint(const Vector& coarse, const Vector& detail) const;

  Index n() const { return L_.n(); }
  Index coarse_n() const { return mask_.num_kept(); }

private:
  Vector apply_filter(const Vector& v) const;

  Laplacian L_;
  VertexMask mask_;
  FilterKernel filter_;
  double epsilon_;
  bool exact_;
  Index cheb_order_;
  double lambda_max_bound_;
  SpectralDecomposition dec_; // exact path only
};

// Interpolate the coarse signal back up and add the stored detail; the exact
// left inverse of the analysis step.
Vector synthesize_level_direct(const PyramidLevelRecord& rec, const Vector& x_next,
                               const Laplacian& L);

struct LsOptions {
  enum class Solver { normal_cg, landweber };
  Solver solver = Solver::normal_cg;
  double tol = 1e-8; // on the normal-equation residual, relative
  Index max_iters = 0; // 0: 10n (CG) or 5000 (Landweber)
  double landweber_step = 0.0; // 0: 1 / (largest singular value)^2, estimated
};

// Minimum-residual reconstruction from (possibly perturbed) coefficients:
// solves the normal equations of the analysis operator, never materializing
// it.
Vector synthesize_level_leastsquares(const PyramidLevelRecord& rec, const Vector& x_next,
                                     const Laplacian& L, const LsOptions& opts = {});

enum class SynthesisMode { direct, leastsquares };

Vector synthesize(const PyramidOutput& p, const Laplacian& L0, SynthesisMode mode,
                  const LsOptions& opts = {});

// Keep the keep_count largest-magnitude coefficients across the coarsest
// vector and every detail vector jointly; zero the rest. Ties broken toward
// earlier (level, index).
PyramidOutput threshold_coefficients(const PyramidOutput& p, Index keep_count);

// total stored coefficients over input dimension
double redundancy(const PyramidOutput& p);

} // namespace pyra
