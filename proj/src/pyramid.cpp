#include "pyra/pyramid.hpp"

#include "pyra/downsample.hpp"
#include "pyra/rng.hpp"
#include "pyra/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>

namespace pyra {

namespace {

bool pattern_connected(const CsrMatrix& m) {
  const Index n = m.rows();
  if (n <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::deque<Index> queue{0};
  seen[0] = 1;
  Index count = 1;
  while (!queue.empty()) {
    const Index v = queue.front();
    queue.pop_front();
    for (Index k = m.row_ptr()[static_cast<std::size_t>(v)];
         k < m.row_ptr()[static_cast<std::size_t>(v) + 1]; ++k) {
      const Index u = m.col_idx()[static_cast<std::size_t>(k)];
      if (u == v || m.values()[static_cast<std::size_t>(k)] == 0.0) continue;
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++count;
        queue.push_back(u);
      }
    }
  }
  return count == n;
}

} // namespace

Index PyramidOutput::total_coefficients() const {
  Index total = coarsest.size();
  for (const PyramidLevelRecord& rec : levels) total += rec.prediction_error.size();
  return total;
}

std::pair<PyramidLevelRecord, Vector> analyze_level(const Vector& x, const Laplacian& L,
                                                    const AnalyzeConfig& cfg, Index level_index) {
  if (x.size() != L.n()) throw DimensionMismatchError("signal/Laplacian size mismatch");
  if (!(cfg.epsilon > 0.0)) throw InvalidInputError("analysis requires epsilon > 0");
  if (!pattern_connected(L.matrix)) throw InvalidInputError("graph must be connected");
  const Index n = L.n();

  const std::uint64_t mask_seed = mix_seed(cfg.seed, 4 * static_cast<std::uint64_t>(level_index));
  const std::uint64_t sparsify_seed =
      mix_seed(cfg.seed, 4 * static_cast<std::uint64_t>(level_index) + 1);
  const std::uint64_t bound_seed =
      mix_seed(cfg.seed, 4 * static_cast<std::uint64_t>(level_index) + 2);

  PyramidLevelRecord rec;
  rec.mask = select_largest_eigenvector(L, mask_seed);
  rec.filter = cfg.filter;
  rec.epsilon = cfg.epsilon;

  SparsifyConfig sparsify_cfg = cfg.sparsify_cfg;
  sparsify_cfg.seed = sparsify_seed;
  const ReduceResult reduced = reduce_pipeline(L, rec.mask, sparsify_cfg, cfg.sparsify);
  rec.laplacian_next = reduced.laplacian;
  rec.sparsify.sparsified = reduced.sparsified;
  rec.sparsify.repaired = reduced.repaired;
  if (cfg.sparsify) {
    rec.sparsify.q = resolve_sample_count(sparsify_cfg, rec.mask.num_kept());
    rec.sparsify.seed = sparsify_seed;
  }

  rec.exact_filtering = n < cfg.exact_filter_threshold;
  Vector filtered;
  if (rec.exact_filtering) {
    const SpectralDecomposition dec = dense_eigendecomposition(L);
    filtered = apply_filter_exact(x, cfg.filter, dec);
  } else {
    const PowerMethodResult pm = power_method(L, bound_seed);
    rec.cheb_order = cfg.chebyshev_order;
    rec.lambda_max_bound = pm.lambda * 1.01;
    filtered = apply_filter_chebyshev(x, cfg.filter, L, rec.cheb_order, rec.lambda_max_bound);
  }

  const Vector x_next = rec.mask.select(filtered);
  const SplineInterpolant sp = fit_spline(x_next, L, rec.mask, cfg.epsilon);
  rec.prediction_error = x - interpolate(sp, L);
  return {std::move(rec), x_next};
}

PyramidOutput analyze(const Vector& x, const Laplacian& L, Index num_levels,
                      const AnalyzeConfig& cfg) {
  if (num_levels < 1) throw InvalidInputError("need at least one analysis level");

  PyramidOutput out;
  out.n0 = L.n();
  Vector current = x;
  Laplacian current_l = L;
  for (Index j = 0; j < num_levels; ++j) {
    if (current_l.n() < 3)
      throw TooManyLevelsError("level " + std::to_string(j) + " graph has only " +
                               std::to_string(current_l.n()) + " vertices");
    try {
      auto [rec, x_next] = analyze_level(current, current_l, cfg, j);
      current = std::move(x_next);
      current_l = rec.laplacian_next;
      out.levels.push_back(std::move(rec));
    } catch (const MaskTooSmallError&) {
      throw TooManyLevelsError("level " + std::to_string(j) + " kept too few vertices to reduce");
    }
  }
  out.coarsest = std::move(current);
  return out;
}

LevelOperator::LevelOperator(const PyramidLevelRecord& rec, const Laplacian& L)
    : L_(L),
      mask_(rec.mask),
      filter_(rec.filter),
      epsilon_(rec.epsilon),
      exact_(rec.exact_filtering),
      cheb_order_(rec.cheb_order),
      lambda_max_bound_(rec.lambda_max_bound) {
  if (mask_.size() != L_.n()) throw DimensionMismatchError("mask/Laplacian size mismatch");
  if (exact_) dec_ = dense_eigendecomposition(L_);
}

Vector LevelOperator::apply_filter(const Vector& v) const {
  if (exact_) return apply_filter_exact(v, filter_, dec_);
  return apply_filter_chebyshev(v, filter_, L_, cheb_order_, lambda_max_bound_);
}

std::pair<Vector, Vector> LevelOperator::apply(const Vector& x) const {
  if (x.size() != L_.n()) throw DimensionMismatchError("signal/operator size mismatch");
  const Vector coarse = mask_.select(apply_filter(x));
  const SplineInterpolant sp = fit_spline(coarse, L_, mask_, epsilon_);
  const Vector prediction = interpolate(sp, L_);
  return {coarse, x - prediction};
}

Vector LevelOperator::apply_adjoint(const Vector& coarse, const Vector& detail) const {
  if (coarse.size() != mask_.num_kept() || detail.size() != L_.n())
    throw DimensionMismatchError("coefficient/operator size mismatch");
  // adjoint of x -> (S H x, x - Interp S H x): H is symmetric, the
  // interpolation map transposes into a restriction of the regularized solve
  // followed by the (symmetric) Schur complement.
  const Vector s = regularized_solve(L_, epsilon_, detail);
  const Vector w = fit_spline(mask_.select(s), L_, mask_, epsilon_).alpha;
  return apply_filter(mask_.upsample(coarse) - mask_.upsample(w)) + detail;
}

Vector synthesize_level_direct(const PyramidLevelRecord& rec, const Vector& x_next,
                               const Laplacian& L) {
  if (x_next.size() != rec.mask.num_kept())
    throw DimensionMismatchError("coarse signal does not match the kept set");
  const SplineInterpolant sp = fit_spline(x_next, L, rec.mask, rec.epsilon);
  return interpolate(sp, L) + rec.prediction_error;
}

Vector synthesize_level_leastsquares(const PyramidLevelRecord& rec, const Vector& x_next,
                                     const Laplacian& L, const LsOptions& opts) {
  const LevelOperator op(rec, L);
  const Vector& y = rec.prediction_error;
  const Vector rhs = op.apply_adjoint(x_next, y);
  auto normal_apply = [&](const Vector& v) {
    auto [c, d] = op.apply(v);
    return op.apply_adjoint(c, d);
  };

  Vector x = synthesize_level_direct(rec, x_next, L); // warm start
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) return Vector::Zero(L.n());

  if (opts.solver == LsOptions::Solver::normal_cg) {
    const Vector ones = Vector::Ones(L.n());
    CgOptions cg;
    cg.tol = opts.tol;
    cg.max_iters = opts.max_iters > 0 ? opts.max_iters : 10 * L.n();
    const CgResult r = pcg(normal_apply, rhs, x, ones, cg);
    if (!r.converged)
      throw SolverFailureError("least-squares CG did not converge (relative residual " +
                               std::to_string(r.relative_residual) + ")");
    return x;
  }

  // Landweber: gradient descent with step 1 over the largest squared
  // singular value of the analysis operator
  double step = opts.landweber_step;
  if (!(step > 0.0)) {
    Rng rng(0x9d2c5680u);
    Vector z = rng.normal_vector(L.n());
    z /= z.norm();
    double top = 1.0;
    for (int it = 0; it < 50; ++it) {
      Vector mz = normal_apply(z);
      top = z.dot(mz);
      const double norm = mz.norm();
      if (norm < 1e-300) break;
      z = mz / norm;
    }
    step = 1.0 / top;
  }
  const Index max_iters = opts.max_iters > 0 ? opts.max_iters : 5000;
  for (Index it = 0; it < max_iters; ++it) {
    const Vector gradient = rhs - normal_apply(x);
    if (gradient.norm() <= opts.tol * rhs_norm) return x;
    x += step * gradient;
  }
  const Vector gradient = rhs - normal_apply(x);
  if (gradient.norm() <= opts.tol * rhs_norm) return x;
  throw SolverFailureError("Landweber iteration did not reach the requested tolerance");
}

Vector synthesize(const PyramidOutput& p, const Laplacian& L0, SynthesisMode mode,
                  const LsOptions& opts) {
  if (p.levels.empty()) throw InvalidInputError("pyramid has no levels");
  if (p.n0 != L0.n()) throw DimensionMismatchError("pyramid/Laplacian size mismatch");

  Vector x = p.coarsest;
  for (Index j = p.num_levels() - 1; j >= 0; --j) {
    const PyramidLevelRecord& rec = p.levels[static_cast<std::size_t>(j)];
    const Laplacian& level_l = j == 0 ? L0 : p.levels[static_cast<std::size_t>(j - 1)].laplacian_next;
    if (x.size() != rec.mask.num_kept())
      throw DimensionMismatchError("level " + std::to_string(j) + " coarse size mismatch");
    x = mode == SynthesisMode::direct ? synthesize_level_direct(rec, x, level_l)
                                      : synthesize_level_leastsquares(rec, x, level_l, opts);
  }
  return x;
}

PyramidOutput threshold_coefficients(const PyramidOutput& p, Index keep_count) {
  const Index total = p.total_coefficients();
  if (keep_count <= 0 || keep_count > total)
    throw BadKeepCountError("keep count must be in [1, " + std::to_string(total) + "]");

  // (level, index) addressing; the coarsest vector sits after all detail
  // levels
  struct Entry {
    double magnitude;
    Index level;
    Index index;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(total));
  for (Index j = 0; j < p.num_levels(); ++j) {
    const Vector& y = p.levels[static_cast<std::size_t>(j)].prediction_error;
    for (Index i = 0; i < y.size(); ++i) entries.push_back({std::abs(y[i]), j, i});
  }
  for (Index i = 0; i < p.coarsest.size(); ++i)
    entries.push_back({std::abs(p.coarsest[i]), p.num_levels(), i});

  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
    return a.level != b.level ? a.level < b.level : a.index < b.index;
  });

  PyramidOutput out = p;
  for (PyramidLevelRecord& rec : out.levels) rec.prediction_error.setZero();
  out.coarsest.setZero();
  for (Index k = 0; k < keep_count; ++k) {
    const Entry& e = entries[static_cast<std::size_t>(k)];
    if (e.level < p.num_levels())
      out.levels[static_cast<std::size_t>(e.level)].prediction_error[e.index] =
          p.levels[static_cast<std::size_t>(e.level)].prediction_error[e.index];
    else
      out.coarsest[e.index] = p.coarsest[e.index];
  }
  return out;
}

double redundancy(const PyramidOutput& p) {
  if (p.n0 <= 0) throw InvalidInputError("pyramid has no input dimension");
  return static_cast<double>(p.total_coefficients()) / static_cast<double>(p.n0);
}

} // namespace pyra
