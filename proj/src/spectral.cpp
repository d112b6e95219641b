#include "pyra/spectral.hpp"

#include "pyra/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace pyra {

Vector canonical_sign(Vector v) {
  Index pivot = 0;
  double best = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best) {
      best = a;
      pivot = i;
    }
  }
  if (v.size() > 0 && v[pivot] < 0.0) v = -v;
  return v;
}

SpectralDecomposition dense_eigendecomposition(const Laplacian& L, Index size_cap) {
  const Index n = L.n();
  if (n > size_cap)
    throw TooLargeError("dense eigendecomposition capped at " + std::to_string(size_cap) +
                        " vertices");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(L.matrix.to_dense());
  if (solver.info() != Eigen::Success)
    throw SolverFailureError("symmetric eigendecomposition did not converge");
  SpectralDecomposition dec;
  dec.eigenvalues = solver.eigenvalues();
  dec.eigenvectors = solver.eigenvectors();
  for (Index c = 0; c < n; ++c) dec.eigenvectors.col(c) = canonical_sign(dec.eigenvectors.col(c));
  return dec;
}

PowerMethodResult power_method(const Laplacian& L, std::uint64_t seed, PowerMethodOptions opts) {
  const Index n = L.n();
  if (n < 2) throw InvalidInputError("power method needs at least 2 vertices");
  const Index max_iters =
      opts.max_iters > 0
          ? opts.max_iters
          : static_cast<Index>(20.0 * std::sqrt(static_cast<double>(n))) + 200;

  double shift = 0.0;
  if (opts.shift) shift = L.matrix.diagonal().sum() / static_cast<double>(n);

  Rng rng(seed);
  Vector x = rng.normal_vector(n);
  x /= x.norm();

  std::vector<char> signs(static_cast<std::size_t>(n), 0);
  auto record_signs = [&](const Vector& v) {
    bool same = true;
    for (Index i = 0; i < n; ++i) {
      const char s = v[i] >= 0.0 ? 1 : 0;
      if (signs[static_cast<std::size_t>(i)] != s) same = false;
      signs[static_cast<std::size_t>(i)] = s;
    }
    return same;
  };
  record_signs(x);

  PowerMethodResult result;
  Index stable = 0;
  double rayleigh_prev = 0.0;
  bool have_rayleigh = false;
  for (Index it = 0; it < max_iters; ++it) {
    Vector y = L.apply(x);
    const double rayleigh = x.dot(y);
    if (shift != 0.0) y -= shift * x;
    const double norm = y.norm();
    if (norm < 1e-300) {
      x = rng.normal_vector(n);
      x /= x.norm();
      record_signs(x);
      stable = 0;
      have_rayleigh = false;
      continue;
    }
    x = y / norm;
    result.iterations = it + 1;
    // A stable sign pattern alone is not evidence of convergence: on
    // small-gap graphs the pattern of a still-mixed iterate can idle for
    // many iterations and then flip. Require the Rayleigh quotient to have
    // settled too.
    const bool settled =
        have_rayleigh &&
        std::abs(rayleigh - rayleigh_prev) <= 1e-12 * std::max(1.0, std::abs(rayleigh));
    rayleigh_prev = rayleigh;
    have_rayleigh = true;
    stable = record_signs(x) && settled ? stable + 1 : 0;
    if (stable >= opts.polarity_window) {
      result.converged = true;
      break;
    }
  }
  result.vector = x;
  result.lambda = x.dot(L.apply(x));
  return result;
}

FilterKernel FilterKernel::identity() {
  return {"identity", [](double) { return 1.0; }, false};
}

FilterKernel FilterKernel::green(double tau) {
  if (!(tau > 0.0)) throw InvalidInputError("green kernel needs tau > 0");
  return {"green:" + std::to_string(tau), [tau](double lambda) { return tau / (tau + lambda); },
          false};
}

FilterKernel FilterKernel::heat(double t) {
  if (!(t > 0.0)) throw InvalidInputError("heat kernel needs t > 0");
  return {"heat:" + std::to_string(t), [t](double lambda) { return std::exp(-t * lambda); }, false};
}

FilterKernel FilterKernel::ideal_low(double cutoff) {
  if (!(cutoff > 0.0)) throw InvalidInputError("ideal-low kernel needs cutoff > 0");
  return {"ideal-low:" + std::to_string(cutoff),
          [cutoff](double lambda) { return lambda <= cutoff ? 1.0 : 0.0; }, true};
}

FilterKernel FilterKernel::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string base = spec.substr(0, colon);
  if (base == "identity" && colon == std::string::npos) return identity();
  if (colon == std::string::npos || colon + 1 == spec.size())
    throw InvalidInputError("filter spec needs a parameter, e.g. green:0.5");
  double param = 0.0;
  try {
    std::size_t used = 0;
    param = std::stod(spec.substr(colon + 1), &used);
    if (colon + 1 + used != spec.size()) throw std::invalid_argument("trailing text");
  } catch (const std::exception&) {
    throw InvalidInputError("bad filter parameter in '" + spec + "'");
  }
  if (base == "green") {
    FilterKernel k = green(param);
    k.name = spec;
    return k;
  }
  if (base == "heat") {
    FilterKernel k = heat(param);
    k.name = spec;
    return k;
  }
  if (base == "ideal-low") {
    FilterKernel k = ideal_low(param);
    k.name = spec;
    return k;
  }
  throw InvalidInputError("unknown filter '" + base + "'");
}

Vector graph_fourier(const Vector& f, const SpectralDecomposition& dec) {
  if (f.size() != dec.n()) throw DimensionMismatchError("signal/decomposition size mismatch");
  return dec.eigenvectors.transpose() * f;
}

Vector inverse_graph_fourier(const Vector& f_hat, const SpectralDecomposition& dec) {
  if (f_hat.size() != dec.n()) throw DimensionMismatchError("coefficient/decomposition size mismatch");
  return dec.eigenvectors * f_hat;
}

Vector apply_filter_exact(const Vector& f, const FilterKernel& h,
                          const SpectralDecomposition& dec) {
  if (f.size() != dec.n()) throw DimensionMismatchError("signal/decomposition size mismatch");
  Vector f_hat = dec.eigenvectors.transpose() * f;
  for (Index l = 0; l < dec.n(); ++l) {
    const double gain = h(dec.eigenvalues[l]);
    if (!std::isfinite(gain))
      throw KernelNotFiniteError("filter not finite at lambda = " +
                                 std::to_string(dec.eigenvalues[l]));
    f_hat[l] *= gain;
  }
  return dec.eigenvectors * f_hat;
}

std::vector<double> chebyshev_coefficients(const FilterKernel& h, Index order,
                                           double lambda_max_bound, Index quadrature_points) {
  if (!(lambda_max_bound > 0.0)) throw BadSpectrumBoundError("spectrum bound must be positive");
  if (order < 1) throw InvalidInputError("polynomial order must be >= 1");
  const Index M = quadrature_points;
  const double a = lambda_max_bound / 2.0;
  std::vector<double> values(static_cast<std::size_t>(M));
  std::vector<double> thetas(static_cast<std::size_t>(M));
  for (Index m = 0; m < M; ++m) {
    const double theta = std::numbers::pi * (static_cast<double>(m) + 0.5) / static_cast<double>(M);
    const double lambda = a * (std::cos(theta) + 1.0);
    const double v = h(lambda);
    if (!std::isfinite(v))
      throw KernelNotFiniteError("filter not finite at lambda = " + std::to_string(lambda));
    thetas[static_cast<std::size_t>(m)] = theta;
    values[static_cast<std::size_t>(m)] = v;
  }
  std::vector<double> coeffs(static_cast<std::size_t>(order) + 1);
  for (Index k = 0; k <= order; ++k) {
    double acc = 0.0;
    for (Index m = 0; m < M; ++m)
      acc += std::cos(static_cast<double>(k) * thetas[static_cast<std::size_t>(m)]) *
             values[static_cast<std::size_t>(m)];
    coeffs[static_cast<std::size_t>(k)] = 2.0 * acc / static_cast<double>(M);
  }
  return coeffs;
}

Vector apply_filter_chebyshev(const Vector& f, const FilterKernel& h, const Laplacian& L,
                              Index order, double lambda_max_bound) {
  if (f.size() != L.n()) throw DimensionMismatchError("signal/Laplacian size mismatch");
  if (h.exact_only)
    throw InvalidInputError("filter '" + h.name + "' has no polynomial form; use exact filtering");
  const std::vector<double> c = chebyshev_coefficients(h, order, lambda_max_bound);
  const double a = lambda_max_bound / 2.0;

  // recurrence on the interval-shifted polynomials
  Vector t_prev = f;
  Vector t_cur = (L.apply(f) - a * f) / a;
  Vector out = 0.5 * c[0] * t_prev + c[1] * t_cur;
  for (Index k = 2; k <= order; ++k) {
    Vector t_next = (2.0 / a) * (L.apply(t_cur) - a * t_cur) - t_prev;
    out += c[static_cast<std::size_t>(k)] * t_next;
    t_prev.swap(t_cur);
    t_cur.swap(t_next);
  }
  return out;
}

} // namespace pyra
