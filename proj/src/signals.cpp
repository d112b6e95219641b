#include "pyra/signals.hpp"

#include "pyra/rng.hpp"
#include "pyra/spectral.hpp"

#include <algorithm>
#include <vector>

namespace pyra {

Vector fiedler_sign_signal(const Laplacian& L) {
  if (L.n() < 2) throw InvalidInputError("signal needs at least 2 vertices");
  const SpectralDecomposition dec = dense_eigendecomposition(L);
  const Vector u1 = dec.eigenvectors.col(1);
  Vector f(L.n());
  for (Index i = 0; i < L.n(); ++i) f[i] = u1[i] >= 0.0 ? 1.0 : -1.0;
  return f;
}

Vector poly2_patch_signal(const Graph& g) {
  if (!g.has_coordinates())
    throw InvalidInputError("poly2-patch needs vertex coordinates");
  const Index n = g.num_vertices();
  const auto& coords = g.coordinates();

  std::vector<double> xs(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = coords[static_cast<std::size_t>(i)][0];
  std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(n / 2), xs.end());
  const double split = xs[static_cast<std::size_t>(n / 2)];

  Vector f(n);
  for (Index i = 0; i < n; ++i) {
    const double x = coords[static_cast<std::size_t>(i)][0];
    const double y = coords[static_cast<std::size_t>(i)][1];
    if (x < split)
      f[i] = x * x + y * y;
    else
      f[i] = 2.0 - (x - 1.0) * (x - 1.0) - (y - 1.0) * (y - 1.0);
  }
  return f;
}

Vector lowpass_noise_signal(const Laplacian& L, double tau, std::uint64_t seed) {
  Rng rng(seed);
  const Vector noise = rng.normal_vector(L.n());
  const SpectralDecomposition dec = dense_eigendecomposition(L);
  return apply_filter_exact(noise, FilterKernel::green(tau), dec);
}

Vector synthetic_signal(const std::string& spec, const Graph& g, const Laplacian& L,
                        std::uint64_t seed) {
  if (spec == "fiedler-sign") return fiedler_sign_signal(L);
  if (spec == "poly2-patch") return poly2_patch_signal(g);
  if (spec.rfind("lowpass-noise:", 0) == 0) {
    double tau = 0.0;
    try {
      std::size_t used = 0;
      const std::string arg = spec.substr(14);
      tau = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw InvalidInputError("bad parameter in '" + spec + "'");
    }
    return lowpass_noise_signal(L, tau, seed);
  }
  throw InvalidInputError("unknown signal spec '" + spec +
                          "' (expected fiedler-sign, poly2-patch, or lowpass-noise:<tau>)");
}

} // namespace pyra
