#include "blochvar/sampling.hpp"

#include <stdexcept>

namespace bloch {

Potential random_complex_potential(const LatticeConfig& cfg, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<cplx> values(cfg.cell_size());
  for (auto& v : values) {
    const double re = u(rng);
    v = cplx(re, u(rng));
  }
  return Potential(cfg, std::move(values));
}

Potential random_real_potential(const LatticeConfig& cfg, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<cplx> values(cfg.cell_size());
  for (auto& v : values) v = u(rng);
  return Potential(cfg, std::move(values));
}

Potential random_nonconstant_real_potential(const LatticeConfig& cfg, std::mt19937_64& rng, double min_abs,
                                            double max_abs) {
  if (cfg.cell_size() < 2) throw std::invalid_argument("a one-cell lattice has only constant potentials");
  std::uniform_real_distribution<double> mag(min_abs, max_abs);
  std::bernoulli_distribution sign(0.5);
  for (;;) {
    std::vector<cplx> values(cfg.cell_size());
    for (auto& v : values) {
      const double m = mag(rng);
      v = sign(rng) ? m : -m;
    }
    Potential p(cfg, std::move(values));
    if (!p.is_constant(1e-3)) return p;
  }
}

}  // namespace bloch
