#include "cwlab/params.hpp"

#include <cmath>
#include <sstream>

#include "cwlab/error.hpp"

namespace cwlab {

double ModelParams::effective_beta() const {
  if (gamma) return 1.0 - *gamma / std::sqrt(static_cast<double>(n));
  return beta;
}

void ModelParams::validate() const {
  if (n < 1) throw ConfigError("n must be >= 1 (got " + std::to_string(n) + ")");
  if (gamma) {
    if (!std::isfinite(*gamma)) throw ConfigError("gamma must be finite");
    if (!(effective_beta() > 0.0))
      throw ConfigError("1 - gamma/sqrt(n) must be positive for " + describe());
  } else if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ConfigError("beta must be positive and finite");
  }
  if (!std::isfinite(mu)) throw ConfigError("mu must be finite");
}

ModelParams ModelParams::make(std::int64_t n, double beta) {
  ModelParams p;
  p.n = n;
  p.beta = beta;
  p.validate();
  return p;
}

ModelParams ModelParams::window(std::int64_t n, double gamma) {
  ModelParams p;
  p.n = n;
  p.beta = 1.0;
  p.gamma = gamma;
  p.validate();
  return p;
}

std::string ModelParams::describe() const {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "n=" << n;
  if (gamma)
    os << " gamma=" << *gamma;
  else
    os << " beta=" << beta;
  if (mu != 0.0) os << " mu=" << mu;
  return os.str();
}

bool operator==(const ModelParams& a, const ModelParams& b) {
  return a.n == b.n && a.beta == b.beta && a.gamma == b.gamma && a.mu == b.mu;
}

}  // namespace cwlab
