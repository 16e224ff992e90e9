#include "tlps/latent_space.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "tlps/errors.hpp"

namespace tlps {

LatentSpace LatentSpace::random_unit(std::size_t n, std::size_t k, CounterRng& rng) {
  LatentSpace z(n, k);
  for (std::size_t i = 0; i < n * k; ++i) z.data_[i] = rng.next_double();
  for (NodeId u = 0; u < n; ++u) row_normalize(z.row(u));
  return z;
}

bool LatentSpace::valid(double tol) const {
  for (NodeId u = 0; u < n_; ++u) {
    double s = 0.0;
    for (double x : row(u)) {
      if (x < 0.0 || !std::isfinite(x)) return false;
      s += x * x;
    }
    if (std::abs(std::sqrt(s) - 1.0) > tol) return false;
  }
  return true;
}

void row_normalize(std::span<double> row) {
  double s = 0.0;
  for (double x : row) s += x * x;
  const double norm = std::sqrt(s);
  if (norm > 1e-12) {
    for (double& x : row) x /= norm;
  } else {
    const double fill = 1.0 / std::sqrt(static_cast<double>(row.size()));
    for (double& x : row) x = fill;
  }
}

void save_latent(std::ostream& out, const LatentSpace& z, std::size_t tau) {
  out << z.node_count() << ' ' << z.dim() << ' ' << tau << '\n';
  char buf[32];
  for (NodeId u = 0; u < z.node_count(); ++u) {
    auto r = z.row(u);
    for (std::size_t c = 0; c < r.size(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", r[c]);
      out << buf << (c + 1 == r.size() ? '\n' : ' ');
    }
  }
}

void save_latent_file(const std::string& path, const LatentSpace& z, std::size_t tau) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  save_latent(out, z, tau);
  if (!out.good()) throw Error("write failed: " + path);
}

std::pair<LatentSpace, std::size_t> load_latent(std::istream& in) {
  std::size_t n = 0, k = 0, tau = 0;
  if (!(in >> n >> k >> tau)) throw ParseError("bad latent header, expected 'n k tau'", 1);
  LatentSpace z(n, k);
  for (std::size_t i = 0; i < n * k; ++i)
    if (!(in >> z.data()[i]))
      throw ParseError("latent body ended early", 1 + i / (k == 0 ? 1 : k) + 1);
  return {std::move(z), tau};
}

std::pair<LatentSpace, std::size_t> load_latent_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  return load_latent(in);
}

}  // namespace tlps
