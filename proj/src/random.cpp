#include "runitary/random.hpp"

#include <cmath>
#include <stdexcept>

namespace runitary {

Matrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = g(rng);
      const double im = g(rng);
      a(i, j) = Complex(re, im);
    }
  return a;
}

Matrix haar_unitary(int d, std::mt19937_64& rng) {
  if (d < 1) throw std::invalid_argument("haar_unitary: dimension must be positive");
  Matrix a = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity of QR so the distribution is Haar.
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= (mag > 0.0) ? rjj / mag : Complex(1.0, 0.0);
  }
  return q;
}

Vector haar_state(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(d);
  for (int i = 0; i < d; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = Complex(re, im);
  }
  const double n = v.norm();
  if (n == 0.0) return haar_state(d, rng);
  return v / n;
}

std::vector<double> sample_simplex(int k, std::mt19937_64& rng) {
  if (k < 1) throw std::invalid_argument("sample_simplex: k must be positive");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(k);
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    double x = u(rng);
    while (x <= 0.0) x = u(rng);
    p[i] = -std::log(x);
    total += p[i];
  }
  for (double& x : p) x /= total;
  return p;
}

DensityMatrix random_density(int d, std::mt19937_64& rng) {
  Matrix g = ginibre(d, d, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix{std::move(rho)};
}

uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b) {
  // splitmix64 over the concatenated stream position.
  uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

}  // namespace runitary
