#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spectra/error.hpp"
#include "spectra/jacobi.hpp"

namespace spectra {

namespace {

// Implicit QL with Wilkinson-type shifts on (d, e), e[i] coupling i and i+1.
// When `first_row` is non-null it carries the first row of the accumulated
// eigenvector matrix.
void implicit_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>* first_row) {
  const int n = static_cast<int>(d.size());
  if (n <= 1) return;
  e.resize(static_cast<std::size_t>(n), 0.0);
  e[static_cast<std::size_t>(n - 1)] = 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto D = [&](int i) -> double& { return d[static_cast<std::size_t>(i)]; };
  auto E = [&](int i) -> double& { return e[static_cast<std::size_t>(i)]; };

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(D(m)) + std::abs(D(m + 1));
        if (std::abs(E(m)) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 100) throw ConvergenceError("tridiagonal QL iteration did not converge");
        double g = (D(l + 1) - D(l)) / (2.0 * E(l));
        double r = std::hypot(g, 1.0);
        g = D(m) - D(l) + E(l) / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i = m - 1;
        bool underflow = false;
        for (; i >= l; --i) {
          double f = s * E(i);
          const double b = c * E(i);
          r = std::hypot(f, g);
          E(i + 1) = r;
          if (r == 0.0) {
            D(i + 1) -= p;
            E(m) = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = D(i + 1) - p;
          r = (D(i) - g) * s + 2.0 * c * b;
          p = s * r;
          D(i + 1) = g + p;
          g = c * r - b;
          if (first_row != nullptr) {
            auto& z = *first_row;
            f = z[static_cast<std::size_t>(i + 1)];
            z[static_cast<std::size_t>(i + 1)] = s * z[static_cast<std::size_t>(i)] + c * f;
            z[static_cast<std::size_t>(i)] = c * z[static_cast<std::size_t>(i)] - s * f;
          }
        }
        if (underflow) continue;
        D(l) -= p;
        E(l) = g;
        E(m) = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

DiscreteMeasure spectral_decompose(const JacobiCoeffs& J, std::size_t n) {
  if (n == 0) throw RangeError("spectral_decompose needs n >= 1");
  const JacobiCoeffs sec = J.section(n);
  sec.require_positive_offdiagonal();
  std::vector<double> d = sec.b;
  std::vector<double> e = sec.a;
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;
  implicit_ql(d, e, &z);
  DiscreteMeasure mu;
  mu.atoms.reserve(n);
  for (std::size_t k = 0; k < n; ++k) mu.atoms.push_back({d[k], z[k] * z[k]});
  mu.sort_by_location();
  // the rotations are orthogonal, so the weights sum to 1 up to rounding
  const double total = mu.total_mass();
  for (auto& atom : mu.atoms) atom.weight /= total;
  return mu;
}

std::vector<double> tridiagonal_eigenvalues(const JacobiCoeffs& J) {
  const JacobiCoeffs sec = J.section(J.size());
  std::vector<double> d = sec.b;
  std::vector<double> e = sec.a;
  implicit_ql(d, e, nullptr);
  std::sort(d.begin(), d.end());
  return d;
}

std::size_t sturm_count_below(const JacobiCoeffs& J, double x) {
  const std::size_t n = J.size();
  std::size_t count = 0;
  double q = 1.0;
  constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  for (std::size_t i = 0; i < n; ++i) {
    const double off = i > 0 ? J.a[i - 1] * J.a[i - 1] : 0.0;
    q = (J.b[i] - x) - (i > 0 ? off / q : 0.0);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

Interval gershgorin_bounds(const JacobiCoeffs& J) {
  const std::size_t n = J.size();
  Interval box{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(J.a[i - 1]);
    if (i + 1 < n) radius += std::abs(J.a[i]);
    box.lo = std::min(box.lo, J.b[i] - radius);
    box.hi = std::max(box.hi, J.b[i] + radius);
  }
  return box;
}

double sturm_eigenvalue(const JacobiCoeffs& J, std::size_t k, double tol) {
  const std::size_t n = J.size();
  if (k >= n) throw RangeError("eigenvalue index out of range");
  if (n > 1 && J.a.size() < n - 1) throw RangeError("off-diagonal shorter than n-1");
  Interval box = gershgorin_bounds(J);
  double lo = box.lo - 1e-12 * (1.0 + std::abs(box.lo));
  double hi = box.hi + 1e-12 * (1.0 + std::abs(box.hi));
  while (hi - lo > tol * std::max(1.0, std::abs(lo) + std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count_below(J, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double largest_eigenvalue(const JacobiCoeffs& J, double tol) { return sturm_eigenvalue(J, J.size() - 1, tol); }

double smallest_eigenvalue(const JacobiCoeffs& J, double tol) { return sturm_eigenvalue(J, 0, tol); }

}  // namespace spectra
