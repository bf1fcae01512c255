#include "hardball/embedding.hpp"

#include <cmath>
#include <stdexcept>

namespace hardball {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

GramData::GramData(const MassProfile<double>& masses) : n_(masses.n()) {
  masses.validate();
  const int dim = n_ + 1;
  m_vec_.resize(dim);
  for (int j = 0; j < dim; ++j) m_vec_[j] = std::sqrt(masses.m[j]);

  alpha_flat_.assign(static_cast<std::size_t>(n_) * dim, 0.0);
  for (int i = 1; i <= n_; ++i) {
    double* row = alpha_flat_.data() + static_cast<std::size_t>(i - 1) * dim;
    row[i] = 1.0 / std::sqrt(masses.m[i]);
    row[i - 1] = -1.0 / std::sqrt(masses.m[i - 1]);
    const double len = std::sqrt(1.0 / masses.m[i] + 1.0 / masses.m[i - 1]);
    row[i] /= len;
    row[i - 1] /= len;
  }

  gram_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int i = 1; i <= n_; ++i)
    for (int j = 1; j <= n_; ++j)
      gram_[static_cast<std::size_t>(i - 1) * n_ + (j - 1)] = dot(alpha(i), alpha(j));
}

std::span<const double> GramData::alpha(int i) const {
  if (i < 1 || i > n_) throw std::out_of_range("alpha index must be in 1..n");
  return {alpha_flat_.data() + static_cast<std::size_t>(i - 1) * dimension(),
          static_cast<std::size_t>(dimension())};
}

double GramData::gram(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_) throw std::out_of_range("gram index must be in 1..n");
  return gram_[static_cast<std::size_t>(i - 1) * n_ + (j - 1)];
}

GramData build_embedding(const MassProfile<double>& masses) { return GramData(masses); }

VelocityVector embed_velocities(const MassProfile<double>& masses,
                                std::span<const double> velocities) {
  if (velocities.size() != masses.size())
    throw StateError("embed_velocities: length mismatch");
  VelocityVector out;
  out.coords.resize(velocities.size());
  for (std::size_t j = 0; j < velocities.size(); ++j)
    out.coords[j] = std::sqrt(masses.m[j]) * velocities[j];
  return out;
}

std::vector<double> decode_velocities(const MassProfile<double>& masses,
                                      const VelocityVector& v) {
  if (v.coords.size() != masses.size())
    throw StateError("decode_velocities: length mismatch");
  std::vector<double> out(v.coords.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = v.coords[j] / std::sqrt(masses.m[j]);
  return out;
}

VelocityVector reflect(const GramData& g, const VelocityVector& v, int i) {
  const auto a = g.alpha(i);
  if (v.coords.size() != a.size()) throw StateError("reflect: dimension mismatch");
  const double c = 2.0 * dot(a, v.coords);
  VelocityVector out = v;
  for (std::size_t k = 0; k < out.coords.size(); ++k) out.coords[k] -= c * a[k];
  return out;
}

double collision_coordinate(const GramData& g, const VelocityVector& v, int i) {
  const auto a = g.alpha(i);
  if (v.coords.size() != a.size()) throw StateError("collision_coordinate: dimension mismatch");
  return dot(a, v.coords);
}

double neighbor_gram_closed_form(const MassProfile<double>& masses, int i) {
  if (i < 1 || i > masses.n() - 1)
    throw std::out_of_range("neighbor entry needs 1 <= i <= n-1");
  const double inv_prev = 1.0 / masses.m[i - 1];
  const double inv_mid = 1.0 / masses.m[i];
  const double inv_next = 1.0 / masses.m[i + 1];
  return -inv_mid / (std::sqrt(inv_mid + inv_prev) * std::sqrt(inv_next + inv_mid));
}

int basis_rank(const GramData& g, double pivot_floor) {
  const int dim = g.dimension();
  std::vector<std::vector<double>> rows;
  rows.emplace_back(g.mass_vector().begin(), g.mass_vector().end());
  for (int i = 1; i <= g.n(); ++i) rows.emplace_back(g.alpha(i).begin(), g.alpha(i).end());

  int rank = 0;
  for (int col = 0; col < dim && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    double best = pivot_floor;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (std::fabs(rows[r][col]) > best) {
        best = std::fabs(rows[r][col]);
        pivot = r;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      const double f = rows[r][col] / rows[rank][col];
      for (int c = col; c < dim; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace hardball
