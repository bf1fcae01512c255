#pragma once

#include <span>
#include <vector>

#include "hardball/types.hpp"

namespace hardball {

// Mass-weighted configuration geometry: unit normals alpha_i (one per
// adjacent pair, indices 1..n as everywhere else), the mass vector
// sum_j sqrt(m_j) 1_j, and the Gram matrix of the normals. Float mode
// only; the construction is irrational for generic masses.
class GramData {
 public:
  explicit GramData(const MassProfile<double>& masses);

  int n() const { return n_; }
  int dimension() const { return n_ + 1; }

  // alpha_i, 1 <= i <= n, as coordinates in R^{n+1}.
  std::span<const double> alpha(int i) const;
  std::span<const double> mass_vector() const { return m_vec_; }

  // (alpha_i, alpha_j), 1 <= i, j <= n, computed by coordinate dot product.
  double gram(int i, int j) const;

  // k_ij = -2 (alpha_i, alpha_j); k_ii = -2, tridiagonal.
  double weight(int i, int j) const { return -2.0 * gram(i, j); }

 private:
  int n_;
  std::vector<double> alpha_flat_;  // n rows of length n+1
  std::vector<double> m_vec_;
  std::vector<double> gram_;  // n x n
};

GramData build_embedding(const MassProfile<double>& masses);

// Velocity profile mapped to R^{n+1}: coordinate j is sqrt(m_j) v_j.
struct VelocityVector {
  std::vector<double> coords;
};

VelocityVector embed_velocities(const MassProfile<double>& masses,
                                std::span<const double> velocities);
std::vector<double> decode_velocities(const MassProfile<double>& masses,
                                      const VelocityVector& v);

// Orthogonal reflection in the hyperplane normal to alpha_i:
// v - 2 (alpha_i, v) alpha_i.
VelocityVector reflect(const GramData& g, const VelocityVector& v, int i);

// (alpha_i, v); strictly negative exactly when balls i-1 and i approach.
double collision_coordinate(const GramData& g, const VelocityVector& v, int i);

// Closed form for the neighbor entry (alpha_i, alpha_{i+1}), kept separate
// from the coordinate dot product so the two routes stay independent.
double neighbor_gram_closed_form(const MassProfile<double>& masses, int i);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

// Rank of {m_vec, alpha_1, ..., alpha_n} via Gaussian elimination with
// partial pivoting; full rank n+1 certifies the basis property.
int basis_rank(const GramData& g, double pivot_floor = 1e-12);

}  // namespace hardball
