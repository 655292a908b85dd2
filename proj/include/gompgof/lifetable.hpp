#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace gompgof {

/// Discrete hazards q(k) = P(X = k | X >= k) for ages k = 0..K.
class LifeTable {
 public:
  explicit LifeTable(std::vector<double> hazards);
  std::span<const double> hazards() const noexcept { return q_; }
  std::size_t size() const noexcept { return q_.size(); }

 private:
  std::vector<double> q_;
};

/// Probability mass function on ages 0..K.
class Pmf {
 public:
  /// Masses must be nonnegative and sum to 1 within 1e-9.
  explicit Pmf(std::vector<double> masses);
  std::span<const double> masses() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t k) const { return p_[k]; }

 private:
  std::vector<double> p_;
};

/// p(0) = q(0), p(k) = q(k) prod_{l<k} (1 - q(l)), then renormalised to sum 1.
Pmf hazard_to_pmf(const LifeTable& table);

/// Keeps ages L+1 .. R-1 and renormalises. L = -1 means no left cut and
/// R = K+1 no right cut. Requires -1 <= L < R <= K+1 and positive kept mass.
Pmf truncate_pmf(const Pmf& pmf, long left, long right);

/// n i.i.d. ages drawn from the pmf with stream (seed, 0). With `jitter`, each
/// age is shifted by an independent U(0,1).
std::vector<double> sample_lifetimes(const Pmf& pmf, std::size_t n, std::uint64_t seed, bool jitter = false);

/// Two columns (age, hazard) with an optional header; ages must be 0, 1, 2, ...
LifeTable read_lifetable_csv(std::istream& in);

/// Writes "age,mass" rows with 12 significant digits.
void write_pmf_csv(std::ostream& out, const Pmf& pmf);

}  // namespace gompgof
