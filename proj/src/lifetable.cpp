#include "gompgof/lifetable.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "gompgof/csv_io.hpp"
#include "gompgof/errors.hpp"
#include "gompgof/rng.hpp"

namespace gompgof {

namespace {

double neumaier_sum(std::span<const double> values) {
  double sum = 0.0, carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

std::vector<double> normalised(std::vector<double> p) {
  const double total = neumaier_sum(p);
  if (!(total > 0.0)) throw DomainError("probability masses sum to zero");
  for (double& v : p) v /= total;
  return p;
}

}  // namespace

LifeTable::LifeTable(std::vector<double> hazards) : q_(std::move(hazards)) {
  if (q_.empty()) throw DomainError("life table needs at least one age");
  for (double q : q_) {
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError(fmt::format("hazard must lie in [0,1], got {}", q));
  }
}

Pmf::Pmf(std::vector<double> masses) : p_(std::move(masses)) {
  if (p_.empty()) throw DomainError("pmf needs at least one mass");
  for (double p : p_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError(fmt::format("negative or invalid mass {}", p));
  }
  if (std::abs(neumaier_sum(p_) - 1.0) > 1e-9) throw DomainError("pmf masses do not sum to 1");
}

Pmf hazard_to_pmf(const LifeTable& table) {
  const auto q = table.hazards();
  std::vector<double> p(q.size());
  double survival = 1.0;  // S(k-1)
  for (std::size_t k = 0; k < q.size(); ++k) {
    p[k] = survival * q[k];
    survival *= 1.0 - q[k];
  }
  if (std::all_of(p.begin(), p.end(), [](double v) { return v == 0.0; })) {
    throw DomainError("all hazards are zero; the pmf cannot be normalised");
  }
  return Pmf(normalised(std::move(p)));
}

Pmf truncate_pmf(const Pmf& pmf, long left, long right) {
  const long size = static_cast<long>(pmf.size());
  if (left < -1 || left >= right || right > size) {
    throw DomainError(fmt::format("invalid truncation bounds L={} R={} for ages 0..{}", left, right, size - 1));
  }
  std::vector<double> p(pmf.masses().begin(), pmf.masses().end());
  for (long k = 0; k < size; ++k) {
    if (k <= left || k >= right) p[static_cast<std::size_t>(k)] = 0.0;
  }
  if (std::all_of(p.begin(), p.end(), [](double v) { return v == 0.0; })) {
    throw DomainError(fmt::format("no probability mass strictly between ages {} and {}", left, right));
  }
  return Pmf(normalised(std::move(p)));
}

std::vector<double> sample_lifetimes(const Pmf& pmf, std::size_t n, std::uint64_t seed, bool jitter) {
  if (n == 0) throw DomainError("sample size must be at least 1");
  std::vector<double> cumulative(pmf.size());
  double running = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    running += pmf[k];
    cumulative[k] = running;
  }
  RandomStream rng(seed, 0);
  std::vector<double> ages(n);
  for (double& age : ages) {
    const double u = rng.uniform() * running;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    // never land on a zero-mass category through rounding at the ends
    while (it != cumulative.end() && pmf[static_cast<std::size_t>(it - cumulative.begin())] == 0.0) ++it;
    if (it == cumulative.end()) {
      it = cumulative.end() - 1;
      while (pmf[static_cast<std::size_t>(it - cumulative.begin())] == 0.0) --it;
    }
    age = static_cast<double>(it - cumulative.begin());
    if (jitter) age += rng.uniform();
  }
  return ages;
}

LifeTable read_lifetable_csv(std::istream& in) {
  const auto rows = csv::read_numeric_rows(in, 2);
  std::vector<double> hazards;
  hazards.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k][0] != static_cast<double>(k)) {
      throw DomainError(fmt::format("ages must be consecutive integers starting at 0; row {} has age {}", k + 1,
                                    rows[k][0]));
    }
    hazards.push_back(rows[k][1]);
  }
  return LifeTable(std::move(hazards));
}

void write_pmf_csv(std::ostream& out, const Pmf& pmf) {
  out << "age,mass\n";
  for (std::size_t k = 0; k < pmf.size(); ++k) out << fmt::format("{},{:.12g}\n", k, pmf[k]);
}

}  // namespace gompgof
