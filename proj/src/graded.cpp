#include "superbracket/graded.hpp"

#include <set>

#include "superbracket/errors.hpp"

namespace superbracket {

GradedBasis::GradedBasis(std::vector<std::string> names, std::vector<Parity> parities)
    : names_(std::move(names)), parities_(std::move(parities)) {
  if (names_.empty()) {
    throw InputError("graded basis must contain at least one element");
  }
  if (names_.size() != parities_.size()) {
    throw InputError("graded basis: names and parities differ in length");
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) {
      throw InputError("graded basis: empty basis name");
    }
    if (!seen.insert(n).second) {
      throw InputError("graded basis: duplicate name '" + n + "'");
    }
  }
}

GradedBasis GradedBasis::even(std::size_t n, const std::string& prefix) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) {
    names.push_back(prefix + std::to_string(i));
  }
  return GradedBasis(std::move(names), std::vector<Parity>(n, Parity::even()));
}

std::optional<std::size_t> GradedBasis::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) {
      return i;
    }
  }
  return std::nullopt;
}

bool GradedBasis::all_even() const {
  for (auto p : parities_) {
    if (p.is_odd()) {
      return false;
    }
  }
  return true;
}

long GradedBasis::superdimension() const {
  long d = 0;
  for (auto p : parities_) {
    d += p.is_odd() ? -1 : 1;
  }
  return d;
}

GradedBasis GradedBasis::direct_sum(const GradedBasis& other) const {
  std::vector<std::string> names = names_;
  std::vector<Parity> parities = parities_;
  std::set<std::string> seen(names.begin(), names.end());
  for (std::size_t i = 0; i < other.size(); ++i) {
    std::string n = other.names_[i];
    while (seen.count(n) != 0) {
      n += "'";
    }
    seen.insert(n);
    names.push_back(n);
    parities.push_back(other.parities_[i]);
  }
  return GradedBasis(std::move(names), std::move(parities));
}

SparseVector to_sparse(std::span<const Rational> dense) {
  SparseVector out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (!dense[i].is_zero()) {
      out.emplace_back(i, dense[i]);
    }
  }
  return out;
}

Vector to_dense(const SparseVector& sparse, std::size_t n) {
  Vector out(n);
  for (const auto& [i, c] : sparse) {
    out.at(i) = c;
  }
  return out;
}

void accumulate(Vector& acc, const Rational& scale, const SparseVector& v) {
  if (scale.is_zero()) {
    return;
  }
  for (const auto& [i, c] : v) {
    acc[i].add_product(scale, c);
  }
}

std::optional<Parity> homogeneous_parity(const GradedBasis& basis, std::span<const Rational> v) {
  if (v.size() != basis.size()) {
    throw DimensionError("vector length does not match basis");
  }
  std::optional<Parity> p;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) {
      continue;
    }
    if (p && *p != basis.parity(i)) {
      throw PreconditionError("vector is not parity-homogeneous");
    }
    p = basis.parity(i);
  }
  return p;
}

Rational BilinearFormMatrix::evaluate(std::span<const Rational> x, std::span<const Rational> y) const {
  Rational acc;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j].is_zero()) {
      continue;
    }
    for (std::size_t k = 0; k < y.size(); ++k) {
      if (y[k].is_zero()) {
        continue;
      }
      acc.add_product(x[j] * y[k], gram(j, k));
    }
  }
  return acc;
}

bool BilinearFormMatrix::is_grade_block() const {
  for (std::size_t j = 0; j < size(); ++j) {
    for (std::size_t k = 0; k < size(); ++k) {
      if (parities[j] != parities[k] && !gram(j, k).is_zero()) {
        return false;
      }
    }
  }
  return true;
}

bool BilinearFormMatrix::is_supersymmetric(int delta) const {
  for (std::size_t j = 0; j < size(); ++j) {
    for (std::size_t k = j; k < size(); ++k) {
      const int s = delta * graded_sign(parities[j], parities[k]);
      if (gram(k, j) != Rational(s) * gram(j, k)) {
        return false;
      }
    }
  }
  return true;
}

std::size_t BilinearFormMatrix::rank() const { return superbracket::rank(gram); }

bool BilinearFormMatrix::is_nondegenerate() const { return rank() == size(); }

BilinearFormMatrix direct_sum(const BilinearFormMatrix& a, const BilinearFormMatrix& b) {
  const std::size_t n = a.size() + b.size();
  BilinearFormMatrix out{Matrix(n, n), a.parities};
  out.parities.insert(out.parities.end(), b.parities.begin(), b.parities.end());
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      out.gram(j, k) = a.gram(j, k);
    }
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      out.gram(a.size() + j, a.size() + k) = b.gram(j, k);
    }
  }
  return out;
}

}  // namespace superbracket
