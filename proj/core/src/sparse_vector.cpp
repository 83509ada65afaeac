#include "shiftdyn/sparse_vector.hpp"

#include <cmath>

namespace shiftdyn {

SparseVector::SparseVector(
    std::initializer_list<std::pair<const Index, double>> entries) {
  for (const auto& [m, value] : entries) add(m, value);
}

double SparseVector::coefficient(Index m) const {
  auto it = entries_.find(m);
  return it == entries_.end() ? 0.0 : it->second;
}

void SparseVector::set(Index m, double value) {
  if (value == 0.0) {
    entries_.erase(m);
  } else {
    entries_[m] = value;
  }
}

void SparseVector::add(Index m, double value) {
  if (value == 0.0) return;
  auto [it, inserted] = entries_.try_emplace(m, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0.0) entries_.erase(it);
  }
}

void SparseVector::add_scaled(const SparseVector& other, double scale) {
  for (const auto& [m, value] : other.entries_) add(m, scale * value);
}

double SparseVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& [m, value] : entries_) sum += value * value;
  return sum;
}

double SparseVector::norm() const { return std::sqrt(squared_norm()); }

std::optional<Index> SparseVector::min_index() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.begin()->first;
}

std::optional<Index> SparseVector::max_index() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.rbegin()->first;
}

SparseVector& SparseVector::operator+=(const SparseVector& other) {
  add_scaled(other, 1.0);
  return *this;
}

SparseVector& SparseVector::operator-=(const SparseVector& other) {
  add_scaled(other, -1.0);
  return *this;
}

SparseVector& SparseVector::operator*=(double scale) {
  if (scale == 0.0) {
    entries_.clear();
    return *this;
  }
  for (auto it = entries_.begin(); it != entries_.end();) {
    it->second *= scale;
    it = it->second == 0.0 ? entries_.erase(it) : std::next(it);
  }
  return *this;
}

SparseVector unit(Index m) {
  SparseVector v;
  v.set(m, 1.0);
  return v;
}

double inner(const SparseVector& a, const SparseVector& b) {
  double sum = 0.0;
  for (const auto& [m, value] : a) sum += value * b.coefficient(m);
  return sum;
}

double distance(const SparseVector& a, const SparseVector& b) {
  return (a - b).norm();
}

double DirectSumVector::norm() const {
  return std::sqrt(left.squared_norm() + right.squared_norm());
}

}  // namespace shiftdyn
