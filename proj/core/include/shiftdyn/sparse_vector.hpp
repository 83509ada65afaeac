#pragma once

#include <map>
#include <optional>

#include "shiftdyn/types.hpp"

namespace shiftdyn {

/// Finitely supported vector in a sequence space. Zero coefficients are never
/// stored.
class SparseVector {
 public:
  using Storage = std::map<Index, double>;

  SparseVector() = default;
  SparseVector(std::initializer_list<std::pair<const Index, double>> entries);

  double coefficient(Index m) const;
  void set(Index m, double value);
  void add(Index m, double value);

  // this += scale * other
  void add_scaled(const SparseVector& other, double scale);

  double norm() const;
  double squared_norm() const;
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  std::optional<Index> min_index() const;
  std::optional<Index> max_index() const;

  const Storage& entries() const noexcept { return entries_; }
  Storage::const_iterator begin() const noexcept { return entries_.begin(); }
  Storage::const_iterator end() const noexcept { return entries_.end(); }

  SparseVector& operator+=(const SparseVector& other);
  SparseVector& operator-=(const SparseVector& other);
  SparseVector& operator*=(double scale);

  friend SparseVector operator+(SparseVector a, const SparseVector& b) {
    return a += b;
  }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) {
    return a -= b;
  }
  friend SparseVector operator*(double scale, SparseVector v) {
    return v *= scale;
  }
  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  Storage entries_;
};

/// Basis vector e_m.
SparseVector unit(Index m);

double inner(const SparseVector& a, const SparseVector& b);
double distance(const SparseVector& a, const SparseVector& b);

/// Element of an orthogonal direct sum: one copy per summand.
struct DirectSumVector {
  SparseVector left;
  SparseVector right;

  double norm() const;
  friend bool operator==(const DirectSumVector&, const DirectSumVector&) = default;
};

}  // namespace shiftdyn
