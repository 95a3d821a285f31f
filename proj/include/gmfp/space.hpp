#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "gmfp/error.hpp"

namespace gmfp {

// Carrier of n points, labelled 0..n-1.
class FiniteSpace {
 public:
  explicit FiniteSpace(int n) : n_(n) {
    if (n < 1) throw Error(errid::invalid_argument, "carrier needs at least one point");
  }

  int size() const noexcept { return n_; }
  bool contains(int x) const noexcept { return x >= 0 && x < n_; }

  void require(int x) const {
    if (!contains(x))
      throw Error(errid::index_out_of_range,
                  "point " + std::to_string(x) + " outside carrier of size " + std::to_string(n_));
  }

  friend bool operator==(FiniteSpace a, FiniteSpace b) noexcept { return a.n_ == b.n_; }

 private:
  int n_;
};

// Nonnegative values on ordered pairs of points. Candidate metric or almost
// metric; symmetry is a checker concern, not a type concern.
class BinaryTable {
 public:
  explicit BinaryTable(FiniteSpace space)
      : space_(space), values_(static_cast<std::size_t>(space.size()) * space.size(), 0.0) {}

  const FiniteSpace& space() const noexcept { return space_; }
  int size() const noexcept { return space_.size(); }

  double operator()(int x, int y) const {
    space_.require(x);
    space_.require(y);
    return values_[idx(x, y)];
  }

  void set(int x, int y, double v) {
    space_.require(x);
    space_.require(y);
    if (!(v >= 0.0))
      throw Error(errid::negative_value, "distance values must be nonnegative and finite");
    values_[idx(x, y)] = v;
  }

  // Symmetric write, the usual case for metric candidates.
  void set_sym(int x, int y, double v) {
    set(x, y, v);
    set(y, x, v);
  }

 private:
  std::size_t idx(int x, int y) const noexcept {
    return static_cast<std::size_t>(x) * space_.size() + y;
  }

  FiniteSpace space_;
  std::vector<double> values_;
};

// Nonnegative values on unordered point triples, stored canonically with
// x <= y <= z. Permutation symmetry and the zero value on all-equal triples
// hold by construction; lookups for any argument order hit the canonical slot.
class TernaryTable {
 public:
  explicit TernaryTable(FiniteSpace space)
      : space_(space), values_(canonical_count(space.size()), 0.0) {}

  const FiniteSpace& space() const noexcept { return space_; }
  int size() const noexcept { return space_.size(); }

  double operator()(int x, int y, int z) const {
    space_.require(x);
    space_.require(y);
    space_.require(z);
    return values_[canonical_index(x, y, z)];
  }

  void set(int x, int y, int z, double v) {
    space_.require(x);
    space_.require(y);
    space_.require(z);
    if (!(v >= 0.0))
      throw Error(errid::negative_value, "distance values must be nonnegative and finite");
    if (x == y && y == z && v != 0.0)
      throw Error(errid::invalid_argument, "all-equal triples are pinned to zero");
    values_[canonical_index(x, y, z)] = v;
  }

  static std::size_t canonical_count(int n) {
    auto m = static_cast<std::size_t>(n);
    return m * (m + 1) * (m + 2) / 6;
  }

 private:
  static std::size_t canonical_index(int x, int y, int z) noexcept {
    if (x > y) std::swap(x, y);
    if (y > z) std::swap(y, z);
    if (x > y) std::swap(x, y);
    auto a = static_cast<std::size_t>(x);
    auto b = static_cast<std::size_t>(y);
    auto c = static_cast<std::size_t>(z);
    return c * (c + 1) * (c + 2) / 6 + b * (b + 1) / 2 + a;
  }

  FiniteSpace space_;
  std::vector<double> values_;
};

// Selfmap of a finite carrier, given by its image array.
class FiniteMap {
 public:
  FiniteMap(FiniteSpace space, std::vector<int> image) : space_(space), image_(std::move(image)) {
    if (static_cast<int>(image_.size()) != space_.size())
      throw Error(errid::invalid_argument, "selfmap image must list one point per carrier point");
    for (int v : image_) space_.require(v);
  }

  const FiniteSpace& space() const noexcept { return space_; }
  int size() const noexcept { return space_.size(); }

  int operator()(int x) const {
    space_.require(x);
    return image_[static_cast<std::size_t>(x)];
  }

  const std::vector<int>& image() const noexcept { return image_; }

 private:
  FiniteSpace space_;
  std::vector<int> image_;
};

// One counterexample to an axiom. For inequality axioms the violated relation
// is lhs <= rhs + tol; for the *-sufficient axioms the relation is lhs > rhs,
// with lhs the offending value and rhs the tolerance it failed to clear.
struct Witness {
  std::vector<int> points;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ViolationReport {
  std::string axiom_id;
  std::vector<Witness> witnesses;
};

using ViolationList = std::vector<ViolationReport>;

inline bool all_clean(const ViolationList& v) noexcept { return v.empty(); }

}  // namespace gmfp
