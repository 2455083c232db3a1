// Copyright 2026 The npoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NPOINT_PROPAGATOR_HPP_
#define NPOINT_PROPAGATOR_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "npoint/errors.hpp"
#include "npoint/field_algebra.hpp"

namespace npoint {

enum class PropagatorRole { feynman, connected2 };

// An L x L propagator over the registry's labels, with its exact inverse.
//
// Bosonic entries must be symmetric. Entries between two fermionic labels
// must be antisymmetric, and entries linking a boson to a fermion must vanish;
// for a purely bosonic registry this is plain symmetry.
template <class S = Rational>
class PropagatorMatrix {
 public:
  using Matrix = std::vector<std::vector<S>>;

  PropagatorMatrix(RegistryPtr reg, Matrix values, PropagatorRole role = PropagatorRole::feynman)
      : reg_(std::move(reg)), values_(std::move(values)), role_(role) {
    const std::size_t n = reg_->size();
    if (values_.size() != n) throw Error("propagator must be " + std::to_string(n) + "x" + std::to_string(n));
    for (const auto& row : values_) {
      if (row.size() != n) throw Error("propagator must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    check_graded_symmetry();
    inverse_ = invert(values_);
  }

  const RegistryPtr& registry() const noexcept { return reg_; }
  std::size_t size() const noexcept { return values_.size(); }
  PropagatorRole role() const noexcept { return role_; }
  const Matrix& values() const noexcept { return values_; }
  const Matrix& inverse() const noexcept { return inverse_; }
  const S& at(LabelId x, LabelId y) const { return values_.at(x).at(y); }
  const S& inverse_at(LabelId x, LabelId y) const { return inverse_.at(x).at(y); }

  static PropagatorMatrix identity(RegistryPtr reg, PropagatorRole role = PropagatorRole::feynman) {
    const std::size_t n = reg->size();
    Matrix m(n, std::vector<S>(n, S(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = S(1);
    return PropagatorMatrix(std::move(reg), std::move(m), role);
  }

  // Gauss-Jordan elimination with exact pivoting.
  static Matrix invert(const Matrix& input) {
    const std::size_t n = input.size();
    Matrix a = input;
    Matrix inv(n, std::vector<S>(n, S(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = S(1);
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      while (pivot < n && a[pivot][col] == S(0)) ++pivot;
      if (pivot == n) throw SingularPropagator("propagator matrix is singular");
      std::swap(a[pivot], a[col]);
      std::swap(inv[pivot], inv[col]);
      const S p = a[col][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[col][j] /= p;
        inv[col][j] /= p;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || a[r][col] == S(0)) continue;
        const S f = a[r][col];
        for (std::size_t j = 0; j < n; ++j) {
          a[r][j] -= f * a[col][j];
          inv[r][j] -= f * inv[col][j];
        }
      }
    }
    return inv;
  }

 private:
  void check_graded_symmetry() const {
    const std::size_t n = values_.size();
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const bool ox = reg_->is_odd(static_cast<LabelId>(x));
        const bool oy = reg_->is_odd(static_cast<LabelId>(y));
        if (ox != oy) {
          if (values_[x][y] != S(0)) {
            throw AsymmetricPropagator("propagator links boson " + reg_->name(static_cast<LabelId>(ox ? y : x)) +
                                       " with fermion " + reg_->name(static_cast<LabelId>(ox ? x : y)));
          }
          continue;
        }
        const S mirrored = ox ? S(-values_[y][x]) : values_[y][x];
        if (values_[x][y] != mirrored) {
          throw AsymmetricPropagator(std::string("propagator is not ") + (ox ? "antisymmetric" : "symmetric") +
                                     " at (" + reg_->name(static_cast<LabelId>(x)) + ", " +
                                     reg_->name(static_cast<LabelId>(y)) + ")");
        }
      }
    }
  }

  RegistryPtr reg_;
  Matrix values_;
  Matrix inverse_;
  PropagatorRole role_;
};

}  // namespace npoint

#endif  // NPOINT_PROPAGATOR_HPP_
