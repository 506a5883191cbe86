// Copyright 2026 The Prosody Labeling Toolkit Authors
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

#include <algorithm>
#include <limits>

#include "prosody/eval.hpp"
#include "prosody/kernels.hpp"

namespace prosody {

DtwResult dtw_align(const Matrix &a, const Matrix &b, Exec exec) {
  if (a.rows() == 0 || b.rows() == 0) throw Error("dtw needs non-empty sequences");
  if (a.cols() != b.cols())
    throw Error("band-count mismatch (" + std::to_string(a.cols()) + " vs " +
                std::to_string(b.cols()) + ")");
  const std::size_t n = a.rows(), m = b.rows();
  const Matrix local = kernels::pairwise_distances(a, b, exec);

  // Accumulated cost; the recurrence is sequential along both axes.
  Matrix acc(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double best;
      if (i == 0 && j == 0)
        best = 0.0;
      else if (i == 0)
        best = acc(0, j - 1);
      else if (j == 0)
        best = acc(i - 1, 0);
      else
        best = std::min({acc(i - 1, j - 1), acc(i - 1, j), acc(i, j - 1)});
      acc(i, j) = local(i, j) + best;
    }
  }

  DtwResult out;
  out.cost = acc(n - 1, m - 1);
  std::size_t i = n - 1, j = m - 1;
  out.path.emplace_back(i, j);
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const double diag = acc(i - 1, j - 1), up = acc(i - 1, j), left = acc(i, j - 1);
      if (diag <= up && diag <= left) {
        --i;
        --j;
      } else if (up <= left) {
        --i;
      } else {
        --j;
      }
    }
    out.path.emplace_back(i, j);
  }
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

std::vector<std::size_t> warp_indices(const WarpPath &path, std::size_t n_ref, std::size_t n_syn) {
  if (path.empty() || path.front() != std::pair<std::size_t, std::size_t>{0, 0} ||
      path.back() != std::pair<std::size_t, std::size_t>{n_ref - 1, n_syn - 1})
    throw Error("length mismatch between series and warp path");
  std::vector<std::size_t> out(n_ref, std::numeric_limits<std::size_t>::max());
  for (const auto &[i, j] : path)
    if (out[i] == std::numeric_limits<std::size_t>::max()) out[i] = j;
  return out;
}

std::vector<std::pair<double, double>> warp_series(const WarpPath &path,
                                                   std::span<const double> ref,
                                                   std::span<const double> syn) {
  if (ref.empty() || syn.empty()) throw Error("length mismatch: empty series");
  const auto idx = warp_indices(path, ref.size(), syn.size());
  std::vector<std::pair<double, double>> out(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) out[i] = {ref[i], syn[idx[i]]};
  return out;
}

} // namespace prosody
