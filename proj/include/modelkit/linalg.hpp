// Copyright 2026 The modelkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include "modelkit/table.hpp"

namespace modelkit {

/// Row-major view of a table's numeric columns as a dense matrix.
Eigen::MatrixXd numeric_matrix(const Table& table);

struct SymmetricEigen {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // column k pairs with values(k)
  int sweeps = 0;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Sweeps stop
/// once the off-diagonal Frobenius norm drops below `tolerance` or after
/// `max_sweeps`. Equal eigenvalues keep their original diagonal order.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& symmetric,
                            double tolerance = 1e-12, int max_sweeps = 100);

}  // namespace modelkit
