// Copyright 2026 The freeconv Authors
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

#pragma once

// Eigenvalues of complex Hermitian matrices via the real symmetric
// embedding [[Re H, -Im H], [Im H, Re H]], Householder tridiagonalisation
// and implicit-shift QL. Every eigenvalue of H appears twice in the
// embedding; the pairs are merged.

#include <Eigen/Dense>
#include <vector>

namespace freeconv::ensembles {

/// Eigenvalues of a real symmetric matrix, ascending.
/// Throws ConvergenceError after 50 QL sweeps on one eigenvalue.
std::vector<double> symmetric_eigenvalues(Eigen::MatrixXd a);

/// Eigenvalues of a complex Hermitian matrix, ascending.
/// Throws DomainError when H is not Hermitian to 1e-10 and
/// ConvergenceError when the doubled spectrum does not pair up.
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& h);

}  // namespace freeconv::ensembles
