// SPDX-License-Identifier: Apache-2.0
//
// modop - numerical time-frequency operator calculus
// Copyright (C) 2026 The modop authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#pragma once

#include <Eigen/Dense>

#include "modop/error.hpp"

namespace modop {

/// Dense discretized operator together with the quadrature cell weights of
/// its domain and codomain, so that ||A f||_{L^p} / ||f||_{L^p} is measured
/// with Riemann-sum norms on both sides.
struct OperatorMatrix {
    Eigen::MatrixXcd entries;
    double domain_measure = 1.0;
    double codomain_measure = 1.0;

    OperatorMatrix() = default;
    OperatorMatrix(Eigen::MatrixXcd a, double domain, double codomain)
        : entries(std::move(a)), domain_measure(domain), codomain_measure(codomain) {
        if (!(domain > 0.0) || !(codomain > 0.0)) throw Error(ErrorCode::InvalidArgument, "operator measures must be positive");
        if (!entries.allFinite()) throw Error(ErrorCode::InvalidArgument, "operator matrix has non-finite entries");
    }

    Eigen::Index rows() const noexcept { return entries.rows(); }
    Eigen::Index cols() const noexcept { return entries.cols(); }

    friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
        return {a.entries * b.entries, b.domain_measure, a.codomain_measure};
    }
};

}  // namespace modop
