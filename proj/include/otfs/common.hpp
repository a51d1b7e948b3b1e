// SPDX-License-Identifier: Apache-2.0
//
// otfs-outage: outage-probability simulation for OTFS over delay-Doppler channels
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
#include <complex>
#include <stdexcept>
#include <string>

namespace otfs {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kLn2 = 0.69314718055994530941723212145818;

/// The requested computation relies on a structural assumption the input
/// does not satisfy (e.g. a grid dimension that is not a power of two).
class UnsupportedStructure : public std::runtime_error {
  public:
    explicit UnsupportedStructure(const std::string &msg) : std::runtime_error(msg) {}
};

/// An experiment configuration violates a precondition of the modules it drives.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace otfs
