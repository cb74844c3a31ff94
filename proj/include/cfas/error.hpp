// SPDX-License-Identifier: Apache-2.0
//
// cfas -- high-SNR probability of continuous fluid antenna systems
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

#pragma once

#include <stdexcept>
#include <string>

namespace cfas {

/// Raised for arguments outside an operation's domain (bad sizes, signs, NaN).
class invalid_argument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A correlation model was used where it is not a valid covariance.
class model_validity_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Grid exceeds the configured point cap.
class capacity_error : public std::runtime_error {
public:
    capacity_error(const std::string& msg, std::size_t points)
        : std::runtime_error(msg), points_(points) {}
    std::size_t points() const noexcept { return points_; }

private:
    std::size_t points_;
};

/// Covariance matrix too far from positive semidefinite to factor within budget.
class conditioning_error : public std::runtime_error {
public:
    conditioning_error(const std::string& msg, double clamped_mass)
        : std::runtime_error(msg), clamped_mass_(clamped_mass) {}
    double clamped_mass() const noexcept { return clamped_mass_; }

private:
    double clamped_mass_;
};

namespace detail {

inline void require(bool ok, const char* what)
{
    if (!ok)
        throw cfas::invalid_argument(what);
}

} // namespace detail
} // namespace cfas
