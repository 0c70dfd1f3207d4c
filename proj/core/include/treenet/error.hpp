/*
 * Copyright 2026 The treenet Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TREENET_ERROR_HPP_
#define TREENET_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace treenet {

// Input outside the mathematical domain of an operation (point outside the
// unit cube, p outside (1/2, 1], k < k*, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or inconsistent data: bad CSV rows, schema mismatches, empty
// training sets.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive enumeration would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget)
      : std::runtime_error("enumeration budget exceeded: " +
                           std::to_string(required) + " candidates > budget " +
                           std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

}  // namespace treenet

#endif  // TREENET_ERROR_HPP_
