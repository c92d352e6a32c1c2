// Copyright 2026 The IFE Authors
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

#ifndef IFE_ERRORS_HPP
#define IFE_ERRORS_HPP

#include <stdexcept>

namespace ife {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operator required to be Hermitian is not, beyond tolerance.
class NotHermitianError : public Error {
 public:
  using Error::Error;
};

/// A state vector or density matrix violates normalization, trace or positivity.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

/// Spin-star parameters with omega0 == omega, where the analytic construction does not apply.
class ResonanceError : public Error {
 public:
  using Error::Error;
};

/// An observable does not commute with its free Hamiltonian.
class FreeInvarianceError : public Error {
 public:
  using Error::Error;
};

/// A decomposition did not converge or produced non-finite values.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ife

#endif  // IFE_ERRORS_HPP
