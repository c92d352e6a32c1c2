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

#ifndef IFE_IFE_HPP
#define IFE_IFE_HPP

#include "ife/dynamics.hpp"
#include "ife/errors.hpp"
#include "ife/mixed_states.hpp"
#include "ife/operator_algebra.hpp"
#include "ife/pure_states.hpp"
#include "ife/spin_star.hpp"

#endif  // IFE_IFE_HPP
