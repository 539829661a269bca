// Copyright 2026 The qectg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QECTG_QECTG_HPP
#define QECTG_QECTG_HPP

#include "blossom.hpp"
#include "code_model.hpp"
#include "dataset.hpp"
#include "harness.hpp"
#include "matching.hpp"
#include "mlp.hpp"
#include "noise.hpp"
#include "simple_decoder.hpp"
#include "stats.hpp"
#include "tiles.hpp"

#endif  // QECTG_QECTG_HPP
