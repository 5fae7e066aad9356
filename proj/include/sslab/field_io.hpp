// Copyright (c) 2026 The sslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SSLAB_FIELD_IO_HPP
#define SSLAB_FIELD_IO_HPP

#include <string>

#include "sslab/field.hpp"

namespace sslab {

/// Writes base + ".json" (manifest {m, n, U, Nu, Nv, Lmax, coord}) and one
/// base + "_sector<l>.csv" per populated sector. CSV rows follow the u index,
/// columns the v index, each cell "re,im" with 17 significant digits; cells
/// are space-separated. Round-trips exactly.
void write_field(const DiscreteField& f, const std::string& base);

/// Reads a field written by write_field, given the same base path.
DiscreteField read_field(const std::string& base);

}  // namespace sslab

#endif  // SSLAB_FIELD_IO_HPP
