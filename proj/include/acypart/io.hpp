// Copyright 2026 The acypart Authors
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

// Text formats.
//
// Graph file:
//   p adag <n> <m>
//   v <weight>          n lines, vertex ids 0..n-1 in order
//   e <u> <v> <cost>    m lines
// Lines starting with '%' are comments and may appear anywhere.
//
// Partition file: optional leading '%' comment lines, then one part id per
// line for vertices 0..n-1.

#pragma once

#include <string>
#include <string_view>

#include "acypart/dag.hpp"
#include "acypart/partition.hpp"

namespace acypart {

/// Syntax and count checks only; throws ParseError with the line number.
RawGraph parse_dag_text(std::string_view text);
/// parse_dag_text followed by DAG validation (DagError).
Dag read_dag_text(std::string_view text);
std::string write_dag_text(const Dag& g);

/// `k == 0` infers k as the largest id + 1. Throws ParseError when the
/// number of ids differs from `num_vertices` or an id is outside [0, k).
Partition parse_partition_text(std::string_view text, std::size_t num_vertices, PartId k = 0);
std::string write_partition_text(const Partition& p);

/// Whole file as a string; throws Error when it cannot be read.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace acypart
