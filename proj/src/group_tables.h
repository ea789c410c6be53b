// Copyright 2026 The platonic-rb Authors
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

#ifndef PLATONIC_SRC_GROUP_TABLES_H
#define PLATONIC_SRC_GROUP_TABLES_H

#include <string_view>
#include <vector>

#include "platonic/groups.h"

namespace platonic::internal {

/// Decomposition table of a rotation group, one word per element, idle first.
const std::vector<std::string_view>& table_rows(GroupKind kind);

}  // namespace platonic::internal

#endif  // PLATONIC_SRC_GROUP_TABLES_H
