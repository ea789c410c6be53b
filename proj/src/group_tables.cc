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

#include "group_tables.h"

namespace platonic::internal {

namespace {

// Rows are physical gates in time order, first applied first.

const std::vector<std::string_view> kTetrahedralRows = {
    // Paulis, pi
    "I",
    "Xpi",
    "Ypi",
    "Ypi Xpi",
    // 2pi/3
    "Xpi/2 Ypi/2",
    "Xpi/2 Y-pi/2",
    "X-pi/2 Ypi/2",
    "X-pi/2 Y-pi/2",
    "Ypi/2 Xpi/2",
    "Ypi/2 X-pi/2",
    "Y-pi/2 Xpi/2",
    "Y-pi/2 X-pi/2",
};

const std::vector<std::string_view> kOctahedralRows = {
    // Paulis, pi
    "I",
    "Xpi",
    "Ypi",
    "Ypi Xpi",
    // 2pi/3
    "Xpi/2 Ypi/2",
    "Xpi/2 Y-pi/2",
    "X-pi/2 Ypi/2",
    "X-pi/2 Y-pi/2",
    "Ypi/2 Xpi/2",
    "Ypi/2 X-pi/2",
    "Y-pi/2 Xpi/2",
    "Y-pi/2 X-pi/2",
    // pi/2
    "Xpi/2",
    "X-pi/2",
    "Ypi/2",
    "Y-pi/2",
    "X-pi/2 Ypi/2 Xpi/2",
    "X-pi/2 Y-pi/2 Xpi/2",
    // Hadamard-like, pi
    "Xpi Ypi/2",
    "Xpi Y-pi/2",
    "Ypi Xpi/2",
    "Ypi X-pi/2",
    "Xpi/2 Ypi/2 Xpi/2",
    "X-pi/2 Ypi/2 X-pi/2",
};

// Vertices (2pi/5, 4pi/5), faces (2pi/3), edges (pi), after the idle.
const std::vector<std::string_view> kIcosahedralRows = {
    "I",
    "Yphi X2pi/5 Y-phi",
    "Yphi X-2pi/5 Y-phi",
    "Y-phi X2pi/5 Yphi",
    "Y-phi X-2pi/5 Yphi",
    "Zphi Y2pi/5 Z-phi",
    "Zphi Y-2pi/5 Z-phi",
    "Z-phi Y2pi/5 Zphi",
    "Z-phi Y-2pi/5 Zphi",
    "Xphi Z2pi/5 X-phi",
    "Xphi Z-2pi/5 X-phi",
    "X-phi Z2pi/5 Xphi",
    "X-phi Z-2pi/5 Xphi",
    "Yphi X4pi/5 Y-phi",
    "Yphi X-4pi/5 Y-phi",
    "Y-phi X4pi/5 Yphi",
    "Y-phi X-4pi/5 Yphi",
    "Zphi Y4pi/5 Z-phi",
    "Zphi Y-4pi/5 Z-phi",
    "Z-phi Y4pi/5 Zphi",
    "Z-phi Y-4pi/5 Zphi",
    "Xphi Z4pi/5 X-phi",
    "Xphi Z-4pi/5 X-phi",
    "X-phi Z4pi/5 Xphi",
    "X-phi Z-4pi/5 Xphi",
    "X-pi/2 Y-pi/2",
    "Ypi/2 Xpi/2",
    "Xphi Z-2pi/5 X-phi X-pi/2 Y-pi/2 Xphi Z2pi/5 X-phi",
    "Xphi Z-2pi/5 X-phi Ypi/2 Xpi/2 Xphi Z2pi/5 X-phi",
    "Xphi Z-4pi/5 X-phi X-pi/2 Y-pi/2 Xphi Z4pi/5 X-phi",
    "Xphi Z-4pi/5 X-phi Ypi/2 Xpi/2 Xphi Z4pi/5 X-phi",
    "X-pi/2 Ypi/2",
    "Y-pi/2 Xpi/2",
    "Xphi Z2pi/5 X-phi X-pi/2 Y-pi/2 Xphi Z-2pi/5 X-phi",
    "Xphi Z2pi/5 X-phi Ypi/2 Xpi/2 Xphi Z-2pi/5 X-phi",
    "Xpi/2 Ypi/2",
    "Y-pi/2 X-pi/2",
    "Xphi Z-4pi/5 X-phi Xpi/2 Ypi/2 Xphi Z4pi/5 X-phi",
    "Xphi Z-4pi/5 X-phi Y-pi/2 X-pi/2 Xphi Z4pi/5 X-phi",
    "Xphi Z4pi/5 X-phi Xpi/2 Ypi/2 Xphi Z-4pi/5 X-phi",
    "Xphi Z4pi/5 X-phi Y-pi/2 X-pi/2 Xphi Z-4pi/5 X-phi",
    "Xphi Z2pi/5 X-phi Xpi/2 Ypi/2 Xphi Z-2pi/5 X-phi",
    "Xphi Z2pi/5 X-phi Y-pi/2 X-pi/2 Xphi Z-2pi/5 X-phi",
    "Xpi/2 Y-pi/2",
    "Ypi/2 X-pi/2",
    "Xpi",
    "Xphi Z2pi/5 Xpi Z-2pi/5 X-phi",
    "Xphi Z-2pi/5 Xpi Z2pi/5 X-phi",
    "Xphi Z4pi/5 Xpi Z-4pi/5 X-phi",
    "Xphi Z-4pi/5 Xpi Z4pi/5 X-phi",
    "Ypi",
    "Xphi Z2pi/5 Ypi X2phi Z-2pi/5 X-phi",
    "Xphi Z-2pi/5 Ypi X2phi Z2pi/5 X-phi",
    "Xphi Z4pi/5 Ypi X2phi Z-4pi/5 X-phi",
    "Xphi Z-4pi/5 Ypi X2phi Z4pi/5 X-phi",
    "Zpi",
    "Xphi Z2pi/5 Zpi X2phi Z-2pi/5 X-phi",
    "Xphi Z-2pi/5 Zpi X2phi Z2pi/5 X-phi",
    "Xphi Z4pi/5 Zpi X2phi Z-4pi/5 X-phi",
    "Xphi Z-4pi/5 Zpi X2phi Z4pi/5 X-phi",
};

}  // namespace

const std::vector<std::string_view>& table_rows(GroupKind kind) {
  switch (kind) {
    case GroupKind::kTetrahedral:
      return kTetrahedralRows;
    case GroupKind::kOctahedral:
      return kOctahedralRows;
    case GroupKind::kIcosahedral:
      break;
  }
  return kIcosahedralRows;
}

}  // namespace platonic::internal
