// Copyright 2026 The ckge Authors. All Rights Reserved.
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

#ifndef CKGE_CHECKPOINT_H_
#define CKGE_CHECKPOINT_H_

#include <filesystem>
#include <iosfwd>

#include "ckge/model.h"

namespace ckge {

// Checkpoint layout, all integers and floats little-endian:
//
//   offset  size  field
//   0       8     magic "CKGEPRM1"
//   8       4     u32 model kind (0 TransE, 1 RotatE, 2 DistMult)
//   12      4     u32 reserved, 0
//   16      8     u64 number of entities
//   24      8     u64 number of relations
//   32      8     u64 dimension d
//   40      8     f64 gamma
//   48      8     u64 seed
//   56      ...   f64 entity table, row-major, |E| x d (RotatE: |E| x 2d)
//   ...     ...   f64 relation table, row-major, |R| x d
inline constexpr char kCheckpointMagic[8] = {'C', 'K', 'G', 'E',
                                             'P', 'R', 'M', '1'};

void WriteCheckpoint(const ModelParams& params, std::ostream& out);
ModelParams ReadCheckpoint(std::istream& in);

void SaveCheckpoint(const ModelParams& params,
                    const std::filesystem::path& path);
ModelParams LoadCheckpoint(const std::filesystem::path& path);

}  // namespace ckge

#endif  // CKGE_CHECKPOINT_H_
