// Copyright 2026 The AlignVQ Authors.
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

#ifndef ALIGNVQ_SCORER_HPP_
#define ALIGNVQ_SCORER_HPP_

#include <string>

#include "alignvq/types.hpp"

namespace alignvq {

/// Anything that maps a validated text-image pair to an alignment score.
/// Implementations must be safe to call concurrently.
class AlignmentScorer {
 public:
  virtual ~AlignmentScorer() = default;

  virtual std::string scorer_id() const = 0;

  /// Digest of everything besides the inputs that determines the score
  /// (configuration and backend fingerprint).
  virtual std::string config_digest() const = 0;

  virtual AlignmentResult score(const TextImagePair& pair) = 0;
};

}  // namespace alignvq

#endif  // ALIGNVQ_SCORER_HPP_
