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

#include "alignvq/error.hpp"

namespace alignvq {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyText: return "EmptyText";
    case ErrorCode::kBadLabel: return "BadLabel";
    case ErrorCode::kPrecondition: return "PreconditionViolation";
    case ErrorCode::kBackendUnavailable: return "BackendUnavailable";
    case ErrorCode::kImageUnreadable: return "ImageUnreadable";
    case ErrorCode::kInvalidResponse: return "InvalidResponse";
    case ErrorCode::kNoQuestions: return "NoQuestions";
    case ErrorCode::kEmptyBreakdown: return "EmptyBreakdown";
    case ErrorCode::kDegenerateProbabilities: return "DegenerateProbabilities";
    case ErrorCode::kPairMismatch: return "PairMismatch";
    case ErrorCode::kNoValidCandidates: return "NoValidCandidates";
    case ErrorCode::kSingleClass: return "SingleClass";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kDegenerateAgreement: return "DegenerateAgreement";
    case ErrorCode::kFewerThanTwoModels: return "FewerThanTwoModels";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kBadLabelValue: return "BadLabelValue";
    case ErrorCode::kCacheCorrupt: return "CacheCorrupt";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace alignvq
