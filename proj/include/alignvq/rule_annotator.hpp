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

// Deterministic lexicon-and-rules annotator for short English captions.
//
// It is the mock backend's default linguistic annotator so the whole
// pipeline runs without a statistical parser. Coverage targets caption-style
// text: determiners, numerals, colour/size adjectives, prepositional
// phrases and simple subject-verb-object clauses. A real parser plugged in
// through the remote backend supersedes it.

#ifndef ALIGNVQ_RULE_ANNOTATOR_HPP_
#define ALIGNVQ_RULE_ANNOTATOR_HPP_

#include <string_view>

#include "alignvq/backend.hpp"

namespace alignvq {

Annotation rule_annotate(std::string_view text);

}  // namespace alignvq

#endif  // ALIGNVQ_RULE_ANNOTATOR_HPP_
