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

#include "alignvq/backend.hpp"
#include "alignvq/mock_backend.hpp"
#include "alignvq/remote_backend.hpp"

namespace alignvq {

std::shared_ptr<ModelBackend> make_backend(const BackendConfig& config) {
  config.validate();
  if (config.endpoint) return std::make_shared<RemoteBackend>(config);
  FixtureTable fixtures;
  if (config.fixture_path) fixtures = FixtureTable::load(*config.fixture_path);
  return std::make_shared<MockBackend>(std::move(fixtures), config);
}

}  // namespace alignvq
