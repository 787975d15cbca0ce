// Copyright 2026 The GroundNav Authors
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

#include "groundnav/mission.hpp"

namespace groundnav::mission
{

void Scheduler::submit(Mission mission)
{
  const std::lock_guard lock(mutex_);
  if (mission.immediate()) {
    immediate_.push_back(std::move(mission));
  } else {
    const double t = mission.scheduled_time;
    scheduled_.emplace(std::make_pair(t, sequence_++), std::move(mission));
  }
}

std::optional<Mission> Scheduler::next_due(double now)
{
  const std::lock_guard lock(mutex_);
  if (!immediate_.empty()) {
    Mission m = std::move(immediate_.front());
    immediate_.pop_front();
    return m;
  }
  if (!scheduled_.empty() && scheduled_.begin()->first.first <= now) {
    Mission m = std::move(scheduled_.begin()->second);
    scheduled_.erase(scheduled_.begin());
    return m;
  }
  return std::nullopt;
}

std::size_t Scheduler::size() const
{
  const std::lock_guard lock(mutex_);
  return immediate_.size() + scheduled_.size();
}

}  // namespace groundnav::mission
