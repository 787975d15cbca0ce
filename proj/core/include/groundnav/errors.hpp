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

#ifndef GROUNDNAV__ERRORS_HPP_
#define GROUNDNAV__ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace groundnav
{

/// Error categories. Each one maps onto a distinct process exit code in the
/// command-line tool.
enum class ErrorKind
{
  Config,     // bad flags, bad config file, bad pose index
  Data,       // malformed scene/dataset/transcript, invariant violations
  Geometry,   // invalid projection input, pose inside an object
  Transport,  // remote grounder unreachable or replied with an error
  Grounding,  // dialogue failed to resolve, unreachable target
};

class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, const std::string & what)
  : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept {return kind_;}

private:
  ErrorKind kind_;
};

class ConfigError : public Error
{
public:
  explicit ConfigError(const std::string & what)
  : Error(ErrorKind::Config, what) {}
};

class DataError : public Error
{
public:
  explicit DataError(const std::string & what)
  : Error(ErrorKind::Data, what) {}
};

class GeometryError : public Error
{
public:
  explicit GeometryError(const std::string & what)
  : Error(ErrorKind::Geometry, what) {}
};

class TransportError : public Error
{
public:
  explicit TransportError(const std::string & what)
  : Error(ErrorKind::Transport, what) {}
};

class GroundingError : public Error
{
public:
  explicit GroundingError(const std::string & what)
  : Error(ErrorKind::Grounding, what) {}
};

/// Raised when no collision-free route or approach cell exists.
class UnreachableError : public GroundingError
{
public:
  explicit UnreachableError(const std::string & what)
  : GroundingError(what) {}
};

}  // namespace groundnav

#endif  // GROUNDNAV__ERRORS_HPP_
