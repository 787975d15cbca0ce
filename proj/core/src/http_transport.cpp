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

#include "httplib.h"
#include "json.hpp"

#include "groundnav/remote.hpp"

namespace groundnav::grounding
{

HttpTransport::HttpTransport(HttpOptions options)
: options_(std::move(options))
{
}

std::string HttpTransport::exchange(const Conversation & conversation)
{
  httplib::Client client(options_.endpoint);
  if (!client.is_valid()) {
    throw TransportError("invalid grounder endpoint '" + options_.endpoint + "'");
  }
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);
  client.set_write_timeout(options_.timeout);

  httplib::Headers headers;
  if (options_.api_key) {
    headers.emplace("Authorization", "Bearer " + *options_.api_key);
  }
  const auto res = client.Post(options_.path, headers, encode_request(conversation), "application/json");
  if (!res) {
    throw TransportError(
            "grounder request to " + options_.endpoint + options_.path + " failed: " +
            httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    std::string detail = res->body;
    try {
      const auto doc = nlohmann::json::parse(res->body);
      if (doc.contains("error") && doc.at("error").is_string()) {
        detail = doc.at("error").get<std::string>();
      }
    } catch (const std::exception &) {
    }
    throw TransportError("grounder returned HTTP " + std::to_string(res->status) + ": " + detail);
  }
  return decode_reply(res->body);
}

}  // namespace groundnav::grounding
