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

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "groundnav/remote.hpp"

namespace groundnav::grounding
{

CannedTransport::CannedTransport(std::vector<CannedExchange> script)
: script_(std::move(script))
{
}

std::string CannedTransport::exchange(const Conversation & conversation)
{
  if (next_ >= script_.size()) {
    throw TransportError("canned transcript exhausted after " + std::to_string(next_) + " exchanges");
  }
  std::string latest;
  for (auto it = conversation.turns.rbegin(); it != conversation.turns.rend(); ++it) {
    if (it->role == Role::User) {
      latest = it->text;
      break;
    }
  }
  const CannedExchange & step = script_[next_];
  if (latest.find(step.expect_text_substring) == std::string::npos) {
    throw TransportError(
            "canned transcript exchange " + std::to_string(next_ + 1) + " expected text containing '" +
            step.expect_text_substring + "', got '" + latest + "'");
  }
  ++next_;
  return step.reply_text;
}

std::vector<CannedExchange> parse_transcript(const std::string & text)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception & e) {
    throw DataError(std::string("malformed transcript: ") + e.what());
  }
  const nlohmann::json & list = doc.is_object() && doc.contains("exchanges") ? doc.at("exchanges") : doc;
  if (!list.is_array()) {
    throw DataError("transcript must be a list of {expect_text_substring, reply_text}");
  }
  std::vector<CannedExchange> out;
  for (const auto & e : list) {
    if (!e.is_object() || !e.contains("expect_text_substring") || !e.contains("reply_text") ||
      !e.at("expect_text_substring").is_string() || !e.at("reply_text").is_string())
    {
      throw DataError("transcript entry " + std::to_string(out.size()) +
                      " needs string fields expect_text_substring and reply_text");
    }
    out.push_back({e.at("expect_text_substring").get<std::string>(), e.at("reply_text").get<std::string>()});
  }
  return out;
}

std::vector<CannedExchange> load_transcript(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open transcript '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_transcript(buffer.str());
}

GrounderResponse ground_step_remote(
  Conversation & conversation, const DialogueTurn & turn,
  const std::vector<ImagePayload> & images, Transport & transport, int max_exchanges)
{
  if (conversation.exchanges() >= max_exchanges) {
    throw GroundingError(
            "conversation '" + conversation.id + "' reached its limit of " +
            std::to_string(max_exchanges) + " exchanges");
  }
  Conversation next = conversation;
  ConversationTurn user{Role::User, turn.text, {}};
  if (conversation.turns.empty()) {
    user.images = images;
  }
  next.turns.push_back(std::move(user));
  const std::string reply = transport.exchange(next);
  next.turns.push_back({Role::Assistant, reply, {}});
  conversation = std::move(next);
  return parse_response(reply);
}

RemoteGrounder::RemoteGrounder(Transport & transport, int max_exchanges)
: transport_(transport), max_exchanges_(max_exchanges)
{
}

void RemoteGrounder::begin(const GroundingContext & context)
{
  ++started_;
  conversation_ = {};
  conversation_.id = next_id_.empty() ? "conversation-" + std::to_string(started_) : next_id_;
  next_id_.clear();
  conversation_.system_instruction =
    system_instruction(static_cast<int>(context.perception->snapshots.size()));
  images_ = encode_snapshots(*context.perception);
}

GrounderResponse RemoteGrounder::step(const DialogueTurn & turn)
{
  return ground_step_remote(conversation_, turn, images_, transport_, max_exchanges_);
}

}  // namespace groundnav::grounding
