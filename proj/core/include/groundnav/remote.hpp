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

#ifndef GROUNDNAV__REMOTE_HPP_
#define GROUNDNAV__REMOTE_HPP_

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "groundnav/grounding.hpp"

namespace groundnav::grounding
{

// --- Reply format -----------------------------------------------------------

/// Parses a grounder reply. Recognises every "<id> in the <ordinal> image"
/// clause, so both the single-object sentence
///   "The chair is labeled as chair7 in the fourth image."
/// and "or"-joined lists of such clauses are accepted. Ordinals may be words
/// ("first" .. "twelfth") or digits ("4", "4th"). Anything else is not_found
/// with the raw text kept. Never throws.
GrounderResponse parse_response(const std::string & text);

/// Renders a response back into the reply sentence format.
std::string format_response(const GrounderResponse & response, const std::string & object_word);

std::optional<int> parse_ordinal(const std::string & word);
std::string ordinal_word(int n);

// --- Wire protocol ----------------------------------------------------------

enum class Role {User, Assistant};

struct ImagePayload
{
  std::string name;
  std::string encoding = "base64-p6";
  std::string data;
};

struct ConversationTurn
{
  Role role = Role::User;
  std::string text;
  std::vector<ImagePayload> images;
};

struct Conversation
{
  std::string id;
  std::string system_instruction;
  std::vector<ConversationTurn> turns;

  int exchanges() const;  // completed user/assistant pairs
};

/// Body of POST /v1/ground.
std::string encode_request(const Conversation & conversation);
/// Throws DataError on a malformed body.
Conversation decode_request(const std::string & body);

/// `{"text": ...}` success body and `{"error": ...}` failure body.
std::string encode_reply(const std::string & text);
std::string encode_error(const std::string & message);
/// Throws TransportError on a malformed body.
std::string decode_reply(const std::string & body);

std::string base64_encode(const std::string & bytes);
std::string base64_decode(const std::string & text);

/// Annotated panorama frames as protocol images, in snapshot order.
std::vector<ImagePayload> encode_snapshots(const Perception & perception);

inline constexpr const char * kInstructionTemplateVersion = "2";

/// System instruction sent before the first dialogue. Fills the template slots
/// for the frame count, the id tag convention and the reply format.
std::string system_instruction(int omega);

// --- Transports -------------------------------------------------------------

/// Sends the whole conversation and returns the assistant's reply text.
/// Throws TransportError on any failure.
class Transport
{
public:
  virtual ~Transport() = default;
  virtual std::string exchange(const Conversation & conversation) = 0;
};

struct HttpOptions
{
  std::string endpoint = "http://127.0.0.1:8080";  // scheme://host[:port]
  std::string path = "/v1/ground";
  std::optional<std::string> api_key;  // sent as a bearer token
  std::chrono::milliseconds timeout{30000};
};

/// Environment variable holding the bearer credential for the remote grounder.
inline constexpr const char * kApiKeyEnv = "GROUNDNAV_API_KEY";

class HttpTransport : public Transport
{
public:
  explicit HttpTransport(HttpOptions options);
  std::string exchange(const Conversation & conversation) override;

private:
  HttpOptions options_;
};

struct CannedExchange
{
  std::string expect_text_substring;
  std::string reply_text;
};

/// Offline replay of a recorded transcript. Each exchange checks that the
/// newest user text contains the expected substring and returns the recorded
/// reply. A mismatch or an exhausted transcript is a transport failure.
class CannedTransport : public Transport
{
public:
  explicit CannedTransport(std::vector<CannedExchange> script);
  std::string exchange(const Conversation & conversation) override;

  std::size_t consumed() const {return next_;}
  std::size_t size() const {return script_.size();}

private:
  std::vector<CannedExchange> script_;
  std::size_t next_ = 0;
};

std::vector<CannedExchange> parse_transcript(const std::string & text);
std::vector<CannedExchange> load_transcript(const std::string & path);

// --- Remote grounder --------------------------------------------------------

/// One remote exchange. The first exchange of a conversation carries the
/// images; later ones carry only the turn text. The conversation is left
/// untouched when the exchange fails. Throws GroundingError once
/// `max_exchanges` exchanges have been made.
GrounderResponse ground_step_remote(
  Conversation & conversation, const DialogueTurn & turn,
  const std::vector<ImagePayload> & images, Transport & transport, int max_exchanges);

class RemoteGrounder : public Grounder
{
public:
  RemoteGrounder(Transport & transport, int max_exchanges = 10);

  /// Next conversation id. Defaults to "conversation-<n>".
  void set_conversation_id(std::string id) {next_id_ = std::move(id);}

  void begin(const GroundingContext & context) override;
  GrounderResponse step(const DialogueTurn & turn) override;

  const Conversation & conversation() const {return conversation_;}

private:
  Transport & transport_;
  int max_exchanges_;
  int started_ = 0;
  std::string next_id_;
  Conversation conversation_;
  std::vector<ImagePayload> images_;
};

}  // namespace groundnav::grounding

#endif  // GROUNDNAV__REMOTE_HPP_
