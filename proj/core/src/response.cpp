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

#include <array>
#include <cctype>
#include <regex>

#include "json.hpp"

#include "groundnav/remote.hpp"

namespace groundnav::grounding
{

namespace
{

constexpr std::array<const char *, 12> kOrdinals = {
  "first", "second", "third", "fourth", "fifth", "sixth",
  "seventh", "eighth", "ninth", "tenth", "eleventh", "twelfth"};

constexpr char kBase64Alphabet[] =
  "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

}  // namespace

std::optional<int> parse_ordinal(const std::string & word)
{
  std::string w;
  for (char c : word) {
    w += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  for (std::size_t i = 0; i < kOrdinals.size(); ++i) {
    if (w == kOrdinals[i]) {
      return static_cast<int>(i) + 1;
    }
  }
  static const std::regex numeric("^([0-9]{1,3})(st|nd|rd|th)?$");
  std::smatch m;
  if (std::regex_match(w, m, numeric)) {
    const int n = std::stoi(m[1].str());
    if (n >= 1) {
      return n;
    }
  }
  return std::nullopt;
}

std::string ordinal_word(int n)
{
  if (n >= 1 && n <= static_cast<int>(kOrdinals.size())) {
    return kOrdinals[static_cast<std::size_t>(n - 1)];
  }
  const int tens = n % 100;
  const char * suffix = "th";
  if (tens < 11 || tens > 13) {
    suffix = n % 10 == 1 ? "st" : n % 10 == 2 ? "nd" : n % 10 == 3 ? "rd" : "th";
  }
  return std::to_string(n) + suffix;
}

GrounderResponse parse_response(const std::string & text)
{
  static const std::regex clause(
    R"(([A-Za-z][A-Za-z0-9_\-]*[0-9])\s+in\s+the\s+([A-Za-z0-9]+)\s+(image|picture|photo|snapshot))",
    std::regex::icase);
  std::vector<Candidate> found;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), clause); it != std::sregex_iterator(); ++it) {
    const auto ordinal = parse_ordinal((*it)[2].str());
    if (!ordinal) {
      continue;
    }
    const std::string id = (*it)[1].str();
    const bool repeat = std::any_of(found.begin(), found.end(), [&](const Candidate & c) {
        return c.object_id == id;
      });
    if (!repeat) {
      found.push_back({id, *ordinal});
    }
  }
  return GrounderResponse::from(std::move(found), text);
}

std::string format_response(const GrounderResponse & response, const std::string & object_word)
{
  const auto & c = response.candidates;
  if (c.empty()) {
    return "I cannot find it.";
  }
  if (c.size() == 1) {
    return "The " + object_word + " is labeled as " + c.front().object_id + " in the " +
           ordinal_word(c.front().snapshot_index) + " image.";
  }
  std::string out = "It could be ";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0) {
      out += " or ";
    }
    out += c[i].object_id + " in the " + ordinal_word(c[i].snapshot_index) + " image";
  }
  return out + ".";
}

int Conversation::exchanges() const
{
  int n = 0;
  for (const auto & t : turns) {
    n += t.role == Role::Assistant ? 1 : 0;
  }
  return n;
}

std::string encode_request(const Conversation & conversation)
{
  nlohmann::ordered_json doc;
  doc["conversation_id"] = conversation.id;
  doc["system_instruction"] = conversation.system_instruction;
  doc["turns"] = nlohmann::ordered_json::array();
  for (const auto & t : conversation.turns) {
    nlohmann::ordered_json turn;
    turn["role"] = t.role == Role::User ? "user" : "assistant";
    turn["text"] = t.text;
    turn["images"] = nlohmann::ordered_json::array();
    for (const auto & img : t.images) {
      turn["images"].push_back({{"name", img.name}, {"encoding", img.encoding}, {"data", img.data}});
    }
    doc["turns"].push_back(std::move(turn));
  }
  return doc.dump();
}

Conversation decode_request(const std::string & body)
{
  try {
    const auto doc = nlohmann::json::parse(body);
    Conversation c;
    c.id = doc.at("conversation_id").get<std::string>();
    c.system_instruction = doc.at("system_instruction").get<std::string>();
    for (const auto & t : doc.at("turns")) {
      ConversationTurn turn;
      const auto role = t.at("role").get<std::string>();
      if (role != "user" && role != "assistant") {
        throw DataError("unknown role '" + role + "'");
      }
      turn.role = role == "user" ? Role::User : Role::Assistant;
      turn.text = t.at("text").get<std::string>();
      if (t.contains("images")) {
        for (const auto & img : t.at("images")) {
          turn.images.push_back({
              img.at("name").get<std::string>(), img.at("encoding").get<std::string>(),
              img.at("data").get<std::string>()});
        }
      }
      c.turns.push_back(std::move(turn));
    }
    return c;
  } catch (const nlohmann::json::exception & e) {
    throw DataError(std::string("malformed grounding request: ") + e.what());
  }
}

std::string encode_reply(const std::string & text)
{
  return nlohmann::json{{"text", text}}.dump();
}

std::string encode_error(const std::string & message)
{
  return nlohmann::json{{"error", message}}.dump();
}

std::string decode_reply(const std::string & body)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception & e) {
    throw TransportError(std::string("malformed grounder reply: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("text") || !doc.at("text").is_string()) {
    throw TransportError("grounder reply has no 'text' field");
  }
  return doc.at("text").get<std::string>();
}

std::string base64_encode(const std::string & bytes)
{
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const unsigned v = (static_cast<unsigned char>(bytes[i]) << 16) |
      (static_cast<unsigned char>(bytes[i + 1]) << 8) | static_cast<unsigned char>(bytes[i + 2]);
    out += kBase64Alphabet[(v >> 18) & 63];
    out += kBase64Alphabet[(v >> 12) & 63];
    out += kBase64Alphabet[(v >> 6) & 63];
    out += kBase64Alphabet[v & 63];
  }
  if (i < bytes.size()) {
    unsigned v = static_cast<unsigned char>(bytes[i]) << 16;
    if (i + 1 < bytes.size()) {
      v |= static_cast<unsigned char>(bytes[i + 1]) << 8;
    }
    out += kBase64Alphabet[(v >> 18) & 63];
    out += kBase64Alphabet[(v >> 12) & 63];
    out += i + 1 < bytes.size() ? kBase64Alphabet[(v >> 6) & 63] : '=';
    out += '=';
  }
  return out;
}

std::string base64_decode(const std::string & text)
{
  std::array<int, 256> value;
  value.fill(-1);
  for (int i = 0; i < 64; ++i) {
    value[static_cast<unsigned char>(kBase64Alphabet[i])] = i;
  }
  std::string out;
  unsigned acc = 0;
  int bits = 0;
  for (char c : text) {
    if (c == '=') {
      break;
    }
    const int v = value[static_cast<unsigned char>(c)];
    if (v < 0) {
      throw DataError("invalid base64 character");
    }
    acc = (acc << 6) | static_cast<unsigned>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out += static_cast<char>((acc >> bits) & 0xFF);
    }
  }
  return out;
}

std::vector<ImagePayload> encode_snapshots(const Perception & perception)
{
  std::vector<ImagePayload> out;
  for (std::size_t i = 0; i < perception.snapshots.size(); ++i) {
    const auto & snap = perception.snapshots[i];
    const std::string ppm = sensing::render_ppm(snap, perception.annotated.at(i));
    out.push_back({"snapshot_" + std::to_string(snap.index) + ".ppm", "base64-p6", base64_encode(ppm)});
  }
  return out;
}

std::string system_instruction(int omega)
{
  const std::string frames = std::to_string(omega);
  return
    "You are the navigation assistant of an indoor service robot. The robot has turned a full "
    "circle in place and taken " + frames + " photos, attached in order as the first to the " +
    ordinal_word(omega) + " image. Each detected object is outlined by a red bounding box with a "
    "red tag on top showing its unique ID: the object type followed by a number, e.g. chair7. "
    "The user will describe the object the robot should go to, possibly over several messages, "
    "each adding detail. After every message, answer with exactly one sentence in the form "
    "\"The <object> is labeled as <object's ID> in the <which> image.\" when a single object "
    "matches. If several objects still match, list all of them as \"It could be <ID> in the "
    "<which> image or <ID> in the <which> image.\" If nothing matches, answer \"I cannot find it.\"";
}

}  // namespace groundnav::grounding
