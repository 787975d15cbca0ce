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

#include <gtest/gtest.h>

#include <random>

#include "json.hpp"

#include "groundnav/errors.hpp"
#include "groundnav/remote.hpp"
#include "test_support.hpp"

namespace groundnav::grounding
{
namespace
{

using groundnav::testing::box;
using groundnav::testing::empty_scene;

TEST(ParseResponse, SingleObjectSentence)
{
  const auto r = parse_response("The chair is labeled as chair7 in the fourth image.");
  EXPECT_EQ(r.status, GroundingStatus::Resolved);
  ASSERT_EQ(r.candidates.size(), 1u);
  EXPECT_EQ(r.candidates[0], (Candidate{"chair7", 4}));
  EXPECT_EQ(r.raw_text, std::optional<std::string>("The chair is labeled as chair7 in the fourth image."));
}

TEST(ParseResponse, OrJoinedClausesAreAmbiguous)
{
  const auto r = parse_response("It could be chair2 in the first image or chair5 in the second image.");
  EXPECT_EQ(r.status, GroundingStatus::Ambiguous);
  ASSERT_EQ(r.candidates.size(), 2u);
  EXPECT_EQ(r.candidates[0], (Candidate{"chair2", 1}));
  EXPECT_EQ(r.candidates[1], (Candidate{"chair5", 2}));
}

TEST(ParseResponse, UnparseableIsNotFoundWithRawText)
{
  const auto r = parse_response("I cannot find it.");
  EXPECT_EQ(r.status, GroundingStatus::NotFound);
  EXPECT_TRUE(r.candidates.empty());
  EXPECT_EQ(r.raw_text, std::optional<std::string>("I cannot find it."));
  EXPECT_EQ(parse_response("").status, GroundingStatus::NotFound);
  EXPECT_EQ(parse_response("chair7 in the umpteenth image").status, GroundingStatus::NotFound);
}

TEST(ParseResponse, DigitsCaseAndRepeats)
{
  EXPECT_EQ(parse_response("THE CHAIR IS LABELED AS chair7 IN THE FOURTH IMAGE").candidates.at(0),
    (Candidate{"chair7", 4}));
  EXPECT_EQ(parse_response("table3 in the 2nd image").candidates.at(0), (Candidate{"table3", 2}));
  EXPECT_EQ(parse_response("table3 in the 6 image").candidates.at(0), (Candidate{"table3", 6}));
  const auto r = parse_response("chair1 in the first image, or again chair1 in the third image");
  ASSERT_EQ(r.candidates.size(), 1u);
  EXPECT_EQ(r.candidates[0].snapshot_index, 1);
}

TEST(ParseResponse, NeverThrowsOnRandomText)
{
  std::mt19937_64 rng(3);
  const std::string alphabet = "abc xyz chair1 in the first image 0123456789.,\n\t\"";
  for (int i = 0; i < 500; ++i) {
    std::string s;
    const std::size_t n = rng() % 80;
    for (std::size_t j = 0; j < n; ++j) {
      s += alphabet[rng() % alphabet.size()];
    }
    EXPECT_NO_THROW(parse_response(s));
  }
}

TEST(FormatResponse, RoundTripsIdAndOrdinal)
{
  for (int n = 1; n <= 8; ++n) {
    const auto r = GrounderResponse::from({{"chair" + std::to_string(n * 3), n}});
    const auto back = parse_response(format_response(r, "chair"));
    EXPECT_EQ(back.candidates, r.candidates) << n;
  }
  const auto many = GrounderResponse::from({{"chair2", 1}, {"chair5", 2}, {"desk1", 8}});
  EXPECT_EQ(parse_response(format_response(many, "chair")).candidates, many.candidates);
  EXPECT_EQ(parse_response(format_response(GrounderResponse::from({}), "chair")).status,
    GroundingStatus::NotFound);
}

TEST(Ordinal, WordsAndDigits)
{
  const std::vector<std::string> words{
    "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth"};
  for (std::size_t i = 0; i < words.size(); ++i) {
    EXPECT_EQ(parse_ordinal(words[i]), std::optional<int>(static_cast<int>(i) + 1));
    EXPECT_EQ(ordinal_word(static_cast<int>(i) + 1), words[i]);
  }
  EXPECT_EQ(parse_ordinal("Fourth"), std::optional<int>(4));
  EXPECT_EQ(parse_ordinal("21st"), std::optional<int>(21));
  EXPECT_EQ(ordinal_word(13), "13th");
  EXPECT_EQ(ordinal_word(22), "22nd");
  EXPECT_FALSE(parse_ordinal("zeroth").has_value());
  EXPECT_FALSE(parse_ordinal("0").has_value());
}

TEST(Base64, KnownVectors)
{
  const std::vector<std::pair<std::string, std::string>> vectors{
    {"", ""}, {"f", "Zg=="}, {"fo", "Zm8="}, {"foo", "Zm9v"},
    {"foob", "Zm9vYg=="}, {"fooba", "Zm9vYmE="}, {"foobar", "Zm9vYmFy"}};
  for (const auto & [plain, encoded] : vectors) {
    EXPECT_EQ(base64_encode(plain), encoded);
    EXPECT_EQ(base64_decode(encoded), plain);
  }
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    std::string bytes(rng() % 64, '\0');
    for (char & c : bytes) {
      c = static_cast<char>(rng() & 0xFF);
    }
    EXPECT_EQ(base64_decode(base64_encode(bytes)), bytes);
  }
  EXPECT_THROW(base64_decode("Zm9v!"), DataError);
}

Conversation sample_conversation()
{
  Conversation c;
  c.id = "conv-1";
  c.system_instruction = system_instruction(8);
  c.turns.push_back({Role::User, "Please go to the chair.", {{"snapshot_1.ppm", "base64-p6", "UDYK"}}});
  c.turns.push_back({Role::Assistant, "It could be chair1 in the first image or chair2 in the second image.", {}});
  c.turns.push_back({Role::User, "a low chair", {}});
  return c;
}

TEST(WireProtocol, RequestShapeAndRoundTrip)
{
  const Conversation c = sample_conversation();
  const std::string body = encode_request(c);
  const auto doc = nlohmann::json::parse(body);
  EXPECT_EQ(doc.at("conversation_id"), "conv-1");
  EXPECT_EQ(doc.at("system_instruction"), c.system_instruction);
  ASSERT_EQ(doc.at("turns").size(), 3u);
  EXPECT_EQ(doc.at("turns")[0].at("role"), "user");
  EXPECT_EQ(doc.at("turns")[1].at("role"), "assistant");
  const auto & img = doc.at("turns")[0].at("images")[0];
  EXPECT_EQ(img.at("name"), "snapshot_1.ppm");
  EXPECT_EQ(img.at("encoding"), "base64-p6");
  EXPECT_EQ(img.at("data"), "UDYK");

  const Conversation back = decode_request(body);
  EXPECT_EQ(back.id, c.id);
  ASSERT_EQ(back.turns.size(), 3u);
  EXPECT_EQ(back.turns[2].text, "a low chair");
  EXPECT_EQ(back.turns[0].images.at(0).data, "UDYK");
  EXPECT_EQ(back.exchanges(), 1);
  EXPECT_EQ(encode_request(back), body);

  EXPECT_THROW(decode_request("{"), DataError);
  EXPECT_THROW(decode_request(R"({"conversation_id":"x","system_instruction":"","turns":[{"role":"robot","text":""}]})"),
    DataError);
}

TEST(WireProtocol, ReplyBodies)
{
  EXPECT_EQ(decode_reply(encode_reply("hello \"there\"")), "hello \"there\"");
  EXPECT_EQ(nlohmann::json::parse(encode_error("boom")).at("error"), "boom");
  EXPECT_THROW(decode_reply(encode_error("boom")), TransportError);
  EXPECT_THROW(decode_reply("not json"), TransportError);
  EXPECT_THROW(decode_reply(R"({"text": 3})"), TransportError);
}

TEST(SystemInstruction, FillsSlots)
{
  const std::string s = system_instruction(8);
  EXPECT_NE(s.find("8 photos"), std::string::npos);
  EXPECT_NE(s.find("eighth image"), std::string::npos);
  EXPECT_NE(s.find("is labeled as"), std::string::npos);
  EXPECT_NE(s.find("chair7"), std::string::npos);
  EXPECT_NE(system_instruction(4).find("fourth image"), std::string::npos);
}

TEST(Transcript, ParseFormsAndErrors)
{
  const auto a = parse_transcript(R"({"exchanges":[{"expect_text_substring":"go","reply_text":"x"}]})");
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].expect_text_substring, "go");
  EXPECT_EQ(parse_transcript(R"([{"expect_text_substring":"a","reply_text":"b"}])").size(), 1u);
  EXPECT_THROW(parse_transcript("{"), DataError);
  EXPECT_THROW(parse_transcript(R"([{"reply_text":"b"}])"), DataError);
  EXPECT_THROW(parse_transcript(R"({"exchanges": 3})"), DataError);
  EXPECT_THROW(load_transcript("/nonexistent/transcript.json"), DataError);
  EXPECT_EQ(load_transcript(groundnav::testing::data_path("transcripts/classroom_chair7.json")).size(), 3u);
}

TEST(CannedTransport, ChecksNewestUserTextAndExhausts)
{
  CannedTransport t({{"go to the chair", "reply one"}, {"low", "reply two"}});
  Conversation c;
  c.turns.push_back({Role::User, "Please go to the chair.", {}});
  EXPECT_EQ(t.exchange(c), "reply one");
  c.turns.push_back({Role::Assistant, "reply one", {}});
  c.turns.push_back({Role::User, "the tall one", {}});
  EXPECT_THROW(t.exchange(c), TransportError);
  EXPECT_EQ(t.consumed(), 1u);
  c.turns.back().text = "a low chair";
  EXPECT_EQ(t.exchange(c), "reply two");
  EXPECT_THROW(t.exchange(c), TransportError);
  EXPECT_EQ(t.size(), 2u);
}

/// Records every conversation it sees and replies from a list.
class RecordingTransport : public Transport
{
public:
  explicit RecordingTransport(std::vector<std::string> replies) : replies_(std::move(replies)) {}
  std::string exchange(const Conversation & conversation) override
  {
    seen.push_back(conversation);
    if (fail_next) {
      fail_next = false;
      throw TransportError("timeout");
    }
    return replies_.at(next_++);
  }

  std::vector<Conversation> seen;
  bool fail_next = false;

private:
  std::vector<std::string> replies_;
  std::size_t next_ = 0;
};

DialogueTurn turn_text(const std::string & text)
{
  DialogueTurn t;
  t.text = text;
  return t;
}

TEST(GroundStepRemote, ImagesOnlyOnFirstExchange)
{
  RecordingTransport t({"It could be chair1 in the first image or chair2 in the third image.",
      "The chair is labeled as chair2 in the third image."});
  Conversation c;
  c.id = "c";
  const std::vector<ImagePayload> images{{"snapshot_1.ppm", "base64-p6", "AA=="}, {"snapshot_2.ppm", "base64-p6", "AQ=="}};
  const auto r1 = ground_step_remote(c, turn_text("Please go to the chair."), images, t, 10);
  EXPECT_EQ(r1.status, GroundingStatus::Ambiguous);
  const auto r2 = ground_step_remote(c, turn_text("the one on the right"), images, t, 10);
  EXPECT_EQ(r2.status, GroundingStatus::Resolved);
  ASSERT_EQ(t.seen.size(), 2u);
  EXPECT_EQ(t.seen[0].turns.size(), 1u);
  EXPECT_EQ(t.seen[0].turns[0].images.size(), 2u);
  ASSERT_EQ(t.seen[1].turns.size(), 3u);
  EXPECT_TRUE(t.seen[1].turns[2].images.empty());
  EXPECT_EQ(t.seen[1].turns[2].text, "the one on the right");
  EXPECT_EQ(c.turns.size(), 4u);
  EXPECT_EQ(c.exchanges(), 2);
}

TEST(GroundStepRemote, FailedExchangeLeavesConversationUnchanged)
{
  RecordingTransport t({"The chair is labeled as chair7 in the fourth image."});
  Conversation c;
  c.id = "c";
  t.fail_next = true;
  EXPECT_THROW(ground_step_remote(c, turn_text("go to the chair"), {}, t, 10), TransportError);
  EXPECT_TRUE(c.turns.empty());
  const auto r = ground_step_remote(c, turn_text("go to the chair"), {}, t, 10);
  EXPECT_EQ(r.candidates.at(0), (Candidate{"chair7", 4}));
  EXPECT_EQ(c.turns.size(), 2u);
}

TEST(GroundStepRemote, ExchangeLimit)
{
  RecordingTransport t({"a", "b", "c"});
  Conversation c;
  ground_step_remote(c, turn_text("one"), {}, t, 2);
  ground_step_remote(c, turn_text("two"), {}, t, 2);
  EXPECT_THROW(ground_step_remote(c, turn_text("three"), {}, t, 2), GroundingError);
  EXPECT_EQ(c.exchanges(), 2);
}

TEST(RemoteGrounder, FreshConversationPerDialogue)
{
  world::Scene s = empty_scene(-6, -6, 6, 6);
  s.objects.push_back(box("c", "chair", {3.0, 0.0}, {0.4, 0.4, 0.9}));
  const Perception p = perceive(s, world::rasterize_occupancy(s), {{0.0, 0.0}, 0.0});
  GroundingContext ctx;
  ctx.scene = &s;
  ctx.perception = &p;

  RecordingTransport t({"The chair is labeled as chair1 in the first image.",
      "The chair is labeled as chair1 in the first image."});
  RemoteGrounder g(t);
  g.set_conversation_id("item-a");
  g.begin(ctx);
  EXPECT_EQ(g.step(turn_text("go to the chair")).status, GroundingStatus::Resolved);
  EXPECT_EQ(t.seen[0].id, "item-a");
  EXPECT_EQ(t.seen[0].system_instruction, system_instruction(8));
  ASSERT_EQ(t.seen[0].turns[0].images.size(), 8u);
  const std::string ppm = base64_decode(t.seen[0].turns[0].images[0].data);
  EXPECT_EQ(ppm.rfind("P6\n", 0), 0u);
  EXPECT_EQ(t.seen[0].turns[0].images[0].name, "snapshot_1.ppm");

  g.begin(ctx);
  g.step(turn_text("go to the chair"));
  EXPECT_EQ(t.seen[1].id, "conversation-2");
  EXPECT_EQ(t.seen[1].turns.size(), 1u);
}

}  // namespace
}  // namespace groundnav::grounding
