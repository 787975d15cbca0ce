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

#include <atomic>
#include <cstdlib>
#include <thread>

#include "httplib.h"

#include "groundnav/errors.hpp"
#include "groundnav/remote.hpp"

namespace groundnav::grounding
{
namespace
{

/// Local grounding endpoint on an ephemeral port.
class LocalServer
{
public:
  explicit LocalServer(httplib::Server::Handler handler)
  {
    server_.Post("/v1/ground", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] {server_.listen_after_bind();});
    server_.wait_until_ready();
  }
  ~LocalServer()
  {
    server_.stop();
    thread_.join();
  }
  std::string endpoint() const {return "http://127.0.0.1:" + std::to_string(port_);}

private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

Conversation one_turn(const std::string & text)
{
  Conversation c;
  c.id = "conv-7";
  c.system_instruction = system_instruction(8);
  c.turns.push_back({Role::User, text, {{"snapshot_1.ppm", "base64-p6", base64_encode("P6\n1 1\n255\n\xff\x00\x00")}}});
  return c;
}

TEST(HttpTransport, PostsConversationAndReturnsText)
{
  std::string seen_auth;
  std::string seen_type;
  Conversation seen;
  LocalServer server([&](const httplib::Request & req, httplib::Response & res) {
      seen_auth = req.get_header_value("Authorization");
      seen_type = req.get_header_value("Content-Type");
      seen = decode_request(req.body);
      res.set_content(encode_reply("The chair is labeled as chair7 in the fourth image."), "application/json");
    });
  HttpOptions options;
  options.endpoint = server.endpoint();
  options.api_key = "secret-token";
  HttpTransport transport(options);
  const std::string reply = transport.exchange(one_turn("Please go to the chair."));
  EXPECT_EQ(reply, "The chair is labeled as chair7 in the fourth image.");
  EXPECT_EQ(seen_auth, "Bearer secret-token");
  EXPECT_EQ(seen_type, "application/json");
  EXPECT_EQ(seen.id, "conv-7");
  ASSERT_EQ(seen.turns.size(), 1u);
  EXPECT_EQ(base64_decode(seen.turns[0].images.at(0).data).substr(0, 3), "P6\n");
}

TEST(HttpTransport, NoCredentialMeansNoAuthorizationHeader)
{
  bool had_auth = true;
  LocalServer server([&](const httplib::Request & req, httplib::Response & res) {
      had_auth = req.has_header("Authorization");
      res.set_content(encode_reply("I cannot find it."), "application/json");
    });
  HttpOptions options;
  options.endpoint = server.endpoint();
  HttpTransport transport(options);
  EXPECT_EQ(transport.exchange(one_turn("hi")), "I cannot find it.");
  EXPECT_FALSE(had_auth);
}

TEST(HttpTransport, ErrorStatusCarriesServerMessage)
{
  LocalServer server([](const httplib::Request &, httplib::Response & res) {
      res.status = 429;
      res.set_content(encode_error("rate limited"), "application/json");
    });
  HttpOptions options;
  options.endpoint = server.endpoint();
  HttpTransport transport(options);
  try {
    transport.exchange(one_turn("hi"));
    FAIL() << "expected TransportError";
  } catch (const TransportError & e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("429"), std::string::npos) << what;
    EXPECT_NE(what.find("rate limited"), std::string::npos) << what;
  }
}

TEST(HttpTransport, MalformedBodyIsTransportError)
{
  LocalServer server([](const httplib::Request &, httplib::Response & res) {
      res.set_content("<html>oops</html>", "text/html");
    });
  HttpOptions options;
  options.endpoint = server.endpoint();
  HttpTransport transport(options);
  EXPECT_THROW(transport.exchange(one_turn("hi")), TransportError);
}

TEST(HttpTransport, TimeoutAndRefusedConnection)
{
  LocalServer server([](const httplib::Request &, httplib::Response & res) {
      std::this_thread::sleep_for(std::chrono::milliseconds(600));
      res.set_content(encode_reply("late"), "application/json");
    });
  HttpOptions slow;
  slow.endpoint = server.endpoint();
  slow.timeout = std::chrono::milliseconds(100);
  EXPECT_THROW(HttpTransport(slow).exchange(one_turn("hi")), TransportError);

  // Bind then release a port so nothing listens on it.
  int free_port = 0;
  {
    httplib::Server probe;
    free_port = probe.bind_to_any_port("127.0.0.1");
  }
  HttpOptions refused;
  refused.endpoint = "http://127.0.0.1:" + std::to_string(free_port);
  refused.timeout = std::chrono::milliseconds(500);
  EXPECT_THROW(HttpTransport(refused).exchange(one_turn("hi")), TransportError);

  HttpOptions bogus;
  bogus.endpoint = "not a url";
  EXPECT_THROW(HttpTransport(bogus).exchange(one_turn("hi")), TransportError);
}

TEST(HttpTransport, RemoteGrounderAtomicAcrossServerFailure)
{
  std::atomic<int> calls{0};
  LocalServer server([&](const httplib::Request & req, httplib::Response & res) {
      if (calls++ == 0) {
        res.status = 503;
        res.set_content(encode_error("warming up"), "application/json");
        return;
      }
      const Conversation c = decode_request(req.body);
      res.set_content(
        encode_reply("The chair is labeled as chair" + std::to_string(c.turns.size()) + " in the first image."),
        "application/json");
    });
  HttpOptions options;
  options.endpoint = server.endpoint();
  HttpTransport transport(options);
  Conversation c;
  c.id = "atomic";
  DialogueTurn turn;
  turn.text = "go to the chair";
  EXPECT_THROW(ground_step_remote(c, turn, {}, transport, 5), TransportError);
  EXPECT_TRUE(c.turns.empty());
  const auto r = ground_step_remote(c, turn, {}, transport, 5);
  EXPECT_EQ(r.candidates.at(0).object_id, "chair1");
  EXPECT_EQ(c.turns.size(), 2u);
}

}  // namespace
}  // namespace groundnav::grounding
