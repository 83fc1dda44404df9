#include <gtest/gtest.h>

#include <httplib.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <thread>

#include <unistd.h>

#include "activerank/http_service.hpp"
#include "activerank/session.hpp"

using namespace activerank;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("activerank_sessions_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("item-" + std::to_string(i));
  return out;
}

// Answers every question from a fixed ranking of the item names.
std::size_t answer_from(Session& s, const std::map<std::string, int>& rank_of,
                        std::size_t limit = 100000) {
  std::size_t asked = 0;
  for (; asked < limit; ++asked) {
    const auto view = s.next();
    if (view.value("done", false)) break;
    const ElementId u = view["u"], v = view["v"];
    const bool u_first = rank_of.at(view["u_name"]) < rank_of.at(view["v_name"]);
    s.answer(u, v, u_first ? u : v);
  }
  return asked;
}

}  // namespace

TEST(Session, QuestionLimit) {
  EXPECT_EQ(question_limit(2, 2.0), 1u);
  EXPECT_EQ(question_limit(8, 2.0), 28u);
  const double ln = std::log(100.0);
  EXPECT_EQ(question_limit(100, 2.0), static_cast<std::uint64_t>(std::ceil(200 * ln * ln)));
}

TEST(Session, CreateValidation) {
  TempDir dir;
  SessionManager m(dir.path());
  auto code = [&](const std::vector<std::string>& items) {
    try {
      m.create(items, 0);
    } catch (const SessionError& e) {
      return e.code();
    }
    return std::string("ok");
  };
  EXPECT_EQ(code({"a"}), "too_few_items");
  EXPECT_EQ(code(names(201)), "too_many_items");
  EXPECT_EQ(code({"a", "b", "a"}), "duplicate_items");
  EXPECT_EQ(code({"a", "b"}), "ok");
  EXPECT_THROW(m.find("ffff"), SessionError);
}

TEST(Session, NextIsIdempotentAndStalePairsAreRejected) {
  TempDir dir;
  SessionManager m(dir.path());
  const auto s = m.find(m.create(names(8), 0.3));
  const auto first = s->next();
  ASSERT_FALSE(first.value("done", false));
  EXPECT_EQ(s->next(), first);
  const ElementId u = first["u"], v = first["v"];
  const ElementId other = u != 0 && v != 0 ? 0 : (u != 1 && v != 1 ? 1 : 2);
  try {
    s->answer(u, other, u);
    FAIL() << "stale pair accepted";
  } catch (const SessionError& e) {
    EXPECT_EQ(e.code(), "stale_pair");
    EXPECT_EQ(e.detail()["pending"]["u"], u);
  }
  EXPECT_THROW(s->answer(u, v, other), SessionError);
  EXPECT_EQ(s->next(), first);
  EXPECT_EQ(s->state()["answered"], 0);

  s->answer(v, u, u);  // either orientation
  const auto second = s->next();
  EXPECT_TRUE(second.value("done", false) ||
              std::make_pair(second["u"], second["v"]) != std::make_pair(first["u"], first["v"]));
}

TEST(Session, ScriptedTransitiveAnswererRecoversTheOrder) {
  TempDir dir;
  SessionManager m(dir.path());
  const std::vector<std::string> order{"fig", "apple", "kiwi", "date", "lime", "plum", "pear", "cherry"};
  std::map<std::string, int> rank_of;
  for (int i = 0; i < 8; ++i) rank_of[order[i]] = i;
  std::vector<std::string> shuffled{"pear", "apple", "cherry", "date", "fig", "kiwi", "lime", "plum"};
  const auto s = m.find(m.create(shuffled, 0.3));
  const std::size_t asked = answer_from(*s, rank_of);
  EXPECT_LT(asked, 28u);
  const auto done = s->next();
  ASSERT_TRUE(done.value("done", false));
  EXPECT_EQ(done["ranking"].get<std::vector<std::string>>(), order);
  EXPECT_EQ(s->state()["answered"], asked);
}

TEST(Session, TwentyItemsAskBetweenSixtyAndOneTwentyQuestionsOnAverage) {
  TempDir dir;
  SessionManager m(dir.path());
  const auto items = names(20);
  double total = 0;
  for (int k = 0; k < 10; ++k) {
    auto order = items;
    std::mt19937 gen(static_cast<unsigned>(k));
    std::shuffle(order.begin(), order.end(), gen);
    std::map<std::string, int> rank_of;
    for (int i = 0; i < 20; ++i) rank_of[order[i]] = i;
    const auto s = m.find(m.create(items, 0.3));
    const std::size_t asked = answer_from(*s, rank_of);
    EXPECT_LE(asked, question_limit(20, SessionOptions{}.question_cap));
    EXPECT_TRUE(s->next().value("done", false));
    total += static_cast<double>(asked);
  }
  EXPECT_GE(total / 10, 60.0);
  EXPECT_LE(total / 10, 120.0);
}

TEST(Session, ReplayResumesAtTheSamePendingPair) {
  TempDir dir;
  std::string id;
  nlohmann::json pending;
  std::map<std::string, int> rank_of;
  const auto items = names(12);
  for (int i = 0; i < 12; ++i) rank_of[items[i]] = 11 - i;
  {
    SessionManager m(dir.path());
    id = m.create(items, 0.3);
    answer_from(*m.find(id), rank_of, 6);
    pending = m.find(id)->next();
    ASSERT_FALSE(pending.value("done", false));
    EXPECT_EQ(pending["answered"], 6);
  }
  SessionManager restarted(dir.path());
  EXPECT_EQ(restarted.ids(), std::vector<std::string>{id});
  const auto s = restarted.find(id);
  EXPECT_EQ(s->next(), pending);
  answer_from(*s, rank_of);
  std::vector<std::string> expected(items.rbegin(), items.rend());
  EXPECT_EQ(s->next()["ranking"].get<std::vector<std::string>>(), expected);
}

class HttpServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    manager_ = std::make_unique<SessionManager>(dir_.path());
    service_ = std::make_unique<HttpService>(*manager_);
    port_ = service_->bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { service_->serve(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    for (int k = 0; k < 100 && !client_->Get("/sessions/0/next"); ++k) {
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
  }
  void TearDown() override {
    service_->stop();
    thread_.join();
  }

  static nlohmann::json body(const httplib::Result& r) { return nlohmann::json::parse(r->body); }

  TempDir dir_;
  std::unique_ptr<SessionManager> manager_;
  std::unique_ptr<HttpService> service_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(HttpServiceTest, FullSessionOverHttp) {
  const nlohmann::json create = {{"items", {"c", "a", "d", "b"}}, {"eps", 0.3}};
  auto r = client_->Post("/sessions", create.dump(), "application/json");
  ASSERT_TRUE(r);
  ASSERT_EQ(r->status, 201);
  const std::string id = body(r)["id"];

  std::size_t questions = 0;
  while (true) {
    r = client_->Get("/sessions/" + id + "/next");
    ASSERT_EQ(r->status, 200);
    const auto view = body(r);
    if (view.value("done", false)) {
      EXPECT_EQ(view["ranking"], nlohmann::json({"a", "b", "c", "d"}));
      break;
    }
    ++questions;
    const std::string un = view["u_name"], vn = view["v_name"];
    const nlohmann::json answer = {{"u", view["u"]}, {"v", view["v"]},
                                   {"preferred", un < vn ? view["u"] : view["v"]}};
    r = client_->Post("/sessions/" + id + "/answer", answer.dump(), "application/json");
    ASSERT_EQ(r->status, 200);
    EXPECT_EQ(body(r)["answered"], questions);
  }
  r = client_->Get("/sessions/" + id);
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["state"], "done");
  EXPECT_EQ(body(r)["answers"].size(), questions);
}

TEST_F(HttpServiceTest, ErrorsAreJson) {
  auto r = client_->Get("/sessions/abc/next");
  EXPECT_EQ(r->status, 404);
  EXPECT_EQ(body(r)["error"], "unknown_session");

  r = client_->Post("/sessions", "not json", "application/json");
  EXPECT_EQ(r->status, 400);
  EXPECT_EQ(body(r)["error"], "invalid_request");

  r = client_->Post("/sessions", R"({"items": ["x"]})", "application/json");
  EXPECT_EQ(body(r)["error"], "too_few_items");

  r = client_->Post("/sessions", R"({"items": ["x", "y", "z"]})", "application/json");
  const std::string id = body(r)["id"];
  const auto next = body(client_->Get("/sessions/" + id + "/next"));
  const nlohmann::json wrong = {{"u", 7}, {"v", 8}, {"preferred", 7}};
  r = client_->Post("/sessions/" + id + "/answer", wrong.dump(), "application/json");
  EXPECT_EQ(r->status, 409);
  EXPECT_EQ(body(r)["error"], "stale_pair");
  EXPECT_EQ(body(r)["pending"]["u"], next["u"]);

  r = client_->Post("/sessions/" + id + "/answer", R"({"u": 0})", "application/json");
  EXPECT_EQ(body(r)["error"], "invalid_request");
}
