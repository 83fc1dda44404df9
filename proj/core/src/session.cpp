#include "activerank/session.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "activerank/experiment.hpp"
#include "activerank/query.hpp"
#include "activerank/random.hpp"

namespace activerank {

namespace {

struct Cancelled {};

std::pair<ElementId, ElementId> unordered(ElementId u, ElementId v) {
  return u < v ? std::pair{u, v} : std::pair{v, u};
}

void append_line(const std::filesystem::path& path, const nlohmann::json& event) {
  std::ofstream out(path, std::ios::app);
  out << event.dump() << '\n';
  out.flush();
  if (!out) throw std::runtime_error("cannot append to " + path.string());
}

std::string hex_id(std::uint64_t x) {
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << x;
  return out.str();
}

}  // namespace

std::uint64_t question_limit(std::size_t n, double question_cap) {
  const std::uint64_t all = pairs_of(n);
  if (n < 3) return all;
  const double ln_n = std::log(static_cast<double>(n));
  const auto cap = static_cast<std::uint64_t>(
      std::ceil(question_cap * static_cast<double>(n) * ln_n * ln_n));
  return std::min(cap, all);
}

const char* to_string(SessionState state) {
  switch (state) {
    case SessionState::kRunning: return "running";
    case SessionState::kSuspended: return "suspended";
    case SessionState::kDone: return "done";
    case SessionState::kFailed: return "failed";
  }
  return "unknown";
}

class Session::Oracle final : public PreferenceOracle {
 public:
  explicit Oracle(Session& session) : session_(session) {}
  std::size_t size() const override { return session_.items_.size(); }
  bool prefers(ElementId u, ElementId v) const override { return session_.label(u, v); }

 private:
  Session& session_;
};

Session::Session(std::string id, std::vector<std::string> items, double eps,
                 std::uint64_t seed, const SessionOptions& options,
                 std::filesystem::path log_path,
                 std::vector<std::pair<ElementId, ElementId>> replay)
    : id_(std::move(id)),
      items_(std::move(items)),
      eps_(eps),
      seed_(seed),
      options_(options),
      limit_(question_limit(items_.size(), options.question_cap)),
      log_path_(std::move(log_path)) {
  // Each replayed entry is (preferred, other).
  for (const auto& [winner, loser] : replay) {
    answers_[unordered(winner, loser)] = winner < loser;
  }
  worker_ = std::thread([this] { run(); });
}

Session::~Session() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  changed_.notify_all();
  worker_.join();
}

void Session::run() {
  std::vector<ElementId> elements(items_.size());
  std::iota(elements.begin(), elements.end(), ElementId{0});
  Oracle oracle(*this);
  QueryLedger ledger;
  const QueryContext ctx(oracle, ledger);
  try {
    PipelineRun result = run_pipeline(elements, ctx, eps_, options_.constants, seed_);
    std::lock_guard lock(mutex_);
    ranking_ = std::move(result.ranking);
    decomposition_ = std::move(result.decomposition);
    state_ = SessionState::kDone;
  } catch (const Cancelled&) {
    return;
  } catch (const std::exception& e) {
    std::lock_guard lock(mutex_);
    failure_ = e.what();
    state_ = SessionState::kFailed;
  }
  changed_.notify_all();
}

bool Session::label(ElementId u, ElementId v) {
  std::unique_lock lock(mutex_);
  const auto key = unordered(u, v);
  auto it = answers_.find(key);
  if (it == answers_.end()) {
    if (answers_.size() >= limit_) {
      throw std::runtime_error("question limit of " + std::to_string(limit_) + " reached");
    }
    pending_ = PendingPair{u, v};
    state_ = SessionState::kSuspended;
    changed_.notify_all();
    changed_.wait(lock, [&] { return stopping_ || answers_.count(key) > 0; });
    if (stopping_) throw Cancelled{};
    it = answers_.find(key);
  }
  return u == key.first ? it->second : !it->second;
}

void Session::wait_idle() {
  std::unique_lock lock(mutex_);
  changed_.wait(lock, [&] { return state_ != SessionState::kRunning; });
}

nlohmann::json Session::view_locked() const {
  nlohmann::json view = {{"id", id_},
                         {"state", to_string(state_)},
                         {"answered", answers_.size()},
                         {"question_limit", limit_}};
  if (state_ == SessionState::kDone) {
    nlohmann::json names = nlohmann::json::array();
    for (ElementId v : ranking_->order()) names.push_back(items_[v]);
    view["done"] = true;
    view["ranking"] = names;
  } else if (state_ == SessionState::kSuspended && pending_) {
    view["u"] = pending_->u;
    view["v"] = pending_->v;
    view["u_name"] = items_[pending_->u];
    view["v_name"] = items_[pending_->v];
  } else if (state_ == SessionState::kFailed) {
    view["message"] = failure_;
  }
  return view;
}

nlohmann::json Session::next() {
  wait_idle();
  std::lock_guard lock(mutex_);
  if (state_ == SessionState::kFailed) {
    throw SessionError("session_failed", failure_);
  }
  return view_locked();
}

nlohmann::json Session::answer(ElementId u, ElementId v, ElementId preferred) {
  wait_idle();
  std::unique_lock lock(mutex_);
  if (preferred != u && preferred != v) {
    throw SessionError("invalid_request", "preferred must be u or v");
  }
  if (state_ != SessionState::kSuspended || !pending_ ||
      unordered(u, v) != unordered(pending_->u, pending_->v)) {
    nlohmann::json detail = nlohmann::json::object();
    if (state_ == SessionState::kSuspended && pending_) {
      detail["pending"] = {{"u", pending_->u}, {"v", pending_->v}};
    }
    throw SessionError("stale_pair", "the pair is not the pending question", detail);
  }
  const ElementId other = preferred == u ? v : u;
  append_line(log_path_, {{"event", "answer"}, {"preferred", preferred}, {"other", other}});
  answers_[unordered(u, v)] = preferred < other;
  pending_.reset();
  state_ = SessionState::kRunning;
  const std::size_t answered = answers_.size();
  lock.unlock();
  changed_.notify_all();
  return {{"ok", true}, {"answered", answered}};
}

nlohmann::json Session::state() {
  std::lock_guard lock(mutex_);
  nlohmann::json view = view_locked();
  view["items"] = items_;
  view["eps"] = eps_;
  view["seed"] = seed_;
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& [pair, lo_wins] : answers_) {
    labels.push_back({{"u", pair.first},
                      {"v", pair.second},
                      {"preferred", lo_wins ? pair.first : pair.second}});
  }
  view["answers"] = labels;
  if (pending_ && state_ == SessionState::kSuspended) {
    view["pending"] = {{"u", pending_->u}, {"v", pending_->v}};
  }
  if (decomposition_) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& block : decomposition_->blocks.blocks()) {
      nlohmann::json names = nlohmann::json::array();
      for (ElementId v : block) names.push_back(items_[v]);
      blocks.push_back(names);
    }
    view["blocks"] = blocks;
  }
  return view;
}

SessionManager::SessionManager(std::filesystem::path data_dir, SessionOptions options)
    : data_dir_(std::move(data_dir)), options_(std::move(options)) {
  options_.constants.validate();
  std::filesystem::create_directories(data_dir_);
  std::vector<std::filesystem::path> logs;
  for (const auto& entry : std::filesystem::directory_iterator(data_dir_)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      logs.push_back(entry.path());
    }
  }
  std::sort(logs.begin(), logs.end());
  for (const auto& log : logs) {
    auto session = open(log);
    sessions_[session->id()] = std::move(session);
  }
}

std::shared_ptr<Session> SessionManager::open(const std::filesystem::path& log) {
  std::ifstream in(log);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty session log " + log.string());
  const auto create = nlohmann::json::parse(line);
  if (create.at("event") != "create") {
    throw std::runtime_error("session log does not start with a create event: " + log.string());
  }
  std::vector<std::pair<ElementId, ElementId>> replay;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json event;
    try {
      event = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      break;  // torn final write
    }
    replay.emplace_back(event.at("preferred").get<ElementId>(),
                        event.at("other").get<ElementId>());
  }
  return std::make_shared<Session>(create.at("id").get<std::string>(),
                                   create.at("items").get<std::vector<std::string>>(),
                                   create.at("eps").get<double>(),
                                   create.at("seed").get<std::uint64_t>(), options_, log,
                                   std::move(replay));
}

std::string SessionManager::create(const std::vector<std::string>& items, double eps) {
  if (items.size() < 2) throw SessionError("too_few_items", "a session needs at least 2 items");
  if (items.size() > options_.max_items) {
    throw SessionError("too_many_items",
                       "a session takes at most " + std::to_string(options_.max_items) + " items");
  }
  if (std::set<std::string>(items.begin(), items.end()).size() != items.size()) {
    throw SessionError("duplicate_items", "item names must be distinct");
  }
  if (eps <= 0.0) eps = options_.default_eps;
  if (!(eps < 1.0)) throw SessionError("invalid_request", "eps must lie in (0, 1)");

  std::random_device device;
  const std::uint64_t seed = (std::uint64_t{device()} << 32) ^ device();
  std::lock_guard lock(mutex_);
  std::string id;
  do {
    id = hex_id(RandomSource::mix(seed + ++counter_));
  } while (sessions_.count(id) > 0);
  const auto log = data_dir_ / (id + ".jsonl");
  append_line(log, {{"event", "create"}, {"id", id}, {"items", items}, {"eps", eps}, {"seed", seed}});
  sessions_[id] = std::make_shared<Session>(id, items, eps, seed, options_, log,
                                            std::vector<std::pair<ElementId, ElementId>>{});
  return id;
}

std::shared_ptr<Session> SessionManager::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw SessionError("unknown_session", "no session `" + id + "`");
  return it->second;
}

std::vector<std::string> SessionManager::ids() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, _] : sessions_) out.push_back(id);
  return out;
}

}  // namespace activerank
