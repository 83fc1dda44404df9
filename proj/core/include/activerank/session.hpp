#pragma once

#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "activerank/config.hpp"
#include "activerank/decompose.hpp"
#include "activerank/types.hpp"

namespace activerank {

/// Error raised by session operations; `code` is a stable machine-readable
/// identifier (unknown_session, stale_pair, invalid_request, too_few_items,
/// too_many_items, duplicate_items).
class SessionError : public std::runtime_error {
 public:
  SessionError(std::string code, const std::string& message,
               nlohmann::json detail = nlohmann::json::object())
      : std::runtime_error(message), code_(std::move(code)), detail_(std::move(detail)) {}

  const std::string& code() const { return code_; }
  const nlohmann::json& detail() const { return detail_; }

 private:
  std::string code_;
  nlohmann::json detail_;
};

struct SessionOptions {
  std::size_t max_items = 200;
  double default_eps = 0.3;
  /// Hard limit on questions per session: ceil(question_cap * n * ln^2 n),
  /// never more than (n choose 2).
  double question_cap = 2.0;
  DecomposeConfig constants = DecomposeConfig::human_scale();
};

std::uint64_t question_limit(std::size_t n, double question_cap);

enum class SessionState { kRunning, kSuspended, kDone, kFailed };
const char* to_string(SessionState state);

/// A pending question (ids index the session's item list).
struct PendingPair {
  ElementId u = 0;
  ElementId v = 0;
};

/// One labeling session: the ranking algorithm runs on a worker thread and
/// blocks whenever it needs a label nobody has given yet.
class Session {
 public:
  Session(std::string id, std::vector<std::string> items, double eps, std::uint64_t seed,
          const SessionOptions& options, std::filesystem::path log_path,
          std::vector<std::pair<ElementId, ElementId>> replay);
  ~Session();

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const std::string& id() const { return id_; }

  /// Waits for the algorithm to suspend or finish, then reports the pending
  /// pair or the final ranking.
  nlohmann::json next();

  /// Records `preferred` (u or v) for the pending pair {u, v}. Throws
  /// SessionError(stale_pair) carrying the pending pair when {u, v} is not
  /// the pending pair.
  nlohmann::json answer(ElementId u, ElementId v, ElementId preferred);

  nlohmann::json state();

  /// Blocks until the algorithm is suspended, done or failed.
  void wait_idle();

 private:
  class Oracle;

  void run();
  bool label(ElementId u, ElementId v);  // called from the worker
  nlohmann::json view_locked() const;

  std::string id_;
  std::vector<std::string> items_;
  double eps_;
  std::uint64_t seed_;
  SessionOptions options_;
  std::uint64_t limit_;
  std::filesystem::path log_path_;

  mutable std::mutex mutex_;
  std::condition_variable changed_;
  SessionState state_ = SessionState::kRunning;
  std::optional<PendingPair> pending_;
  std::map<std::pair<ElementId, ElementId>, bool> answers_;  // (lo, hi) -> W(lo, hi)
  bool stopping_ = false;
  std::optional<Permutation> ranking_;
  std::optional<Decomposition> decomposition_;
  std::string failure_;

  std::thread worker_;
};

/// Owns all sessions and their event logs under `data_dir` (one JSON-lines
/// file per session). Existing logs are replayed on construction.
class SessionManager {
 public:
  explicit SessionManager(std::filesystem::path data_dir, SessionOptions options = {});

  /// Returns the new session id. `eps` <= 0 selects the default.
  std::string create(const std::vector<std::string>& items, double eps);
  std::shared_ptr<Session> find(const std::string& id) const;
  std::vector<std::string> ids() const;
  const SessionOptions& options() const { return options_; }

 private:
  std::shared_ptr<Session> open(const std::filesystem::path& log);

  std::filesystem::path data_dir_;
  SessionOptions options_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
};

}  // namespace activerank
