#include <algorithm>
#include <fstream>
#include <optional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "activerank/oracles.hpp"

namespace activerank {

namespace {

// Collects (u, v, w) rows and checks antisymmetry and completeness.
class TournamentBuilder {
 public:
  explicit TournamentBuilder(long long n) {
    if (n < 0 || n > static_cast<long long>(Tournament::kMaxDenseSize)) {
      throw std::runtime_error("tournament size out of range: " + std::to_string(n));
    }
    n_ = static_cast<std::size_t>(n);
    seen_.assign(pairs_of(n_), false);
    tournament_ = Tournament(n_);
  }

  void add(long long u, long long v, long long w, const std::string& where) {
    const auto n = static_cast<long long>(n_);
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw std::runtime_error(where + ": element id out of range");
    }
    if (u == v) throw std::runtime_error(where + ": self-pair");
    if (w != 0 && w != 1) throw std::runtime_error(where + ": label must be 0 or 1");
    const auto a = static_cast<ElementId>(u);
    const auto b = static_cast<ElementId>(v);
    const ElementId lo = std::min(a, b);
    const ElementId hi = std::max(a, b);
    const std::size_t k = std::size_t{lo} * (2 * n_ - lo - 1) / 2 + (hi - lo - 1);
    const bool u_preferred = w == 1;
    if (seen_[k]) {
      if (tournament_.prefers(a, b) != u_preferred) {
        throw std::runtime_error(where + ": antisymmetry violated for pair (" +
                                 std::to_string(u) + ", " + std::to_string(v) + ")");
      }
      return;
    }
    seen_[k] = true;
    tournament_.set(a, b, u_preferred);
  }

  Tournament finish() {
    for (std::size_t k = 0; k < seen_.size(); ++k) {
      if (!seen_[k]) throw std::runtime_error("tournament file is missing pairs");
    }
    return std::move(tournament_);
  }

 private:
  std::size_t n_ = 0;
  std::vector<bool> seen_;
  Tournament tournament_{0};
};

}  // namespace

Tournament read_tournament(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<TournamentBuilder> builder;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string where = "line " + std::to_string(line_no);
    if (!builder) {
      if (line.compare(first, 2, "n=") != 0) {
        throw std::runtime_error(where + ": expected header `n=<int>`");
      }
      std::istringstream header(line.substr(first + 2));
      long long n = -1;
      if (!(header >> n)) throw std::runtime_error(where + ": bad size header");
      builder.emplace(n);
      continue;
    }
    std::istringstream row(line);
    long long u = 0, v = 0, w = 0;
    std::string extra;
    if (!(row >> u >> v >> w) || (row >> extra)) {
      throw std::runtime_error(where + ": expected `u v w`");
    }
    builder->add(u, v, w, where);
  }
  if (!builder) throw std::runtime_error("tournament file has no `n=` header");
  return builder->finish();
}

Tournament read_tournament_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("tournament json: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges") ||
      !doc["n"].is_number_integer() || !doc["edges"].is_array()) {
    throw std::runtime_error("tournament json needs integer `n` and array `edges`");
  }
  TournamentBuilder builder(doc["n"].get<long long>());
  std::size_t index = 0;
  for (const auto& edge : doc["edges"]) {
    const std::string where = "edge " + std::to_string(index++);
    if (!edge.is_array() || edge.size() != 3 || !edge[0].is_number_integer() ||
        !edge[1].is_number_integer() || !edge[2].is_number_integer()) {
      throw std::runtime_error(where + ": expected [u, v, w]");
    }
    builder.add(edge[0].get<long long>(), edge[1].get<long long>(),
                edge[2].get<long long>(), where);
  }
  return builder.finish();
}

void write_tournament(std::ostream& out, const Tournament& t) {
  out << "n=" << t.size() << '\n';
  for (ElementId u = 0; u < t.size(); ++u) {
    for (ElementId v = u + 1; v < t.size(); ++v) {
      out << u << ' ' << v << ' ' << (t.prefers(u, v) ? 1 : 0) << '\n';
    }
  }
}

void write_tournament_json(std::ostream& out, const Tournament& t) {
  nlohmann::json edges = nlohmann::json::array();
  for (ElementId u = 0; u < t.size(); ++u) {
    for (ElementId v = u + 1; v < t.size(); ++v) {
      edges.push_back({u, v, t.prefers(u, v) ? 1 : 0});
    }
  }
  out << nlohmann::json{{"n", t.size()}, {"edges", edges}}.dump() << '\n';
}

Tournament load_tournament(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tournament file " + path.string());
  return path.extension() == ".json" ? read_tournament_json(in) : read_tournament(in);
}

void store_tournament(const std::filesystem::path& path, const Tournament& t) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write tournament file " + path.string());
  if (path.extension() == ".json") {
    write_tournament_json(out, t);
  } else {
    write_tournament(out, t);
  }
}

}  // namespace activerank
