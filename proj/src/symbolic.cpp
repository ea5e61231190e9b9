#include "mifs/symbolic.hpp"

#include <algorithm>
#include <limits>

#include "mifs/errors.hpp"

namespace mifs {

Word Word::from_1based(std::initializer_list<int> syms) {
  return from_1based(std::vector<int>(syms));
}

Word Word::from_1based(const std::vector<int>& syms) {
  Word w;
  w.symbols.reserve(syms.size());
  for (int s : syms) {
    if (s < 1) throw InstanceError("word symbol " + std::to_string(s) + " is not positive");
    w.symbols.push_back(s - 1);
  }
  return w;
}

std::vector<int> Word::to_1based() const {
  std::vector<int> out;
  out.reserve(symbols.size());
  for (int s : symbols) out.push_back(s + 1);
  return out;
}

std::string Word::str_1based() const {
  std::string s;
  for (size_t i = 0; i < symbols.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(symbols[i] + 1);
  }
  return s;
}

TransitionMatrix::TransitionMatrix(std::vector<std::vector<int>> rows) {
  m_ = static_cast<int>(rows.size());
  if (m_ < 1) throw InstanceError("transition matrix must have at least one row");
  entries_.assign(static_cast<size_t>(m_) * m_, 0);
  for (int i = 0; i < m_; ++i) {
    if (static_cast<int>(rows[i].size()) != m_)
      throw InstanceError("transition matrix is not square: row " + std::to_string(i + 1) +
                          " has " + std::to_string(rows[i].size()) + " entries, expected " +
                          std::to_string(m_));
    for (int j = 0; j < m_; ++j) {
      int v = rows[i][j];
      if (v != 0 && v != 1)
        throw InstanceError("transition matrix entries must be 0 or 1, got " + std::to_string(v));
      entries_[static_cast<size_t>(i * m_ + j)] = static_cast<uint8_t>(v);
    }
  }
}

TransitionMatrix TransitionMatrix::full(int m) {
  std::vector<std::vector<int>> rows(m, std::vector<int>(m, 1));
  return TransitionMatrix(std::move(rows));
}

static void check_symbol(const TransitionMatrix& m, int s) {
  if (s < 0 || s >= m.size())
    throw InstanceError("symbol " + std::to_string(s + 1) + " out of range 1.." +
                        std::to_string(m.size()));
}

bool is_admissible(const TransitionMatrix& m, const Word& w) {
  for (int s : w.symbols) check_symbol(m, s);
  for (size_t i = 0; i + 1 < w.symbols.size(); ++i)
    if (!m.at(w.symbols[i], w.symbols[i + 1])) return false;
  return true;
}

uint64_t count_admissible(const TransitionMatrix& m, size_t n) {
  if (n == 0) return 1;
  const uint64_t sat = uint64_t(1) << 63;
  std::vector<uint64_t> per_end(static_cast<size_t>(m.size()), 1);
  for (size_t step = 1; step < n; ++step) {
    std::vector<uint64_t> next(static_cast<size_t>(m.size()), 0);
    for (int i = 0; i < m.size(); ++i) {
      if (per_end[i] == 0) continue;
      for (int j = 0; j < m.size(); ++j) {
        if (!m.at(i, j)) continue;
        uint64_t v = next[j] + per_end[i];
        next[j] = (v < next[j] || v >= sat) ? sat : v;
      }
    }
    per_end = std::move(next);
  }
  uint64_t total = 0;
  for (uint64_t v : per_end) {
    uint64_t t = total + v;
    total = (t < total || t >= sat) ? sat : t;
  }
  return total;
}

std::vector<Word> admissible_words(const TransitionMatrix& m, size_t n, uint64_t cap) {
  uint64_t predicted = count_admissible(m, n);
  if (predicted > cap)
    throw GuardError("admissible word enumeration refused: predicted count " +
                     std::to_string(predicted) + " exceeds cap " + std::to_string(cap));
  std::vector<Word> out;
  out.reserve(static_cast<size_t>(predicted));
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> cur;
  cur.reserve(n);
  // Lexicographic depth-first enumeration.
  auto rec = [&](auto&& self, size_t depth) -> void {
    if (depth == n) {
      out.emplace_back(cur);
      return;
    }
    for (int s = 0; s < m.size(); ++s) {
      if (!cur.empty() && !m.at(cur.back(), s)) continue;
      cur.push_back(s);
      self(self, depth + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<int> follower_set(const TransitionMatrix& m, int s) {
  check_symbol(m, s);
  std::vector<int> out;
  for (int j = 0; j < m.size(); ++j)
    if (m.at(s, j)) out.push_back(j);
  return out;
}

SubshiftCheck subshift_nonempty(const TransitionMatrix& m) {
  const int n = m.size();
  // Iterative DFS with tri-color marking; neighbors visited in ascending
  // order so the witness is deterministic.
  std::vector<int> color(static_cast<size_t>(n), 0);  // 0 new, 1 on stack, 2 done
  std::vector<int> path;
  std::vector<int> next_edge(static_cast<size_t>(n), 0);
  for (int start = 0; start < n; ++start) {
    if (color[start] != 0) continue;
    path.clear();
    path.push_back(start);
    color[start] = 1;
    next_edge[start] = 0;
    while (!path.empty()) {
      int u = path.back();
      int j = next_edge[u];
      bool advanced = false;
      for (; j < n; ++j) {
        if (!m.at(u, j)) continue;
        if (color[j] == 1) {
          // Back edge: cycle is the path segment from j onward, closed.
          auto it = std::find(path.begin(), path.end(), j);
          std::vector<int> cyc(it, path.end());
          cyc.push_back(j);
          SubshiftCheck r;
          r.nonempty = true;
          r.cycle = Word(std::move(cyc));
          return r;
        }
        if (color[j] == 0) {
          next_edge[u] = j + 1;
          color[j] = 1;
          next_edge[j] = 0;
          path.push_back(j);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        color[u] = 2;
        path.pop_back();
      }
    }
  }
  return SubshiftCheck{};
}

}  // namespace mifs
