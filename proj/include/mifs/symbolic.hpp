#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mifs {

// Finite word over the alphabet {0, ..., m-1}. Symbols are 0-based in
// memory; every external surface (JSON, CLI, witness cycles) is 1-based.
struct Word {
  std::vector<int> symbols;

  Word() = default;
  explicit Word(std::vector<int> s) : symbols(std::move(s)) {}

  size_t length() const { return symbols.size(); }
  bool empty() const { return symbols.empty(); }
  int last() const { return symbols.back(); }

  bool operator==(const Word& o) const { return symbols == o.symbols; }
  bool operator<(const Word& o) const { return symbols < o.symbols; }

  // Convenience for tests and I/O: symbols given 1-based.
  static Word from_1based(std::initializer_list<int> syms);
  static Word from_1based(const std::vector<int>& syms);
  std::vector<int> to_1based() const;
  std::string str_1based() const;  // e.g. "3.5"
};

// 0/1 transition matrix over m symbols.
class TransitionMatrix {
 public:
  TransitionMatrix() = default;
  explicit TransitionMatrix(std::vector<std::vector<int>> rows);

  static TransitionMatrix full(int m);

  int size() const { return m_; }
  bool at(int i, int j) const { return entries_[static_cast<size_t>(i * m_ + j)] != 0; }

  bool operator==(const TransitionMatrix& o) const {
    return m_ == o.m_ && entries_ == o.entries_;
  }

 private:
  int m_ = 0;
  std::vector<uint8_t> entries_;
};

inline constexpr uint64_t kDefaultWordCap = uint64_t(1) << 24;

// True iff every consecutive pair of w is allowed by M. Length 0/1 words
// are admissible by convention.
bool is_admissible(const TransitionMatrix& m, const Word& w);

// Number of admissible words of length n, saturating at 2^63.
uint64_t count_admissible(const TransitionMatrix& m, size_t n);

// All admissible words of length n in lexicographic order. Refuses (guard
// error reporting the predicted count) when the count exceeds cap.
std::vector<Word> admissible_words(const TransitionMatrix& m, size_t n,
                                   uint64_t cap = kDefaultWordCap);

// { j : M[s][j] = 1 }, ascending.
std::vector<int> follower_set(const TransitionMatrix& m, int s);

// Cycle detection on the directed graph of M. A cycle witness is returned
// as a closed walk whose first symbol repeats at the end.
struct SubshiftCheck {
  bool nonempty = false;
  std::optional<Word> cycle;
};
SubshiftCheck subshift_nonempty(const TransitionMatrix& m);

}  // namespace mifs
