#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace finv {

/// A letter is a signed generator index: +i is s_i, -i is s_i^{-1}, i in 1..rank.
using Letter = int;

/// Position of a letter in the fixed total order s1 < s1^-1 < s2 < s2^-1 < ...
constexpr int letter_key(Letter l) noexcept { return 2 * ((l > 0 ? l : -l) - 1) + (l < 0 ? 1 : 0); }

/// Inverse of letter_key.
constexpr Letter letter_from_key(int key) noexcept { return (key % 2 == 0) ? key / 2 + 1 : -(key / 2 + 1); }

/// Reduced word in a free group of fixed rank. Reduction happens at
/// construction, so every Word in existence is reduced.
class Word {
 public:
  explicit Word(int rank = 1);
  Word(int rank, std::span<const Letter> letters);
  Word(int rank, std::initializer_list<Letter> letters);

  static Word identity(int rank) { return Word(rank); }
  static Word generator(int rank, Letter l);

  int rank() const noexcept { return rank_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool is_identity() const noexcept { return letters_.empty(); }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  Letter first() const { return letters_.front(); }
  Letter last() const { return letters_.back(); }

  Word inverse() const;

  /// Serialized form: letters 'a'..'z' for generators, 'A'..'Z' for inverses,
  /// "e" for the identity. Requires rank <= 26.
  std::string str() const;
  static Word parse(int rank, std::string_view text);

  friend bool operator==(const Word& x, const Word& y) noexcept {
    return x.rank_ == y.rank_ && x.letters_ == y.letters_;
  }
  /// Length-lex order under the fixed letter order.
  friend std::strong_ordering operator<=>(const Word& x, const Word& y) noexcept;

 private:
  struct Reduced {};
  Word(int rank, std::vector<Letter> letters, Reduced);
  friend Word mul(const Word& x, const Word& y);

  int rank_;
  std::vector<Letter> letters_;
};

/// Reduced concatenation. Throws RankMismatch when ranks differ.
Word mul(const Word& x, const Word& y);

inline Word operator*(const Word& x, const Word& y) { return mul(x, y); }

/// Word length of x^{-1} y: the distance in the right Cayley tree.
std::size_t right_distance(const Word& x, const Word& y);

/// Replace each abstract generator i of `w` by `images[i-1]` (its inverse for
/// negative letters) and multiply out.
Word substitute(const Word& w, std::span<const Word> images);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace finv
