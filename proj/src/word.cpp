#include "finv/word.hpp"

#include <algorithm>
#include <cstdlib>

#include "finv/error.hpp"

namespace finv {
namespace {

void check_letter(int rank, Letter l) {
  if (l == 0 || std::abs(l) > rank) {
    throw Error(ErrorKind::BadWord, "letter " + std::to_string(l) + " outside rank " + std::to_string(rank));
  }
}

// Append with free cancellation against the current tail.
void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == -l) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

}  // namespace

Word::Word(int rank) : rank_(rank) {
  if (rank < 1) throw Error(ErrorKind::BadWord, "rank must be positive");
}

Word::Word(int rank, std::span<const Letter> letters) : Word(rank) {
  letters_.reserve(letters.size());
  for (Letter l : letters) {
    check_letter(rank, l);
    push_reduced(letters_, l);
  }
}

Word::Word(int rank, std::initializer_list<Letter> letters)
    : Word(rank, std::span<const Letter>(letters.begin(), letters.size())) {}

Word::Word(int rank, std::vector<Letter> letters, Reduced) : rank_(rank), letters_(std::move(letters)) {}

Word Word::generator(int rank, Letter l) { return Word(rank, {l}); }

Word Word::inverse() const {
  std::vector<Letter> inv(letters_.rbegin(), letters_.rend());
  for (Letter& l : inv) l = -l;
  return Word(rank_, std::move(inv), Reduced{});
}

std::string Word::str() const {
  if (rank_ > 26) throw Error(ErrorKind::BadWord, "string form supports rank <= 26");
  if (letters_.empty()) return "e";
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) {
    s.push_back(l > 0 ? static_cast<char>('a' + l - 1) : static_cast<char>('A' - l - 1));
  }
  return s;
}

Word Word::parse(int rank, std::string_view text) {
  if (rank > 26) throw Error(ErrorKind::BadWord, "string form supports rank <= 26");
  if (text == "e" || text == "1" || text.empty()) return Word(rank);
  std::vector<Letter> ls;
  ls.reserve(text.size());
  for (char c : text) {
    if (c >= 'a' && c <= 'z') {
      ls.push_back(c - 'a' + 1);
    } else if (c >= 'A' && c <= 'Z') {
      ls.push_back(-(c - 'A' + 1));
    } else {
      throw Error(ErrorKind::BadWord, "unexpected character in word '" + std::string(text) + "'");
    }
  }
  return Word(rank, ls);
}

std::strong_ordering operator<=>(const Word& x, const Word& y) noexcept {
  if (auto c = x.rank_ <=> y.rank_; c != 0) return c;
  if (auto c = x.letters_.size() <=> y.letters_.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.letters_.size(); ++i) {
    if (auto c = letter_key(x.letters_[i]) <=> letter_key(y.letters_[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Word mul(const Word& x, const Word& y) {
  if (x.rank_ != y.rank_) {
    throw Error(ErrorKind::RankMismatch, "rank " + std::to_string(x.rank_) + " vs " + std::to_string(y.rank_));
  }
  std::vector<Letter> out = x.letters_;
  out.reserve(x.letters_.size() + y.letters_.size());
  for (Letter l : y.letters_) push_reduced(out, l);
  return Word(x.rank_, std::move(out), Word::Reduced{});
}

std::size_t right_distance(const Word& x, const Word& y) {
  if (x.rank() != y.rank()) throw Error(ErrorKind::RankMismatch, "right_distance");
  // Length of x^{-1} y = |x| + |y| - 2 * (common prefix length).
  const auto& a = x.letters();
  const auto& b = y.letters();
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  return a.size() + b.size() - 2 * k;
}

Word substitute(const Word& w, std::span<const Word> images) {
  if (images.empty()) throw Error(ErrorKind::BadGenSet, "empty image list");
  if (static_cast<int>(images.size()) != w.rank()) {
    throw Error(ErrorKind::RankMismatch, "substitute: word rank differs from image count");
  }
  Word out = Word::identity(images.front().rank());
  for (Letter l : w.letters()) {
    const Word& img = images[static_cast<std::size_t>(std::abs(l) - 1)];
    out = mul(out, l > 0 ? img : img.inverse());
  }
  return out;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = static_cast<std::size_t>(w.rank()) * 0x9E3779B97F4A7C15ULL;
  for (Letter l : w.letters()) {
    h ^= static_cast<std::size_t>(letter_key(l) + 1) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace finv
