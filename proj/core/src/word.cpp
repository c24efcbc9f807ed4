#include "favlab/word.hpp"

#include <algorithm>
#include <charconv>

#include "favlab/error.hpp"

namespace favlab {

namespace {

Word::Symbol checked_symbol(long value, std::size_t alphabet) {
  if (value < 1 || static_cast<std::size_t>(value) > alphabet || value > 256) {
    throw Error(Errc::symbol_out_of_range,
                "symbol " + std::to_string(value) + " outside 1.." + std::to_string(alphabet));
  }
  return static_cast<Word::Symbol>(value - 1);
}

}  // namespace

Word Word::parse(std::string_view text, std::size_t alphabet) {
  Word out;
  if (text.empty() || text == "-") return out;
  if (text.find(',') != std::string_view::npos) {
    while (!text.empty()) {
      const auto comma = text.find(',');
      const auto token = text.substr(0, comma);
      long value = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw Error(Errc::invalid_argument, "malformed word '" + std::string(text) + "'");
      }
      out.push_back(checked_symbol(value, alphabet));
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
    return out;
  }
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw Error(Errc::invalid_argument, "malformed word '" + std::string(text) + "'");
    }
    out.push_back(checked_symbol(c - '0', alphabet));
  }
  return out;
}

Word& Word::operator+=(const Word& other) {
  symbols_.insert(symbols_.end(), other.symbols_.begin(), other.symbols_.end());
  return *this;
}

Word Word::power(std::size_t count) const {
  Word out;
  out.symbols_.reserve(symbols_.size() * count);
  for (std::size_t k = 0; k < count; ++k) out += *this;
  return out;
}

Word Word::prefix(std::size_t length) const {
  length = std::min(length, symbols_.size());
  return Word(std::vector<Symbol>(symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(length)));
}

Word Word::suffix_from(std::size_t start) const {
  start = std::min(start, symbols_.size());
  return Word(std::vector<Symbol>(symbols_.begin() + static_cast<std::ptrdiff_t>(start), symbols_.end()));
}

bool Word::is_prefix_of(const Word& other) const noexcept {
  return symbols_.size() <= other.symbols_.size() &&
         std::equal(symbols_.begin(), symbols_.end(), other.symbols_.begin());
}

std::string Word::to_string() const {
  const bool wide = std::any_of(symbols_.begin(), symbols_.end(), [](Symbol s) { return s >= 9; });
  std::string out;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (wide) {
      if (i > 0) out += ',';
      out += std::to_string(symbols_[i] + 1);
    } else {
      out += static_cast<char>('1' + symbols_[i]);
    }
  }
  return out;
}

std::size_t common_prefix_length(const Word& a, const Word& b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

bool prefix_free(const std::vector<Word>& words) noexcept {
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (i != j && words[i].is_prefix_of(words[j])) return false;
    }
  }
  return true;
}

TailWord::TailWord(Word prefix, Word period) : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw Error(Errc::invalid_argument, "tail word needs a nonempty period");
}

TailWord TailWord::canonical() const {
  // minimal period: smallest divisor d of |p| with p = (p[0..d))^(|p|/d)
  const auto& p = period_.symbols();
  const std::size_t n = p.size();
  std::size_t d = n;
  for (std::size_t cand = 1; cand < n; ++cand) {
    if (n % cand != 0) continue;
    bool ok = true;
    for (std::size_t i = cand; i < n && ok; ++i) ok = p[i] == p[i - cand];
    if (ok) {
      d = cand;
      break;
    }
  }
  std::vector<Word::Symbol> per(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(d));
  std::vector<Word::Symbol> pre = prefix_.symbols();
  // absorb: x . (y.x)^inf == (x.y)^inf
  while (!pre.empty() && pre.back() == per.back()) {
    pre.pop_back();
    std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
  }
  return TailWord(Word(std::move(pre)), Word(std::move(per)));
}

Word::Symbol TailWord::at(std::size_t index) const noexcept {
  if (index < prefix_.size()) return prefix_[index];
  return period_[(index - prefix_.size()) % period_.size()];
}

bool operator==(const TailWord& a, const TailWord& b) {
  const TailWord ca = a.canonical();
  const TailWord cb = b.canonical();
  return ca.prefix_ == cb.prefix_ && ca.period_ == cb.period_;
}

std::string TailWord::to_string() const {
  return prefix_.to_string() + "(" + period_.to_string() + ")";
}

}  // namespace favlab
