#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace favlab {

/// A finite word over the alphabet {0, ..., m-1}. Text form is 1-based
/// ("123"), comma-separated when some symbol exceeds 9 ("1,12,3").
/// The empty word stands for the identity map.
class Word {
 public:
  using Symbol = std::uint8_t;

  Word() = default;
  Word(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}
  explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

  /// Parses the 1-based text form. Throws Errc::symbol_out_of_range when a
  /// symbol is outside {1..alphabet}.
  static Word parse(std::string_view text, std::size_t alphabet);

  /// The word i repeated `count` times.
  static Word repeat(Symbol i, std::size_t count) { return Word(std::vector<Symbol>(count, i)); }

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const noexcept { return symbols_[i]; }
  Symbol back() const noexcept { return symbols_.back(); }
  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }
  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

  void push_back(Symbol s) { symbols_.push_back(s); }
  void pop_back() { symbols_.pop_back(); }
  Word& operator+=(const Word& other);
  friend Word operator+(Word a, const Word& b) { return a += b; }

  Word power(std::size_t count) const;
  Word prefix(std::size_t length) const;
  Word suffix_from(std::size_t start) const;
  bool is_prefix_of(const Word& other) const noexcept;

  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.symbols_ <=> b.symbols_; }

 private:
  std::vector<Symbol> symbols_;
};

/// Length of the longest common prefix.
std::size_t common_prefix_length(const Word& a, const Word& b) noexcept;

/// True if neither word of any pair is a prefix of the other.
bool prefix_free(const std::vector<Word>& words) noexcept;

/// The eventually periodic sequence prefix . period . period . ...
class TailWord {
 public:
  /// Throws Errc::invalid_argument for an empty period.
  TailWord(Word prefix, Word period);

  /// Purely periodic sequence u u u ...
  static TailWord periodic(Word period) { return TailWord({}, std::move(period)); }

  const Word& prefix() const noexcept { return prefix_; }
  const Word& period() const noexcept { return period_; }

  /// Minimal period, prefix absorbed into the period as far as possible.
  TailWord canonical() const;

  Word::Symbol at(std::size_t index) const noexcept;

  /// Equality of the represented infinite sequences.
  friend bool operator==(const TailWord& a, const TailWord& b);

  std::string to_string() const;

 private:
  Word prefix_;
  Word period_;
};

}  // namespace favlab
