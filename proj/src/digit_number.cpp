#include "simprox/digit_number.hpp"

#include <algorithm>
#include <stdexcept>

namespace simprox {

void DigitNumber::validate_core() const {
  if (base_ < 2) throw std::invalid_argument("DigitNumber: base must be >= 2");
  if (amplitude_ < 1 || amplitude_ >= base_)
    throw std::invalid_argument("DigitNumber: amplitude must lie in 1..base-1");
  if (positions_.empty()) throw std::invalid_argument("DigitNumber: no positions");
  if (positions_.front() < 1)
    throw std::invalid_argument("DigitNumber: positions must be positive");
  for (size_t i = 1; i < positions_.size(); ++i)
    if (positions_[i] <= positions_[i - 1])
      throw std::invalid_argument("DigitNumber: positions must be strictly increasing");
  for (size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].first > blocks_[i].second)
      throw std::invalid_argument("DigitNumber: block with e > f");
    if (i > 0 && blocks_[i].first <= blocks_[i - 1].second)
      throw std::invalid_argument("DigitNumber: blocks must be disjoint and increasing");
  }
}

void DigitNumber::validate_blocks() const {
  if (blocks_.empty()) return;
  for (long a : positions_) {
    bool inside = std::any_of(blocks_.begin(), blocks_.end(), [&](const Block& bl) {
      return bl.first <= a && a <= bl.second;
    });
    if (!inside)
      throw std::invalid_argument("DigitNumber: position outside every block");
  }
  for (const Block& bl : blocks_) {
    if (digit_at(bl.first) == 0 || digit_at(bl.second) == 0)
      throw std::invalid_argument("DigitNumber: block endpoint is not a digit position");
  }
}

DigitNumber::DigitNumber(long base, long amplitude, std::vector<long> positions,
                         std::vector<Block> blocks) {
  base_ = base;
  amplitude_ = amplitude;
  positions_ = std::move(positions);
  blocks_ = std::move(blocks);
  validate_core();
  validate_blocks();
}

DigitNumber DigitNumber::unchecked(long base, long amplitude, std::vector<long> positions,
                                   std::vector<Block> blocks) {
  DigitNumber d;
  d.base_ = base;
  d.amplitude_ = amplitude;
  d.positions_ = std::move(positions);
  d.blocks_ = std::move(blocks);
  d.validate_core();
  return d;
}

long DigitNumber::first_position() const { return positions_.front(); }
long DigitNumber::last_position() const { return positions_.back(); }

long DigitNumber::digit_at(long pos) const {
  return std::binary_search(positions_.begin(), positions_.end(), pos) ? amplitude_ : 0;
}

Rational DigitNumber::partial_sum(long depth) const {
  // A * sum b^{-a} over a <= depth, over the common denominator b^{depth}.
  if (depth < 0) throw std::invalid_argument("DigitNumber::partial_sum: negative depth");
  Int num(0);
  Int b(base_);
  for (long a : positions_) {
    if (a > depth) break;
    num += pow_int(b, static_cast<unsigned long>(depth - a));
  }
  num *= amplitude_;
  return Rational(num, pow_int(b, static_cast<unsigned long>(depth)));
}

Enclosure DigitNumber::enclosure_at_depth(long depth) const {
  Rational s = partial_sum(depth);
  Rational tail(Int(1), pow_int(Int(base_), static_cast<unsigned long>(depth)));
  Rational hi = s + tail;
  return Enclosure(std::move(s), std::move(hi));
}

std::string DigitNumber::digit_string(long depth) const {
  // Digits of bases past 10 would be ambiguous concatenated, so space them.
  const char* sep = base_ > 10 ? " " : "";
  std::string s = "0.";
  for (long pos = 1; pos <= depth; ++pos) {
    if (pos > 1) s += sep;
    s += std::to_string(digit_at(pos));
  }
  return s;
}

Enclosure DigitNumber::enclosure(long depth) const {
  if (depth < 0) depth = 0;
  return enclosure_at_depth(std::min(depth, last_position()));
}

std::string DigitNumber::describe() const {
  std::string s = "base-" + std::to_string(base_) + " digits";
  if (amplitude_ != 1) s += " (amplitude " + std::to_string(amplitude_) + ")";
  s += " at {";
  const size_t shown = positions_.size() <= 8 ? positions_.size() : 6;
  for (size_t i = 0; i < shown; ++i)
    s += (i ? ", " : "") + std::to_string(positions_[i]);
  if (shown < positions_.size())
    s += ", ... (" + std::to_string(positions_.size()) + " total)";
  s += "}";
  return s;
}

}  // namespace simprox
