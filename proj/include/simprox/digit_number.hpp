#pragma once

#include <utility>
#include <vector>

#include "simprox/real_number.hpp"

namespace simprox {

/// Number in (0, 1) whose base-b expansion has digit A at each listed position
/// and digit 0 everywhere else: value = A * sum over positions a of b^{-a}.
///
/// When blocks are present the positions are organized into runs [e_n, f_n]
/// with e_1 < f_1 < e_2 < f_2 < ...; every position must fall inside a block,
/// and each block's endpoints e_n, f_n must themselves be positions. The
/// unchecked() factory skips the block-membership part, for deliberately
/// broken fixtures that negative tests feed to the structure checks.
class DigitNumber final : public RealNumber {
 public:
  using Block = std::pair<long, long>;

  DigitNumber(long base, long amplitude, std::vector<long> positions,
              std::vector<Block> blocks = {});
  static DigitNumber unchecked(long base, long amplitude, std::vector<long> positions,
                               std::vector<Block> blocks);

  long base() const { return base_; }
  long amplitude() const { return amplitude_; }
  const std::vector<long>& positions() const { return positions_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  bool has_blocks() const { return !blocks_.empty(); }
  long first_position() const;
  long last_position() const;

  /// A if some digit sits at pos, else 0.
  long digit_at(long pos) const;
  /// A * sum of b^{-a} over positions a <= depth, exact.
  Rational partial_sum(long depth) const;
  /// [S, S + b^{-depth}] where S = partial_sum(depth). Sound for any number
  /// that carries exactly the listed digits up to depth and anything beyond;
  /// width is b^{-depth} exactly.
  Enclosure enclosure_at_depth(long depth) const;
  /// "0.001..." to the given depth.
  std::string digit_string(long depth) const;

  /// Enclosure sound for any extension of the computed digits: depth is
  /// clamped to the last listed position, past which nothing more is known.
  Enclosure enclosure(long depth) const override;
  long max_depth() const override { return last_position(); }
  std::string describe() const override;

 private:
  DigitNumber() = default;
  long base_ = 0, amplitude_ = 0;
  std::vector<long> positions_;
  std::vector<Block> blocks_;
  void validate_core() const;
  void validate_blocks() const;
};

}  // namespace simprox
