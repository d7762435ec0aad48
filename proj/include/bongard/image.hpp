#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "bongard/scene.hpp"

namespace bongard {

/// Binary raster, row-major, 1 = ink.
class Image {
 public:
  Image(int width, int height);
  Image(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::uint8_t at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
  void set(int x, int y, std::uint8_t value);
  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::size_t ink_count() const;

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

enum class GroupLabel : std::uint8_t { Left, Right };

inline constexpr int kGroupSize = 6;
inline constexpr int kImagesPerProblem = 2 * kGroupSize;

/// Two disjoint groups of six same-sized images. Synthetic problems also carry
/// their concept and one scene description per image (index order 0..11).
class BongardProblem {
 public:
  BongardProblem(int id, std::vector<Image> left, std::vector<Image> right,
                 std::optional<Concept> rule = std::nullopt,
                 std::vector<SceneDescription> scenes = {});

  int id() const { return id_; }
  const std::vector<Image>& left() const { return left_; }
  const std::vector<Image>& right() const { return right_; }
  /// Index 0..5 is the left group, 6..11 the right group.
  const Image& image(int index) const;
  GroupLabel group_of(int index) const { return index < kGroupSize ? GroupLabel::Left : GroupLabel::Right; }
  int width() const { return left_.front().width(); }
  int height() const { return left_.front().height(); }

  const std::optional<Concept>& solution() const { return concept_; }
  const std::vector<SceneDescription>& scenes() const { return scenes_; }
  bool has_ground_truth() const { return !scenes_.empty(); }

 private:
  int id_;
  std::vector<Image> left_;
  std::vector<Image> right_;
  std::optional<Concept> concept_;
  std::vector<SceneDescription> scenes_;
};

/// Ordered image pair viewed as a 2 x w x h grid: channel 0 is `first`.
class PairState {
 public:
  PairState(Image first, Image second);

  const Image& first() const { return first_; }
  const Image& second() const { return second_; }
  const Image& channel(int c) const { return c == 0 ? first_ : second_; }
  int width() const { return first_.width(); }
  int height() const { return first_.height(); }
  PairState swapped() const { return PairState(second_, first_); }

  friend bool operator==(const PairState&, const PairState&) = default;

 private:
  Image first_;
  Image second_;
};

PairState make_state(const Image& a, const Image& b);

/// Block-average pooling over near-equal rectangular blocks, then threshold at
/// mean >= 0.5.
Image downsample(const Image& img, int target_w, int target_h);

/// Plain PBM (P1) codec.
Image parse_pbm(std::string_view text);
std::string to_pbm(const Image& img);
Image read_pbm(const std::filesystem::path& path);
void write_pbm(const Image& img, const std::filesystem::path& path);

/// Reads `<directory>/00.pbm` .. `11.pbm`; 00-05 form the left group. The id
/// is parsed from the directory name when numeric, else 0.
BongardProblem load_bp(const std::filesystem::path& directory);

/// Writes the twelve images in the layout `load_bp` reads.
void save_bp(const BongardProblem& bp, const std::filesystem::path& directory);

}  // namespace bongard
